// Copyright 2026 The textdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEXTDP_TRANSPORT_HPP_
#define TEXTDP_TRANSPORT_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "textdp/embedding.hpp"

namespace textdp {

// Bag-of-words document: an unordered multiset of tokens. The canonical
// expansion (tokens sorted lexicographically, duplicates adjacent) fixes the
// arbitrary word ordering used to build cost matrices, so all outputs are
// reproducible.
class BowDocument {
 public:
  static BowDocument from_tokens(const std::vector<std::string>& tokens);

  const std::map<std::string, int>& counts() const { return counts_; }
  std::size_t length() const { return length_; }

  // Multiset expanded under the canonical ordering.
  std::vector<std::string> expanded() const;

  // Space-joined canonical expansion.
  std::string to_string() const;

  friend bool operator==(const BowDocument&, const BowDocument&) = default;
  friend bool operator<(const BowDocument& a, const BowDocument& b) {
    return a.counts_ < b.counts_;
  }

 private:
  std::map<std::string, int> counts_;
  std::size_t length_ = 0;
};

// Dense row-major matrix. Used for both cost and flow matrices.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

using CostMatrix = Matrix;
using FlowMatrix = Matrix;

// A bijection between equal-length word lists together with its total cost
// sum_i C[i, mapping[i]].
struct PermutationMatching {
  std::vector<std::size_t> mapping;
  double total_cost = 0.0;
};

// Result of the transportation linear program.
struct TransportSolution {
  double cost = 0.0;
  FlowMatrix flow;
};

struct WmdResult {
  double distance = 0.0;
  FlowMatrix flow;  // optimal flow under the canonical word ordering
};

// Pairwise Euclidean costs between the canonical expansions of d1 and d2.
CostMatrix cost_matrix(const EmbeddingTable& table, const BowDocument& d1,
                       const BowDocument& d2);

// Solves min sum_ij T_ij C_ij subject to row sums = supply, column sums =
// demand, T >= 0, by the transportation simplex. Supplies and demands must be
// positive and balanced. The returned flow is a basic solution, i.e. a vertex
// of the transportation polytope.
TransportSolution solve_transport(const CostMatrix& cost,
                                  const std::vector<double>& supply,
                                  const std::vector<double>& demand);

// Word Mover's Distance: the transportation LP with row sums 1/a and column
// sums 1/b over the canonical expansions.
WmdResult wmd(const EmbeddingTable& table, const BowDocument& d1,
              const BowDocument& d2);

// Minimum-cost assignment on an arbitrary square cost matrix
// (shortest-augmenting-path algorithm, O(n^3)).
PermutationMatching assignment_min_cost(const CostMatrix& cost);

// Equal-length specialization: a minimum-cost bijection between the word
// instances of d1 and d2. total_cost / n equals wmd(d1, d2).
PermutationMatching wmd_assignment(const EmbeddingTable& table,
                                   const BowDocument& d1,
                                   const BowDocument& d2);

// Exact minimum over all n! permutations; the independent oracle for the
// solvers above. Ties resolve to the lexicographically smallest permutation
// sequence. n is capped at 9.
PermutationMatching brute_force_min_permutation(const CostMatrix& cost);

// Max absolute deviation of the flow's marginals from the given supplies and
// demands; used by tests and verification.
double max_marginal_error(const FlowMatrix& flow,
                          const std::vector<double>& supply,
                          const std::vector<double>& demand);

}  // namespace textdp

#endif  // TEXTDP_TRANSPORT_HPP_
