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

#include "textdp/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "textdp/error.hpp"

namespace textdp {

BowDocument BowDocument::from_tokens(const std::vector<std::string>& tokens) {
  if (tokens.empty()) {
    throw EmptyDocumentError("document has no words");
  }
  BowDocument doc;
  for (const auto& t : tokens) {
    if (t.empty()) {
      throw ValidationError("empty token in document");
    }
    ++doc.counts_[t];
  }
  doc.length_ = tokens.size();
  return doc;
}

std::vector<std::string> BowDocument::expanded() const {
  std::vector<std::string> out;
  out.reserve(length_);
  for (const auto& [token, count] : counts_) {
    for (int i = 0; i < count; ++i) out.push_back(token);
  }
  return out;
}

std::string BowDocument::to_string() const {
  std::string out;
  bool first = true;
  for (const auto& [token, count] : counts_) {
    for (int i = 0; i < count; ++i) {
      if (!first) out += ' ';
      out += token;
      first = false;
    }
  }
  return out;
}

CostMatrix cost_matrix(const EmbeddingTable& table, const BowDocument& d1,
                       const BowDocument& d2) {
  const auto words1 = d1.expanded();
  const auto words2 = d2.expanded();
  std::vector<std::span<const double>> rows1, rows2;
  rows1.reserve(words1.size());
  rows2.reserve(words2.size());
  for (const auto& w : words1) rows1.push_back(table.lookup(w));
  for (const auto& w : words2) rows2.push_back(table.lookup(w));

  CostMatrix c(words1.size(), words2.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    for (std::size_t j = 0; j < rows2.size(); ++j) {
      c.at(i, j) = euclidean_distance(rows1[i], rows2[j]);
    }
  }
  return c;
}

namespace {

// Transportation simplex. The basis is a spanning tree over a row nodes and
// b column nodes with exactly a+b-1 cells; every pivot swaps one tree edge.
class TransportSimplex {
 public:
  TransportSimplex(const Matrix& cost, std::vector<double> supply,
                   std::vector<double> demand)
      : cost_(cost),
        a_(supply.size()),
        b_(demand.size()),
        supply_(std::move(supply)),
        demand_(std::move(demand)),
        alloc_(a_, b_),
        in_basis_(a_ * b_, false) {}

  TransportSolution solve() {
    northwest_corner();
    const double scale =
        1.0 + *std::max_element(cost_.data.begin(), cost_.data.end());
    const double tol = 1e-11 * scale;

    // Most-negative entering rule normally; Bland's rule after too many
    // pivots so degenerate instances cannot cycle.
    const std::size_t bland_after = 20 * (a_ + b_) + 200;
    const std::size_t hard_cap = 2000 * a_ * b_ + 20000;
    std::size_t pivots = 0;
    while (true) {
      compute_potentials();
      const auto entering =
          (pivots < bland_after) ? find_entering_most_negative(tol)
                                 : find_entering_bland(tol);
      if (entering < 0) break;
      pivot(static_cast<std::size_t>(entering));
      if (++pivots > hard_cap) {
        throw Error("transportation simplex did not converge");
      }
    }

    TransportSolution out;
    out.flow = alloc_;
    double total = 0.0;
    for (const auto cell : basic_cells_) {
      total += alloc_.data[cell] * cost_.data[cell];
    }
    out.cost = total;
    return out;
  }

 private:
  std::size_t cell_row(std::size_t cell) const { return cell / b_; }
  std::size_t cell_col(std::size_t cell) const { return cell % b_; }

  void add_basic(std::size_t i, std::size_t j, double x) {
    alloc_.at(i, j) = x;
    in_basis_[i * b_ + j] = true;
    basic_cells_.push_back(i * b_ + j);
  }

  void northwest_corner() {
    std::vector<double> s = supply_;
    std::vector<double> d = demand_;
    std::size_t r = 0, c = 0;
    const std::size_t cells = a_ + b_ - 1;
    for (std::size_t step = 0; step < cells; ++step) {
      const double x = std::min(s[r], d[c]);
      add_basic(r, c, x);
      s[r] -= x;
      d[c] -= x;
      if (step + 1 == cells) break;
      bool advance_row;
      if (r == a_ - 1) {
        advance_row = false;
      } else if (c == b_ - 1) {
        advance_row = true;
      } else {
        advance_row = (s[r] <= d[c]);
      }
      if (advance_row) {
        ++r;
      } else {
        ++c;
      }
    }
  }

  // Solves u_i + v_j = c_ij over the basis tree (u[0] fixed at 0).
  void compute_potentials() {
    u_.assign(a_, 0.0);
    v_.assign(b_, 0.0);
    // Node ids: rows 0..a-1, cols a..a+b-1.
    std::vector<std::vector<std::size_t>> adj(a_ + b_);
    for (const auto cell : basic_cells_) {
      adj[cell_row(cell)].push_back(cell);
      adj[a_ + cell_col(cell)].push_back(cell);
    }
    std::vector<char> seen(a_ + b_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (const auto cell : adj[node]) {
        const std::size_t i = cell_row(cell);
        const std::size_t jn = a_ + cell_col(cell);
        const std::size_t other = (node == i) ? jn : i;
        if (seen[other]) continue;
        seen[other] = true;
        if (other == jn) {
          v_[cell_col(cell)] = cost_.data[cell] - u_[i];
        } else {
          u_[i] = cost_.data[cell] - v_[cell_col(cell)];
        }
        stack.push_back(other);
      }
    }
  }

  double reduced_cost(std::size_t cell) const {
    return cost_.data[cell] - u_[cell_row(cell)] - v_[cell_col(cell)];
  }

  long long find_entering_most_negative(double tol) const {
    long long best = -1;
    double best_red = -tol;
    for (std::size_t cell = 0; cell < a_ * b_; ++cell) {
      if (in_basis_[cell]) continue;
      const double red = reduced_cost(cell);
      if (red < best_red) {
        best_red = red;
        best = static_cast<long long>(cell);
      }
    }
    return best;
  }

  long long find_entering_bland(double tol) const {
    for (std::size_t cell = 0; cell < a_ * b_; ++cell) {
      if (in_basis_[cell]) continue;
      if (reduced_cost(cell) < -tol) return static_cast<long long>(cell);
    }
    return -1;
  }

  // Unique tree path from the entering cell's row node to its column node;
  // together with the entering cell it forms the pivot cycle.
  std::vector<std::size_t> tree_path(std::size_t from_row,
                                     std::size_t to_col) const {
    std::vector<std::vector<std::size_t>> adj(a_ + b_);
    for (const auto cell : basic_cells_) {
      adj[cell_row(cell)].push_back(cell);
      adj[a_ + cell_col(cell)].push_back(cell);
    }
    const std::size_t start = from_row;
    const std::size_t goal = a_ + to_col;
    std::vector<long long> parent_edge(a_ + b_, -1);
    std::vector<long long> parent_node(a_ + b_, -1);
    std::vector<char> seen(a_ + b_, false);
    std::vector<std::size_t> queue{start};
    seen[start] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t node = queue[qi];
      if (node == goal) break;
      for (const auto cell : adj[node]) {
        const std::size_t i = cell_row(cell);
        const std::size_t jn = a_ + cell_col(cell);
        const std::size_t other = (node == i) ? jn : i;
        if (seen[other]) continue;
        seen[other] = true;
        parent_edge[other] = static_cast<long long>(cell);
        parent_node[other] = static_cast<long long>(node);
        queue.push_back(other);
      }
    }
    std::vector<std::size_t> path;
    std::size_t node = goal;
    while (node != start) {
      path.push_back(static_cast<std::size_t>(parent_edge[node]));
      node = static_cast<std::size_t>(parent_node[node]);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  void pivot(std::size_t entering) {
    const auto path = tree_path(cell_row(entering), cell_col(entering));
    // Signs alternate around the cycle starting with + on the entering cell;
    // path cells at even positions are the - side.
    std::vector<std::size_t> minus, plus;
    plus.push_back(entering);
    for (std::size_t t = 0; t < path.size(); ++t) {
      if (t % 2 == 0) {
        minus.push_back(path[t]);
      } else {
        plus.push_back(path[t]);
      }
    }

    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = minus.front();
    for (const auto cell : minus) {
      const double x = alloc_.data[cell];
      if (x < theta || (x == theta && cell < leaving)) {
        theta = x;
        leaving = cell;
      }
    }

    for (const auto cell : plus) alloc_.data[cell] += theta;
    for (const auto cell : minus) alloc_.data[cell] -= theta;
    alloc_.data[leaving] = 0.0;
    for (const auto cell : minus) {
      if (alloc_.data[cell] < 0.0 && alloc_.data[cell] > -1e-12) {
        alloc_.data[cell] = 0.0;
      }
    }

    in_basis_[leaving] = false;
    basic_cells_.erase(
        std::find(basic_cells_.begin(), basic_cells_.end(), leaving));
    in_basis_[entering] = true;
    basic_cells_.push_back(entering);
  }

  const Matrix& cost_;
  std::size_t a_, b_;
  std::vector<double> supply_, demand_;
  Matrix alloc_;
  std::vector<char> in_basis_;
  std::vector<std::size_t> basic_cells_;
  std::vector<double> u_, v_;
};

}  // namespace

TransportSolution solve_transport(const CostMatrix& cost,
                                  const std::vector<double>& supply,
                                  const std::vector<double>& demand) {
  if (supply.empty() || demand.empty()) {
    throw ValidationError("transport: supplies and demands must be non-empty");
  }
  if (cost.rows != supply.size() || cost.cols != demand.size()) {
    throw DimensionError("transport: cost matrix is " +
                         std::to_string(cost.rows) + "x" +
                         std::to_string(cost.cols) + ", marginals are " +
                         std::to_string(supply.size()) + "/" +
                         std::to_string(demand.size()));
  }
  double total_s = 0.0, total_d = 0.0;
  for (double s : supply) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ValidationError("transport: supplies must be positive");
    }
    total_s += s;
  }
  for (double d : demand) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw ValidationError("transport: demands must be positive");
    }
    total_d += d;
  }
  if (std::abs(total_s - total_d) > 1e-9 * std::max(1.0, total_s)) {
    throw ValidationError("transport: unbalanced marginals (" +
                          std::to_string(total_s) + " vs " +
                          std::to_string(total_d) + ")");
  }
  for (double c : cost.data) {
    if (!std::isfinite(c) || c < 0.0) {
      throw ValidationError("transport: costs must be finite and non-negative");
    }
  }
  return TransportSimplex(cost, supply, demand).solve();
}

WmdResult wmd(const EmbeddingTable& table, const BowDocument& d1,
              const BowDocument& d2) {
  if (d1.length() == 0 || d2.length() == 0) {
    throw EmptyDocumentError("wmd: documents must be non-empty");
  }
  const CostMatrix c = cost_matrix(table, d1, d2);
  const std::vector<double> supply(d1.length(), 1.0 / d1.length());
  const std::vector<double> demand(d2.length(), 1.0 / d2.length());
  TransportSolution sol = solve_transport(c, supply, demand);
  return WmdResult{sol.cost, std::move(sol.flow)};
}

PermutationMatching assignment_min_cost(const CostMatrix& cost) {
  if (cost.rows != cost.cols) {
    throw DimensionError("assignment: cost matrix must be square");
  }
  const std::size_t n = cost.rows;
  if (n == 0) {
    throw ValidationError("assignment: empty cost matrix");
  }
  // Shortest augmenting path with dual potentials, 1-indexed.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  PermutationMatching m;
  m.mapping.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    m.mapping[p[j] - 1] = j - 1;
  }
  m.total_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m.total_cost += cost.at(i, m.mapping[i]);
  }
  return m;
}

PermutationMatching wmd_assignment(const EmbeddingTable& table,
                                   const BowDocument& d1,
                                   const BowDocument& d2) {
  if (d1.length() == 0 || d2.length() == 0) {
    throw EmptyDocumentError("wmd_assignment: documents must be non-empty");
  }
  if (d1.length() != d2.length()) {
    throw DimensionError("wmd_assignment: document lengths differ (" +
                         std::to_string(d1.length()) + " vs " +
                         std::to_string(d2.length()) + ")");
  }
  return assignment_min_cost(cost_matrix(table, d1, d2));
}

PermutationMatching brute_force_min_permutation(const CostMatrix& cost) {
  if (cost.rows != cost.cols) {
    throw DimensionError("brute force: cost matrix must be square");
  }
  const std::size_t n = cost.rows;
  if (n == 0) {
    throw ValidationError("brute force: empty cost matrix");
  }
  if (n > 9) {
    throw BoundsError("brute force: n = " + std::to_string(n) +
                      " exceeds the factorial enumeration bound of 9");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  PermutationMatching best;
  best.total_cost = std::numeric_limits<double>::infinity();
  // next_permutation enumerates in lexicographic order, so strict improvement
  // keeps the lexicographically smallest optimal permutation.
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += cost.at(i, perm[i]);
    if (c < best.total_cost) {
      best.total_cost = c;
      best.mapping = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double max_marginal_error(const FlowMatrix& flow,
                          const std::vector<double>& supply,
                          const std::vector<double>& demand) {
  double worst = 0.0;
  for (std::size_t i = 0; i < flow.rows; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < flow.cols; ++j) row_sum += flow.at(i, j);
    worst = std::max(worst, std::abs(row_sum - supply[i]));
  }
  for (std::size_t j = 0; j < flow.cols; ++j) {
    double col_sum = 0.0;
    for (std::size_t i = 0; i < flow.rows; ++i) col_sum += flow.at(i, j);
    worst = std::max(worst, std::abs(col_sum - demand[j]));
  }
  return worst;
}

}  // namespace textdp
