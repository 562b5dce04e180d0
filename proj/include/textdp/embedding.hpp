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

#ifndef TEXTDP_EMBEDDING_HPP_
#define TEXTDP_EMBEDDING_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace textdp {

// A word embedding vector: k finite real components.
using WordVector = std::vector<double>;

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Immutable word -> vector lookup table. After construction the table never
// changes, so concurrent readers need no synchronization.
//
// Nearest-neighbor queries are exact brute-force scans over the vocabulary in
// lexicographic token order; ties therefore resolve to the lexicographically
// smallest token.
class EmbeddingTable {
 public:
  // Parses the plain-text embedding format: one entry per line,
  // "<token> <f1> <f2> ... <fk>", single ASCII spaces, no header.
  // The dimension is inferred from the first line.
  static EmbeddingTable load(std::istream& in);
  static EmbeddingTable load_file(const std::string& path);

  // Validates and takes ownership of explicit entries (mostly for tests and
  // fixture construction).
  EmbeddingTable(std::size_t dimension,
                 std::vector<std::pair<std::string, WordVector>> entries);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return tokens_.size(); }
  bool contains(const std::string& word) const;

  // Returns the stored vector exactly; throws OovError for unknown words.
  std::span<const double> lookup(const std::string& word) const;
  WordVector lookup_copy(const std::string& word) const;

  // Euclidean distance between two in-vocabulary words.
  double word_distance(const std::string& w1, const std::string& w2) const;

  // Word minimizing the Euclidean distance to v, ties broken by
  // lexicographically smallest token. Throws DimensionError if v has the
  // wrong length.
  const std::string& nearest_word(std::span<const double> v) const;

  // Vocabulary in lexicographic order.
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Groups of distinct words that share a bit-identical vector. Legal in real
  // embedding files; nearest_word resolves them by the tie rule, so snapping
  // can never return the non-smallest member of a group.
  std::vector<std::vector<std::string>> duplicate_vector_groups() const;

 private:
  std::span<const double> row(std::size_t i) const {
    return {vectors_.data() + i * dimension_, dimension_};
  }

  std::size_t dimension_ = 0;
  std::vector<std::string> tokens_;  // sorted
  std::vector<double> vectors_;      // row-major, tokens_.size() x dimension_
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace textdp

#endif  // TEXTDP_EMBEDDING_HPP_
