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

#include "textdp/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <string_view>

#include "textdp/error.hpp"

namespace textdp {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("euclidean_distance: lengths differ (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

double parse_component(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": unparseable float '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": non-finite component '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

EmbeddingTable EmbeddingTable::load(std::istream& in) {
  std::vector<std::pair<std::string, WordVector>> entries;
  std::size_t dimension = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view view(line);
    const std::size_t token_end = view.find(' ');
    if (token_end == std::string_view::npos || token_end == 0) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected '<token> <f1> ... <fk>'");
    }
    std::string token(view.substr(0, token_end));

    WordVector vec;
    std::size_t pos = token_end + 1;
    while (pos <= view.size()) {
      std::size_t next = view.find(' ', pos);
      if (next == std::string_view::npos) next = view.size();
      if (next == pos) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": empty field (double space?)");
      }
      vec.push_back(parse_component(view.substr(pos, next - pos), line_no));
      pos = next + 1;
    }
    if (vec.empty()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": token '" + token + "' has no components");
    }
    if (dimension == 0) {
      dimension = vec.size();
    } else if (vec.size() != dimension) {
      throw ParseError("line " + std::to_string(line_no) + ": token '" + token +
                       "' has " + std::to_string(vec.size()) +
                       " components, expected " + std::to_string(dimension));
    }
    entries.emplace_back(std::move(token), std::move(vec));
  }
  if (entries.empty()) {
    throw ParseError("empty embedding stream");
  }
  return EmbeddingTable(dimension, std::move(entries));
}

EmbeddingTable EmbeddingTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open embeddings file: " + path);
  }
  return load(in);
}

EmbeddingTable::EmbeddingTable(
    std::size_t dimension,
    std::vector<std::pair<std::string, WordVector>> entries)
    : dimension_(dimension) {
  if (dimension_ == 0) {
    throw ValidationError("embedding dimension must be positive");
  }
  if (entries.empty()) {
    throw ValidationError("embedding table must be non-empty");
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  tokens_.reserve(entries.size());
  vectors_.reserve(entries.size() * dimension_);
  for (auto& [token, vec] : entries) {
    if (token.empty()) {
      throw ValidationError("empty token in embedding table");
    }
    if (!tokens_.empty() && tokens_.back() == token) {
      throw ValidationError("duplicate token: '" + token + "'");
    }
    if (vec.size() != dimension_) {
      throw DimensionError("token '" + token + "' has " +
                           std::to_string(vec.size()) +
                           " components, expected " +
                           std::to_string(dimension_));
    }
    for (double c : vec) {
      if (!std::isfinite(c)) {
        throw ValidationError("non-finite component for token '" + token + "'");
      }
    }
    tokens_.push_back(std::move(token));
    vectors_.insert(vectors_.end(), vec.begin(), vec.end());
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    index_.emplace(tokens_[i], i);
  }
}

bool EmbeddingTable::contains(const std::string& word) const {
  return index_.find(word) != index_.end();
}

std::span<const double> EmbeddingTable::lookup(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) {
    throw OovError(word);
  }
  return row(it->second);
}

WordVector EmbeddingTable::lookup_copy(const std::string& word) const {
  auto v = lookup(word);
  return WordVector(v.begin(), v.end());
}

double EmbeddingTable::word_distance(const std::string& w1,
                                     const std::string& w2) const {
  return euclidean_distance(lookup(w1), lookup(w2));
}

const std::string& EmbeddingTable::nearest_word(
    std::span<const double> v) const {
  if (v.size() != dimension_) {
    throw DimensionError("nearest_word: query has " +
                         std::to_string(v.size()) + " components, table has " +
                         std::to_string(dimension_));
  }
  // Squared distances suffice for comparison; strict '<' over the
  // lexicographically sorted scan keeps the smallest token on ties.
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const double* p = vectors_.data() + i * dimension_;
    double sq = 0.0;
    for (std::size_t j = 0; j < dimension_; ++j) {
      const double d = p[j] - v[j];
      sq += d * d;
    }
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return tokens_[best];
}

std::vector<std::vector<std::string>> EmbeddingTable::duplicate_vector_groups()
    const {
  std::map<std::vector<double>, std::vector<std::string>> by_vector;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    auto r = row(i);
    by_vector[std::vector<double>(r.begin(), r.end())].push_back(tokens_[i]);
  }
  std::vector<std::vector<std::string>> groups;
  for (auto& [vec, words] : by_vector) {
    if (words.size() > 1) groups.push_back(std::move(words));
  }
  return groups;
}

}  // namespace textdp
