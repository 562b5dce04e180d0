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

#ifndef TEXTDP_OBFUSCATE_HPP_
#define TEXTDP_OBFUSCATE_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "textdp/embedding.hpp"
#include "textdp/laplace.hpp"
#include "textdp/rng.hpp"
#include "textdp/transport.hpp"

namespace textdp {

struct PreprocessConfig {
  std::set<std::string> stopwords;
  std::size_t fixed_length = 1;
  bool lowercase = true;
};

// Tokenization rule (fixed, golden-tested): split on Unicode whitespace,
// strip leading/trailing ASCII punctuation from each token, optionally
// lowercase ASCII letters. Tokens that end up empty are dropped.
std::vector<std::string> tokenize(std::string_view raw, bool lowercase);

// Tokenize, lowercase, strip stopwords; returns the remaining multiset.
// Throws EmptyDocumentError if nothing survives.
BowDocument preprocess(std::string_view raw, const PreprocessConfig& config);

// m words drawn i.i.d. (with replacement) from the empirical word-frequency
// distribution of d.
BowDocument fix_length(const BowDocument& d, std::size_t m, Rng& rng);

// One pass of the mechanism's inner loop: perturb the word's vector with
// n-dimensional Laplace noise and snap to the nearest vocabulary word.
std::string obfuscate_word(const EmbeddingTable& table, const std::string& w,
                           const PrivacyParameter& eps, Rng& rng);

struct ObfuscationReport {
  std::size_t input_length = 0;  // word count after preprocessing
  BowDocument output_words;
  std::vector<std::string> oov_words;  // skipped tokens, with multiplicity
  std::uint64_t seed = 0;
  double epsilon = 0.0;
};

// Full per-document pipeline: preprocess -> drop-and-record OOV words ->
// fixed-length resampling -> per-word obfuscation. All randomness comes from
// a fresh engine seeded with `seed`, which is recorded in the report.
// With strict_oov set, any OOV token aborts instead of being skipped.
ObfuscationReport obfuscate_document(const EmbeddingTable& table,
                                     std::string_view raw,
                                     const PreprocessConfig& config,
                                     const PrivacyParameter& eps,
                                     std::uint64_t seed,
                                     bool strict_oov = false);

struct DocumentOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<ObfuscationReport> report;
  std::string error;  // non-empty iff the document failed

  bool ok() const { return report.has_value(); }
};

// Independent per-document obfuscation with derived seeds
// (base_seed + index); order-preserving, failures recorded in place.
std::vector<DocumentOutcome> obfuscate_corpus(
    const EmbeddingTable& table, const std::vector<std::string>& docs,
    const PreprocessConfig& config, const PrivacyParameter& eps,
    std::uint64_t base_seed, bool strict_oov = false);

// Stopword file format: UTF-8, one token per line.
std::set<std::string> load_stopwords_file(const std::string& path);

}  // namespace textdp

#endif  // TEXTDP_OBFUSCATE_HPP_
