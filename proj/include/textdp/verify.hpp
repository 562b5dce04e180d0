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

#ifndef TEXTDP_VERIFY_HPP_
#define TEXTDP_VERIFY_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "textdp/embedding.hpp"
#include "textdp/laplace.hpp"
#include "textdp/rng.hpp"
#include "textdp/transport.hpp"

namespace textdp {

// Distribution of the word-level mechanism's output for one input word.
// Probabilities cover the whole vocabulary and sum to 1.
struct WordOutputDistribution {
  std::string input_word;
  std::map<std::string, double> probabilities;
};

struct MonteCarloWordDistribution {
  WordOutputDistribution distribution;
  std::map<std::string, double> std_error;  // sqrt(p(1-p)/trials) per cell
  std::size_t trials = 0;
};

// Distribution of the document-level mechanism over output bags of words.
struct DocumentOutputDistribution {
  BowDocument input_doc;
  std::map<BowDocument, double> probabilities;
};

struct PrivacyCheckResult {
  std::size_t pairs_checked = 0;
  double max_log_ratio_excess = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Exact snap distribution for a 1-D vocabulary: each word's probability is
// the mass its Voronoi interval receives under Laplace(W(w), 1/epsilon),
// computed in closed form from the Laplace CDF. Words that share a position
// with a lexicographically smaller word are shadowed by the snap tie rule and
// get probability 0. Requires dimension 1 and vocabulary size <= 100.
WordOutputDistribution exact_word_distribution_1d(const EmbeddingTable& table,
                                                  const std::string& w,
                                                  const PrivacyParameter& eps);

// Empirical word-level output distribution from repeated obfuscation.
MonteCarloWordDistribution mc_word_distribution(const EmbeddingTable& table,
                                                const std::string& w,
                                                const PrivacyParameter& eps,
                                                std::size_t trials, Rng& rng);

// Extends word-level distributions to a document-level distribution: the
// probability of an output bag z is the sum over unique permutations of z of
// the per-slot product of word probabilities. Enumeration bounds: document
// length <= 4 and output support <= 10 words.
DocumentOutputDistribution document_distribution(
    const std::map<std::string, WordOutputDistribution>& word_dists,
    const BowDocument& d);

// Checks the word-level privacy bound
//   log K(w)(v) - log K(w')(v) <= epsilon * d2(W(w), W(w'))
// for all ordered word pairs and all outputs, using exact 1-D distributions.
PrivacyCheckResult check_word_privacy(const EmbeddingTable& table,
                                      const PrivacyParameter& eps,
                                      double tolerance = 1e-9);

struct DocCheckOptions {
  double tolerance = 1e-7;
  // Scales the right-hand side of the bound. 1.0 checks the real guarantee;
  // smaller values are negative controls that a sound checker must fail.
  double bound_scale = 1.0;
};

// Checks the document-indistinguishability bound
//   log K*(d)(z) - log K*(d')(z) <= epsilon * d_W(d, d')
// over every ordered pair of the given equal-length documents and every
// enumerable output bag. d_W is the minimum-permutation matching cost from
// the brute-force oracle (whole-word flows; the matching cost, not divided
// by document length), an independent code path from the LP solver.
PrivacyCheckResult check_document_indistinguishability(
    const EmbeddingTable& table, const std::vector<BowDocument>& docs,
    const PrivacyParameter& eps, const DocCheckOptions& options = {});

// All bags of words of the given length over a vocabulary.
std::vector<BowDocument> enumerate_documents(
    const std::vector<std::string>& vocab, std::size_t length);

}  // namespace textdp

#endif  // TEXTDP_VERIFY_HPP_
