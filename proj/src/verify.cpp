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

#include "textdp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "textdp/error.hpp"
#include "textdp/obfuscate.hpp"

namespace textdp {

namespace {

constexpr std::size_t kMaxExactVocabulary = 100;
constexpr std::size_t kMaxDocumentLength = 4;
constexpr std::size_t kMaxOutputSupport = 10;

double laplace_cdf(double t, double mu, double scale) {
  const double u = (t - mu) / scale;
  return u < 0.0 ? 0.5 * std::exp(u) : 1.0 - 0.5 * std::exp(-u);
}

void require_one_dimensional(const EmbeddingTable& table) {
  if (table.dimension() != 1) {
    throw DimensionError(
        "exact verification requires a 1-D embedding table, got dimension " +
        std::to_string(table.dimension()));
  }
}

// Positive excess of the log-ratio over the bound; pairs of zero
// probabilities carry no mass and are skipped by returning -inf.
double log_ratio_excess(double p, double q, double bound) {
  if (p <= 0.0 && q <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(p) - std::log(q) - bound;
}

void append_multisets(const std::vector<std::string>& vocab, std::size_t first,
                      std::size_t remaining, std::vector<std::string>& prefix,
                      std::vector<BowDocument>& out) {
  if (remaining == 0) {
    out.push_back(BowDocument::from_tokens(prefix));
    return;
  }
  for (std::size_t i = first; i < vocab.size(); ++i) {
    prefix.push_back(vocab[i]);
    append_multisets(vocab, i, remaining - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

WordOutputDistribution exact_word_distribution_1d(const EmbeddingTable& table,
                                                  const std::string& w,
                                                  const PrivacyParameter& eps) {
  require_one_dimensional(table);
  if (table.size() > kMaxExactVocabulary) {
    throw BoundsError("exact verification is limited to vocabularies of " +
                      std::to_string(kMaxExactVocabulary) + " words");
  }
  const double mu = table.lookup(w)[0];
  const double scale = 1.0 / eps.epsilon;

  // Voronoi cells on the line: sorted unique positions with midpoints as
  // boundaries. The first token at each position owns the cell (tokens() is
  // sorted, matching the nearest_word tie rule).
  std::map<double, std::string> owner_at;
  for (const auto& token : table.tokens()) {
    owner_at.emplace(table.lookup(token)[0], token);
  }
  std::vector<double> positions;
  std::vector<std::string> owners;
  for (const auto& [pos, token] : owner_at) {
    positions.push_back(pos);
    owners.push_back(token);
  }

  WordOutputDistribution dist;
  dist.input_word = w;
  for (const auto& token : table.tokens()) {
    dist.probabilities[token] = 0.0;
  }
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double lo =
        (i == 0) ? -inf : 0.5 * (positions[i - 1] + positions[i]);
    const double hi = (i + 1 == positions.size())
                          ? inf
                          : 0.5 * (positions[i] + positions[i + 1]);
    const double lo_cdf = (lo == -inf) ? 0.0 : laplace_cdf(lo, mu, scale);
    const double hi_cdf = (hi == inf) ? 1.0 : laplace_cdf(hi, mu, scale);
    dist.probabilities[owners[i]] = hi_cdf - lo_cdf;
  }
  return dist;
}

MonteCarloWordDistribution mc_word_distribution(const EmbeddingTable& table,
                                                const std::string& w,
                                                const PrivacyParameter& eps,
                                                std::size_t trials, Rng& rng) {
  if (trials == 0) {
    throw ValidationError("mc_word_distribution: trials must be at least 1");
  }
  table.lookup(w);  // surface OOV before sampling

  std::map<std::string, std::size_t> counts;
  for (const auto& token : table.tokens()) counts[token] = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    ++counts[obfuscate_word(table, w, eps, rng)];
  }

  MonteCarloWordDistribution mc;
  mc.trials = trials;
  mc.distribution.input_word = w;
  const double n = static_cast<double>(trials);
  for (const auto& [token, count] : counts) {
    const double p = static_cast<double>(count) / n;
    mc.distribution.probabilities[token] = p;
    mc.std_error[token] = std::sqrt(p * (1.0 - p) / n);
  }
  return mc;
}

DocumentOutputDistribution document_distribution(
    const std::map<std::string, WordOutputDistribution>& word_dists,
    const BowDocument& d) {
  if (d.length() == 0) {
    throw EmptyDocumentError("document_distribution: empty document");
  }
  if (d.length() > kMaxDocumentLength) {
    throw BoundsError("document_distribution: length " +
                      std::to_string(d.length()) + " exceeds the bound of " +
                      std::to_string(kMaxDocumentLength));
  }

  const auto input_words = d.expanded();
  std::vector<const WordOutputDistribution*> slot_dist;
  for (const auto& w : input_words) {
    auto it = word_dists.find(w);
    if (it == word_dists.end()) {
      throw ValidationError(
          "document_distribution: no word distribution for '" + w + "'");
    }
    slot_dist.push_back(&it->second);
  }

  // Output support: words any slot can produce with positive probability.
  std::vector<std::string> support;
  {
    std::map<std::string, bool> seen;
    for (const auto* dist : slot_dist) {
      for (const auto& [token, p] : dist->probabilities) {
        if (p > 0.0 && !seen[token]) {
          seen[token] = true;
          support.push_back(token);
        }
      }
    }
    std::sort(support.begin(), support.end());
  }
  if (support.size() > kMaxOutputSupport) {
    throw BoundsError("document_distribution: output support of " +
                      std::to_string(support.size()) +
                      " words exceeds the bound of " +
                      std::to_string(kMaxOutputSupport));
  }

  DocumentOutputDistribution out;
  out.input_doc = d;
  std::vector<BowDocument> outputs;
  std::vector<std::string> prefix;
  append_multisets(support, 0, d.length(), prefix, outputs);

  for (const auto& z : outputs) {
    // Sum over unique permutations of the output words; next_permutation on
    // the sorted expansion visits each distinct arrangement exactly once.
    std::vector<std::string> arrangement = z.expanded();
    double total = 0.0;
    do {
      double product = 1.0;
      for (std::size_t j = 0; j < arrangement.size(); ++j) {
        const auto& probs = slot_dist[j]->probabilities;
        auto it = probs.find(arrangement[j]);
        product *= (it == probs.end()) ? 0.0 : it->second;
      }
      total += product;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    out.probabilities[z] = total;
  }
  return out;
}

PrivacyCheckResult check_word_privacy(const EmbeddingTable& table,
                                      const PrivacyParameter& eps,
                                      double tolerance) {
  require_one_dimensional(table);
  std::map<std::string, WordOutputDistribution> dists;
  for (const auto& w : table.tokens()) {
    dists[w] = exact_word_distribution_1d(table, w, eps);
  }

  PrivacyCheckResult result;
  result.tolerance = tolerance;
  result.max_log_ratio_excess = -std::numeric_limits<double>::infinity();
  for (const auto& w1 : table.tokens()) {
    for (const auto& w2 : table.tokens()) {
      const double bound = eps.epsilon * table.word_distance(w1, w2);
      for (const auto& v : table.tokens()) {
        const double excess = log_ratio_excess(
            dists[w1].probabilities[v], dists[w2].probabilities[v], bound);
        result.max_log_ratio_excess =
            std::max(result.max_log_ratio_excess, excess);
      }
      ++result.pairs_checked;
    }
  }
  result.passed = result.max_log_ratio_excess <= tolerance;
  return result;
}

PrivacyCheckResult check_document_indistinguishability(
    const EmbeddingTable& table, const std::vector<BowDocument>& docs,
    const PrivacyParameter& eps, const DocCheckOptions& options) {
  require_one_dimensional(table);
  if (docs.empty()) {
    throw ValidationError("document check: no documents given");
  }
  const std::size_t length = docs.front().length();
  for (const auto& d : docs) {
    if (d.length() != length) {
      throw DimensionError(
          "document check: all documents must have equal length");
    }
  }
  if (length > kMaxDocumentLength) {
    throw BoundsError("document check: length " + std::to_string(length) +
                      " exceeds the bound of " +
                      std::to_string(kMaxDocumentLength));
  }

  std::map<std::string, WordOutputDistribution> word_dists;
  for (const auto& w : table.tokens()) {
    word_dists[w] = exact_word_distribution_1d(table, w, eps);
  }
  std::vector<DocumentOutputDistribution> doc_dists;
  doc_dists.reserve(docs.size());
  for (const auto& d : docs) {
    doc_dists.push_back(document_distribution(word_dists, d));
  }

  PrivacyCheckResult result;
  result.tolerance = options.tolerance;
  result.max_log_ratio_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = 0; j < docs.size(); ++j) {
      // Whole-word matching cost from the factorial oracle, independent of
      // the LP solver.
      const double dw =
          brute_force_min_permutation(cost_matrix(table, docs[i], docs[j]))
              .total_cost;
      const double bound = options.bound_scale * eps.epsilon * dw;
      for (const auto& [z, pi] : doc_dists[i].probabilities) {
        const auto it = doc_dists[j].probabilities.find(z);
        const double pj = (it == doc_dists[j].probabilities.end())
                              ? 0.0
                              : it->second;
        const double excess = log_ratio_excess(pi, pj, bound);
        result.max_log_ratio_excess =
            std::max(result.max_log_ratio_excess, excess);
      }
      ++result.pairs_checked;
    }
  }
  result.passed = result.max_log_ratio_excess <= options.tolerance;
  return result;
}

std::vector<BowDocument> enumerate_documents(
    const std::vector<std::string>& vocab, std::size_t length) {
  if (vocab.empty() || length == 0) {
    throw ValidationError("enumerate_documents: empty vocabulary or length");
  }
  std::vector<std::string> sorted_vocab = vocab;
  std::sort(sorted_vocab.begin(), sorted_vocab.end());
  std::vector<BowDocument> out;
  std::vector<std::string> prefix;
  append_multisets(sorted_vocab, 0, length, prefix, out);
  return out;
}

}  // namespace textdp
