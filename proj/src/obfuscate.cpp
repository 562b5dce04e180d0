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

#include "textdp/obfuscate.hpp"

#include <cctype>
#include <fstream>
#include <random>

#include "textdp/error.hpp"

namespace textdp {

namespace {

// Code points with the Unicode White_Space property.
bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x0009:
    case 0x000A:
    case 0x000B:
    case 0x000C:
    case 0x000D:
    case 0x0020:
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_ascii_punct(unsigned char c) {
  return c < 0x80 && std::ispunct(c) != 0;
}

// Decodes one UTF-8 code point starting at `pos`; malformed bytes are
// treated as single-byte characters so tokenization never fails.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const unsigned char b0 = static_cast<unsigned char>(s[pos]);
  std::size_t len = 1;
  char32_t cp = b0;
  if ((b0 & 0x80) == 0x00) {
    len = 1;
    cp = b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return b0;
  }
  if (pos + len > s.size()) {
    ++pos;
    return b0;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char bi = static_cast<unsigned char>(s[pos + i]);
    if ((bi & 0xC0) != 0x80) {
      ++pos;
      return b0;
    }
    cp = (cp << 6) | (bi & 0x3F);
  }
  pos += len;
  return cp;
}

std::string trim_punctuation(std::string token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && is_ascii_punct(token[begin])) ++begin;
  while (end > begin && is_ascii_punct(token[end - 1])) --end;
  return token.substr(begin, end - begin);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw, bool lowercase) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  auto flush = [&] {
    if (current.empty()) return;
    std::string token = trim_punctuation(std::move(current));
    current.clear();
    if (!token.empty()) tokens.push_back(std::move(token));
  };
  while (pos < raw.size()) {
    const std::size_t start = pos;
    const char32_t cp = decode_utf8(raw, pos);
    if (is_unicode_space(cp)) {
      flush();
      continue;
    }
    for (std::size_t i = start; i < pos; ++i) {
      char c = raw[i];
      if (lowercase && c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

BowDocument preprocess(std::string_view raw, const PreprocessConfig& config) {
  std::vector<std::string> kept;
  for (auto& token : tokenize(raw, config.lowercase)) {
    if (config.stopwords.count(token) > 0) continue;
    kept.push_back(std::move(token));
  }
  if (kept.empty()) {
    throw EmptyDocumentError(
        "document is empty after tokenization and stopword removal");
  }
  return BowDocument::from_tokens(kept);
}

BowDocument fix_length(const BowDocument& d, std::size_t m, Rng& rng) {
  if (d.length() == 0) {
    throw EmptyDocumentError("fix_length: input document is empty");
  }
  if (m == 0) {
    throw ValidationError("fix_length: target length must be at least 1");
  }
  const auto words = d.expanded();
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::vector<std::string> sampled;
  sampled.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    sampled.push_back(words[pick(rng)]);
  }
  return BowDocument::from_tokens(sampled);
}

std::string obfuscate_word(const EmbeddingTable& table, const std::string& w,
                           const PrivacyParameter& eps, Rng& rng) {
  const auto x = table.lookup(w);
  const WordVector z = sample_noise(WordVector(x.begin(), x.end()), eps, rng);
  return table.nearest_word(z);
}

ObfuscationReport obfuscate_document(const EmbeddingTable& table,
                                     std::string_view raw,
                                     const PreprocessConfig& config,
                                     const PrivacyParameter& eps,
                                     std::uint64_t seed, bool strict_oov) {
  if (config.fixed_length == 0) {
    throw ValidationError("fixed_length must be at least 1");
  }
  const BowDocument doc = preprocess(raw, config);

  std::vector<std::string> in_vocab;
  std::vector<std::string> oov;
  for (const auto& w : doc.expanded()) {
    if (table.contains(w)) {
      in_vocab.push_back(w);
    } else {
      if (strict_oov) {
        throw OovError(w, "strict mode");
      }
      oov.push_back(w);
    }
  }
  if (in_vocab.empty()) {
    throw EmptyDocumentError("document has no in-vocabulary words");
  }

  Rng rng = make_rng(seed);
  const BowDocument fixed = fix_length(BowDocument::from_tokens(in_vocab),
                                       config.fixed_length, rng);

  std::vector<std::string> noisy;
  noisy.reserve(config.fixed_length);
  for (const auto& w : fixed.expanded()) {
    noisy.push_back(obfuscate_word(table, w, eps, rng));
  }

  ObfuscationReport report;
  report.input_length = doc.length();
  report.output_words = BowDocument::from_tokens(noisy);
  report.oov_words = std::move(oov);
  report.seed = seed;
  report.epsilon = eps.epsilon;
  return report;
}

std::vector<DocumentOutcome> obfuscate_corpus(
    const EmbeddingTable& table, const std::vector<std::string>& docs,
    const PreprocessConfig& config, const PrivacyParameter& eps,
    std::uint64_t base_seed, bool strict_oov) {
  std::vector<DocumentOutcome> outcomes;
  outcomes.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    DocumentOutcome outcome;
    outcome.index = i;
    outcome.seed = derive_seed(base_seed, i);
    try {
      outcome.report = obfuscate_document(table, docs[i], config, eps,
                                          outcome.seed, strict_oov);
    } catch (const Error& e) {
      outcome.error = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

std::set<std::string> load_stopwords_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open stopwords file: " + path);
  }
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.insert(line);
  }
  return words;
}

}  // namespace textdp
