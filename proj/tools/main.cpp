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

// textdp command-line front end.
//
// Subcommands: obfuscate, wmd, sample, verify, nearest.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 verification failure.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "textdp/embedding.hpp"
#include "textdp/error.hpp"
#include "textdp/laplace.hpp"
#include "textdp/obfuscate.hpp"
#include "textdp/transport.hpp"
#include "textdp/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitVerifyFailed = 4;

std::string format_double(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

std::uint64_t effective_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw textdp::ParseError("cannot open input file: " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Reads a whole file as one whitespace-separated word list; reports the
// first out-of-vocabulary token with its position.
textdp::BowDocument read_document(const std::string& path,
                                  const textdp::EmbeddingTable& table) {
  std::ifstream in(path);
  if (!in) {
    throw textdp::ParseError("cannot open document file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::vector<std::string> tokens;
  std::string token;
  std::istringstream stream(buffer.str());
  std::size_t position = 0;
  while (stream >> token) {
    ++position;
    if (!table.contains(token)) {
      throw textdp::OovError(token, path + ", token " +
                                        std::to_string(position));
    }
    tokens.push_back(token);
  }
  if (tokens.empty()) {
    throw textdp::EmptyDocumentError("document file is empty: " + path);
  }
  return textdp::BowDocument::from_tokens(tokens);
}

struct ObfuscateArgs {
  std::string embeddings_path;
  std::string input_path;
  std::string output_path;
  std::string report_path;
  std::string stopwords_path;
  double epsilon = 0.0;
  std::size_t fixed_length = 0;
  std::optional<std::uint64_t> seed;
  bool strict_oov = false;
  bool lowercase = true;
};

int run_obfuscate(const ObfuscateArgs& args) {
  const auto table = textdp::EmbeddingTable::load_file(args.embeddings_path);
  const auto docs = read_lines(args.input_path);

  textdp::PreprocessConfig config;
  config.fixed_length = args.fixed_length;
  config.lowercase = args.lowercase;
  if (!args.stopwords_path.empty()) {
    config.stopwords = textdp::load_stopwords_file(args.stopwords_path);
  }

  const std::uint64_t seed = effective_seed(args.seed);
  const textdp::PrivacyParameter eps(args.epsilon);
  const auto outcomes =
      textdp::obfuscate_corpus(table, docs, config, eps, seed, args.strict_oov);

  std::ofstream out(args.output_path);
  if (!out) {
    throw textdp::ParseError("cannot open output file: " + args.output_path);
  }
  std::ofstream report;
  if (!args.report_path.empty()) {
    report.open(args.report_path);
    if (!report) {
      throw textdp::ParseError("cannot open report file: " + args.report_path);
    }
  }

  std::size_t failures = 0;
  std::size_t oov_total = 0;
  for (const auto& outcome : outcomes) {
    nlohmann::json record;
    record["index"] = outcome.index;
    record["seed"] = outcome.seed;
    record["epsilon"] = args.epsilon;
    if (outcome.ok()) {
      out << outcome.report->output_words.to_string() << "\n";
      oov_total += outcome.report->oov_words.size();
      record["input_length"] = outcome.report->input_length;
      record["output_length"] = outcome.report->output_words.length();
      record["oov"] = outcome.report->oov_words;
    } else {
      // Keep line alignment with the input corpus.
      out << "\n";
      ++failures;
      record["error"] = outcome.error;
      std::cerr << "document " << outcome.index << ": " << outcome.error
                << "\n";
    }
    if (report.is_open()) {
      report << record.dump() << "\n";
    }
  }

  std::cerr << "seed: " << seed << "\n";
  std::cerr << "processed " << outcomes.size() << " documents, " << failures
            << " failed, " << oov_total << " OOV tokens skipped\n";
  return failures == 0 ? kExitOk : kExitData;
}

struct WmdArgs {
  std::string embeddings_path;
  std::string doc1_path;
  std::string doc2_path;
  bool dump_flow = false;
  bool cross_check = false;
};

int run_wmd(const WmdArgs& args) {
  const auto table = textdp::EmbeddingTable::load_file(args.embeddings_path);
  const auto d1 = read_document(args.doc1_path, table);
  const auto d2 = read_document(args.doc2_path, table);

  const auto result = textdp::wmd(table, d1, d2);
  std::cout << format_double(result.distance, 9) << "\n";

  if (args.cross_check) {
    if (d1.length() != d2.length()) {
      throw textdp::DimensionError(
          "--cross-check requires equal-length documents");
    }
    const auto matching = textdp::wmd_assignment(table, d1, d2);
    const double via_assignment =
        matching.total_cost / static_cast<double>(d1.length());
    std::cout << format_double(via_assignment, 9) << "\n";
  }
  if (args.dump_flow) {
    for (std::size_t i = 0; i < result.flow.rows; ++i) {
      for (std::size_t j = 0; j < result.flow.cols; ++j) {
        if (j > 0) std::cout << ' ';
        std::cout << format_double(result.flow.at(i, j), 9);
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

struct SampleArgs {
  std::size_t dim = 0;
  double epsilon = 0.0;
  std::size_t count = 1;
  std::optional<std::uint64_t> seed;
  bool decompose = false;
};

int run_sample(const SampleArgs& args) {
  const textdp::PrivacyParameter eps(args.epsilon);
  const std::uint64_t seed = effective_seed(args.seed);
  std::cerr << "seed: " << seed << "\n";
  auto rng = textdp::make_rng(seed);
  for (std::size_t i = 0; i < args.count; ++i) {
    const auto sample = textdp::draw_noise(args.dim, eps, rng);
    if (args.decompose) {
      std::cout << format_double(sample.radius, 17);
      for (const double c : sample.direction) {
        std::cout << ' ' << format_double(c, 17);
      }
    } else {
      for (std::size_t j = 0; j < sample.offset.size(); ++j) {
        if (j > 0) std::cout << ' ';
        std::cout << format_double(sample.offset[j], 17);
      }
    }
    std::cout << "\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string embeddings_path;
  double epsilon = 0.0;
  std::size_t doc_length = 2;
  double bound_scale = 1.0;
  bool words_only = false;
};

int run_verify(const VerifyArgs& args) {
  const auto table = textdp::EmbeddingTable::load_file(args.embeddings_path);
  if (table.dimension() != 1) {
    std::cerr << "error: exact verification requires 1-D embeddings (got k="
              << table.dimension() << ")\n";
    return kExitUsage;
  }
  const textdp::PrivacyParameter eps(args.epsilon);

  std::cout << "mode: exact-1d\n";
  std::cout << "vocabulary: " << table.size() << " words\n";
  std::cout << "epsilon: " << args.epsilon << "\n";

  const auto word_result = textdp::check_word_privacy(table, eps);
  std::cout << "word-level: pairs=" << word_result.pairs_checked
            << " worst_excess=" << word_result.max_log_ratio_excess << " "
            << (word_result.passed ? "pass" : "FAIL") << "\n";

  bool all_passed = word_result.passed;
  if (!args.words_only) {
    const auto docs =
        textdp::enumerate_documents(table.tokens(), args.doc_length);
    textdp::DocCheckOptions options;
    options.bound_scale = args.bound_scale;
    const auto doc_result =
        textdp::check_document_indistinguishability(table, docs, eps, options);
    std::cout << "doc-level(length=" << args.doc_length
              << "): pairs=" << doc_result.pairs_checked
              << " worst_excess=" << doc_result.max_log_ratio_excess << " "
              << (doc_result.passed ? "pass" : "FAIL") << "\n";
    all_passed = all_passed && doc_result.passed;
  }
  std::cout << "note: guarantee certified for equal-length documents; "
               "fixed-length preprocessing maps all inputs to one length\n";
  std::cout << "RESULT: " << (all_passed ? "PASS" : "FAIL") << "\n";
  return all_passed ? kExitOk : kExitVerifyFailed;
}

struct NearestArgs {
  std::string embeddings_path;
  std::vector<double> components;
};

int run_nearest(const NearestArgs& args) {
  const auto table = textdp::EmbeddingTable::load_file(args.embeddings_path);
  std::cout << table.nearest_word(args.components) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric differential privacy for bag-of-words documents"};
  app.require_subcommand(1);

  ObfuscateArgs obf;
  auto* obf_cmd =
      app.add_subcommand("obfuscate", "obfuscate a corpus, one document per line");
  obf_cmd->add_option("--embeddings", obf.embeddings_path, "embedding table file")
      ->required();
  obf_cmd->add_option("--input", obf.input_path, "corpus file")->required();
  obf_cmd->add_option("--output", obf.output_path, "obfuscated corpus file")
      ->required();
  obf_cmd->add_option("--report", obf.report_path,
                      "JSON-lines report sidecar (optional)");
  obf_cmd->add_option("--stopwords", obf.stopwords_path,
                      "stopword file, one token per line");
  obf_cmd->add_option("--epsilon", obf.epsilon, "privacy parameter")
      ->required();
  obf_cmd->add_option("--length", obf.fixed_length,
                      "fixed output document length")
      ->required();
  obf_cmd->add_option("--seed", obf.seed, "RNG seed (default: random, printed)");
  obf_cmd->add_flag("--strict-oov", obf.strict_oov,
                    "abort on out-of-vocabulary words instead of skipping");
  obf_cmd->add_flag("--lowercase,!--no-lowercase", obf.lowercase,
                    "lowercase ASCII letters during preprocessing (default on)");

  WmdArgs wmd_args;
  auto* wmd_cmd = app.add_subcommand(
      "wmd", "Word Mover's Distance between two word-list files");
  wmd_cmd->add_option("--embeddings", wmd_args.embeddings_path,
                      "embedding table file")
      ->required();
  wmd_cmd->add_option("doc1", wmd_args.doc1_path, "first document file")
      ->required();
  wmd_cmd->add_option("doc2", wmd_args.doc2_path, "second document file")
      ->required();
  wmd_cmd->add_flag("--flow", wmd_args.dump_flow, "print the optimal flow matrix");
  wmd_cmd->add_flag("--cross-check", wmd_args.cross_check,
                    "also print the assignment-path value (equal lengths)");

  SampleArgs sample_args;
  auto* sample_cmd =
      app.add_subcommand("sample", "draw n-dimensional Laplace noise");
  sample_cmd->add_option("--dim", sample_args.dim, "dimension")->required();
  sample_cmd->add_option("--epsilon", sample_args.epsilon, "privacy parameter")
      ->required();
  sample_cmd->add_option("--count", sample_args.count, "number of samples");
  sample_cmd->add_option("--seed", sample_args.seed,
                         "RNG seed (default: random, printed)");
  sample_cmd->add_flag("--decompose", sample_args.decompose,
                       "print radius and unit direction instead of the offset");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand(
      "verify", "exact privacy verification on a 1-D vocabulary");
  verify_cmd
      ->add_option("--embeddings", verify_args.embeddings_path,
                   "1-D embedding table file")
      ->required();
  verify_cmd->add_option("--epsilon", verify_args.epsilon, "privacy parameter")
      ->required();
  verify_cmd->add_option("--doc-length", verify_args.doc_length,
                         "document length for the document-level check");
  verify_cmd->add_option("--bound-scale", verify_args.bound_scale,
                         "scale the privacy bound (negative control < 1)");
  verify_cmd->add_flag("--words-only", verify_args.words_only,
                       "run only the word-level check");

  NearestArgs nearest_args;
  auto* nearest_cmd =
      app.add_subcommand("nearest", "nearest vocabulary word to a vector");
  nearest_cmd
      ->add_option("--embeddings", nearest_args.embeddings_path,
                   "embedding table file")
      ->required();
  nearest_cmd
      ->add_option("components", nearest_args.components, "vector components")
      ->required()
      ->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (obf_cmd->parsed()) return run_obfuscate(obf);
    if (wmd_cmd->parsed()) return run_wmd(wmd_args);
    if (sample_cmd->parsed()) return run_sample(sample_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (nearest_cmd->parsed()) return run_nearest(nearest_args);
  } catch (const textdp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
