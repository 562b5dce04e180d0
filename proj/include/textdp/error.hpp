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

#ifndef TEXTDP_ERROR_HPP_
#define TEXTDP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace textdp {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Malformed input data (embedding files, corpus lines, numbers).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(message) {}
};

// A word was looked up that is not in the embedding vocabulary.
class OovError : public Error {
 public:
  explicit OovError(const std::string& token)
      : Error("out-of-vocabulary word: '" + token + "'"), token_(token) {}
  OovError(const std::string& token, const std::string& context)
      : Error("out-of-vocabulary word: '" + token + "' (" + context + ")"),
        token_(token) {}

  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

// Vector length does not match the expected dimension.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message) : Error(message) {}
};

// A document became (or was) empty where a non-empty one is required.
class EmptyDocumentError : public Error {
 public:
  explicit EmptyDocumentError(const std::string& message) : Error(message) {}
};

// An enumeration bound was exceeded (factorial oracle, output-space size).
class BoundsError : public Error {
 public:
  explicit BoundsError(const std::string& message) : Error(message) {}
};

// Invariant violations on constructed values (bad epsilon, empty table, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error(message) {}
};

}  // namespace textdp

#endif  // TEXTDP_ERROR_HPP_
