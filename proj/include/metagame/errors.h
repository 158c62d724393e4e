/*
 * Copyright 2026 The Metagame Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef METAGAME_ERRORS_H_
#define METAGAME_ERRORS_H_

#include <stdexcept>
#include <string>

namespace metagame {

// Invalid arguments are reported with std::invalid_argument. The classes below
// cover the failure modes the CLI maps onto distinct exit codes.

// The request needs more players than the exact engines enumerate.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model lacks a capability (e.g. derivatives) that the method requires.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sampling estimator could not produce an estimate (singular system).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An external attribution table lacks a value the engine needs.
class MissingCoalitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed game or result document. `where` locates the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace metagame

#endif  // METAGAME_ERRORS_H_
