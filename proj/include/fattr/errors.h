/*
 * Copyright 2026 The fattr Authors.
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

#ifndef FATTR_ERRORS_H_
#define FATTR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fattr {

// Precondition violated by the caller (dimension mismatch, bad range, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point carries two distinct labels under the full projection, so no
// subset of features can make it functional.
class NotFunctionalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No free coordinate slot is left on some axis while building a hypercube.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Task generation ran out of its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed task file or report input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fattr

#endif  // FATTR_ERRORS_H_
