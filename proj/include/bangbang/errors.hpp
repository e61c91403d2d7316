// Copyright 2026 The bangbang Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace bangbang {

// Argument lies outside the mathematical domain of a function (log of a
// nonpositive number, time outside an arc's interval of existence, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Result exceeds the double exponent range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Input data violates a documented invariant (negative drag, v0 < 0, ...).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iteration failed to meet its tolerance within the iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The boundary data admit no bang-bang solution.
class InfeasibleProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bangbang
