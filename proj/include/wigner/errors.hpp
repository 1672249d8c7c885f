// Copyright 2026 The wigner-deform Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

// Invalid parameters supplied to a constructor or a config parser.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside of its mathematical domain
// (wrong path shape, no shared edge, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A quantity that only exists in a given phase (e.g. the fluctuation scale
// above the critical point) was requested outside of it.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exhaustive enumeration or brute-force sums refused because the input
// exceeds the configured guard.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace wigner
