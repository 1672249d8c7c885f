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

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wigner {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, k); zero whenever k < 0 or k > n (so that
/// expressions like C(L, m-1) at m = 0 vanish without special casing).
BigInt binomial(std::int64_t n, std::int64_t k);

/// Memoised Pascal triangle for repeated lookups in grid sweeps.
class BinomialTable {
 public:
  explicit BinomialTable(int max_n);

  int max_n() const { return static_cast<int>(rows_.size()) - 1; }
  const BigInt& operator()(int n, int k) const;

 private:
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_{0};
};

BigInt factorial(int n);

/// Natural logarithm of a positive big integer, accurate to double precision
/// even when the value overflows a double.
double log_big(const BigInt& value);

}  // namespace wigner
