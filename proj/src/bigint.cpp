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

#include "wigner/bigint.hpp"

#include <cmath>
#include <stdexcept>

#include "wigner/errors.hpp"

namespace wigner {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BinomialTable::BinomialTable(int max_n) {
  if (max_n < 0) throw ConfigError("BinomialTable: negative size");
  rows_.resize(static_cast<std::size_t>(max_n) + 1);
  rows_[0] = {BigInt(1)};
  for (int n = 1; n <= max_n; ++n) {
    auto& row = rows_[static_cast<std::size_t>(n)];
    const auto& prev = rows_[static_cast<std::size_t>(n - 1)];
    row.resize(static_cast<std::size_t>(n) + 1);
    row.front() = 1;
    row.back() = 1;
    for (int k = 1; k < n; ++k) {
      row[static_cast<std::size_t>(k)] =
          prev[static_cast<std::size_t>(k - 1)] + prev[static_cast<std::size_t>(k)];
    }
  }
}

const BigInt& BinomialTable::operator()(int n, int k) const {
  if (n > max_n()) throw SizeGuardError("BinomialTable: n beyond table size");
  if (n < 0 || k < 0 || k > n) return zero_;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

BigInt factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  BigInt result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

double log_big(const BigInt& value) {
  if (value <= 0) throw DomainError("log_big: non-positive argument");
  const auto bits = static_cast<long>(boost::multiprecision::msb(value));
  if (bits < 960) return std::log(value.convert_to<double>());
  // Keep the top 64 bits and account for the shift separately.
  const long shift = bits - 63;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace wigner
