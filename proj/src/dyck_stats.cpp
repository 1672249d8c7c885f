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


#include "wigner/dyck_stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wigner/errors.hpp"

namespace wigner {

using boost::multiprecision::cpp_bin_float_100;

// Decomposition --------------------------------------------------------------

std::vector<int> DyckDecomposition::block_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(subpaths.size());
  for (const auto& y : subpaths) sizes.push_back(y.length() / 2);
  return sizes;
}

namespace {

Trajectory slice(const std::vector<int>& steps, int from, int to) {
  return Trajectory(std::vector<int>(steps.begin() + from, steps.begin() + to));
}

}  // namespace

DyckDecomposition dyck_decompose(const Trajectory& x) {
  const auto levels = x.levels();
  const auto& steps = x.steps();
  const int length = x.length();
  const int l = x.end_level();
  DyckDecomposition out;

  int last_zero = 0;
  for (int t = 0; t <= length; ++t) {
    if (levels[static_cast<std::size_t>(t)] == 0) last_zero = t;
  }
  out.subpaths.push_back(slice(steps, 0, last_zero));

  int now = last_zero;
  int base = 0;
  while (now < length) {
    // Lowest level reached by a down step after `now`.
    int level = -1;
    for (int t = now + 1; t <= length; ++t) {
      if (steps[static_cast<std::size_t>(t - 1)] == -1) {
        const int h = levels[static_cast<std::size_t>(t)];
        if (level < 0 || h < level) level = h;
      }
    }
    if (level < 0) {
      out.rises.push_back(l - base);
      out.subpaths.push_back(Trajectory());
      break;
    }
    int first = -1;
    int last = -1;
    for (int t = now + 1; t <= length; ++t) {
      if (levels[static_cast<std::size_t>(t)] == level) {
        if (first < 0) first = t;
        last = t;
      }
    }
    out.rises.push_back(level - base);
    out.subpaths.push_back(slice(steps, first, last));
    now = last;
    base = level;
    if (now == length && l - base > 0) {
      out.rises.push_back(l - base);
      out.subpaths.push_back(Trajectory());
    }
  }
  out.p_prime = static_cast<int>(out.rises.size());
  return out;
}

Trajectory dyck_compose(const DyckDecomposition& d) {
  if (d.subpaths.size() != d.rises.size() + 1) {
    throw DomainError("dyck_compose: need p' + 1 blocks for p' rises");
  }
  std::vector<int> steps(d.subpaths.front().steps());
  for (std::size_t i = 0; i < d.rises.size(); ++i) {
    if (d.rises[i] < 1) throw DomainError("dyck_compose: rises must be positive");
    steps.insert(steps.end(), static_cast<std::size_t>(d.rises[i]), 1);
    const auto& y = d.subpaths[i + 1];
    if (y.end_level() != 0) throw DomainError("dyck_compose: block is not a Dyck path");
    steps.insert(steps.end(), y.steps().begin(), y.steps().end());
  }
  if (d.subpaths.front().end_level() != 0) {
    throw DomainError("dyck_compose: block is not a Dyck path");
  }
  return Trajectory(std::move(steps));
}

// Counting -------------------------------------------------------------------

BigInt bounded_path_count(int steps, int ceiling, int end_level) {
  if (steps < 0 || ceiling < 0) throw DomainError("bounded_path_count: negative argument");
  if (end_level < 0 || end_level > ceiling) return 0;
  std::vector<BigInt> current(static_cast<std::size_t>(ceiling) + 1, 0);
  std::vector<BigInt> next(current.size(), 0);
  current[0] = 1;
  for (int t = 0; t < steps; ++t) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (int h = 0; h <= ceiling; ++h) {
      const auto& here = current[static_cast<std::size_t>(h)];
      if (here == 0) continue;
      if (h < ceiling) next[static_cast<std::size_t>(h + 1)] += here;
      if (h > 0) next[static_cast<std::size_t>(h - 1)] += here;
    }
    current.swap(next);
  }
  return current[static_cast<std::size_t>(end_level)];
}

BigInt ballot_count(int steps, int k) {
  if (steps < 0 || k < 0 || k > steps || (steps + k) % 2 != 0) return 0;
  const int ups = (steps + k) / 2;
  return binomial(steps, ups) - binomial(steps, ups + 1);
}

namespace {

std::vector<BigInt> binomial_row(int n) {
  std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (int k = 0; k < n; ++k) {
    row[static_cast<std::size_t>(k + 1)] = row[static_cast<std::size_t>(k)] * (n - k) / (k + 1);
  }
  return row;
}

BigInt strip_count(const std::vector<BigInt>& row, int m, int k) {
  const int two_m = 2 * m;
  const auto c = [&](int j) -> BigInt {
    return (j < 0 || j > two_m) ? BigInt(0) : row[static_cast<std::size_t>(j)];
  };
  const int width = k + 2;
  BigInt total = 0;
  const int reach = m / width + 2;
  for (int j = -reach; j <= reach; ++j) total += c(m + j * width) - c(m - 1 + j * width);
  return total;
}

// D(m, k) for k = 0..m; D(m, k) = Cat(m) for k >= m.
std::vector<BigInt> confined_counts(int m) {
  const auto row = binomial_row(2 * m);
  std::vector<BigInt> out(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) out[static_cast<std::size_t>(k)] = strip_count(row, m, k);
  return out;
}

}  // namespace

BigInt confined_dyck_count(int m, int k) {
  if (m < 0 || k < 0) return 0;
  if (m == 0) return 1;
  return strip_count(binomial_row(2 * m), m, std::min(k, m));
}

Pmf max_level_distribution(int m, const std::vector<int>& class_blocks) {
  if (m < 0 || m > kMaxLevelDistributionM) {
    throw SizeGuardError("max_level_distribution: m outside [0, 2000]");
  }
  std::vector<int> blocks = class_blocks.empty() ? std::vector<int>{m} : class_blocks;
  if (std::accumulate(blocks.begin(), blocks.end(), 0) != m ||
      std::any_of(blocks.begin(), blocks.end(), [](int b) { return b < 0; })) {
    throw DomainError("max_level_distribution: block sizes must be >= 0 and sum to m");
  }
  std::map<int, int> multiplicity;
  for (const int b : blocks) {
    if (b > 0) ++multiplicity[b];
  }
  if (multiplicity.empty()) return Pmf{{0, Rational(1)}};

  const int top = multiplicity.rbegin()->first;
  std::vector<Rational> cdf(static_cast<std::size_t>(top) + 1, Rational(1));
  for (const auto& [size, count] : multiplicity) {
    const auto d = confined_counts(size);
    const BigInt& catalan = d.back();
    for (int k = 0; k < size; ++k) {
      Rational factor(d[static_cast<std::size_t>(k)], catalan);
      Rational power(1);
      for (int i = 0; i < count; ++i) power *= factor;
      cdf[static_cast<std::size_t>(k)] *= power;
    }
  }
  Pmf pmf;
  Rational previous(0);
  for (int k = 0; k <= top; ++k) {
    const Rational p = cdf[static_cast<std::size_t>(k)] - previous;
    if (p != 0) pmf[k] = p;
    previous = cdf[static_cast<std::size_t>(k)];
  }
  return pmf;
}

std::vector<int> balanced_blocks(int m, int count) {
  if (count < 1 || m < 0) throw DomainError("balanced_blocks: need count >= 1, m >= 0");
  std::vector<int> out(static_cast<std::size_t>(count), m / count);
  for (int i = 0; i < m % count; ++i) ++out[static_cast<std::size_t>(i)];
  return out;
}

// Bound checks ---------------------------------------------------------------

namespace {

double exp_moment(const Pmf& pmf, double c, int m) {
  const double scale = c / std::sqrt(static_cast<double>(m));
  double total = 0.0;
  for (const auto& [k, p] : pmf) total += p.convert_to<double>() * std::exp(scale * k);
  return total;
}

std::vector<int> family_blocks(const std::string& family, int m) {
  if (family == "one_block") return {m};
  if (family == "two_blocks") return balanced_blocks(m, 2);
  if (family == "four_blocks") return balanced_blocks(m, 4);
  if (family == "sqrt_blocks") {
    const int count = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(m)))));
    return balanced_blocks(m, count);
  }
  return std::vector<int>(static_cast<std::size_t>(m), 1);  // unit_blocks
}

}  // namespace

TailBoundReport tail_bound_check(const std::vector<int>& m_grid, double c0) {
  TailBoundReport report;
  report.m_grid = m_grid;
  report.c0 = c0;
  report.families = {"one_block", "two_blocks", "four_blocks", "sqrt_blocks", "unit_blocks"};
  report.c_values = {0.5, 1.0, 2.0};
  report.exp_moments.assign(report.families.size(),
                            std::vector<std::vector<double>>(report.c_values.size()));
  for (const int m : m_grid) {
    if (m < 1) throw DomainError("tail_bound_check: grid values must be >= 1");
    const double root = std::sqrt(static_cast<double>(m));
    for (std::size_t f = 0; f < report.families.size(); ++f) {
      const auto pmf = max_level_distribution(m, family_blocks(report.families[f], m));
      for (std::size_t c = 0; c < report.c_values.size(); ++c) {
        report.exp_moments[f][c].push_back(exp_moment(pmf, report.c_values[c], m));
      }
      if (f == 0) {
        double q = 0.0;
        for (const auto& [k, p] : pmf) {
          if (k < 4.0 * c0 * root) continue;
          const double value = p.convert_to<double>() * root *
                               std::exp(c0 * k * static_cast<double>(k) / (2.0 * m));
          q = std::max(q, value);
        }
        report.q.push_back(q);
        report.q_sup = std::max(report.q_sup, q);
      }
    }
  }
  report.spread.assign(report.families.size(), std::vector<double>(report.c_values.size(), 1.0));
  for (std::size_t f = 0; f < report.families.size(); ++f) {
    for (std::size_t c = 0; c < report.c_values.size(); ++c) {
      const auto& values = report.exp_moments[f][c];
      if (values.empty()) continue;
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      report.spread[f][c] = *hi / *lo;
      if (report.c_values[c] == 1.0 && !(report.spread[f][c] < report.spread_limit)) {
        report.pass = false;
      }
      if (!std::isfinite(*hi)) report.pass = false;
    }
  }
  return report;
}

ClassCountReport class_count_bound_check(int s, double c0, int max_l) {
  if (s < 1) throw DomainError("class_count_bound_check: s must be >= 1");
  ClassCountReport report;
  report.s = s;
  report.c0 = c0;
  const int top = max_l < 0 ? 2 * s : std::min(2 * s, max_l);
  const BigInt catalan = count_trajectories(s, 0);
  const cpp_bin_float_100 log_catalan = log(cpp_bin_float_100(catalan));
  double best = std::numeric_limits<double>::infinity();
  BigInt previous_num = 0;  // T_{m,l} / (l+1) compared across l via cross-multiplication
  int previous_l = -1;
  for (int l = 0; l <= top; l += 2) {
    const int m = s - l / 2;
    const BigInt t = count_trajectories(m, l);
    const cpp_bin_float_100 gap =
        log(cpp_bin_float_100(l + 1)) + log_catalan - log(cpp_bin_float_100(t));
    const cpp_bin_float_100 needed = cpp_bin_float_100(c0) * l * l / s;
    if (gap < needed && report.holds) {
      report.holds = false;
      report.first_failure_l = l;
    }
    if (l > 0) best = std::min(best, static_cast<double>(gap * s / (l * l)));
    if (previous_l >= 0 && !(t * (previous_l + 1) < previous_num * (l + 1))) {
      report.monotone = false;
    }
    previous_num = t;
    previous_l = l;
  }
  report.largest_valid_c0 = std::isfinite(best) ? best : 0.0;
  return report;
}

LevelReturns level_returns(const Trajectory& x, int j) {
  const auto levels = x.levels();
  const auto& steps = x.steps();
  LevelReturns out;
  int top = 0;
  for (const int h : levels) top = std::max(top, h);
  for (std::size_t t = 1; t < levels.size(); ++t) out.returns_to_zero += levels[t] == 0 ? 1 : 0;
  for (int h = 0; h <= top && !out.gamma; ++h) {
    int count = 0;
    for (std::size_t t = 1; t < levels.size(); ++t) {
      if (levels[t] < h) {
        count = 0;
      } else if (levels[t] == h && steps[t - 1] == -1) {
        if (++count >= j) {
          out.gamma = true;
          break;
        }
      }
    }
  }
  return out;
}

void write_pmf_csv(std::ostream& out, int m, const Pmf& pmf) {
  out << "m,k,probability\n";
  char buffer[64];
  for (const auto& [k, p] : pmf) {
    const auto end = std::to_chars(buffer, buffer + sizeof(buffer), p.convert_to<double>()).ptr;
    out << m << ',' << k << ',' << std::string_view(buffer, static_cast<std::size_t>(end - buffer))
        << '\n';
  }
}

CheckRecord to_record(const TailBoundReport& report) {
  CheckRecord record;
  record.check = "max_level_exponential_moment";
  record.params = {{"m_grid", report.m_grid}, {"C0", report.c0}, {"C", report.c_values}};
  record.pass = report.pass;
  nlohmann::ordered_json families = nlohmann::ordered_json::object();
  for (std::size_t f = 0; f < report.families.size(); ++f) {
    families[report.families[f]] = {{"exp_moments", report.exp_moments[f]},
                                    {"spread", report.spread[f]}};
  }
  record.detail = {{"Q", report.q}, {"Q_sup", report.q_sup}, {"families", families}};
  if (!report.pass) record.counterexample = "spread at C = 1 reached the limit";
  return record;
}

CheckRecord to_record(const ClassCountReport& report) {
  CheckRecord record;
  record.check = "class_count_gaussian_bound";
  record.params = {{"s", report.s}, {"C0", report.c0}};
  record.pass = report.holds && report.monotone;
  if (!report.holds) record.counterexample = "l=" + std::to_string(report.first_failure_l);
  if (!report.monotone) record.counterexample = "T_{m,l}/(l+1) not decreasing";
  record.detail = {{"largest_valid_C0", report.largest_valid_c0}, {"monotone", report.monotone}};
  return record;
}

}  // namespace wigner
