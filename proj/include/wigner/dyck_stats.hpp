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

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wigner/bigint.hpp"
#include "wigner/path_model.hpp"
#include "wigner/report.hpp"

namespace wigner {

//---------------------------------------------------------------------------//
/*!
 * Splitting of x in T_{m,l} as y_0 U^{l_1} y_1 U^{l_2} ... U^{l_p'} y_p',
 * where every y_i is a Dyck path (possibly empty) and sum l_i = l.
 */
struct DyckDecomposition {
  int p_prime = 0;
  std::vector<int> rises;            // l_1, ..., l_p'
  std::vector<Trajectory> subpaths;  // y_0, ..., y_p'

  /// Half-lengths m_0, ..., m_p' (the class of the trajectory).
  std::vector<int> block_sizes() const;
};

DyckDecomposition dyck_decompose(const Trajectory& x);
Trajectory dyck_compose(const DyckDecomposition& decomposition);

/// Walks of `steps` steps from 0 to end_level within [0, ceiling].
BigInt bounded_path_count(int steps, int ceiling, int end_level);

/// Nonnegative walks of `steps` steps from 0 to k:
/// C(steps, (steps+k)/2) - C(steps, (steps+k)/2 + 1). Zero on parity mismatch.
BigInt ballot_count(int steps, int k);

/// Dyck paths of length 2m with height <= k, by the strip reflection formula
/// sum_j [C(2m, m + j(k+2)) - C(2m, m - 1 + j(k+2))].
BigInt confined_dyck_count(int m, int k);

/// Exact pmf of max_t y(t): key k, value P(max = k). An empty class means a
/// single uniform Dyck path of length 2m; otherwise the blocks are
/// independent uniform Dyck paths of the given half-lengths (sum = m) and
/// P(max <= k) = prod_i D(m_i, k) / Cat(m_i).
using Pmf = std::map<int, Rational>;
inline constexpr int kMaxLevelDistributionM = 2000;
Pmf max_level_distribution(int m, const std::vector<int>& class_blocks = {});

/// Blocks of near-equal size (differing by at most one) summing to m.
std::vector<int> balanced_blocks(int m, int count);

struct TailBoundReport {
  std::vector<int> m_grid;
  double c0 = 1.0 / 96.0;
  std::vector<double> q;  // Q(m) = max_{k >= 4 C0 sqrt m} P(max=k) sqrt(m) exp(C0 k^2 / 2m)
  double q_sup = 0.0;
  // exp_moments[family][c_index][m_index] = E exp(C max / sqrt m)
  std::vector<std::string> families;
  std::vector<double> c_values;
  std::vector<std::vector<std::vector<double>>> exp_moments;
  std::vector<std::vector<double>> spread;  // [family][c_index] = max/min over the grid
  double spread_limit = 2.0;
  bool pass = true;
};

/// Uniform boundedness of E exp(C max y / sqrt m) over m, per
/// class family (one block, two and four equal blocks, sqrt(m) blocks of size
/// sqrt(m), unit blocks) and C in {1/2, 1, 2}. Passes when, for C = 1, every
/// family varies by less than spread_limit across the grid.
TailBoundReport tail_bound_check(const std::vector<int>& m_grid, double c0 = 1.0 / 96.0);

struct ClassCountReport {
  int s = 0;
  double c0 = 0.0;
  bool holds = true;            // T_{m,l} <= (l+1) exp(-c0 l^2/s) T_{s,0} for all even l <= 2s
  int first_failure_l = -1;
  double largest_valid_c0 = 0;  // min over even l > 0 of s/l^2 log((l+1) T_{s,0} / T_{m,l})
  bool monotone = true;         // T_{m,l}/T_{s,0} strictly decreasing in even l
};

/// Universal constant from the proof: log(1 + x) >= x log 2 on [0, 1].
inline const double kClassCountC0 = 0.17328679513998632;  // log(2) / 4

/// Checks the inequality for every even l in [0, min(2s, max_l)] with 100-digit logs.
ClassCountReport class_count_bound_check(int s, double c0 = kClassCountC0, int max_l = -1);

struct LevelReturns {
  bool gamma = false;  // some level receives >= j down-step returns with no dip below it
  int returns_to_zero = 0;
};

LevelReturns level_returns(const Trajectory& x, int j);

/// CSV "m,k,probability".
void write_pmf_csv(std::ostream& out, int m, const Pmf& pmf);

CheckRecord to_record(const TailBoundReport& report);
CheckRecord to_record(const ClassCountReport& report);

}  // namespace wigner
