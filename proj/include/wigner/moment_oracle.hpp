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
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "wigner/ensembles.hpp"

namespace wigner {

//---------------------------------------------------------------------------//
/*!
 * Joint moments of one off-diagonal entry W and one diagonal entry W_ii.
 *
 * joint(a, b) = E[W^a conj(W)^b] is built from the component moments of
 * Re W and Im W through the expansion of (X + iY)^a (X - iY)^b. For real
 * symmetric matrices conj(W) = W and joint(a, b) = E[W^{a+b}].
 */
class MomentModel {
 public:
  MomentModel(Symmetry symmetry, LawKind law, double sigma, double diag_sigma,
              int max_order = 16);
  static MomentModel from_config(const EnsembleConfig& config, int max_order = 16);

  Symmetry symmetry() const { return symmetry_; }
  LawKind law() const { return law_; }
  double sigma() const { return sigma_; }
  double diag_sigma() const { return diag_sigma_; }
  double beta_bound() const { return beta_; }
  int max_order() const { return max_order_; }

  /// Throws DomainError when a + b exceeds max_order.
  double joint(int a, int b) const;
  double diagonal(int r) const;

 private:
  Symmetry symmetry_;
  LawKind law_;
  double sigma_;
  double diag_sigma_;
  int max_order_;
  double beta_ = 0.0;
  std::vector<std::vector<double>> joint_;
  std::vector<double> diagonal_;
};

/// E[(W/sqrt n + t)^a (conj W/sqrt n + t)^b] with t = theta / n; a diagonal
/// edge uses the real diagonal moments with exponent a + b.
double edge_moment(const MomentModel& model, int a, int b, bool is_diagonal, double theta,
                   std::size_t n);

inline constexpr double kOracleMaxTerms = 1e8;

/// sum over all n^L closed paths of prod over edges of edge_moment, with the
/// orientation counts of every unordered edge. Neumaier summation inside each
/// leading-vertex partition, partitions combined in vertex order. Throws
/// SizeGuardError when n^L > 1e8.
double exact_trace_expectation(std::size_t n, int length, const MomentModel& model, double theta);

struct AsymptoticPredictions {
  int s = 0;
  double theta = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
  double log_rho_power = 0.0;      // 2s log(rho_theta), theta > 0
  double marked_sum_ratio = 0.0;   // S_marked / rho^{2s}, theta > 0
  double supercritical_target = 0.0;  // 1 - sigma^2/theta^2 (theta > sigma), else 0
  double marked_limit_ratio = 1.0;    // rho^{2s} (1 + o(1)) / rho^{2s}
  double unmarked_limit_ratio = 0.0;  // sigma^2/theta^2
  double even_term = 0.0;            // n Cat(s) sigma^{2s}
  double even_term_stirling = 0.0;   // n (2 sigma)^{2s} / (sqrt(pi) s^{3/2})
  double edge_ratio = 0.0;           // sum_{l even > 0} T_{m,l} theta^l sigma^{2m} / (2 sigma)^{2s}
  double edge_ratio_with_unmarked = 0.0;  // same with C(2s, m) in place of T_{m,l}
  double critical_target = 0.5;
  double subcritical_target = 0.0;
};

/// Leading-order quantities for E Tr M^{2s}. S_marked = sum over even l >= 2
/// of T_{m,l} theta^l sigma^{2m} exp(-(l+m)^2 / 2n), evaluated in log space.
AsymptoticPredictions asymptotic_predictions(int s, double theta, double sigma, std::size_t n);

struct UniversalityProbe {
  std::vector<std::size_t> n_list;
  int length = 0;
  double theta = 0.0;
  std::vector<double> first;
  std::vector<double> second;
  std::vector<double> relative_difference;  // |first - second| / |first|
  bool decreasing = true;
  bool finite = true;
};

UniversalityProbe trace_universality_probe(const std::vector<std::size_t>& n_list, int length,
                                           double theta, const MomentModel& first,
                                           const MomentModel& second);

/// {n, L, theta, sigma, law, symmetry, value}
nlohmann::ordered_json oracle_json(std::size_t n, int length, double theta,
                                   const MomentModel& model, double value);

}  // namespace wigner
