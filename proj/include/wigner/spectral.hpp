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
#include <optional>
#include <span>
#include <vector>

#include "wigner/ensembles.hpp"

namespace wigner {

struct Spectrum {
  std::vector<double> values;  // descending
  std::size_t dim = 0;
  double residual_tol = 0.0;
};

/// All eigenvalues of a Hermitian (or real symmetric) matrix: Householder
/// reduction to a real symmetric tridiagonal matrix, then implicit-shift QL.
/// Throws ConvergenceError naming the eigenvalue index when one eigenvalue
/// needs more than kMaxSweeps sweeps.
Spectrum eigenvalues(const MatrixSample& matrix);

/// Eigenvalues of the real symmetric tridiagonal matrix with the given
/// diagonal and sub-diagonal (off.size() == diag.size() - 1), descending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off);

inline constexpr int kMaxSweeps = 60;

/// sum_i lambda_i^power.
double trace_power(const Spectrum& spectrum, int power);
double trace_power(const MatrixSample& matrix, int power);
/// Re Tr(M^power) from repeated dense multiplication; the cross-check route.
double trace_power_by_multiplication(const MatrixSample& matrix, int power);

struct InterlacingReport {
  bool interlaced = true;
  std::size_t violations = 0;
  double max_violation = 0.0;  // largest amount by which an inequality fails
  std::size_t worst_index = 0;
  double slack = 0.0;
};

/// Checks lambda_1 >= base_1 >= lambda_2 >= base_2 >= ... >= lambda_N >= base_N
/// for a positive rank-one perturbation, within 1e-8 * (1 + max|lambda|).
InterlacingReport interlacing_check(const Spectrum& deformed, const Spectrum& base);

struct FluctuationSample {
  std::vector<double> xi;      // 2 sqrt(N) (lambda_j / rho_theta - 1), positive lambda_j
  std::vector<double> tau;     // N^{2/3} (lambda_j + 2 sigma), negative lambda_j
  std::vector<double> edge_u;  // N^{2/3} (lambda_j - 2 sigma), j <= k
  std::optional<double> outlier_deviation;  // sqrt(N) (lambda_1 - rho_theta), supercritical only
};

FluctuationSample rescaled_fluctuation(const Spectrum& spectrum, const Regime& regime,
                                       std::size_t n, std::size_t k);

/// sqrt(N)(lambda_1 - rho_theta). Throws RegimeError outside the supercritical phase.
double outlier_deviation(const Spectrum& spectrum, const Regime& regime, std::size_t n);

/// Inverse of the xi rescaling.
double lambda_from_xi(double xi, double rho_theta, std::size_t n);

struct OutlierCensus {
  std::size_t count_mid = 0;  // i >= 2 with lambda_i > 2 sigma + (rho_theta - 2 sigma)/2
  std::size_t count_far = 0;  // lambda_i > rho_theta (1 + N^{-1/3})
};

OutlierCensus outlier_census(const Spectrum& spectrum, double theta, double sigma, std::size_t n);

/// CSV with header "index,lambda", index starting at 1.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace wigner
