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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wigner/bigint.hpp"

namespace wigner {

using Complex = std::complex<double>;

enum class LawKind { gaussian, rademacher, uniform };
enum class Symmetry { complex_hermitian, real_symmetric };

std::string_view to_string(LawKind kind);
std::string_view to_string(Symmetry symmetry);
/// Accepts "gaussian", "rademacher", "uniform" (and "uniform-symmetric").
LawKind parse_law(std::string_view text);
/// Accepts "complex", "complex-hermitian", "real", "real-symmetric".
Symmetry parse_symmetry(std::string_view text);

//---------------------------------------------------------------------------//
/*!
 * Symmetric law of a single real component of a matrix entry.
 *
 * All odd moments vanish. The 2k-th moment is component_variance^k times a
 * rational shape coefficient: (2k-1)!! for the Gaussian, 1 for the
 * Rademacher law and 3^k / (2k+1) for the symmetric uniform law.
 */
class EntryLaw {
 public:
  EntryLaw(LawKind kind, double component_variance);

  LawKind kind() const { return kind_; }
  double component_variance() const { return variance_; }

  /// E[X^order]; zero for odd orders.
  double moment(int order) const;

  /// Shape coefficient c_k with E[X^{2k}] = c_k * variance^k, exactly.
  Rational moment_coefficient(int k) const;

  /// Smallest beta with E[X^{2k}] <= (beta k)^k for 1 <= k <= max_k.
  double beta_bound(int max_k = 12) const;

  /// Draw one component from a uniform in (0,1] and an independent sign
  /// source, scaled to the component variance.
  double transform(double standard_normal, double unit, bool sign) const;

 private:
  LawKind kind_;
  double variance_;
};

struct EnsembleConfig {
  std::size_t n = 1;
  double sigma = 1.0;
  double theta = 0.0;
  std::optional<double> diag_sigma;  // defaults to sigma
  Symmetry symmetry = Symmetry::complex_hermitian;
  LawKind law = LawKind::gaussian;
  std::uint64_t master_seed = 0;

  double diagonal_sigma() const { return diag_sigma.value_or(sigma); }

  /// Throws ConfigError when n < 1, sigma <= 0, theta < 0 or diag_sigma <= 0.
  void validate() const;

  /// Law of the real (and, for Hermitian matrices, imaginary) part of an
  /// off-diagonal entry: variance sigma^2/2 per part when complex,
  /// sigma^2 when real.
  EntryLaw offdiagonal_law() const;
  EntryLaw diagonal_law() const;
};

/// FNV-1a hash over the canonical text form of the config.
std::uint64_t config_hash(const EnsembleConfig& config);

//---------------------------------------------------------------------------//
/*!
 * Dense square matrix, row-major. Real symmetric samples keep a zero
 * imaginary part so that one type serves both symmetry classes.
 */
class MatrixSample {
 public:
  MatrixSample(std::size_t dim, Symmetry symmetry);

  std::size_t dim() const { return dim_; }
  Symmetry symmetry() const { return symmetry_; }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<Complex>& entries() const { return entries_; }

  std::uint64_t config_hash = 0;
  std::uint64_t sample_index = 0;

  /// Entry (j,i) is the exact conjugate of (i,j); every entry finite.
  bool is_hermitian() const;
  double max_abs_entry() const;
  Complex trace() const;

 private:
  std::size_t dim_;
  Symmetry symmetry_;
  std::vector<Complex> entries_;
};

MatrixSample sample_wigner(const EnsembleConfig& config, std::uint64_t sample_index);
MatrixSample deformation_matrix(std::size_t n, double theta);
/// W / sqrt(n) + A, from the same draw as sample_wigner(config, sample_index).
MatrixSample sample_deformed(const EnsembleConfig& config, std::uint64_t sample_index);
/// W / sqrt(n) without the deformation, for paired (interlacing) comparisons.
MatrixSample sample_scaled_wigner(const EnsembleConfig& config, std::uint64_t sample_index);

enum class RegimeLabel { supercritical, critical, subcritical };
std::string_view to_string(RegimeLabel label);

class Regime {
 public:
  RegimeLabel label() const { return label_; }
  double theta() const { return theta_; }
  double sigma() const { return sigma_; }

  bool has_rho_theta() const { return theta_ > 0.0; }
  /// theta + sigma^2 / theta. Throws RegimeError at theta == 0.
  double rho_theta() const;
  /// sigma * sqrt(1 - sigma^2/theta^2). Throws RegimeError unless theta > sigma.
  double sigma_theta() const;

 private:
  friend Regime regime_of(double theta, double sigma);
  Regime(RegimeLabel label, double theta, double sigma)
      : label_(label), theta_(theta), sigma_(sigma) {}

  RegimeLabel label_;
  double theta_;
  double sigma_;
};

Regime regime_of(double theta, double sigma);

/// Debug dump: one text row per matrix row, tokens "re" (real symmetric)
/// or "re+imI" / "re-imI" (Hermitian), row-major.
void write_matrix(std::ostream& out, const MatrixSample& matrix);

}  // namespace wigner
