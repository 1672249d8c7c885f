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

#include "wigner/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "wigner/errors.hpp"
#include "wigner/philox.hpp"

namespace wigner {

std::string_view to_string(LawKind kind) {
  switch (kind) {
    case LawKind::gaussian: return "gaussian";
    case LawKind::rademacher: return "rademacher";
    case LawKind::uniform: return "uniform";
  }
  return "?";
}

std::string_view to_string(Symmetry symmetry) {
  return symmetry == Symmetry::complex_hermitian ? "complex" : "real";
}

LawKind parse_law(std::string_view text) {
  if (text == "gaussian") return LawKind::gaussian;
  if (text == "rademacher") return LawKind::rademacher;
  if (text == "uniform" || text == "uniform-symmetric") return LawKind::uniform;
  throw ConfigError("unknown entry law '" + std::string(text) + "'");
}

Symmetry parse_symmetry(std::string_view text) {
  if (text == "complex" || text == "complex-hermitian") return Symmetry::complex_hermitian;
  if (text == "real" || text == "real-symmetric") return Symmetry::real_symmetric;
  throw ConfigError("unknown symmetry class '" + std::string(text) + "'");
}

// EntryLaw -----------------------------------------------------------------

EntryLaw::EntryLaw(LawKind kind, double component_variance)
    : kind_(kind), variance_(component_variance) {
  if (!(component_variance > 0.0) || !std::isfinite(component_variance)) {
    throw ConfigError("EntryLaw: component variance must be positive");
  }
}

Rational EntryLaw::moment_coefficient(int k) const {
  if (k < 0) throw DomainError("moment_coefficient: negative order");
  switch (kind_) {
    case LawKind::gaussian: {
      BigInt double_factorial = 1;
      for (int i = 2 * k - 1; i > 1; i -= 2) double_factorial *= i;
      return Rational(double_factorial);
    }
    case LawKind::rademacher:
      return Rational(1);
    case LawKind::uniform: {
      BigInt power = 1;
      for (int i = 0; i < k; ++i) power *= 3;
      return Rational(power, BigInt(2 * k + 1));
    }
  }
  return Rational(0);
}

double EntryLaw::moment(int order) const {
  if (order < 0) throw DomainError("moment: negative order");
  if (order % 2 == 1) return 0.0;
  const int k = order / 2;
  return moment_coefficient(k).convert_to<double>() * std::pow(variance_, k);
}

double EntryLaw::beta_bound(int max_k) const {
  double beta = 0.0;
  for (int k = 1; k <= max_k; ++k) {
    beta = std::max(beta, std::pow(moment(2 * k), 1.0 / k) / k);
  }
  return beta;
}

double EntryLaw::transform(double standard_normal, double unit, bool sign) const {
  const double scale = std::sqrt(variance_);
  switch (kind_) {
    case LawKind::gaussian: return scale * standard_normal;
    case LawKind::rademacher: return sign ? scale : -scale;
    case LawKind::uniform: return std::sqrt(3.0) * scale * (2.0 * unit - 1.0);
  }
  return 0.0;
}

// EnsembleConfig -----------------------------------------------------------

void EnsembleConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be > 0");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw ConfigError("theta must be >= 0");
  if (diag_sigma && (!(*diag_sigma > 0.0) || !std::isfinite(*diag_sigma))) {
    throw ConfigError("diag_sigma must be > 0");
  }
}

EntryLaw EnsembleConfig::offdiagonal_law() const {
  const double variance =
      symmetry == Symmetry::complex_hermitian ? sigma * sigma / 2.0 : sigma * sigma;
  return EntryLaw(law, variance);
}

EntryLaw EnsembleConfig::diagonal_law() const {
  const double d = diagonal_sigma();
  return EntryLaw(law, d * d);
}

namespace {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace

std::uint64_t config_hash(const EnsembleConfig& config) {
  std::ostringstream text;
  text << config.n << ';' << format_double(config.sigma) << ';' << format_double(config.theta)
       << ';' << format_double(config.diagonal_sigma()) << ';' << to_string(config.symmetry)
       << ';' << to_string(config.law) << ';' << config.master_seed;
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const char c : text.str()) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

// MatrixSample -------------------------------------------------------------

MatrixSample::MatrixSample(std::size_t dim, Symmetry symmetry)
    : dim_(dim), symmetry_(symmetry), entries_(dim * dim, Complex(0.0, 0.0)) {}

bool MatrixSample::is_hermitian() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      const Complex a = (*this)(i, j);
      const Complex b = (*this)(j, i);
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
      if (a.real() != b.real() || a.imag() != -b.imag()) return false;
    }
  }
  return true;
}

double MatrixSample::max_abs_entry() const {
  double best = 0.0;
  for (const auto& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

Complex MatrixSample::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

// Samplers -----------------------------------------------------------------

namespace {

struct ComponentDraw {
  double first;
  double second;
};

// One Philox block per matrix coordinate: the value at (i, j) depends only
// on (seed, sample_index, i, j).
ComponentDraw draw_components(const EntryLaw& law, std::uint64_t seed, std::uint64_t index,
                              std::size_t i, std::size_t j) {
  const Philox4x32::Block counter{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                  static_cast<std::uint32_t>(index),
                                  static_cast<std::uint32_t>(index >> 32)};
  const auto block = Philox4x32::generate(counter, Philox4x32::key_from_seed(seed));
  const auto [z0, z1] = normal_pair(block);
  const double u0 = open_unit(block[0], block[1]);
  const double u1 = open_unit(block[2], block[3]);
  // The low bits of words 1 and 3 are discarded by open_unit.
  const bool s0 = (block[1] & 1u) != 0;
  const bool s1 = (block[3] & 1u) != 0;
  return {law.transform(z0, u0, s0), law.transform(z1, u1, s1)};
}

}  // namespace

MatrixSample sample_wigner(const EnsembleConfig& config, std::uint64_t sample_index) {
  config.validate();
  const std::size_t n = config.n;
  MatrixSample w(n, config.symmetry);
  w.config_hash = config_hash(config);
  w.sample_index = sample_index;
  const EntryLaw off = config.offdiagonal_law();
  const EntryLaw diag = config.diagonal_law();
  const bool complex = config.symmetry == Symmetry::complex_hermitian;
  for (std::size_t i = 0; i < n; ++i) {
    w(i, i) = Complex(draw_components(diag, config.master_seed, sample_index, i, i).first, 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto draw = draw_components(off, config.master_seed, sample_index, i, j);
      const Complex z(draw.first, complex ? draw.second : 0.0);
      w(i, j) = z;
      w(j, i) = std::conj(z);
    }
  }
  return w;
}

MatrixSample deformation_matrix(std::size_t n, double theta) {
  if (n < 1) throw ConfigError("deformation_matrix: n must be >= 1");
  if (!(theta >= 0.0)) throw ConfigError("deformation_matrix: theta must be >= 0");
  MatrixSample a(n, Symmetry::real_symmetric);
  const double value = theta / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex(value, 0.0);
  }
  return a;
}

MatrixSample sample_scaled_wigner(const EnsembleConfig& config, std::uint64_t sample_index) {
  MatrixSample m = sample_wigner(config, sample_index);
  const double scale = 1.0 / std::sqrt(static_cast<double>(config.n));
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) m(i, j) *= scale;
  }
  return m;
}

MatrixSample sample_deformed(const EnsembleConfig& config, std::uint64_t sample_index) {
  MatrixSample m = sample_scaled_wigner(config, sample_index);
  if (config.theta == 0.0) return m;
  const double shift = config.theta / static_cast<double>(config.n);
  // Adding the same real number to (i,j) and (j,i) keeps exact conjugate
  // symmetry.
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) m(i, j) += shift;
  }
  return m;
}

// Regime -------------------------------------------------------------------

std::string_view to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::supercritical: return "supercritical";
    case RegimeLabel::critical: return "critical";
    case RegimeLabel::subcritical: return "subcritical";
  }
  return "?";
}

Regime regime_of(double theta, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("regime_of: sigma must be > 0");
  if (!(theta >= 0.0)) throw ConfigError("regime_of: theta must be >= 0");
  RegimeLabel label = RegimeLabel::critical;
  if (theta > sigma) label = RegimeLabel::supercritical;
  if (theta < sigma) label = RegimeLabel::subcritical;
  return Regime(label, theta, sigma);
}

double Regime::rho_theta() const {
  if (!(theta_ > 0.0)) throw RegimeError("rho_theta is undefined at theta = 0");
  return theta_ + sigma_ * sigma_ / theta_;
}

double Regime::sigma_theta() const {
  if (label_ != RegimeLabel::supercritical) {
    throw RegimeError("sigma_theta is only defined for theta > sigma");
  }
  return sigma_ * std::sqrt((theta_ * theta_ - sigma_ * sigma_) / (theta_ * theta_));
}

// Dump ---------------------------------------------------------------------

void write_matrix(std::ostream& out, const MatrixSample& matrix) {
  const bool complex = matrix.symmetry() == Symmetry::complex_hermitian;
  for (std::size_t i = 0; i < matrix.dim(); ++i) {
    for (std::size_t j = 0; j < matrix.dim(); ++j) {
      if (j > 0) out << ' ';
      const Complex z = matrix(i, j);
      out << format_double(z.real());
      if (complex) {
        out << (std::signbit(z.imag()) ? '-' : '+') << format_double(std::abs(z.imag())) << 'I';
      }
    }
    out << '\n';
  }
}

}  // namespace wigner
