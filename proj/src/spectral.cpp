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

#include "wigner/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

// Plain complex arithmetic; std::complex operator* goes through the
// NaN-recovery path of Annex G, which dominates the inner loops.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
inline Complex cmul_conj(Complex a, Complex b) {  // conj(a) * b
  return {a.real() * b.real() + a.imag() * b.imag(), a.real() * b.imag() - a.imag() * b.real()};
}
inline double mul(double a, double b) { return a * b; }
inline double mul_conj(double a, double b) { return a * b; }
inline Complex mul(Complex a, Complex b) { return cmul(a, b); }
inline Complex mul_conj(Complex a, Complex b) { return cmul_conj(a, b); }
inline double conj_of(double a) { return a; }
inline Complex conj_of(Complex a) { return std::conj(a); }
inline double real_of(double a) { return a; }
inline double real_of(Complex a) { return a.real(); }
inline double imag_of(double) { return 0.0; }
inline double imag_of(Complex a) { return a.imag(); }
inline double abs2(double a) { return a * a; }
inline double abs2(Complex a) { return a.real() * a.real() + a.imag() * a.imag(); }

template <typename T>
T make_scalar(double re, double im);
template <>
double make_scalar<double>(double re, double) { return re; }
template <>
Complex make_scalar<Complex>(double re, double im) { return {re, im}; }

template <typename T>
T reciprocal(T z) {
  if constexpr (std::is_same_v<T, double>) {
    return 1.0 / z;
  } else {
    const double d = abs2(z);
    return {z.real() / d, -z.imag() / d};
  }
}

// Unblocked Householder reduction of the lower triangle (row-major, i >= j)
// to real symmetric tridiagonal form. The Hermitian case mirrors LAPACK's
// xHETD2: each reflector H = I - tau v v^H also rotates the sub-diagonal
// entry onto the positive or negative real axis, so `off` is real.
template <typename T>
void tridiagonalize(std::vector<T>& a, std::size_t n, std::vector<double>& diag,
                    std::vector<double>& off) {
  diag.assign(n, 0.0);
  off.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<T> v(n), w(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    diag[k] = real_of(a[k * n + k]);
    const std::size_t o = k + 1;
    const std::size_t m = n - o;
    const T alpha = a[o * n + k];
    double xnorm2 = 0.0;
    for (std::size_t i = 1; i < m; ++i) xnorm2 += abs2(a[(o + i) * n + k]);
    const double alphr = real_of(alpha);
    const double alphi = imag_of(alpha);
    if (xnorm2 == 0.0 && alphi == 0.0) {
      off[k] = alphr;
      continue;
    }
    const double beta = -std::copysign(std::sqrt(alphr * alphr + alphi * alphi + xnorm2), alphr);
    const T tau = make_scalar<T>((beta - alphr) / beta, -alphi / beta);
    const T scale = reciprocal(alpha - beta);
    v[0] = T(1.0);
    for (std::size_t i = 1; i < m; ++i) v[i] = mul(a[(o + i) * n + k], scale);
    off[k] = beta;

    // w = tau * A22 * v using the lower triangle only.
    std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m), T(0.0));
    for (std::size_t i = 0; i < m; ++i) {
      const T* row = &a[(o + i) * n + o];
      const T vi = v[i];
      T acc(0.0);
      for (std::size_t j = 0; j < i; ++j) {
        acc += mul(row[j], v[j]);
        w[j] += mul_conj(row[j], vi);
      }
      w[i] += acc + real_of(row[i]) * vi;
    }
    T dot(0.0);  // w^H v
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = mul(tau, w[i]);
      dot += mul_conj(w[i], v[i]);
    }
    const T half = mul(tau, dot) * -0.5;
    for (std::size_t i = 0; i < m; ++i) w[i] += mul(half, v[i]);

    // A22 -= v w^H + w v^H
    for (std::size_t i = 0; i < m; ++i) {
      T* row = &a[(o + i) * n + o];
      const T vi = v[i];
      const T wi = w[i];
      for (std::size_t j = 0; j <= i; ++j) {
        row[j] -= mul(vi, conj_of(w[j])) + mul(wi, conj_of(v[j]));
      }
      row[i] = T(real_of(row[i]));
    }
  }
  if (n > 0) diag[n - 1] = real_of(a[(n - 1) * n + (n - 1)]);
}

template <typename T>
std::vector<T> lower_copy(const MatrixSample& matrix);

template <>
std::vector<double> lower_copy<double>(const MatrixSample& matrix) {
  const std::size_t n = matrix.dim();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = matrix(i, j).real();
  }
  return a;
}

template <>
std::vector<Complex> lower_copy<Complex>(const MatrixSample& matrix) {
  const std::size_t n = matrix.dim();
  std::vector<Complex> a(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = matrix(i, j);
  }
  return a;
}

double frobenius_norm(const MatrixSample& matrix) {
  double sum = 0.0;
  for (const auto& z : matrix.entries()) sum += abs2(z);
  return std::sqrt(sum);
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> off) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  if (off.size() + 1 != n) throw DomainError("tridiagonal_eigenvalues: size mismatch");
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  const double eps = std::numeric_limits<double>::epsilon();
  const auto nn = static_cast<std::ptrdiff_t>(n);
  for (std::ptrdiff_t l = 0; l < nn; ++l) {
    int iter = 0;
    std::ptrdiff_t m = l;
    do {
      for (m = l; m < nn - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) {
          throw ConvergenceError("tridiagonal QL did not converge", static_cast<std::size_t>(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::ptrdiff_t i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

Spectrum eigenvalues(const MatrixSample& matrix) {
  const std::size_t n = matrix.dim();
  std::vector<double> diag;
  std::vector<double> off;
  if (matrix.symmetry() == Symmetry::real_symmetric) {
    auto a = lower_copy<double>(matrix);
    tridiagonalize(a, n, diag, off);
  } else {
    auto a = lower_copy<Complex>(matrix);
    tridiagonalize(a, n, diag, off);
  }
  Spectrum spectrum;
  spectrum.values = tridiagonal_eigenvalues(std::move(diag), std::move(off));
  spectrum.dim = n;
  spectrum.residual_tol = 10.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                          frobenius_norm(matrix);
  return spectrum;
}

double trace_power(const Spectrum& spectrum, int power) {
  if (power < 1) throw DomainError("trace_power: power must be >= 1");
  double sum = 0.0;
  for (const double lambda : spectrum.values) sum += std::pow(lambda, power);
  return sum;
}

double trace_power(const MatrixSample& matrix, int power) {
  return trace_power(eigenvalues(matrix), power);
}

double trace_power_by_multiplication(const MatrixSample& matrix, int power) {
  if (power < 1) throw DomainError("trace_power: power must be >= 1");
  const std::size_t n = matrix.dim();
  std::vector<Complex> current(matrix.entries());
  std::vector<Complex> next(n * n);
  for (int step = 1; step < power; ++step) {
    std::fill(next.begin(), next.end(), Complex(0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const Complex cik = current[i * n + k];
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += cmul(cik, matrix(k, j));
      }
    }
    current.swap(next);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += current[i * n + i].real();
  return sum;
}

InterlacingReport interlacing_check(const Spectrum& deformed, const Spectrum& base) {
  if (deformed.values.size() != base.values.size()) {
    throw DomainError("interlacing_check: dimension mismatch");
  }
  InterlacingReport report;
  double radius = 0.0;
  for (const double x : deformed.values) radius = std::max(radius, std::abs(x));
  for (const double x : base.values) radius = std::max(radius, std::abs(x));
  report.slack = 1e-8 * (1.0 + radius);
  const auto note = [&report](double amount, std::size_t index) {
    if (amount > report.slack) {
      ++report.violations;
      report.interlaced = false;
    }
    if (amount > report.max_violation) {
      report.max_violation = amount;
      report.worst_index = index;
    }
  };
  const std::size_t n = base.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    note(base.values[i] - deformed.values[i], i);                       // lambda_i >= base_i
    if (i + 1 < n) note(deformed.values[i + 1] - base.values[i], i);  // base_i >= lambda_{i+1}
  }
  return report;
}

double lambda_from_xi(double xi, double rho_theta, std::size_t n) {
  return rho_theta * (1.0 + xi / (2.0 * std::sqrt(static_cast<double>(n))));
}

double outlier_deviation(const Spectrum& spectrum, const Regime& regime, std::size_t n) {
  if (regime.label() != RegimeLabel::supercritical) {
    throw RegimeError("outlier deviation requested outside the supercritical regime");
  }
  if (spectrum.values.empty()) throw DomainError("outlier_deviation: empty spectrum");
  return std::sqrt(static_cast<double>(n)) * (spectrum.values.front() - regime.rho_theta());
}

FluctuationSample rescaled_fluctuation(const Spectrum& spectrum, const Regime& regime,
                                       std::size_t n, std::size_t k) {
  if (k > spectrum.values.size()) throw DomainError("rescaled_fluctuation: k exceeds dimension");
  FluctuationSample sample;
  const double root_n = std::sqrt(static_cast<double>(n));
  const double n_two_thirds = std::cbrt(static_cast<double>(n) * static_cast<double>(n));
  const double edge = 2.0 * regime.sigma();
  for (const double lambda : spectrum.values) {
    if (lambda > 0.0 && regime.has_rho_theta()) {
      sample.xi.push_back(2.0 * root_n * (lambda / regime.rho_theta() - 1.0));
    } else if (lambda < 0.0) {
      sample.tau.push_back(n_two_thirds * (lambda + edge));
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    sample.edge_u.push_back(n_two_thirds * (spectrum.values[j] - edge));
  }
  if (regime.label() == RegimeLabel::supercritical) {
    sample.outlier_deviation = outlier_deviation(spectrum, regime, n);
  }
  return sample;
}

OutlierCensus outlier_census(const Spectrum& spectrum, double theta, double sigma, std::size_t n) {
  const Regime regime = regime_of(theta, sigma);
  if (regime.label() != RegimeLabel::supercritical) {
    throw RegimeError("outlier_census requires theta > sigma");
  }
  const double rho = regime.rho_theta();
  const double mid = 2.0 * sigma + (rho - 2.0 * sigma) / 2.0;
  const double far = rho * (1.0 + 1.0 / std::cbrt(static_cast<double>(n)));
  OutlierCensus census;
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const double lambda = spectrum.values[i];
    if (i >= 1 && lambda > mid) ++census.count_mid;
    if (lambda > far) ++census.count_far;
  }
  return census;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "index,lambda\n";
  char buffer[64];
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const auto end = std::to_chars(buffer, buffer + sizeof(buffer), spectrum.values[i]).ptr;
    out << (i + 1) << ',' << std::string_view(buffer, static_cast<std::size_t>(end - buffer))
        << '\n';
  }
}

}  // namespace wigner
