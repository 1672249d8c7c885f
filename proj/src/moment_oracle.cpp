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


#include "wigner/moment_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wigner/bigint.hpp"
#include "wigner/errors.hpp"
#include "wigner/path_model.hpp"

namespace wigner {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double choose(int n, int k) { return binomial(n, k).convert_to<double>(); }

}  // namespace

// MomentModel ----------------------------------------------------------------

MomentModel::MomentModel(Symmetry symmetry, LawKind law, double sigma, double diag_sigma,
                         int max_order)
    : symmetry_(symmetry), law_(law), sigma_(sigma), diag_sigma_(diag_sigma),
      max_order_(max_order) {
  if (!(sigma > 0.0) || !(diag_sigma > 0.0)) throw ConfigError("MomentModel: scales must be > 0");
  if (max_order < 1) throw ConfigError("MomentModel: max_order must be >= 1");
  const bool complex = symmetry == Symmetry::complex_hermitian;
  const EntryLaw component(law, complex ? sigma * sigma / 2.0 : sigma * sigma);
  const EntryLaw diag(law, diag_sigma * diag_sigma);
  beta_ = component.beta_bound();

  std::vector<double> mu(static_cast<std::size_t>(max_order) + 1);
  for (int r = 0; r <= max_order; ++r) mu[static_cast<std::size_t>(r)] = component.moment(r);
  diagonal_.resize(static_cast<std::size_t>(max_order) + 1);
  for (int r = 0; r <= max_order; ++r) diagonal_[static_cast<std::size_t>(r)] = diag.moment(r);

  joint_.assign(static_cast<std::size_t>(max_order) + 1, {});
  for (int a = 0; a <= max_order; ++a) {
    joint_[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(max_order - a) + 1, 0.0);
    for (int b = 0; a + b <= max_order; ++b) {
      double value = 0.0;
      if (!complex) {
        value = mu[static_cast<std::size_t>(a + b)];
      } else {
        // (X + iY)^a (X - iY)^b: the X-power r + q and the Y-power e = a+b-r-q
        // carry the factor i^e (-1)^{b-q}; odd e vanishes by symmetry.
        for (int r = 0; r <= a; ++r) {
          for (int q = 0; q <= b; ++q) {
            const int e = a - r + b - q;
            if (e % 2 != 0 || (r + q) % 2 != 0) continue;
            const int sign_exponent = e / 2 + (b - q);
            const double sign = sign_exponent % 2 == 0 ? 1.0 : -1.0;
            value += sign * choose(a, r) * choose(b, q) * mu[static_cast<std::size_t>(r + q)] *
                     mu[static_cast<std::size_t>(e)];
          }
        }
      }
      joint_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = value;
    }
  }
}

MomentModel MomentModel::from_config(const EnsembleConfig& config, int max_order) {
  return MomentModel(config.symmetry, config.law, config.sigma, config.diagonal_sigma(), max_order);
}

double MomentModel::joint(int a, int b) const {
  if (a < 0 || b < 0 || a + b > max_order_) {
    throw DomainError("MomentModel::joint: order beyond the moment table");
  }
  return joint_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

double MomentModel::diagonal(int r) const {
  if (r < 0 || r > max_order_) throw DomainError("MomentModel::diagonal: order beyond the table");
  return diagonal_[static_cast<std::size_t>(r)];
}

double edge_moment(const MomentModel& model, int a, int b, bool is_diagonal, double theta,
                   std::size_t n) {
  if (a < 0 || b < 0 || a + b < 1) throw DomainError("edge_moment: need a + b >= 1");
  const double dim = static_cast<double>(n);
  const double shift = theta / dim;
  const double scale = 1.0 / std::sqrt(dim);
  if (is_diagonal) {
    const int c = a + b;
    double total = 0.0;
    for (int r = 0; r <= c; ++r) {
      total += choose(c, r) * std::pow(scale, r) * std::pow(shift, c - r) * model.diagonal(r);
    }
    return total;
  }
  double total = 0.0;
  for (int r = 0; r <= a; ++r) {
    for (int q = 0; q <= b; ++q) {
      total += choose(a, r) * choose(b, q) * std::pow(scale, r + q) *
               std::pow(shift, a - r + b - q) * model.joint(r, q);
    }
  }
  return total;
}

double exact_trace_expectation(std::size_t n, int length, const MomentModel& model, double theta) {
  if (n < 1 || length < 1) throw DomainError("exact_trace_expectation: need n, L >= 1");
  if (std::pow(static_cast<double>(n), length) > kOracleMaxTerms) {
    throw SizeGuardError("exact_trace_expectation: n^L exceeds 1e8");
  }
  if (length > model.max_order()) {
    throw DomainError("exact_trace_expectation: L exceeds the moment table");
  }
  // Every edge factor depends only on (a, b, diagonal), so tabulate them.
  std::vector<std::vector<double>> off(static_cast<std::size_t>(length) + 1);
  std::vector<double> diag(static_cast<std::size_t>(length) + 1, 1.0);
  for (int a = 0; a <= length; ++a) {
    off[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(length - a) + 1, 1.0);
    for (int b = 0; a + b <= length; ++b) {
      if (a + b == 0) continue;
      off[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          edge_moment(model, a, b, false, theta, n);
    }
    if (a > 0) diag[static_cast<std::size_t>(a)] = edge_moment(model, a, 0, true, theta, n);
  }

  struct Edge {
    std::size_t lo, hi;
    int forward, backward;
  };
  const auto len = static_cast<std::size_t>(length);
  std::vector<std::size_t> path(len + 1, 0);
  std::vector<Edge> edges;
  edges.reserve(len);

  CompensatedSum total;
  for (std::size_t origin = 0; origin < n; ++origin) {
    CompensatedSum partition;
    std::fill(path.begin(), path.end(), 0);
    path[0] = origin;
    while (true) {
      path[len] = origin;
      edges.clear();
      for (std::size_t t = 0; t < len; ++t) {
        const std::size_t i = path[t];
        const std::size_t j = path[t + 1];
        const std::size_t lo = std::min(i, j);
        const std::size_t hi = std::max(i, j);
        auto it = std::find_if(edges.begin(), edges.end(),
                               [&](const Edge& e) { return e.lo == lo && e.hi == hi; });
        if (it == edges.end()) {
          edges.push_back({lo, hi, 0, 0});
          it = edges.end() - 1;
        }
        if (i <= j) {
          ++it->forward;
        } else {
          ++it->backward;
        }
      }
      double product = 1.0;
      for (const auto& e : edges) {
        const auto f = static_cast<std::size_t>(e.forward);
        product *= e.lo == e.hi ? diag[f] : off[f][static_cast<std::size_t>(e.backward)];
        if (product == 0.0) break;
      }
      partition.add(product);

      std::size_t position = len - 1;
      while (position >= 1 && path[position] == n - 1) {
        path[position] = 0;
        --position;
      }
      if (position == 0) break;
      ++path[position];
    }
    total.add(partition.value());
  }
  return total.value();
}

// Asymptotics ----------------------------------------------------------------

AsymptoticPredictions asymptotic_predictions(int s, double theta, double sigma, std::size_t n) {
  if (s < 1) throw DomainError("asymptotic_predictions: s must be >= 1");
  if (!(sigma > 0.0) || !(theta >= 0.0) || n < 1) {
    throw ConfigError("asymptotic_predictions: need sigma > 0, theta >= 0, n >= 1");
  }
  AsymptoticPredictions out;
  out.s = s;
  out.theta = theta;
  out.sigma = sigma;
  out.n = n;
  const double dim = static_cast<double>(n);
  const double log_edge = 2.0 * s * std::log(2.0 * sigma);
  const double log_sigma = std::log(sigma);
  const double log_theta = theta > 0.0 ? std::log(theta) : -std::numeric_limits<double>::infinity();

  if (theta > 0.0) {
    out.log_rho_power = 2.0 * s * std::log(theta + sigma * sigma / theta);
    double marked = 0.0;
    for (int l = 2; l <= 2 * s; l += 2) {
      const int m = s - l / 2;
      const double log_term = log_big(count_trajectories(m, l)) + l * log_theta +
                              2.0 * m * log_sigma -
                              static_cast<double>(l + m) * (l + m) / (2.0 * dim);
      marked += std::exp(log_term - out.log_rho_power);
    }
    out.marked_sum_ratio = marked;
  }
  if (theta > sigma) {
    out.supercritical_target = 1.0 - sigma * sigma / (theta * theta);
    out.unmarked_limit_ratio = sigma * sigma / (theta * theta);
  }
  const BigInt catalan = count_trajectories(s, 0);
  out.even_term = std::exp(std::log(dim) + log_big(catalan) + 2.0 * s * log_sigma);
  out.even_term_stirling =
      std::exp(std::log(dim) + log_edge - 0.5 * std::log(std::numbers::pi) - 1.5 * std::log(s));

  double edge = 0.0;
  double with_unmarked = 0.0;
  if (theta > 0.0) {
    for (int l = 2; l <= 2 * s; l += 2) {
      const int m = s - l / 2;
      const double weight = l * log_theta + 2.0 * m * log_sigma - log_edge;
      edge += std::exp(log_big(count_trajectories(m, l)) + weight);
      with_unmarked += std::exp(log_big(binomial(2 * s, m)) + weight);
    }
  }
  out.edge_ratio = edge;
  out.edge_ratio_with_unmarked = with_unmarked;
  return out;
}

UniversalityProbe trace_universality_probe(const std::vector<std::size_t>& n_list, int length,
                                           double theta, const MomentModel& first,
                                           const MomentModel& second) {
  UniversalityProbe probe;
  probe.n_list = n_list;
  probe.length = length;
  probe.theta = theta;
  for (const std::size_t n : n_list) {
    const double a = exact_trace_expectation(n, length, first, theta);
    const double b = exact_trace_expectation(n, length, second, theta);
    probe.first.push_back(a);
    probe.second.push_back(b);
    const double delta = a == b ? 0.0 : std::abs(a - b) / std::abs(a);
    probe.finite = probe.finite && std::isfinite(delta);
    if (!probe.relative_difference.empty() && !(delta < probe.relative_difference.back())) {
      probe.decreasing = false;
    }
    probe.relative_difference.push_back(delta);
  }
  return probe;
}

nlohmann::ordered_json oracle_json(std::size_t n, int length, double theta,
                                   const MomentModel& model, double value) {
  return {{"n", n},
          {"L", length},
          {"theta", theta},
          {"sigma", model.sigma()},
          {"law", std::string(to_string(model.law()))},
          {"symmetry", std::string(to_string(model.symmetry()))},
          {"value", value}};
}

}  // namespace wigner
