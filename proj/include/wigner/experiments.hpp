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
#include <exception>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "wigner/ensembles.hpp"
#include "wigner/report.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  EnsembleConfig base;
  std::size_t n_samples = 100;
  double t_scale = 1.0;
  std::vector<double> t_grid;  // extra exponent scales, boundedness report only
  std::size_t top_k = 1;
  std::optional<double> baseline_theta;
  std::optional<LawKind> baseline_law;
  std::optional<std::uint64_t> baseline_seed;
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;
  unsigned threads = 1;
  int oracle_length = 4;

  // Monte Carlo tolerances.
  double ks_one_sample_limit = 0.06;
  double ks_two_sample_limit = 0.12;
  double eps_ratio_limit = 0.1;
  double esd_ks_limit = 0.03;
  double lambda1_relative_limit = 0.05;

  /// Throws ConfigError when n_samples < 1, top_k > n, t_scale <= 0 or threads < 1.
  void validate() const;
};

/// Mixed into the master seed when no baseline seed is given, so that the
/// baseline ensemble is drawn independently of the primary one.
inline constexpr std::uint64_t kBaselineSeedMix = 0x9E3779B97F4A7C15ull;

/// Same parameters as cfg.base with the baseline theta/law/seed applied
/// (defaults: same theta, Gaussian law, mixed seed).
EnsembleConfig baseline_config(const ExperimentConfig& cfg);

/// Flat "key=value" text; '#' starts a comment. Keys: n, samples, theta,
/// sigma, diag_sigma, law, symmetry, seed, t_scale, t_grid, top_k,
/// baseline_theta, baseline_law, baseline_seed, out, format, threads,
/// oracle_length and the *_limit tolerances. Unknown keys throw ConfigError.
void apply_config_text(std::string_view text, ExperimentConfig& cfg);
void apply_config_entry(std::string_view key, std::string_view value, ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);

// Statistics ------------------------------------------------------------------

/// Phi((x - mean) / sqrt(variance)) via erfc.
double gaussian_cdf(double x, double mean, double variance);
/// Distribution function of the semicircle law on [-2 sigma, 2 sigma].
double semicircle_cdf(double x, double sigma);

enum class KsMode { one_sample_gaussian, one_sample_semicircle, two_sample };
std::string_view to_string(KsMode mode);

struct KSResult {
  double statistic = 0.0;
  std::size_t n_effective = 0;
  KsMode mode = KsMode::one_sample_gaussian;
};

/// Exact sup-distance between the empirical CDF of the sample and cdf.
KSResult ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf,
                      KsMode mode);
/// Exact sup-distance between two empirical CDFs; n_effective = nm/(n+m).
KSResult ks_statistic(std::vector<double> first, std::vector<double> second);

// Reports ---------------------------------------------------------------------

struct Record {
  std::optional<std::size_t> sample;  // empty for aggregates ("all")
  std::string statistic;
  double value = 0.0;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<Record> records;
  CheckReport checks;

  bool pass() const { return checks.all_pass(); }
  void add(std::string statistic, double value) {
    records.push_back({std::nullopt, std::move(statistic), value});
  }
};

/// CSV "sample,statistic,value"; check outcomes appear as statistic
/// "check:<name>" with value 1 or 0.
void write_csv(std::ostream& out, const ExperimentReport& report);
/// {"experiment", "params", "records": [{sample, statistic, value}], "checks"}.
void write_json(std::ostream& out, const ExperimentReport& report);
void write_report(std::ostream& out, const ExperimentReport& report, OutputFormat format);
/// Shortest round-trip decimal form.
std::string format_number(double value);

// Parallelism -------------------------------------------------------------------

/// results[i] = task(i) for i < count on `threads` workers with a static
/// block partition. Results are indexed, so any reduction over them in index
/// order is schedule independent. The first exception thrown is rethrown.
template <typename Result, typename Task>
std::vector<Result> parallel_map(std::size_t count, unsigned threads, Task task) {
  std::vector<Result> results(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = task(i);
    return results;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      try {
        for (std::size_t i = begin; i < end; ++i) results[i] = task(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

// Experiments -------------------------------------------------------------------

ExperimentReport run_fluctuations(const ExperimentConfig& cfg);

struct TraceGrowthTerms {
  int s = 0;
  double trace_even = 0.0;  // Tr (M/rho)^{2s}
  double trace_odd = 0.0;   // Tr (M/rho)^{2s+1}
  double exp_sum = 0.0;     // sum over |xi_j| <= N^{1/6} of exp(t xi_j)
  double epsilon = 0.0;     // (trace_even + trace_odd)/2 - exp_sum
};

/// s = floor(t sqrt(N)).
TraceGrowthTerms trace_growth_terms(const Spectrum& spectrum, double rho_theta, std::size_t n,
                                    double t);

/// Throws RegimeError unless theta > sigma.
ExperimentReport run_trace_growth(const ExperimentConfig& cfg);
ExperimentReport run_spectrum_census(const ExperimentConfig& cfg);

struct CombinatoricsLimits {
  int trajectory_max_length = 14;      // enumeration vs closed forms, l + 2m <= this
  int sum_identity_max_length = 24;    // sum_p T_{m-p,l+2p} = C(2s, m-1)
  int correspondence_max_length = 10;  // exhaustive census
  int correspondence_vertices = 5;
  int glue_max_length = 3;
  int glue_vertices = 3;
  int class_count_max_s = 200;
  std::vector<int> tail_m_grid{25, 100, 400, 900};
  int dyck_max_length = 14;
  bool inject_fault = false;  // corrupts one tabulated |T_{m,l}|

  /// Every check disabled.
  static CombinatoricsLimits none();
};

ExperimentReport run_combinatorics_verify(const CombinatoricsLimits& limits);

/// Monte Carlo mean of Tr M^L against the exact oracle at cfg.base.n, plus the
/// Gaussian-vs-cfg.base.law universality probe over n in {3, 4, 5, 6}.
ExperimentReport run_oracle_compare(const ExperimentConfig& cfg, int length);

}  // namespace wigner
