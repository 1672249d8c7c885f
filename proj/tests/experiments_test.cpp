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


#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "wigner/errors.hpp"
#include "wigner/experiments.hpp"

namespace wigner {
namespace {

ExperimentConfig small_config(std::size_t n, double theta, std::size_t samples) {
  ExperimentConfig cfg;
  cfg.base.n = n;
  cfg.base.theta = theta;
  cfg.base.master_seed = 17;
  cfg.n_samples = samples;
  return cfg;
}

std::string render(const ExperimentReport& report, OutputFormat format) {
  std::ostringstream out;
  write_report(out, report, format);
  return out.str();
}

TEST(GaussianCdf, SymmetryAndTails) {
  EXPECT_DOUBLE_EQ(gaussian_cdf(0.0, 0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(gaussian_cdf(3.0, 3.0, 0.75), 0.5);
  EXPECT_NEAR(gaussian_cdf(40.0, 0.0, 1.0), 1.0, 1e-300);
  EXPECT_THROW(gaussian_cdf(0.0, 0.0, 0.0), DomainError);
}

TEST(GaussianCdf, MatchesQuadratureOfDensity) {
  const auto density = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
  };
  const double integral =
      0.5 + boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, 1.0);
  EXPECT_NEAR(gaussian_cdf(1.0, 0.0, 1.0), integral, 1e-8);
  const double scaled =
      0.5 + boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                [](double t) {
                  return std::exp(-t * t / 1.5) / std::sqrt(1.5 * std::numbers::pi);
                },
                0.0, 0.4);
  EXPECT_NEAR(gaussian_cdf(0.4, 0.0, 0.75), scaled, 1e-8);
}

TEST(SemicircleCdf, EndpointsAndSymmetry) {
  EXPECT_DOUBLE_EQ(semicircle_cdf(0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(semicircle_cdf(2.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(semicircle_cdf(-2.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(semicircle_cdf(5.0, 1.0), 1.0);
}

TEST(SemicircleCdf, MatchesQuadratureOfDensity) {
  for (const double sigma : {1.0, 0.7}) {
    const auto density = [sigma](double x) {
      return std::sqrt(std::max(0.0, 4.0 * sigma * sigma - x * x)) /
             (2.0 * std::numbers::pi * sigma * sigma);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (const double x : {sigma, -1.3 * sigma, 0.2 * sigma}) {
      const double integral = integrator.integrate(density, -2.0 * sigma, x);
      EXPECT_NEAR(semicircle_cdf(x, sigma), integral, 1e-8) << sigma << " " << x;
    }
  }
}

TEST(KsStatistic, Examples) {
  const auto one = ks_statistic({0.0}, [](double x) { return gaussian_cdf(x, 0.0, 1.0); },
                                KsMode::one_sample_gaussian);
  EXPECT_DOUBLE_EQ(one.statistic, 0.5);
  EXPECT_EQ(one.n_effective, 1u);

  const std::vector<double> sample{0.3, -1.2, 2.5, 0.0, 0.9};
  EXPECT_EQ(ks_statistic(sample, sample).statistic, 0.0);
  // The empirical CDF of the sample itself, evaluated right-continuously.
  const auto self = [&sample](double x) {
    double count = 0;
    for (const double v : sample) count += v <= x ? 1 : 0;
    return count / static_cast<double>(sample.size());
  };
  EXPECT_NEAR(ks_statistic(sample, self, KsMode::one_sample_gaussian).statistic, 0.0, 1e-15);
  EXPECT_THROW(ks_statistic({}, self, KsMode::one_sample_gaussian), DomainError);
  EXPECT_THROW(ks_statistic({}, sample), DomainError);
}

TEST(KsStatistic, TwoSampleHandlesTiesAndDisjointSupports) {
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3}, {4, 5}).statistic, 1.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 1, 2, 2}, {1, 2}).statistic, 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3, 4}, {2.5}).statistic, 0.5);
  EXPECT_EQ(ks_statistic({1, 2, 3, 4}, {2.5}).n_effective, 0u);
}

TEST(KsStatistic, InvariantUnderMonotoneRescaling) {
  std::vector<double> sample;
  for (int i = 0; i < 200; ++i) sample.push_back(std::sin(1.7 * i) * 1.4);
  std::vector<double> mapped;
  for (const double x : sample) mapped.push_back(std::exp(x));
  const auto base = ks_statistic(sample, [](double x) { return gaussian_cdf(x, 0.0, 1.0); },
                                 KsMode::one_sample_gaussian);
  const auto image = ks_statistic(
      mapped, [](double y) { return gaussian_cdf(std::log(y), 0.0, 1.0); },
      KsMode::one_sample_gaussian);
  EXPECT_NEAR(base.statistic, image.statistic, 1e-14);
}

TEST(Config, ParsesFlatTextAndRejectsUnknownKeys) {
  ExperimentConfig cfg;
  apply_config_text(
      "# comment\n n = 40\nsamples=12\ntheta=1.5 # trailing\nlaw=rademacher\n"
      "symmetry=real\nseed=5\nt_grid=0.5, 1,2\nformat=json\nbaseline_law=uniform\n",
      cfg);
  EXPECT_EQ(cfg.base.n, 40u);
  EXPECT_EQ(cfg.n_samples, 12u);
  EXPECT_DOUBLE_EQ(cfg.base.theta, 1.5);
  EXPECT_EQ(cfg.base.law, LawKind::rademacher);
  EXPECT_EQ(cfg.base.symmetry, Symmetry::real_symmetric);
  EXPECT_EQ(cfg.base.master_seed, 5u);
  EXPECT_EQ(cfg.t_grid, (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_EQ(cfg.output_format, OutputFormat::json);
  EXPECT_EQ(cfg.baseline_law, LawKind::uniform);

  EXPECT_THROW(apply_config_text("colour=blue\n", cfg), ConfigError);
  EXPECT_THROW(apply_config_text("n=abc\n", cfg), ConfigError);
  EXPECT_THROW(apply_config_text("just a line\n", cfg), ConfigError);
  EXPECT_THROW(apply_config_text("format=xml\n", cfg), ConfigError);
}

TEST(Config, ValidationAndBaselineDefaults) {
  auto cfg = small_config(10, 0.5, 3);
  cfg.top_k = 11;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.top_k = 1;
  cfg.n_samples = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.n_samples = 3;
  cfg.base.law = LawKind::rademacher;
  const auto b = baseline_config(cfg);
  EXPECT_EQ(b.law, LawKind::gaussian);
  EXPECT_DOUBLE_EQ(b.theta, 0.5);
  EXPECT_EQ(b.master_seed, 17u ^ kBaselineSeedMix);
}

TEST(ParallelMap, IndexedResultsAndExceptions) {
  const auto squares = parallel_map<int>(10, 4, [](std::size_t i) { return int(i * i); });
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(squares[i], int(i * i));
  EXPECT_THROW(parallel_map<int>(8, 3,
                                 [](std::size_t i) -> int {
                                   if (i == 5) throw DomainError("boom");
                                   return 0;
                                 }),
               DomainError);
}

TEST(TraceGrowthTerms, SingleOutlierMatrix) {
  const double rho = 2.5;
  Spectrum s;
  s.values = {rho, 0.0, 0.0, 0.0};
  s.dim = 4;
  const auto terms = trace_growth_terms(s, rho, 400, 1.0);
  EXPECT_EQ(terms.s, 20);
  EXPECT_DOUBLE_EQ(terms.trace_even, 1.0);
  EXPECT_DOUBLE_EQ(terms.trace_odd, 1.0);
  EXPECT_DOUBLE_EQ(terms.exp_sum, 1.0);
  EXPECT_DOUBLE_EQ(terms.epsilon, 0.0);
}

TEST(RunTraceGrowth, RequiresSupercriticalRegime) {
  EXPECT_THROW(run_trace_growth(small_config(20, 0.5, 2)), RegimeError);
  EXPECT_THROW(run_trace_growth(small_config(20, 1.0, 2)), RegimeError);
}

TEST(RunFluctuations, BaselineIdenticalToPrimaryGivesZeroDistance) {
  auto cfg = small_config(30, 0.0, 40);
  cfg.baseline_seed = cfg.base.master_seed;
  cfg.top_k = 2;
  const auto report = run_fluctuations(cfg);
  ASSERT_EQ(report.checks.records.size(), 3u);  // edge location + two components
  for (const auto& r : report.records) {
    if (!r.sample && r.statistic.rfind("baseline_ks", 0) == 0) EXPECT_EQ(r.value, 0.0);
  }
}

TEST(RunFluctuations, RealSupercriticalKsIsInformational) {
  auto cfg = small_config(40, 2.0, 20);
  cfg.base.symmetry = Symmetry::real_symmetric;
  const auto report = run_fluctuations(cfg);
  const auto& ks = report.checks.records.front();
  EXPECT_EQ(ks.check, "outlier_gaussian_ks");
  EXPECT_TRUE(ks.informational);
  EXPECT_EQ(ks.params["label"], "conjecture");
  EXPECT_DOUBLE_EQ(ks.detail["variance"].get<double>(), 2.0 * 0.75);
}

TEST(RunFluctuations, CriticalRunsAreDescriptive) {
  const auto report = run_fluctuations(small_config(30, 1.0, 10));
  for (const auto& c : report.checks.records) EXPECT_TRUE(c.informational) << c.check;
  EXPECT_TRUE(report.pass());
}

TEST(Determinism, OutputIndependentOfThreadCount) {
  auto cfg = small_config(40, 2.0, 24);
  cfg.t_grid = {0.5, 2.0};
  std::vector<std::string> outputs;
  for (const unsigned threads : {1u, 4u, 8u}) {
    cfg.threads = threads;
    outputs.push_back(render(run_fluctuations(cfg), OutputFormat::csv) +
                      render(run_trace_growth(cfg), OutputFormat::json) +
                      render(run_spectrum_census(cfg), OutputFormat::csv));
  }
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(outputs[0], outputs[2]);
}

TEST(RunSpectrumCensus, InterlacingOverPairedDraws) {
  auto cfg = small_config(50, 2.0, 100);
  const auto report = run_spectrum_census(cfg);
  bool found = false;
  for (const auto& c : report.checks.records) {
    if (c.check == "interlacing") {
      found = true;
      EXPECT_TRUE(c.pass);
    }
  }
  EXPECT_TRUE(found);
}

TEST(RunCombinatoricsVerify, EmptyLimitsPassAndFaultFails) {
  const auto empty = run_combinatorics_verify(CombinatoricsLimits::none());
  EXPECT_TRUE(empty.pass());
  EXPECT_TRUE(empty.checks.records.empty());

  auto limits = CombinatoricsLimits::none();
  limits.trajectory_max_length = 8;
  limits.sum_identity_max_length = 12;
  limits.dyck_max_length = 8;
  limits.correspondence_max_length = 6;
  limits.correspondence_vertices = 3;
  limits.glue_max_length = 2;
  limits.glue_vertices = 3;
  limits.class_count_max_s = 20;
  limits.tail_m_grid = {25, 100};
  EXPECT_TRUE(run_combinatorics_verify(limits).pass());
  limits.inject_fault = true;
  const auto faulty = run_combinatorics_verify(limits);
  EXPECT_FALSE(faulty.pass());
  EXPECT_EQ(faulty.checks.records.front().counterexample, "m=1,l=2");
}

TEST(RunOracleCompare, OddPowerWithoutDeformationCentersOnZero) {
  auto cfg = small_config(3, 0.0, 20000);
  cfg.base.law = LawKind::uniform;
  const auto report = run_oracle_compare(cfg, 3);
  EXPECT_TRUE(report.pass());
  double exact = 1.0;
  for (const auto& r : report.records) {
    if (r.statistic == "exact") exact = r.value;
  }
  EXPECT_EQ(exact, 0.0);
}

TEST(Output, CsvAndJsonMirrorRecords) {
  ExperimentReport report;
  report.experiment = "demo";
  report.records.push_back({0, "x", 0.1});
  report.add("mean", 2.0);
  CheckRecord check;
  check.check = "ok";
  report.checks.add(check);
  EXPECT_EQ(render(report, OutputFormat::csv),
            "sample,statistic,value\n0,x,0.1\nall,mean,2\nall,check:ok,1\n");
  const auto json = nlohmann::json::parse(render(report, OutputFormat::json));
  EXPECT_EQ(json["records"][0]["sample"], 0);
  EXPECT_EQ(json["records"][1]["sample"], "all");
  EXPECT_EQ(json["records"][1]["value"], 2.0);
  EXPECT_EQ(json["checks"][0]["check"], "ok");
}

}  // namespace
}  // namespace wigner
