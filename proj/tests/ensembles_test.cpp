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

#include <cmath>
#include <sstream>

#include "wigner/ensembles.hpp"
#include "wigner/errors.hpp"
#include "wigner/philox.hpp"
#include "wigner/spectral.hpp"

namespace wigner {
namespace {

EnsembleConfig make_config(std::size_t n, LawKind law, Symmetry symmetry, std::uint64_t seed = 7) {
  EnsembleConfig config;
  config.n = n;
  config.sigma = 1.0;
  config.law = law;
  config.symmetry = symmetry;
  config.master_seed = seed;
  return config;
}

TEST(Philox, KnownAnswerZeroCounterZeroKey) {
  const auto out = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                        {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPiDigits) {
  const auto out =
      Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                           {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(Philox, BelowStaysInRange) {
  PhiloxStream stream(3, 9);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(stream.below(7), 7u);
}

TEST(EntryLaw, MomentsMatchClosedForms) {
  const EntryLaw gauss(LawKind::gaussian, 0.5);
  EXPECT_DOUBLE_EQ(gauss.moment(2), 0.5);
  EXPECT_DOUBLE_EQ(gauss.moment(4), 3 * 0.25);
  EXPECT_DOUBLE_EQ(gauss.moment(6), 15 * 0.125);
  EXPECT_EQ(gauss.moment(3), 0.0);

  const EntryLaw rad(LawKind::rademacher, 0.5);
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(rad.moment_coefficient(k), Rational(1));
    EXPECT_DOUBLE_EQ(rad.moment(2 * k), std::pow(0.5, k));
  }

  const EntryLaw uni(LawKind::uniform, 2.0);
  // U(-a, a) with a^2 = 3 v: E X^{2k} = a^{2k} / (2k + 1).
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(uni.moment_coefficient(k), Rational(BigInt(pow(BigInt(3), k)), BigInt(2 * k + 1)));
    EXPECT_NEAR(uni.moment(2 * k), std::pow(6.0, k) / (2 * k + 1), 1e-9 * std::pow(6.0, k));
  }
}

TEST(EntryLaw, SubGaussianGrowthBound) {
  for (const auto kind : {LawKind::gaussian, LawKind::rademacher, LawKind::uniform}) {
    const EntryLaw law(kind, 1.0);
    const double beta = law.beta_bound();
    EXPECT_TRUE(std::isfinite(beta));
    for (int k = 1; k <= 12; ++k) {
      EXPECT_LE(law.moment(2 * k), std::pow(beta * k, k) * (1 + 1e-12));
    }
  }
}

TEST(EntryLaw, RejectsNonPositiveVariance) {
  EXPECT_THROW(EntryLaw(LawKind::gaussian, 0.0), ConfigError);
}

TEST(EnsembleConfig, Validation) {
  EnsembleConfig config;
  config.n = 0;
  EXPECT_THROW(config.validate(), ConfigError);
  config.n = 3;
  config.sigma = -1;
  EXPECT_THROW(config.validate(), ConfigError);
  config.sigma = 1;
  config.theta = -0.1;
  EXPECT_THROW(config.validate(), ConfigError);
  config.theta = 0;
  EXPECT_NO_THROW(config.validate());
}

TEST(SampleWigner, OneByOneIsReal) {
  for (const auto law : {LawKind::gaussian, LawKind::rademacher, LawKind::uniform}) {
    const auto w = sample_wigner(make_config(1, law, Symmetry::complex_hermitian), 0);
    EXPECT_EQ(w.dim(), 1u);
    EXPECT_EQ(w(0, 0).imag(), 0.0);
    EXPECT_TRUE(w.is_hermitian());
  }
}

TEST(SampleWigner, ExactConjugateSymmetry) {
  for (const auto symmetry : {Symmetry::complex_hermitian, Symmetry::real_symmetric}) {
    for (const auto law : {LawKind::gaussian, LawKind::rademacher, LawKind::uniform}) {
      const auto w = sample_wigner(make_config(40, law, symmetry), 11);
      EXPECT_TRUE(w.is_hermitian());
      for (std::size_t i = 0; i < w.dim(); ++i) {
        EXPECT_EQ(w(i, i).imag(), 0.0);
        for (std::size_t j = 0; j < w.dim(); ++j) {
          EXPECT_EQ(w(j, i).real(), w(i, j).real());
          EXPECT_EQ(w(j, i).imag(), -w(i, j).imag());
        }
      }
    }
  }
}

TEST(SampleWigner, DeterministicPerIndex) {
  const auto config = make_config(20, LawKind::gaussian, Symmetry::complex_hermitian);
  const auto a = sample_wigner(config, 5);
  const auto b = sample_wigner(config, 5);
  const auto c = sample_wigner(config, 6);
  EXPECT_EQ(a.entries(), b.entries());
  EXPECT_NE(a.entries(), c.entries());
  EXPECT_EQ(a.config_hash, b.config_hash);
  EXPECT_EQ(a.sample_index, 5u);
}

TEST(SampleWigner, EntryDoesNotDependOnDimension) {
  // Coordinates key the stream, so the upper-left block is shared.
  const auto small = sample_wigner(make_config(5, LawKind::uniform, Symmetry::real_symmetric), 2);
  const auto large = sample_wigner(make_config(9, LawKind::uniform, Symmetry::real_symmetric), 2);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(small(i, j), large(i, j));
  }
}

TEST(SampleWigner, RademacherComponentsTakeTwoValues) {
  const auto w =
      sample_wigner(make_config(30, LawKind::rademacher, Symmetry::complex_hermitian), 1);
  const double a = std::sqrt(0.5);
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = i + 1; j < 30; ++j) {
      EXPECT_DOUBLE_EQ(std::abs(w(i, j).real()), a);
      EXPECT_DOUBLE_EQ(std::abs(w(i, j).imag()), a);
    }
  }
}

struct Accumulator {
  double sum = 0;
  double sum_sq = 0;
  std::size_t count = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double standard_error() const {
    const double m = mean();
    const double var = sum_sq / static_cast<double>(count) - m * m;
    return std::sqrt(var / static_cast<double>(count));
  }
};

TEST(SampleWigner, SecondMomentOfOffDiagonalEntry) {
  const auto config = make_config(50, LawKind::gaussian, Symmetry::complex_hermitian, 2024);
  Accumulator modulus_sq, re, im, re_sq, re_cubed;
  for (std::uint64_t s = 0; s < 100000; ++s) {
    const Complex z = sample_wigner(config, s)(0, 1);
    modulus_sq.add(std::norm(z));
    re.add(z.real());
    im.add(z.imag());
    re_sq.add(z.real() * z.real());
    re_cubed.add(z.real() * z.real() * z.real());
  }
  EXPECT_LE(std::abs(modulus_sq.mean() - 1.0), 4 * modulus_sq.standard_error());
  EXPECT_LE(std::abs(re.mean()), 4 * re.standard_error());
  EXPECT_LE(std::abs(im.mean()), 4 * im.standard_error());
  EXPECT_LE(std::abs(re_cubed.mean()), 4 * re_cubed.standard_error());
  EXPECT_LE(std::abs(re_sq.mean() - 0.5), 4 * re_sq.standard_error());
}

TEST(SampleWigner, RealSymmetricVariance) {
  for (const auto law : {LawKind::rademacher, LawKind::uniform}) {
    EnsembleConfig config = make_config(2, law, Symmetry::real_symmetric, 99);
    config.sigma = 1.5;
    Accumulator sq, odd;
    for (std::uint64_t s = 0; s < 100000; ++s) {
      const double x = sample_wigner(config, s)(0, 1).real();
      sq.add(x * x);
      odd.add(x);
    }
    EXPECT_LE(std::abs(sq.mean() - 2.25), 4 * sq.standard_error() + 1e-12);
    EXPECT_LE(std::abs(odd.mean()), 4 * odd.standard_error());
  }
}

TEST(DeformationMatrix, Examples) {
  const auto a = deformation_matrix(3, 1.5);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(a(i, j), Complex(0.5, 0.0));
  }
  const auto zero = deformation_matrix(4, 0.0);
  for (const auto& z : zero.entries()) EXPECT_EQ(z, Complex(0.0));
  const auto two = deformation_matrix(2, 1.0);
  const auto spectrum = eigenvalues(two);
  EXPECT_NEAR(spectrum.values[0], 1.0, 1e-14);
  EXPECT_NEAR(spectrum.values[1], 0.0, 1e-14);
}

TEST(SampleDeformed, ZeroThetaIsScaledWigner) {
  const auto config = make_config(12, LawKind::gaussian, Symmetry::complex_hermitian);
  const auto w = sample_wigner(config, 3);
  const auto m = sample_deformed(config, 3);
  const double scale = 1.0 / std::sqrt(12.0);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(m(i, j), w(i, j) * scale);
  }
}

TEST(SampleDeformed, AddsThetaOverN) {
  auto config = make_config(8, LawKind::uniform, Symmetry::complex_hermitian);
  config.theta = 2.0;
  const auto m = sample_deformed(config, 0);
  const auto base = sample_scaled_wigner(config, 0);
  EXPECT_TRUE(m.is_hermitian());
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_DOUBLE_EQ(m(i, j).real() - base(i, j).real(), 0.25);
      EXPECT_EQ(m(i, j).imag(), base(i, j).imag());
    }
  }
}

TEST(Regime, Examples) {
  const auto super = regime_of(2.0, 1.0);
  EXPECT_EQ(super.label(), RegimeLabel::supercritical);
  EXPECT_DOUBLE_EQ(super.rho_theta(), 2.5);
  EXPECT_DOUBLE_EQ(super.sigma_theta(), std::sqrt(3.0) / 2.0);

  const auto critical = regime_of(1.0, 1.0);
  EXPECT_EQ(critical.label(), RegimeLabel::critical);
  EXPECT_DOUBLE_EQ(critical.rho_theta(), 2.0);
  EXPECT_THROW(critical.sigma_theta(), RegimeError);

  const auto sub = regime_of(0.5, 1.0);
  EXPECT_EQ(sub.label(), RegimeLabel::subcritical);
  EXPECT_THROW(sub.sigma_theta(), RegimeError);

  EXPECT_THROW(regime_of(0.0, 1.0).rho_theta(), RegimeError);
  EXPECT_THROW(regime_of(1.0, 0.0), ConfigError);
}

TEST(WriteMatrix, TokenFormat) {
  MatrixSample m(2, Symmetry::complex_hermitian);
  m(0, 0) = 1.0;
  m(0, 1) = Complex(0.5, -2.0);
  m(1, 0) = Complex(0.5, 2.0);
  m(1, 1) = -3.0;
  std::ostringstream out;
  write_matrix(out, m);
  EXPECT_EQ(out.str(), "1+0I 0.5-2I\n0.5+2I -3+0I\n");

  MatrixSample r(1, Symmetry::real_symmetric);
  r(0, 0) = 0.25;
  std::ostringstream real_out;
  write_matrix(real_out, r);
  EXPECT_EQ(real_out.str(), "0.25\n");
}

TEST(Parsing, LawAndSymmetry) {
  EXPECT_EQ(parse_law("uniform-symmetric"), LawKind::uniform);
  EXPECT_EQ(parse_symmetry("real"), Symmetry::real_symmetric);
  EXPECT_THROW(parse_law("cauchy"), ConfigError);
  EXPECT_THROW(parse_symmetry("quaternion"), ConfigError);
}

}  // namespace
}  // namespace wigner
