// Copyright 2026 The dpb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpb/noise.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dpb/rng.h"
#include "gtest/gtest.h"

namespace dpb {
namespace {

constexpr int kSamples = 200000;

double TailFraction(const std::vector<double>& xs, double threshold) {
  int64_t hits = 0;
  for (double x : xs) hits += std::fabs(x) >= threshold;
  return static_cast<double>(hits) / static_cast<double>(xs.size());
}

double ThreeSigma(double p, int n) { return 3 * std::sqrt(p * (1 - p) / n); }

std::vector<double> Draw(bool cauchy, double b, uint64_t seed, int n) {
  Rng rng(RngSeed{seed});
  const NoiseScale scale = NoiseScale::Create(b).value();
  std::vector<double> xs(n);
  for (double& x : xs) x = cauchy ? SampleCauchy(scale, rng) : SampleLaplace(scale, rng);
  return xs;
}

TEST(NoiseScaleTest, RejectsNegativeAndNonFinite) {
  EXPECT_FALSE(NoiseScale::Create(-1e-12).ok());
  EXPECT_FALSE(NoiseScale::Create(std::nan("")).ok());
  EXPECT_FALSE(NoiseScale::Create(INFINITY).ok());
  EXPECT_TRUE(NoiseScale::Create(0).ok());
}

TEST(NoiseTest, ZeroScaleIsExactlyZero) {
  Rng rng(RngSeed{3});
  const NoiseScale zero = NoiseScale::Create(0).value();
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(SampleLaplace(zero, rng), 0.0);
    EXPECT_EQ(SampleCauchy(zero, rng), 0.0);
  }
}

TEST(NoiseTest, LaplaceTailsAtUnitScale) {
  const std::vector<double> xs = Draw(false, 1, 11, kSamples);
  // Four checks at once: 3.4 sigma each keeps the family-wise level of 3 sigma.
  for (double l : {0.5, 1.0, 2.0, 3.0}) {
    const double expected = std::exp(-l);
    EXPECT_NEAR(TailFraction(xs, l), expected,
                3.4 / 3 * ThreeSigma(expected, kSamples)) << l;
  }
}

TEST(NoiseTest, LaplaceTailScalesWithB) {
  const std::vector<double> xs = Draw(false, 3, 12, kSamples);
  EXPECT_NEAR(TailFraction(xs, 3), 0.36787944117144233,
              ThreeSigma(0.3679, kSamples));
}

TEST(NoiseTest, CauchyTails) {
  const std::vector<double> xs = Draw(true, 1, 13, kSamples);
  EXPECT_NEAR(TailFraction(xs, 1), 0.5, ThreeSigma(0.5, kSamples));
  // 1 - (2/pi) atan(6.5).
  const double at_six_half = 1 - 2 * std::atan(6.5) / std::numbers::pi;
  EXPECT_NEAR(at_six_half, 0.09718, 1e-5);
  EXPECT_NEAR(TailFraction(xs, 6.5), at_six_half, ThreeSigma(at_six_half, kSamples));
}

TEST(NoiseTest, ClosedFormTails) {
  EXPECT_DOUBLE_EQ(LaplaceTail(2), std::exp(-2.0));
  EXPECT_NEAR(CauchyTail(1), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(CauchyTail(0), 1.0);
}

TEST(NoiseTest, MediansAreNearZero) {
  for (bool cauchy : {false, true}) {
    std::vector<double> xs = Draw(cauchy, 1, 14, kSamples);
    // Fraction of positive draws is Binomial(N, 1/2).
    int64_t positive = 0;
    for (double x : xs) positive += x > 0;
    EXPECT_NEAR(static_cast<double>(positive) / kSamples, 0.5, ThreeSigma(0.5, kSamples));
  }
}

TEST(NoiseTest, SameSeedSameSequence) {
  const std::vector<double> a = Draw(false, 2, 99, 1000);
  const std::vector<double> b = Draw(false, 2, 99, 1000);
  EXPECT_EQ(a, b);
  const std::vector<double> c = Draw(false, 2, 100, 1000);
  EXPECT_NE(a, c);
}

TEST(RngTest, StreamsAreDistinctAndReproducible) {
  Rng a = Rng::ForStream(RngSeed{5}, 0);
  Rng b = Rng::ForStream(RngSeed{5}, 1);
  Rng a2 = Rng::ForStream(RngSeed{5}, 0);
  const uint64_t x = a.NextU64();
  EXPECT_EQ(x, a2.NextU64());
  EXPECT_NE(x, b.NextU64());
}

TEST(RngTest, UniformIntCoversRangeEvenly) {
  Rng rng(RngSeed{8});
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[rng.UniformInt(7)];
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 3 * std::sqrt(n * (1 / 7.0) * (6 / 7.0)) + 1);
}

TEST(RngTest, UniformOpen01NeverHitsEndpoints) {
  Rng rng(RngSeed{9});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.UniformOpen01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace dpb
