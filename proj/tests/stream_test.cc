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

#include "dpb/stream.h"

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "dpb/rng.h"
#include "gtest/gtest.h"

namespace dpb {
namespace {

TEST(StreamTest, FrequenciesAndMoments) {
  UpdateStream s{5, StreamMode::kTurnstile, {{0, 1}, {1, 1}, {1, 1}, {0, -1}, {4, -1}}};
  ASSERT_TRUE(s.Validate().ok());
  EXPECT_EQ(Frequencies(s), (std::vector<int64_t>{0, 2, 0, 0, -1}));
  EXPECT_EQ(Frequencies(s, 1, 3), (std::vector<int64_t>{0, 2, 0, 0, 0}));
  EXPECT_EQ(SecondMoment(Frequencies(s)), 5);
  EXPECT_DOUBLE_EQ(L2Norm(Frequencies(s)), std::sqrt(5.0));
  EXPECT_EQ(DistinctCount(Frequencies(s)), 2);
}

TEST(StreamTest, ValidateRejectsIllegalUpdates) {
  EXPECT_FALSE((UpdateStream{3, StreamMode::kInsertOnly, {{0, -1}}}).Validate().ok());
  EXPECT_FALSE((UpdateStream{3, StreamMode::kInsertOnly, {{3, 1}}}).Validate().ok());
  EXPECT_FALSE((UpdateStream{3, StreamMode::kTurnstile, {{0, 2}}}).Validate().ok());
  EXPECT_FALSE((UpdateStream{0, StreamMode::kTurnstile, {}}).Validate().ok());
}

TEST(StreamTest, ParseSerializeRoundTrip) {
  Rng rng(RngSeed{1});
  const UpdateStream s = RandomTurnstileStream(20, 300, rng);
  const std::string text = SerializeStream(s);
  const UpdateStream back = ParseStream(text).value();
  EXPECT_EQ(back.updates, s.updates);
  EXPECT_EQ(back.mode, StreamMode::kTurnstile);
  EXPECT_EQ(SerializeStream(back), text);
}

TEST(StreamTest, ParseErrors) {
  EXPECT_FALSE(ParseStream("3 1 sideways\n0 1\n").ok());
  EXPECT_FALSE(ParseStream("3 2 insert\n0 1\n").ok());
  EXPECT_FALSE(ParseStream("3 1 insert\n0 -1\n").ok());
  EXPECT_FALSE(ParseStream("3 1 insert\n5 1\n").ok());
  EXPECT_FALSE(ParseStream("3 1 insert\n0\n").ok());
  EXPECT_FALSE(LoadStream("/nonexistent").ok());
  EXPECT_TRUE(LoadStream(DPB_SOURCE_DIR "/data/demo_stream.txt").ok());
}

TEST(StreamNeighborTest, SingleUpdateChanges) {
  Rng rng(RngSeed{2});
  const UpdateStream s{4, StreamMode::kInsertOnly, {{2, 1}}};
  for (int t = 0; t < 100; ++t) {
    const UpdateStream o = StreamNeighbor(s, rng).value();
    ASSERT_NE(o.updates[0], s.updates[0]);
    ASSERT_TRUE(o.Validate().ok());
  }
  EXPECT_FALSE(StreamNeighbor(UpdateStream{4, StreamMode::kInsertOnly, {}}, rng).ok());
  EXPECT_FALSE(
      StreamNeighbor(UpdateStream{1, StreamMode::kInsertOnly, {{0, 1}}}, rng).ok());
}

TEST(StreamNeighborTest, ReplacementIsUniformOverOtherLegalUpdates) {
  Rng rng(RngSeed{3});
  const UpdateStream s{3, StreamMode::kTurnstile, {{1, -1}}};
  std::map<std::pair<int64_t, int64_t>, int> seen;
  const int trials = 50000;
  for (int t = 0; t < trials; ++t) {
    const Update u = StreamNeighbor(s, rng)->updates[0];
    ++seen[{u.item, u.delta}];
  }
  ASSERT_EQ(seen.size(), 5u);
  EXPECT_EQ(seen.count({1, -1}), 0u);
  for (const auto& [k, c] : seen) EXPECT_NEAR(c, trials / 5.0, 4 * std::sqrt(trials * 0.16));
}

TEST(StreamNeighborTest, DiffersAtOneIndexAndSensitivities) {
  Rng rng(RngSeed{4});
  for (int t = 0; t < 1000; ++t) {
    const bool turnstile = t % 2 == 0;
    const UpdateStream s = turnstile ? RandomTurnstileStream(10, 40, rng)
                                     : UniformStream(10, 40, rng);
    const UpdateStream o = StreamNeighbor(s, rng).value();
    int diffs = 0;
    for (size_t i = 0; i < s.updates.size(); ++i) diffs += !(s.updates[i] == o.updates[i]);
    ASSERT_EQ(diffs, 1);
    const std::vector<int64_t> x = Frequencies(s), y = Frequencies(o);
    int64_t l1 = 0;
    for (size_t i = 0; i < x.size(); ++i) l1 += std::llabs(x[i] - y[i]);
    ASSERT_LE(l1, 2);
    ASSERT_LE(std::fabs(L2Norm(x) - L2Norm(y)), 2);
    ASSERT_LE(std::llabs(DistinctCount(x) - DistinctCount(y)), 2);
  }
}

TEST(GeneratorsTest, ZipfSkewAndUniformSupport) {
  Rng rng(RngSeed{5});
  const UpdateStream z = ZipfStream(100, 20000, 1.2, rng);
  ASSERT_TRUE(z.Validate().ok());
  const std::vector<int64_t> f = Frequencies(z);
  EXPECT_GT(f[0], f[1]);
  EXPECT_GT(f[1], f[10]);
  const UpdateStream u = UniformStream(50, 5000, rng);
  EXPECT_EQ(DistinctCount(Frequencies(u)), 50);
}

}  // namespace
}  // namespace dpb
