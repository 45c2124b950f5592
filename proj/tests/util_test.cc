/*
 * Copyright 2026 The rankfaith Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "rankfaith/util/format.h"
#include "rankfaith/util/hash.h"
#include "rankfaith/util/parallel.h"
#include "rankfaith/util/rng.h"

namespace rankfaith::util {
namespace {

TEST(HashTest, Sha256KnownVectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(HashTest, Hash64IsDigestPrefix) {
  EXPECT_EQ(Hash64("abc"), 0xba7816bf8f01cfeaULL);
}

TEST(FormatTest, FixedAndThousands) {
  EXPECT_EQ(Fixed(0.43125, 4), "0.4313");
  EXPECT_EQ(Fixed(2.0, 2), "2.00");
  EXPECT_EQ(WithThousands(12345.6, 2), "12,345.60");
  EXPECT_EQ(WithThousands(999.0, 0), "999");
  EXPECT_EQ(WithThousands(1234567.0, 0), "1,234,567");
  EXPECT_EQ(WithThousands(-1234.5, 1), "-1,234.5");
}

TEST(FormatTest, TrimAndSplit) {
  EXPECT_EQ(Trim("  a b \t\r\n"), "a b");
  EXPECT_EQ(Trim(""), "");
  EXPECT_EQ(Split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(Split("", ','), (std::vector<std::string>{""}));
}

TEST(FormatTest, ParseDoubleIsStrict) {
  double v = 0;
  EXPECT_TRUE(ParseDouble("1e3", &v));
  EXPECT_EQ(v, 1000.0);
  EXPECT_TRUE(ParseDouble("-0.25", &v));
  EXPECT_EQ(v, -0.25);
  EXPECT_FALSE(ParseDouble("", &v));
  EXPECT_FALSE(ParseDouble("12abc", &v));
  EXPECT_FALSE(ParseDouble("inf", &v));
  EXPECT_FALSE(ParseDouble("nan", &v));
}

TEST(RngTest, DeriveIsReproducibleAndStreamsDiffer) {
  auto a = Rng::Derive(7, 1), b = Rng::Derive(7, 1), c = Rng::Derive(7, 2);
  const auto x = a.NextU64();
  EXPECT_EQ(x, b.NextU64());
  EXPECT_NE(x, c.NextU64());
}

TEST(RngTest, DrawsStayInRange) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = rng.Int(-2, 5);
    ASSERT_GE(k, -2);
    ASSERT_LE(k, 5);
    const double l = rng.LogUniform(0.03, 0.3);
    ASSERT_GE(l, 0.03);
    ASSERT_LE(l, 0.3);
  }
}

TEST(RngTest, IntCoversEveryValue) {
  Rng rng(11);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) seen.insert(rng.Int(0, 6));
  EXPECT_EQ(seen.size(), 7u);
}

TEST(RngTest, NormalMoments) {
  Rng rng(5);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, ShuffleIsAPermutation) {
  Rng rng(9);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  auto w = v;
  rng.Shuffle(w);
  EXPECT_NE(v, w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(1000, [&](std::int64_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelForTest, RethrowsAfterTheLoop) {
  EXPECT_THROW(ParallelFor(100,
                           [](std::int64_t i) {
                             if (i == 37) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

}  // namespace
}  // namespace rankfaith::util
