/*
 * Copyright 2026 The gapcover Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <gtest/gtest.h>

#include <algorithm>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"
#include "gapcover/setcover.hpp"
#include "oracles/oracles.hpp"

using namespace gapcover;

namespace {

bool throws_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST(SetCover, SingleElement) {
  const SetCoverInstance inst(1, {{0}});
  EXPECT_EQ(greedy_cover(inst), (Cover{{0}}));
  EXPECT_EQ(exact_cover(inst).cover.size(), 1u);
}

TEST(SetCover, GreedyTieBreakAndExactGap) {
  const SetCoverInstance inst(4, {{1, 2}, {0, 1}, {2, 3}});
  EXPECT_EQ(greedy_cover(inst), (Cover{{0, 1, 2}}));
  const ExactResult r = exact_cover(inst);
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.cover, (Cover{{1, 2}}));
  EXPECT_EQ(oracle::min_cover_size(4, inst.subsets()), 2u);
}

TEST(SetCover, UniverseSubsetGivesOne) {
  const SetCoverInstance inst(5, {{0, 1}, {2}, {0, 1, 2, 3, 4}, {3, 4}});
  EXPECT_EQ(exact_cover(inst).cover, (Cover{{2}}));
}

TEST(SetCover, VerifyReportsFirstUncovered) {
  const SetCoverInstance inst(4, {{1, 2}, {0, 1}, {2, 3}});
  EXPECT_TRUE(verify_cover(inst, Cover{{0, 1, 2}}));
  const CoverVerdict empty = verify_cover(inst, Cover{});
  EXPECT_FALSE(empty.ok);
  EXPECT_EQ(empty.first_uncovered, 0u);
  EXPECT_EQ(verify_cover(inst, Cover{{1}}).first_uncovered, 2u);
  EXPECT_TRUE(throws_code([&] { verify_cover(inst, Cover{{3}}); }, ErrorCode::InvalidArgument));
}

TEST(SetCover, OrphanNamedByGreedy) {
  const SetCoverInstance inst(4, {{0, 1}, {3}});
  EXPECT_EQ(inst.orphan_element(), 2u);
  try {
    greedy_cover(inst);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    EXPECT_NE(std::string(e.what()).find("element 2"), std::string::npos) << e.what();
  }
}

TEST(SetCover, OutOfRangeElementRejected) {
  EXPECT_TRUE(throws_code([] { SetCoverInstance(2, {{0, 2}}); }, ErrorCode::InvalidArgument));
}

TEST(SetCover, SubsetsAreNormalised) {
  const SetCoverInstance inst(4, {{3, 1, 1, 0}});
  EXPECT_EQ(inst.subset(0), (Subset{0, 1, 3}));
}

TEST(SetCover, RandomInstancesMatchOracleAndHarmonicBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::uint32_t n = 6 + static_cast<std::uint32_t>(seed % 7);
    const SetCoverInstance inst = random_instance(n, 9, 4, seed);
    ASSERT_FALSE(inst.orphan_element().has_value());
    const Cover g = greedy_cover(inst);
    const ExactResult e = exact_cover(inst);
    ASSERT_TRUE(e.optimal);
    EXPECT_TRUE(verify_cover(inst, g));
    EXPECT_TRUE(verify_cover(inst, e.cover));
    EXPECT_EQ(e.cover.size(), oracle::min_cover_size(n, inst.subsets())) << "seed " << seed;
    EXPECT_LE(e.cover.size(), g.size());
    EXPECT_LE(Fraction(static_cast<std::int64_t>(g.size())),
              oracle::harmonic(n) * Fraction(static_cast<std::int64_t>(e.cover.size())));
  }
}

TEST(SetCover, ExactSizeIsPermutationInvariant) {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SetCoverInstance inst = random_instance(14, 12, 5, seed);
    std::vector<Subset> shuffled = inst.subsets();
    rng.shuffle(std::span<Subset>(shuffled));
    const SetCoverInstance perm(14, shuffled);
    EXPECT_EQ(exact_cover(inst).cover.size(), exact_cover(perm).cover.size());
  }
}

TEST(SetCover, DuplicateSubsetsReportOriginalIndices) {
  const SetCoverInstance inst(4, {{0, 1}, {0, 1}, {2}, {0, 1}, {2, 3}, {1}});
  const ExactResult r = exact_cover(inst);
  EXPECT_EQ(r.cover.size(), 2u);
  EXPECT_TRUE(verify_cover(inst, r.cover));
  EXPECT_TRUE(std::is_sorted(r.cover.chosen.begin(), r.cover.chosen.end()));
}

TEST(SetCover, HintIsUsedAndValidated) {
  const SetCoverInstance inst(4, {{1, 2}, {0, 1}, {2, 3}});
  EXPECT_EQ(exact_cover(inst, Cover{{1, 2}}).cover.size(), 2u);
  EXPECT_TRUE(throws_code([&] { exact_cover(inst, Cover{{0}}); }, ErrorCode::InvalidArgument));
}

TEST(SetCover, BudgetExhaustionReturnsIncumbent) {
  const SetCoverInstance inst = random_instance(40, 40, 6, 3);
  const ExactResult r = exact_cover(inst, std::nullopt, 1);
  EXPECT_FALSE(r.optimal);
  EXPECT_TRUE(verify_cover(inst, r.cover));
  EXPECT_EQ(r.cover.size(), greedy_cover(inst).size());
}

TEST(SetCover, LargeUniverseWithoutBitsetCache) {
  std::vector<Subset> subsets;
  for (std::uint32_t i = 0; i < 5000; i += 1000) {
    Subset s;
    for (std::uint32_t x = i; x < i + 1000; ++x) s.push_back(x);
    subsets.push_back(s);
  }
  subsets.push_back({0, 4999});
  const SetCoverInstance inst(5000, subsets);
  EXPECT_EQ(greedy_cover(inst).size(), 5u);
  EXPECT_EQ(exact_cover(inst).cover.size(), 5u);
}
