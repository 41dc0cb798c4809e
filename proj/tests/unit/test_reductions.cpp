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
#include "gapcover/reductions.hpp"
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

struct Satisfiable {
  Sat5Formula formula;
  Assignment witness;
};

std::vector<Satisfiable> satisfiable_formulas(std::uint32_t n, std::size_t count) {
  std::vector<Satisfiable> out;
  for (std::uint64_t seed = 0; out.size() < count; ++seed) {
    Sat5Formula f = random_3sat5(n, seed);
    const MaxSatResult r = max_sat(f.base());
    if (r.best_count == f.clause_count()) out.push_back({f, r.witness});
  }
  return out;
}

}  // namespace

TEST(Ly, SizesForSmallestGame) {
  const auto [f, w] = satisfiable_formulas(3, 1).front();
  const TwoProverGame game = clause_variable_game(f);
  const LyInstanceMap map = ly_reduce(game, special_from_universal(2, 2, 0));
  EXPECT_EQ(map.instance.universe_size(), 60u);
  EXPECT_EQ(map.instance.subset_count(), 5u * 8 + 3u * 2);
  EXPECT_FALSE(map.instance.orphan_element().has_value());
  EXPECT_EQ(map.instance.provenance()["reduction"], "ly");
}

TEST(Ly, SubsetsFollowDefinition) {
  const Sat5Formula f = random_3sat5(3, 4);
  const TwoProverGame game = clause_variable_game(f);
  const SpecialSetSystem sss = special_from_universal(2, 2, 1);
  const LyInstanceMap map = ly_reduce(game, sss);
  const std::uint32_t B = sss.universe_size;
  for (std::uint32_t q1 = 0; q1 < 5; ++q1)
    for (std::uint64_t a1 = 0; a1 < 8; ++a1) {
      Subset expected;
      for (std::uint64_t r = 0; r < game.seed_count(); ++r) {
        if (game.query(r, 0) != q1) continue;
        const auto a2 = game.functional_answer(r, a1);
        if (!a2) continue;
        for (std::uint32_t b = 0; b < B; ++b)
          if (!sss.sets[*a2][b]) expected.push_back(static_cast<std::uint32_t>(r * B + b));
      }
      EXPECT_EQ(map.instance.subset(map.set_index(0, q1, a1)), expected);
    }
  for (std::uint32_t q2 = 0; q2 < 3; ++q2)
    for (std::uint64_t a2 = 0; a2 < 2; ++a2) {
      Subset expected;
      for (std::uint64_t r = 0; r < game.seed_count(); ++r)
        if (game.query(r, 1) == q2)
          for (std::uint32_t b = 0; b < B; ++b)
            if (sss.sets[a2][b]) expected.push_back(static_cast<std::uint32_t>(r * B + b));
      EXPECT_EQ(map.instance.subset(map.set_index(1, q2, a2)), expected);
    }
}

TEST(Ly, CompletenessOnSatisfiableFormulas) {
  const SpecialSetSystem sss = special_from_universal(2, 2, 0);
  for (const auto& [f, w] : satisfiable_formulas(3, 6)) {
    const TwoProverGame game = clause_variable_game(f);
    const LyInstanceMap map = ly_reduce(game, sss);
    const auto s = clause_variable_strategies(f.base(), w);
    const Cover witness = ly_witness(map, s[0], s[1]);
    EXPECT_EQ(witness.size(), 8u);
    EXPECT_TRUE(verify_cover(map.instance, witness));
    const ExactResult exact = exact_cover(map.instance, witness);
    EXPECT_TRUE(exact.optimal);
    EXPECT_EQ(exact.cover.size(), 8u);
    EXPECT_GE(greedy_cover(map.instance).size(), 8u);
  }
}

TEST(Ly, BlocksCoveredOnlyByAcceptingPairs) {
  const SpecialSetSystem sss = special_from_universal(2, 2, 0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TwoProverGame game = clause_variable_game(random_3sat5(3, seed));
    const LyInstanceMap map = ly_reduce(game, sss);
    const LyBlockCheck check = check_ly_blocks(map, game, 2);
    EXPECT_TRUE(check.ok) << check.failure;
    EXPECT_EQ(check.blocks, 15u);
  }
}

TEST(Ly, NonSpecialGadgetBreaksBlockCheck) {
  // Two copies of one set: C_0 together with the complement of C_1 covers.
  SpecialSetSystem bad;
  bad.universe_size = 4;
  bad.sets = {boost::dynamic_bitset<>(4, 0b0011), boost::dynamic_bitset<>(4, 0b0011)};
  bad.certified_d = 2;
  const TwoProverGame game = clause_variable_game(random_3sat5(3, 0));
  const LyBlockCheck check = check_ly_blocks(ly_reduce(game, bad), game, 2);
  EXPECT_FALSE(check.ok);
  EXPECT_FALSE(check.failure.empty());
}

TEST(Ly, SizeMismatchRejected) {
  const TwoProverGame game = clause_variable_game(random_3sat5(3, 0));
  EXPECT_TRUE(throws_code([&] { ly_reduce(game, special_from_universal(3, 2, 0)); }, ErrorCode::InvalidArgument));
  const TwoProverGame loose = random_two_prover_game(4, {2, 2}, {2, 2}, 60, false, 1);
  EXPECT_TRUE(throws_code([&] { ly_reduce(loose, special_from_universal(2, 2, 0)); }, ErrorCode::InvalidArgument));
}

TEST(Ly, NullBlocksAreRecorded) {
  // Seed 0 accepts nothing, so its block is covered only by prover-2 sets.
  const TwoProverGame game = TwoProverGame::from_predicate(
      {{0, 0}, {0, 1}}, {1, 2}, {2, 2}, [](std::uint64_t r, std::uint64_t a1, std::uint64_t a2) { return r == 1 && a1 == a2; },
      true);
  const LyInstanceMap map = ly_reduce(game, special_from_universal(2, 2, 0));
  EXPECT_EQ(map.null_blocks, (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(map.instance.provenance()["null_blocks"], nlohmann::ordered_json::array({0}));
  // Block 0 can only lose elements that no prover-2 set reaches.
  if (const auto orphan = map.instance.orphan_element()) EXPECT_LT(*orphan, map.block_size);
}

TEST(Ly, SoundnessDiagnosticOnSolverCovers) {
  const SpecialSetSystem sss = special_from_universal(2, 2, 0);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const TwoProverGame game = clause_variable_game(random_3sat5(3, seed));
    const LyInstanceMap map = ly_reduce(game, sss);
    for (const Cover& c : {greedy_cover(map.instance), exact_cover(map.instance).cover}) {
      for (std::uint32_t d = 1; d <= 2; ++d) {
        const LyDiagnostic diag = ly_soundness_diagnostic(map, game, c, d);
        EXPECT_TRUE(diag.holds) << "seed " << seed << " d " << d;
        EXPECT_EQ(diag.bound, diag.delta / static_cast<std::int64_t>(d * d));
        EXPECT_LE(diag.best_acceptance, game_value_exact(game).value());
      }
    }
  }
}

TEST(Ly, WitnessEdgesAreAllGood) {
  const auto [f, w] = satisfiable_formulas(3, 1).front();
  const TwoProverGame game = clause_variable_game(f);
  const LyInstanceMap map = ly_reduce(game, special_from_universal(2, 2, 0));
  const auto s = clause_variable_strategies(f.base(), w);
  const LyDiagnostic diag = ly_soundness_diagnostic(map, game, ly_witness(map, s[0], s[1]), 2);
  EXPECT_EQ(diag.delta, Fraction(1));
  EXPECT_EQ(diag.best_acceptance, Fraction(1));
}

TEST(Feige, SizesAndCompleteness) {
  const auto sat = satisfiable_formulas(3, 3);
  for (const auto& [f, w] : sat) {
    const KProverGame game(f, balanced_code(2, 2, 0));
    EXPECT_EQ(game.query_count(), 15u);
    const FeigeInstanceMap map = feige_reduce(game, 11, 4, 2, 2);
    EXPECT_EQ(map.instance.subset_count(), 2u * 15 * 16);
    EXPECT_EQ(map.block_offset.size(), 226u);
    EXPECT_EQ(map.block_offset.back(), map.instance.universe_size());
    EXPECT_FALSE(map.instance.orphan_element().has_value());
    const Cover witness = feige_witness(map, game, w);
    EXPECT_EQ(witness.size(), 30u);
    EXPECT_TRUE(verify_cover(map.instance, witness));
    for (std::uint32_t hits : block_hits(map.instance, map.block_offset, witness)) EXPECT_EQ(hits, 2u);
  }
}

TEST(Feige, SubsetsRestrictToPartitionParts) {
  const KProverGame game(random_3sat5(3, 1), balanced_code(2, 2, 0));
  const FeigeInstanceMap map = feige_reduce(game, 3, 4, 2, 2);
  for (const auto& ps : map.systems) EXPECT_TRUE(verify_partition(ps));
  for (std::uint64_t r = 0; r < game.seed_count(); r += 17) {
    const auto coords = game.decode_seed(r);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::uint64_t a = 0; a < game.answer_count(); ++a) {
        const Subset& s = map.instance.subset(map.set_index(i, game.query_index(i, coords), a));
        Subset in_block;
        for (std::uint32_t x : s)
          if (x >= map.block_offset[r] && x < map.block_offset[r + 1]) in_block.push_back(x - map.block_offset[r]);
        EXPECT_EQ(in_block, map.systems[r].partitions[game.induced_assignment(i, coords, a)][i]);
      }
  }
}

TEST(Feige, ParameterMismatchRejected) {
  const KProverGame game(random_3sat5(3, 1), balanced_code(2, 2, 0));
  EXPECT_TRUE(throws_code([&] { feige_reduce(game, 0, 3, 2, 2); }, ErrorCode::InvalidArgument));
  EXPECT_TRUE(throws_code([&] { feige_reduce(game, 0, 4, 3, 2); }, ErrorCode::InvalidArgument));
}

TEST(Feige, DeterministicPerSeed) {
  const KProverGame game(random_3sat5(3, 1), balanced_code(2, 2, 0));
  EXPECT_EQ(feige_reduce(game, 5, 4, 2, 2).instance, feige_reduce(game, 5, 4, 2, 2).instance);
}

TEST(Feige, SoundnessDiagnosticOnWitnessAndGreedy) {
  const auto [f, w] = satisfiable_formulas(3, 1).front();
  const KProverGame game(f, balanced_code(2, 2, 0));
  const FeigeInstanceMap map = feige_reduce(game, 11, 4, 2, 2);
  const FeigeDiagnostic honest = feige_soundness_diagnostic(map, game, feige_witness(map, game, w), 0.5);
  EXPECT_DOUBLE_EQ(honest.weak_acceptance, 1.0);
  EXPECT_TRUE(honest.holds);
  const FeigeDiagnostic greedy = feige_soundness_diagnostic(map, game, greedy_cover(map.instance), 0.5);
  EXPECT_TRUE(greedy.holds);
  EXPECT_GE(greedy.weak_acceptance, 0.0);
  EXPECT_LE(greedy.weak_acceptance, 1.0);
}

TEST(Moshkovitz, CompletenessOnPlantedGames) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [pg, hidden] = planted_biregular_game(3, 3, 2, 2, 3, 2, seed);
    const PartitionSystem ps = partition_from_anti_universal(2, 2, 2, seed);
    const MoshkovitzInstanceMap map = moshkovitz_reduce(pg, ps);
    EXPECT_EQ(map.instance.universe_size(), ps.m * 3);
    EXPECT_EQ(map.instance.subset_count(), 9u);
    EXPECT_FALSE(map.instance.orphan_element().has_value());
    const Cover witness = moshkovitz_witness(map, hidden);
    EXPECT_EQ(witness.size(), 3u);
    EXPECT_TRUE(verify_cover(map.instance, witness));
  }
}

TEST(Moshkovitz, SubsetsTouchOnlyNeighbourBlocks) {
  const ProjectionGame pg = random_biregular_game(4, 2, 1, 2, 3, 3, 6);
  const PartitionSystem ps = partition_from_anti_universal(3, 2, 2, 1);
  const MoshkovitzInstanceMap map = moshkovitz_reduce(pg, ps);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t sigma = 0; sigma < 3; ++sigma) {
      Subset expected;
      for (std::uint32_t e : pg.edges_at_a(a)) {
        const auto& edge = pg.edges()[e];
        for (std::uint32_t x : ps.partitions[edge.projection[sigma]][edge.slot]) expected.push_back(edge.b * ps.m + x);
      }
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(map.instance.subset(map.set_index(a, sigma)), expected);
    }
}

TEST(Moshkovitz, DuplicationScalesUniverse) {
  const auto [pg, hidden] = planted_biregular_game(3, 3, 2, 2, 3, 2, 2);
  const PartitionSystem ps = partition_from_anti_universal(2, 2, 2, 0);
  const MoshkovitzInstanceMap map = moshkovitz_reduce(pg, ps, 3);
  EXPECT_EQ(map.instance.universe_size(), ps.m * 3 * 3);
  EXPECT_TRUE(verify_cover(map.instance, moshkovitz_witness(map, hidden)));
  EXPECT_EQ(exact_cover(map.instance).cover.size(), exact_cover(moshkovitz_reduce(pg, ps).instance).cover.size());
}

TEST(Moshkovitz, ParameterMismatchRejected) {
  const ProjectionGame pg = random_biregular_game(3, 3, 2, 2, 3, 2, 0);
  EXPECT_TRUE(throws_code([&] { moshkovitz_reduce(pg, partition_from_anti_universal(3, 2, 2, 0)); },
                          ErrorCode::InvalidArgument));
  EXPECT_TRUE(throws_code([&] { moshkovitz_reduce(pg, partition_from_anti_universal(2, 3, 2, 0)); },
                          ErrorCode::InvalidArgument));
  const ProjectionGame irregular(2, 1, 2, 2, {{0, 0, 0, {0, 1}}});
  EXPECT_TRUE(throws_code([&] { moshkovitz_reduce(irregular, partition_from_anti_universal(2, 1 + 1, 2, 0)); },
                          ErrorCode::InvalidArgument));
}

TEST(Moshkovitz, UnsatisfiableDirectionNeedsMoreSets) {
  // With d above the B-degree, a one-label-per-vertex cover of size |A|
  // must agree at every b. Games whose agreement soundness is below one
  // therefore need more than |A| sets whenever the lists stay singletons;
  // the exact solver settles the remaining cases.
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40 && checked < 6; ++seed) {
    const ProjectionGame pg = random_biregular_game(3, 3, 2, 2, 3, 3, seed);
    if (agreement_soundness(pg).value == Fraction(1)) continue;
    const PartitionSystem ps = partition_from_anti_universal(3, 2, 3, seed);
    const MoshkovitzInstanceMap map = moshkovitz_reduce(pg, ps);
    if (map.instance.orphan_element()) continue;
    const ExactResult exact = exact_cover(map.instance);
    ASSERT_TRUE(exact.optimal);
    EXPECT_GT(exact.cover.size(), 3u) << "seed " << seed;
    const MoshkovitzDiagnostic diag = moshkovitz_soundness_diagnostic(map, pg, ps, exact.cover);
    EXPECT_TRUE(diag.holds);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(Moshkovitz, DiagnosticHoldsOnSolverCovers) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProjectionGame pg = random_biregular_game(3, 3, 2, 2, 3, 2, seed);
    const PartitionSystem ps = partition_from_anti_universal(2, 2, 2, seed);
    const MoshkovitzInstanceMap map = moshkovitz_reduce(pg, ps);
    if (map.instance.orphan_element()) continue;
    for (const Cover& c : {greedy_cover(map.instance), exact_cover(map.instance).cover}) {
      const MoshkovitzDiagnostic diag = moshkovitz_soundness_diagnostic(map, pg, ps, c);
      EXPECT_TRUE(diag.holds) << "seed " << seed;
      EXPECT_GE(diag.ell, 1u);
      for (const auto& l : diag.labeling.labels_a) EXPECT_EQ(l.size(), diag.ell);
      EXPECT_LE(diag.list_agreement, list_agreement_soundness(pg, diag.ell).value);
    }
  }
}

TEST(GapReport, SatisfiableLyRatioIsOne) {
  const auto [f, w] = satisfiable_formulas(3, 1).front();
  const TwoProverGame game = clause_variable_game(f);
  const LyInstanceMap map = ly_reduce(game, special_from_universal(2, 2, 0));
  const auto s = clause_variable_strategies(f.base(), w);
  const GapReport r = gap_report(map.instance, ly_witness(map, s[0], s[1]), true, false);
  EXPECT_EQ(r.reduction, "ly");
  EXPECT_EQ(r.exact_size, 8u);
  EXPECT_EQ(r.witness_size, 8u);
  EXPECT_TRUE(r.exact_optimal);
  EXPECT_DOUBLE_EQ(*r.ratio_exact_witness(), 1.0);
  EXPECT_TRUE(r.completeness_ok);
}

TEST(GapReport, GreedyOnlyOmitsExactFields) {
  const SetCoverInstance inst(4, {{1, 2}, {0, 1}, {2, 3}});
  const GapReport r = gap_report(inst, std::nullopt, false, true);
  EXPECT_TRUE(r.greedy_only);
  EXPECT_FALSE(r.exact_size.has_value());
  EXPECT_FALSE(r.ratio_greedy_exact().has_value());
  EXPECT_EQ(r.greedy_size, 3u);
}

TEST(GapReport, BadWitnessFailsCompleteness) {
  const SetCoverInstance inst(4, {{1, 2}, {0, 1}, {2, 3}});
  EXPECT_FALSE(gap_report(inst, Cover{{0}}, true, false).completeness_ok);
  EXPECT_FALSE(gap_report(inst, std::nullopt, true, false).completeness_ok);
  EXPECT_TRUE(gap_report(inst, Cover{{1, 2}}, true, false).completeness_ok);
}
