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
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapcover/combinatorics.hpp"
#include "gapcover/projection_games.hpp"
#include "gapcover/proof_systems.hpp"
#include "gapcover/set_systems.hpp"
#include "gapcover/setcover.hpp"

namespace gapcover {

// ---------------------------------------------------------------------------
// Two-prover reduction over a special set system. Element (r, b) has index
// r * |B| + b. Subsets for prover 1 come first, (q1, a1) at q1 * A1 + a1,
// then prover 2's (q2, a2) at Q1 * A1 + q2 * A2 + a2.

struct LyInstanceMap {
  SetCoverInstance instance;
  std::uint64_t seed_count = 0;
  std::uint32_t block_size = 0;
  std::array<std::uint32_t, 2> query_counts{};
  std::array<std::uint64_t, 2> answer_counts{};
  std::vector<std::uint64_t> null_blocks;  // seeds where every a1 has no accepting a2

  std::uint32_t set_index(int prover, std::uint32_t query, std::uint64_t answer) const;
};

LyInstanceMap ly_reduce(const TwoProverGame& game, const SpecialSetSystem& sss);

// The |Q1| + |Q2| cover picked out by a strategy pair.
Cover ly_witness(const LyInstanceMap& map, const ProverStrategy& first, const ProverStrategy& second);

struct LyBlockCheck {
  bool ok = true;
  std::uint64_t blocks = 0;
  std::uint64_t covers_examined = 0;
  std::string failure;  // first failing block, when !ok
};

// For every block: each (q(r,1), a1) with an accepting a2 covers the block
// together with (q(r,2), a2); and every cover of the block by at most d of
// the instance's subsets contains such a pair. Exhaustive.
LyBlockCheck check_ly_blocks(const LyInstanceMap& map, const TwoProverGame& game, std::uint32_t d,
                             std::uint64_t budget = kVerificationBudget);

struct LyDiagnostic {
  std::uint32_t d = 0;
  std::uint64_t good_edges = 0;
  Fraction delta;           // good-edge fraction
  Fraction best_acceptance; // best of the d * d list strategies
  Fraction bound;           // delta / d^2
  std::array<std::uint32_t, 2> best_pair{};
  bool holds = false;
};

// Edge cost c(q1) + c(q2) from the cover's subsets per query; an edge is
// good at cost <= d. Strategy j answers the j-th smallest covered answer
// (answer 0 when the list is shorter).
LyDiagnostic ly_soundness_diagnostic(const LyInstanceMap& map, const TwoProverGame& game, const Cover& cover,
                                     std::uint32_t d);

// ---------------------------------------------------------------------------
// k-prover reduction with one partition system per verifier seed. Partition
// j is tied to the rho-bit string j; part i to prover i. Subset (i, q, a)
// has index (i * Q + q) * answers + a.

struct FeigeInstanceMap {
  SetCoverInstance instance;
  std::vector<PartitionSystem> systems;     // one per seed
  std::vector<std::uint32_t> block_offset;  // seed r owns [offset[r], offset[r+1])
  std::size_t provers = 0;
  std::uint64_t query_count = 0;
  std::uint64_t answer_count = 0;

  std::uint32_t set_index(std::size_t prover, std::uint64_t query, std::uint64_t answer) const {
    return static_cast<std::uint32_t>((prover * query_count + query) * answer_count + answer);
  }
};

// L must equal 2^rho and k the prover count. Partition system r is built
// from the sub-seed derive_seed(ps_seed, r).
FeigeInstanceMap feige_reduce(const KProverGame& game, std::uint64_t ps_seed, std::uint32_t L, std::uint32_t k,
                              std::uint32_t d);

// The kQ cover of the assignment-consistent strategies.
Cover feige_witness(const FeigeInstanceMap& map, const KProverGame& game, const Assignment& assignment);

// Number of cover subsets meeting each block.
std::vector<std::uint32_t> block_hits(const SetCoverInstance& inst, const std::vector<std::uint32_t>& block_offset,
                                      const Cover& cover);

struct FeigeDiagnostic {
  double delta = 0.0;
  std::uint64_t good_seeds = 0;
  double good_fraction = 0.0;
  double weak_acceptance = 0.0;  // exact expectation of the randomized strategy
  double bound = 0.0;            // 2 delta / (k ln m)^2 with the largest block size
  bool size_precondition = false;  // |C| <= (1 - delta) k Q ln m with the smallest block size
  bool applicable = false;         // every good threshold below certified_d
  bool holds = false;
};

// Seed cost c(r) = sum_i c(q(r,i), i); good when c(r) < (1 - delta/2) k ln m_r.
// Each prover answers uniformly among its covered answers. When
// applicable, every good seed must weakly accept with probability at least
// 4 / (k ln m_r)^2, and under the size precondition the good fraction must
// reach delta / 2.
FeigeDiagnostic feige_soundness_diagnostic(const FeigeInstanceMap& map, const KProverGame& game, const Cover& cover,
                                           double delta);

// ---------------------------------------------------------------------------
// Projection-game reduction over one partition system. Block b holds
// elements [b * m * dup, (b + 1) * m * dup); element x of the system appears
// as copies x * dup .. x * dup + dup - 1. Subset (a, sigma) has index
// a * sigma_a + sigma.

struct MoshkovitzInstanceMap {
  SetCoverInstance instance;
  std::uint32_t block_size = 0;
  std::uint32_t duplication = 1;
  std::uint32_t sigma_a = 0;

  std::uint32_t set_index(std::uint32_t a, std::uint32_t sigma) const { return a * sigma_a + sigma; }
};

// ps.L must equal sigma_b and ps.k the B-degree.
MoshkovitzInstanceMap moshkovitz_reduce(const ProjectionGame& pg, const PartitionSystem& ps,
                                        std::uint32_t duplication = 1);

Cover moshkovitz_witness(const MoshkovitzInstanceMap& map, const Labeling& labeling);

struct MoshkovitzDiagnostic {
  std::uint32_t ell = 0;
  std::uint64_t small_blocks = 0;  // b covered by fewer than certified_d edge parts
  Fraction small_fraction;
  Fraction list_agreement;
  LLabeling labeling;
  bool holds = false;
};

// Lists hold the symbols sigma with S_{a,sigma} in the cover, padded with the
// smallest unused symbols to a common length. Every small b must fail to
// totally list-disagree.
MoshkovitzDiagnostic moshkovitz_soundness_diagnostic(const MoshkovitzInstanceMap& map, const ProjectionGame& pg,
                                                     const PartitionSystem& ps, const Cover& cover);

// ---------------------------------------------------------------------------

struct GapReport {
  std::string reduction;
  std::uint32_t universe_size = 0;
  std::size_t subset_count = 0;
  std::size_t greedy_size = 0;
  bool greedy_only = false;
  std::optional<std::size_t> exact_size;
  bool exact_optimal = false;
  std::optional<std::size_t> witness_size;
  bool satisfiable_side = false;
  bool completeness_ok = true;  // exact equals witness on the satisfiable side
  nlohmann::ordered_json provenance;

  std::optional<double> ratio_exact_witness() const;
  std::optional<double> ratio_greedy_exact() const;
};

GapReport gap_report(const SetCoverInstance& inst, const std::optional<Cover>& witness, bool satisfiable_side,
                     bool greedy_only, std::uint64_t node_budget = kExactNodeBudget);

}  // namespace gapcover
