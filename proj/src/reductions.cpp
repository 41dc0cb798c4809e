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
#include "gapcover/reductions.hpp"

#include <algorithm>
#include <cmath>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

// ---------------------------------------------------------------------------
// Two-prover reduction

std::uint32_t LyInstanceMap::set_index(int prover, std::uint32_t query, std::uint64_t answer) const {
  require(prover == 0 || prover == 1, "prover must be 0 or 1");
  require(query < query_counts[prover] && answer < answer_counts[prover], "query or answer out of range");
  if (prover == 0) return static_cast<std::uint32_t>(query * answer_counts[0] + answer);
  return static_cast<std::uint32_t>(query_counts[0] * answer_counts[0] + query * answer_counts[1] + answer);
}

LyInstanceMap ly_reduce(const TwoProverGame& game, const SpecialSetSystem& sss) {
  require(game.has_functional_answer(), "the game must have the functional answer property");
  require(game.answer_count(1) == sss.m(), "special set system has " + std::to_string(sss.m()) +
                                               " sets but prover 2 has " + std::to_string(game.answer_count(1)) +
                                               " answers");
  const std::uint64_t total = sat_mul(game.seed_count(), sss.universe_size);
  require(total < (std::uint64_t{1} << 31), "universe too large");
  const std::uint64_t subsets = game.query_count(0) * game.answer_count(0) + game.query_count(1) * game.answer_count(1);
  require(subsets < (std::uint64_t{1} << 31), "too many subsets");

  LyInstanceMap map{SetCoverInstance(0, {}), game.seed_count(), sss.universe_size,
                    {game.query_count(0), game.query_count(1)}, {game.answer_count(0), game.answer_count(1)}, {}};
  std::vector<Subset> sets(subsets);
  const std::uint32_t B = sss.universe_size;
  for (std::uint64_t r = 0; r < game.seed_count(); ++r) {
    const auto base = static_cast<std::uint32_t>(r * B);
    bool any = false;
    for (std::uint64_t a1 = 0; a1 < game.answer_count(0); ++a1) {
      const auto a2 = game.functional_answer(r, a1);
      if (!a2) continue;
      any = true;
      auto& s = sets[map.set_index(0, game.query(r, 0), a1)];
      for (std::uint32_t b = 0; b < B; ++b)
        if (!sss.sets[*a2][b]) s.push_back(base + b);
    }
    if (!any) map.null_blocks.push_back(r);
    for (std::uint64_t a2 = 0; a2 < game.answer_count(1); ++a2) {
      auto& s = sets[map.set_index(1, game.query(r, 1), a2)];
      for (std::uint32_t b = 0; b < B; ++b)
        if (sss.sets[a2][b]) s.push_back(base + b);
    }
  }
  nlohmann::ordered_json prov = {{"reduction", "ly"},
                                 {"seeds", game.seed_count()},
                                 {"queries", {game.query_count(0), game.query_count(1)}},
                                 {"answers", {game.answer_count(0), game.answer_count(1)}},
                                 {"block_size", B},
                                 {"certified_d", sss.certified_d},
                                 {"null_blocks", map.null_blocks}};
  map.instance = SetCoverInstance(static_cast<std::uint32_t>(total), std::move(sets), std::move(prov));
  return map;
}

Cover ly_witness(const LyInstanceMap& map, const ProverStrategy& first, const ProverStrategy& second) {
  Cover cover;
  for (std::uint32_t q = 0; q < map.query_counts[0]; ++q) cover.chosen.push_back(map.set_index(0, q, first(q)));
  for (std::uint32_t q = 0; q < map.query_counts[1]; ++q) cover.chosen.push_back(map.set_index(1, q, second(q)));
  return cover;
}

LyBlockCheck check_ly_blocks(const LyInstanceMap& map, const TwoProverGame& game, std::uint32_t d,
                             std::uint64_t budget) {
  LyBlockCheck check;
  const std::uint32_t B = map.block_size;
  // Restriction of a subset to block r, as a mask over B.
  auto restriction = [&](std::uint32_t set, std::uint64_t r) {
    boost::dynamic_bitset<> m(B);
    const auto lo = static_cast<std::uint32_t>(r * B);
    const auto& s = map.instance.subset(set);
    for (auto it = std::lower_bound(s.begin(), s.end(), lo); it != s.end() && *it < lo + B; ++it) m.set(*it - lo);
    return m;
  };
  for (std::uint64_t r = 0; r < game.seed_count(); ++r, ++check.blocks) {
    struct Candidate {
      int prover;
      std::uint64_t answer;
      boost::dynamic_bitset<> mask;
    };
    std::vector<Candidate> candidates;
    for (std::uint64_t a1 = 0; a1 < game.answer_count(0); ++a1)
      candidates.push_back({0, a1, restriction(map.set_index(0, game.query(r, 0), a1), r)});
    for (std::uint64_t a2 = 0; a2 < game.answer_count(1); ++a2)
      candidates.push_back({1, a2, restriction(map.set_index(1, game.query(r, 1), a2), r)});

    for (std::uint64_t a1 = 0; a1 < game.answer_count(0); ++a1) {
      const auto a2 = game.functional_answer(r, a1);
      if (!a2) continue;
      if (!(candidates[a1].mask | candidates[game.answer_count(0) + *a2].mask).all()) {
        check.ok = false;
        check.failure = "block " + std::to_string(r) + ": pair (" + std::to_string(a1) + ", " +
                        std::to_string(*a2) + ") does not cover it";
        return check;
      }
    }

    const auto n = static_cast<std::uint32_t>(candidates.size());
    for (std::uint32_t size = 1; size <= std::min(d, n); ++size) {
      check.covers_examined += binomial(n, size);
      if (check.covers_examined > budget)
        fail(ErrorCode::BudgetExceeded, "per-block cover enumeration exceeds budget " + std::to_string(budget));
      for_each_combination(n, size, [&](std::span<const std::uint32_t> pick) {
        boost::dynamic_bitset<> un(B);
        for (std::uint32_t c : pick) un |= candidates[c].mask;
        if (!un.all()) return true;
        for (std::uint32_t x : pick) {
          if (candidates[x].prover != 0) continue;
          const auto a2 = game.functional_answer(r, candidates[x].answer);
          if (!a2) continue;
          for (std::uint32_t y : pick)
            if (candidates[y].prover == 1 && candidates[y].answer == *a2) return true;
        }
        check.ok = false;
        check.failure = "block " + std::to_string(r) + " is covered by " + std::to_string(size) +
                        " subsets without an accepting pair";
        return false;
      });
      if (!check.ok) return check;
    }
  }
  return check;
}

namespace {

// answers[p][q] = sorted answers a with subset (p, q, a) in the cover.
std::array<std::vector<std::vector<std::uint64_t>>, 2> ly_cover_lists(const LyInstanceMap& map, const Cover& cover) {
  std::array<std::vector<std::vector<std::uint64_t>>, 2> lists;
  for (int p = 0; p < 2; ++p) lists[p].resize(map.query_counts[p]);
  const std::uint64_t first_block = map.query_counts[0] * map.answer_counts[0];
  for (std::uint32_t s : cover.chosen) {
    require(s < map.instance.subset_count(), "cover index out of range");
    if (s < first_block) {
      lists[0][s / map.answer_counts[0]].push_back(s % map.answer_counts[0]);
    } else {
      const std::uint64_t t = s - first_block;
      lists[1][t / map.answer_counts[1]].push_back(t % map.answer_counts[1]);
    }
  }
  for (auto& side : lists)
    for (auto& l : side) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  return lists;
}

}  // namespace

LyDiagnostic ly_soundness_diagnostic(const LyInstanceMap& map, const TwoProverGame& game, const Cover& cover,
                                     std::uint32_t d) {
  require(d >= 1, "d must be positive");
  const auto lists = ly_cover_lists(map, cover);
  LyDiagnostic diag;
  diag.d = d;
  for (std::uint64_t r = 0; r < game.seed_count(); ++r) {
    const std::size_t cost = lists[0][game.query(r, 0)].size() + lists[1][game.query(r, 1)].size();
    if (cost <= d) ++diag.good_edges;
  }
  const auto R = static_cast<std::int64_t>(game.seed_count());
  diag.delta = R == 0 ? Fraction(0) : Fraction(static_cast<std::int64_t>(diag.good_edges), R);
  diag.bound = diag.delta / static_cast<std::int64_t>(d * d);

  auto strategy = [&](int p, std::uint32_t j) {
    ProverStrategy s;
    for (const auto& l : lists[p]) s.table.push_back(j < l.size() ? l[j] : 0);
    return s;
  };
  std::uint64_t best = 0;
  for (std::uint32_t i = 0; i < d; ++i) {
    const auto s1 = strategy(0, i);
    for (std::uint32_t j = 0; j < d; ++j) {
      const std::uint64_t acc = accepting_seeds(game, s1, strategy(1, j));
      if (acc > best || (i == 0 && j == 0)) {
        best = acc;
        diag.best_pair = {i, j};
      }
    }
  }
  diag.best_acceptance = R == 0 ? Fraction(0) : Fraction(static_cast<std::int64_t>(best), R);
  diag.holds = diag.best_acceptance >= diag.bound;
  return diag;
}

// ---------------------------------------------------------------------------
// k-prover reduction

FeigeInstanceMap feige_reduce(const KProverGame& game, std::uint64_t ps_seed, std::uint32_t L, std::uint32_t k,
                              std::uint32_t d) {
  require(L == (std::uint32_t{1} << game.rho()),
          "L must equal 2^rho = " + std::to_string(std::uint32_t{1} << game.rho()) + ", got " + std::to_string(L));
  require(k == game.prover_count(),
          "k must equal the prover count " + std::to_string(game.prover_count()) + ", got " + std::to_string(k));
  const std::uint64_t subsets = sat_mul(sat_mul(k, game.query_count()), game.answer_count());
  require(subsets < (std::uint64_t{1} << 31), "too many subsets");

  FeigeInstanceMap map{SetCoverInstance(0, {}), {}, {0}, k, game.query_count(), game.answer_count()};
  std::vector<Subset> sets(subsets);
  std::uint64_t offset = 0;
  for (std::uint64_t r = 0; r < game.seed_count(); ++r) {
    PartitionSystem ps = partition_from_anti_universal(L, k, d, derive_seed(ps_seed, r));
    const auto coords = game.decode_seed(r);
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t q = game.query_index(i, coords);
      for (std::uint64_t a = 0; a < game.answer_count(); ++a) {
        const std::uint64_t partition = game.induced_assignment(i, coords, a);
        auto& s = sets[map.set_index(i, q, a)];
        for (std::uint32_t x : ps.partitions[partition][i]) s.push_back(static_cast<std::uint32_t>(offset + x));
      }
    }
    offset += ps.m;
    require(offset < (std::uint64_t{1} << 31), "universe too large");
    map.block_offset.push_back(static_cast<std::uint32_t>(offset));
    map.systems.push_back(std::move(ps));
  }
  std::vector<std::uint32_t> sizes;
  for (const auto& ps : map.systems) sizes.push_back(ps.m);
  nlohmann::ordered_json prov = {{"reduction", "feige"},
                                 {"provers", k},
                                 {"rho", game.rho()},
                                 {"seeds", game.seed_count()},
                                 {"queries_per_prover", game.query_count()},
                                 {"L", L},
                                 {"d", d},
                                 {"ps_seed", ps_seed},
                                 {"block_sizes", sizes}};
  map.instance = SetCoverInstance(static_cast<std::uint32_t>(offset), std::move(sets), std::move(prov));
  return map;
}

Cover feige_witness(const FeigeInstanceMap& map, const KProverGame& game, const Assignment& assignment) {
  Cover cover;
  for (std::size_t i = 0; i < map.provers; ++i) {
    const ProverStrategy s = game.strategy_from_assignment(i, assignment);
    for (std::uint64_t q = 0; q < map.query_count; ++q) cover.chosen.push_back(map.set_index(i, q, s(q)));
  }
  return cover;
}

std::vector<std::uint32_t> block_hits(const SetCoverInstance& inst, const std::vector<std::uint32_t>& block_offset,
                                      const Cover& cover) {
  require(!block_offset.empty() && block_offset.back() == inst.universe_size(), "block offsets do not span the universe");
  std::vector<std::uint32_t> hits(block_offset.size() - 1, 0);
  std::vector<std::uint32_t> last(hits.size(), ~std::uint32_t{0});
  for (std::uint32_t s : cover.chosen) {
    require(s < inst.subset_count(), "cover index out of range");
    for (std::uint32_t e : inst.subset(s)) {
      const auto block = static_cast<std::size_t>(
          std::upper_bound(block_offset.begin(), block_offset.end(), e) - block_offset.begin() - 1);
      if (last[block] != s) {
        last[block] = s;
        ++hits[block];
      }
    }
  }
  return hits;
}

FeigeDiagnostic feige_soundness_diagnostic(const FeigeInstanceMap& map, const KProverGame& game, const Cover& cover,
                                           double delta) {
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  const std::size_t k = map.provers;
  // answers[i][q] = covered answers, ascending.
  std::vector<std::vector<std::vector<std::uint64_t>>> answers(k, std::vector<std::vector<std::uint64_t>>(map.query_count));
  for (std::uint32_t s : cover.chosen) {
    require(s < map.instance.subset_count(), "cover index out of range");
    const std::uint64_t a = s % map.answer_count;
    const std::uint64_t iq = s / map.answer_count;
    answers[iq / map.query_count][iq % map.query_count].push_back(a);
  }
  for (auto& per : answers)
    for (auto& l : per) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }

  FeigeDiagnostic diag;
  diag.delta = delta;
  diag.applicable = true;
  diag.holds = true;
  const double kd = static_cast<double>(k);
  std::uint32_t m_min = ~std::uint32_t{0};
  std::uint32_t m_max = 0;
  double accept_sum = 0.0;
  for (std::uint64_t r = 0; r < game.seed_count(); ++r) {
    const std::uint32_t m = map.systems[r].m;
    m_min = std::min(m_min, m);
    m_max = std::max(m_max, m);
    const auto coords = game.decode_seed(r);
    std::vector<std::vector<std::uint64_t>> induced(k);
    std::size_t cost = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& list = answers[i][game.query_index(i, coords)];
      cost += list.size();
      if (list.empty()) induced[i].push_back(game.induced_assignment(i, coords, 0));
      for (std::uint64_t a : list) induced[i].push_back(game.induced_assignment(i, coords, a));
    }
    // Probability that some pair of provers lands on equal induced strings.
    std::uint64_t total = 1;
    for (const auto& v : induced) total = sat_mul(total, v.size());
    require(total <= kEnumerationBudget, "answer product too large for exact evaluation");
    std::uint64_t weak = 0;
    std::vector<std::uint32_t> radix;
    for (const auto& v : induced) radix.push_back(static_cast<std::uint32_t>(v.size()));
    std::vector<std::uint32_t> digit(k, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      bool hit = false;
      for (std::size_t i = 0; i < k && !hit; ++i)
        for (std::size_t j = i + 1; j < k && !hit; ++j) hit = induced[i][digit[i]] == induced[j][digit[j]];
      if (hit) ++weak;
      for (std::size_t i = k; i-- > 0;) {
        if (++digit[i] < radix[i]) break;
        digit[i] = 0;
      }
    }
    const double p = static_cast<double>(weak) / static_cast<double>(total);
    accept_sum += p;

    const double klnm = kd * std::log(static_cast<double>(m));
    const double threshold = (1.0 - delta / 2.0) * klnm;
    if (static_cast<double>(cost) < threshold) {
      ++diag.good_seeds;
      if (threshold > static_cast<double>(map.systems[r].certified_d)) diag.applicable = false;
      if (cost < map.systems[r].certified_d && p < 4.0 / (klnm * klnm)) diag.holds = false;
    }
  }
  const double R = static_cast<double>(game.seed_count());
  diag.good_fraction = R == 0 ? 0.0 : static_cast<double>(diag.good_seeds) / R;
  diag.weak_acceptance = R == 0 ? 0.0 : accept_sum / R;
  if (m_max > 0) {
    const double klnm = kd * std::log(static_cast<double>(m_max));
    diag.bound = 2.0 * delta / (klnm * klnm);
    diag.size_precondition = static_cast<double>(cover.size()) <=
                             (1.0 - delta) * kd * static_cast<double>(map.query_count) * std::log(static_cast<double>(m_min));
  }
  if (diag.size_precondition && diag.good_fraction < delta / 2.0) diag.holds = false;
  if (diag.size_precondition && diag.applicable && diag.weak_acceptance < diag.bound) diag.holds = false;
  return diag;
}

// ---------------------------------------------------------------------------
// Projection-game reduction

MoshkovitzInstanceMap moshkovitz_reduce(const ProjectionGame& pg, const PartitionSystem& ps,
                                        std::uint32_t duplication) {
  const auto degrees = pg.biregular_degrees();
  require(degrees.has_value(), "projection game is not bi-regular");
  require(ps.L == pg.sigma_b(), "partition count L = " + std::to_string(ps.L) + " differs from sigma_b = " +
                                    std::to_string(pg.sigma_b()));
  require(ps.k == degrees->second, "parts per partition k = " + std::to_string(ps.k) + " differs from D_B = " +
                                       std::to_string(degrees->second));
  require(duplication >= 1, "duplication must be positive");
  const std::uint64_t block = sat_mul(ps.m, duplication);
  const std::uint64_t total = sat_mul(block, pg.b_count());
  require(total < (std::uint64_t{1} << 31), "universe too large");

  MoshkovitzInstanceMap map{SetCoverInstance(0, {}), static_cast<std::uint32_t>(block), duplication, pg.sigma_a()};
  std::vector<Subset> sets(static_cast<std::size_t>(pg.a_count()) * pg.sigma_a());
  for (const ProjectionEdge& e : pg.edges()) {
    const std::uint64_t base = e.b * block;
    for (std::uint32_t sigma = 0; sigma < pg.sigma_a(); ++sigma) {
      auto& s = sets[map.set_index(e.a, sigma)];
      for (std::uint32_t x : ps.partitions[e.projection[sigma]][e.slot])
        for (std::uint32_t t = 0; t < duplication; ++t)
          s.push_back(static_cast<std::uint32_t>(base + static_cast<std::uint64_t>(x) * duplication + t));
    }
  }
  nlohmann::ordered_json prov = {{"reduction", "moshkovitz"},
                                 {"a_count", pg.a_count()},
                                 {"b_count", pg.b_count()},
                                 {"sigma_a", pg.sigma_a()},
                                 {"sigma_b", pg.sigma_b()},
                                 {"degrees", {degrees->first, degrees->second}},
                                 {"partition_m", ps.m},
                                 {"certified_d", ps.certified_d},
                                 {"duplication", duplication}};
  map.instance = SetCoverInstance(static_cast<std::uint32_t>(total), std::move(sets), std::move(prov));
  return map;
}

Cover moshkovitz_witness(const MoshkovitzInstanceMap& map, const Labeling& labeling) {
  Cover cover;
  for (std::uint32_t a = 0; a < labeling.labels_a.size(); ++a) {
    require(labeling.labels_a[a] < map.sigma_a, "label out of alphabet");
    cover.chosen.push_back(map.set_index(a, labeling.labels_a[a]));
  }
  return cover;
}

MoshkovitzDiagnostic moshkovitz_soundness_diagnostic(const MoshkovitzInstanceMap& map, const ProjectionGame& pg,
                                                     const PartitionSystem& ps, const Cover& cover) {
  std::vector<std::vector<std::uint32_t>> lists(pg.a_count());
  for (std::uint32_t s : cover.chosen) {
    require(s < map.instance.subset_count(), "cover index out of range");
    lists[s / pg.sigma_a()].push_back(s % pg.sigma_a());
  }
  std::uint32_t ell = 1;
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    ell = std::max(ell, static_cast<std::uint32_t>(l.size()));
  }
  MoshkovitzDiagnostic diag;
  diag.ell = ell;
  diag.labeling.ell = ell;
  for (auto l : lists) {
    for (std::uint32_t sigma = 0; l.size() < ell; ++sigma)
      if (!std::binary_search(l.begin(), l.end(), sigma)) {
        l.push_back(sigma);
        std::sort(l.begin(), l.end());
      }
    diag.labeling.labels_a.push_back(std::move(l));
  }
  std::vector<std::vector<std::uint32_t>> covered(pg.a_count());
  for (std::uint32_t a = 0; a < pg.a_count(); ++a) covered[a] = lists[a];

  diag.holds = true;
  for (std::uint32_t b = 0; b < pg.b_count(); ++b) {
    std::uint64_t cost = 0;
    for (std::uint32_t e : pg.edges_at_b(b)) cost += covered[pg.edges()[e].a].size();
    if (cost >= ps.certified_d) continue;
    ++diag.small_blocks;
    if (totally_list_disagrees(pg, diag.labeling, b)) diag.holds = false;
  }
  diag.small_fraction = pg.b_count() == 0 ? Fraction(0) : Fraction(static_cast<std::int64_t>(diag.small_blocks), pg.b_count());
  diag.list_agreement = list_agreement_fraction(pg, diag.labeling);
  return diag;
}

// ---------------------------------------------------------------------------

std::optional<double> GapReport::ratio_exact_witness() const {
  if (!exact_size || !witness_size || *witness_size == 0) return std::nullopt;
  return static_cast<double>(*exact_size) / static_cast<double>(*witness_size);
}

std::optional<double> GapReport::ratio_greedy_exact() const {
  if (!exact_size || *exact_size == 0) return std::nullopt;
  return static_cast<double>(greedy_size) / static_cast<double>(*exact_size);
}

GapReport gap_report(const SetCoverInstance& inst, const std::optional<Cover>& witness, bool satisfiable_side,
                     bool greedy_only, std::uint64_t node_budget) {
  GapReport report;
  report.reduction = inst.provenance().value("reduction", std::string("none"));
  report.universe_size = inst.universe_size();
  report.subset_count = inst.subset_count();
  report.greedy_size = greedy_cover(inst).size();
  report.greedy_only = greedy_only;
  report.satisfiable_side = satisfiable_side;
  report.provenance = inst.provenance();
  std::optional<Cover> hint;
  if (witness) {
    const bool valid = verify_cover(inst, *witness).ok;
    report.witness_size = witness->size();
    if (valid) hint = witness;
    else report.completeness_ok = false;
  } else if (satisfiable_side) {
    report.completeness_ok = false;
  }
  if (!greedy_only) {
    const ExactResult exact = exact_cover(inst, hint, node_budget);
    report.exact_size = exact.cover.size();
    report.exact_optimal = exact.optimal;
  }
  return report;
}

}  // namespace gapcover
