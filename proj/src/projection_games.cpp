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
#include "gapcover/projection_games.hpp"

#include <algorithm>
#include <map>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

ProjectionGame::ProjectionGame(std::uint32_t a_count, std::uint32_t b_count, std::uint32_t sigma_a,
                               std::uint32_t sigma_b, std::vector<ProjectionEdge> edges)
    : a_count_(a_count), b_count_(b_count), sigma_a_(sigma_a), sigma_b_(sigma_b), edges_(std::move(edges)) {
  require(sigma_a_ >= 1 && sigma_b_ >= 1, "alphabets must be non-empty");
  require(sigma_b_ <= 64, "sigma_b above 64 is not supported");
  at_a_.resize(a_count_);
  at_b_.resize(b_count_);
  for (std::uint32_t e = 0; e < edges_.size(); ++e) {
    const ProjectionEdge& edge = edges_[e];
    require(edge.a < a_count_ && edge.b < b_count_, "edge " + std::to_string(e) + " endpoint out of range");
    require(edge.projection.size() == sigma_a_, "projection of edge " + std::to_string(e) + " is not total");
    for (std::uint32_t x : edge.projection)
      require(x < sigma_b_, "projection of edge " + std::to_string(e) + " leaves sigma_b");
    at_a_[edge.a].push_back(e);
    at_b_[edge.b].push_back(e);
  }
  for (std::uint32_t b = 0; b < b_count_; ++b) {
    auto& list = at_b_[b];
    std::sort(list.begin(), list.end(), [&](std::uint32_t x, std::uint32_t y) { return edges_[x].slot < edges_[y].slot; });
    for (std::uint32_t i = 0; i < list.size(); ++i)
      require(edges_[list[i]].slot == i, "edge slots at b=" + std::to_string(b) + " are not 0..deg-1");
  }
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> ProjectionGame::biregular_degrees() const {
  if (a_count_ == 0 || b_count_ == 0) return std::nullopt;
  const auto da = static_cast<std::uint32_t>(at_a_[0].size());
  const auto db = static_cast<std::uint32_t>(at_b_[0].size());
  for (const auto& l : at_a_)
    if (l.size() != da) return std::nullopt;
  for (const auto& l : at_b_)
    if (l.size() != db) return std::nullopt;
  return std::make_pair(da, db);
}

Fraction satisfied_fraction(const ProjectionGame& pg, const Labeling& labeling) {
  require(labeling.labels_a.size() == pg.a_count() && labeling.labels_b.size() == pg.b_count(),
          "labeling is not total");
  if (pg.edges().empty()) return Fraction(1);
  std::int64_t satisfied = 0;
  for (const ProjectionEdge& e : pg.edges()) {
    require(labeling.labels_a[e.a] < pg.sigma_a() && labeling.labels_b[e.b] < pg.sigma_b(), "label out of alphabet");
    if (e.projection[labeling.labels_a[e.a]] == labeling.labels_b[e.b]) ++satisfied;
  }
  return Fraction(satisfied, static_cast<std::int64_t>(pg.edges().size()));
}

namespace {

void check_budget(std::uint64_t work, std::uint64_t budget, const char* what) {
  if (work > budget) fail(ErrorCode::BudgetExceeded, std::string(what) + " needs " + std::to_string(work) +
                                                         " evaluations, budget " + std::to_string(budget));
}

std::uint64_t enumeration_work(const ProjectionGame& pg, std::uint64_t choices_per_a) {
  return sat_mul(sat_pow(choices_per_a, pg.a_count()), std::max<std::uint64_t>(pg.edges().size(), 1));
}

}  // namespace

BestValue best_value(const ProjectionGame& pg, std::uint64_t budget) {
  check_budget(enumeration_work(pg, pg.sigma_a()), budget, "best_value");
  BestValue best;
  std::int64_t best_count = -1;
  std::vector<std::uint32_t> votes(pg.sigma_b());
  std::vector<std::uint32_t> labels_b(pg.b_count());
  for_each_tuple(pg.a_count(), pg.sigma_a(), [&](std::span<const std::uint32_t> labels_a) {
    std::int64_t count = 0;
    for (std::uint32_t b = 0; b < pg.b_count(); ++b) {
      std::fill(votes.begin(), votes.end(), 0);
      for (std::uint32_t e : pg.edges_at_b(b)) ++votes[pg.edges()[e].projection[labels_a[pg.edges()[e].a]]];
      const auto top = std::max_element(votes.begin(), votes.end());
      labels_b[b] = static_cast<std::uint32_t>(top - votes.begin());
      count += *top;
    }
    if (count > best_count) {
      best_count = count;
      best.witness = Labeling{{labels_a.begin(), labels_a.end()}, labels_b};
    }
    return static_cast<std::size_t>(best_count) < pg.edges().size();
  });
  best.value = pg.edges().empty() ? Fraction(1) : Fraction(best_count, static_cast<std::int64_t>(pg.edges().size()));
  return best;
}

bool totally_disagrees(const ProjectionGame& pg, const std::vector<std::uint32_t>& labels_a, std::uint32_t b) {
  const auto& incident = pg.edges_at_b(b);
  std::uint64_t seen = 0;
  for (std::uint32_t e : incident) {
    const ProjectionEdge& edge = pg.edges()[e];
    const std::uint64_t bit = std::uint64_t{1} << edge.projection[labels_a[edge.a]];
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

bool totally_list_disagrees(const ProjectionGame& pg, const LLabeling& labeling, std::uint32_t b) {
  const auto& incident = pg.edges_at_b(b);
  std::vector<std::uint64_t> images;
  for (std::uint32_t e : incident) {
    const ProjectionEdge& edge = pg.edges()[e];
    std::uint64_t img = 0;
    for (std::uint32_t s : labeling.labels_a[edge.a]) img |= std::uint64_t{1} << edge.projection[s];
    for (std::uint64_t other : images)
      if (other & img) return false;
    images.push_back(img);
  }
  return true;
}

Fraction agreement_fraction(const ProjectionGame& pg, const std::vector<std::uint32_t>& labels_a) {
  require(labels_a.size() == pg.a_count(), "labeling is not total");
  if (pg.b_count() == 0) return Fraction(0);
  std::int64_t agreeing = 0;
  for (std::uint32_t b = 0; b < pg.b_count(); ++b)
    if (!totally_disagrees(pg, labels_a, b)) ++agreeing;
  return Fraction(agreeing, pg.b_count());
}

Fraction list_agreement_fraction(const ProjectionGame& pg, const LLabeling& labeling) {
  require(labeling.labels_a.size() == pg.a_count(), "l-labeling is not total");
  for (const auto& list : labeling.labels_a) {
    require(list.size() == labeling.ell, "l-labeling list has the wrong size");
    for (std::uint32_t s : list) require(s < pg.sigma_a(), "label out of alphabet");
  }
  if (pg.b_count() == 0) return Fraction(0);
  std::int64_t agreeing = 0;
  for (std::uint32_t b = 0; b < pg.b_count(); ++b)
    if (!totally_list_disagrees(pg, labeling, b)) ++agreeing;
  return Fraction(agreeing, pg.b_count());
}

AgreementValue agreement_soundness(const ProjectionGame& pg, std::uint64_t budget) {
  check_budget(enumeration_work(pg, pg.sigma_a()), budget, "agreement_soundness");
  AgreementValue best;
  std::int64_t best_count = -1;
  for_each_tuple(pg.a_count(), pg.sigma_a(), [&](std::span<const std::uint32_t> labels) {
    const std::vector<std::uint32_t> labels_a(labels.begin(), labels.end());
    std::int64_t count = 0;
    for (std::uint32_t b = 0; b < pg.b_count(); ++b)
      if (!totally_disagrees(pg, labels_a, b)) ++count;
    if (count > best_count) {
      best_count = count;
      best.witness = labels_a;
    }
    return count < static_cast<std::int64_t>(pg.b_count());
  });
  best.value = pg.b_count() == 0 ? Fraction(0) : Fraction(best_count, pg.b_count());
  return best;
}

ListAgreementValue list_agreement_soundness(const ProjectionGame& pg, std::uint32_t ell, std::uint64_t budget) {
  require(ell >= 1 && ell <= pg.sigma_a(), "ell must lie in [1, sigma_a]");
  const std::uint64_t lists = binomial(pg.sigma_a(), ell);
  check_budget(enumeration_work(pg, lists), budget, "list_agreement_soundness");
  std::vector<std::vector<std::uint32_t>> subsets;
  for_each_combination(pg.sigma_a(), ell, [&](std::span<const std::uint32_t> s) {
    subsets.emplace_back(s.begin(), s.end());
    return true;
  });
  // image[e * lists + s] = projection of subset s along edge e, as a mask.
  std::vector<std::uint64_t> image(pg.edges().size() * lists, 0);
  for (std::size_t e = 0; e < pg.edges().size(); ++e)
    for (std::size_t s = 0; s < subsets.size(); ++s)
      for (std::uint32_t x : subsets[s]) image[e * lists + s] |= std::uint64_t{1} << pg.edges()[e].projection[x];

  ListAgreementValue best;
  std::int64_t best_count = -1;
  std::vector<std::uint64_t> seen;
  for_each_tuple(pg.a_count(), static_cast<std::uint32_t>(lists), [&](std::span<const std::uint32_t> choice) {
    std::int64_t count = 0;
    for (std::uint32_t b = 0; b < pg.b_count(); ++b) {
      seen.clear();
      bool agree = false;
      for (std::uint32_t e : pg.edges_at_b(b)) {
        const std::uint64_t img = image[e * lists + choice[pg.edges()[e].a]];
        for (std::uint64_t other : seen) agree |= (other & img) != 0;
        if (agree) break;
        seen.push_back(img);
      }
      if (agree) ++count;
    }
    if (count > best_count) {
      best_count = count;
      best.witness.ell = ell;
      best.witness.labels_a.clear();
      for (std::uint32_t c : choice) best.witness.labels_a.push_back(subsets[c]);
    }
    return count < static_cast<std::int64_t>(pg.b_count());
  });
  best.value = pg.b_count() == 0 ? Fraction(0) : Fraction(best_count, pg.b_count());
  return best;
}

BipartiteGraph underlying_graph(const ProjectionGame& pg) {
  BipartiteGraph g{pg.a_count(), pg.b_count(), {}};
  for (const ProjectionEdge& e : pg.edges()) g.edges.emplace_back(e.a, e.b);
  return g;
}

PartitionPropertyResult check_partition_property(const BipartiteGraph& graph, const std::vector<std::uint32_t>& part_of,
                                                 double eps) {
  PartitionPropertyResult result;
  auto violated = [&](std::string why) {
    result.precondition_met = false;
    result.violation = std::move(why);
    return result;
  };
  if (part_of.size() != graph.u_count) return violated("partition does not label every vertex of U");
  std::map<std::uint32_t, std::uint64_t> part_sizes;
  for (std::uint32_t p : part_of) ++part_sizes[p];
  const double cap = eps * static_cast<double>(graph.u_count);
  for (const auto& [part, size] : part_sizes)
    if (static_cast<double>(size) > cap)
      return violated("part " + std::to_string(part) + " has " + std::to_string(size) + " vertices, above eps*|U| = " +
                      std::to_string(cap));

  std::vector<std::vector<std::uint32_t>> neighbours(graph.v_count);
  for (const auto& [u, v] : graph.edges) {
    if (u >= graph.u_count || v >= graph.v_count) return violated("edge endpoint out of range");
    neighbours[v].push_back(u);
  }
  if (graph.v_count > 0) {
    result.degree = static_cast<std::uint32_t>(neighbours[0].size());
    for (const auto& list : neighbours)
      if (list.size() != result.degree) return violated("V side is not regular");
  }
  for (auto& list : neighbours) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::vector<std::uint32_t> parts;
    for (std::uint32_t u : list) parts.push_back(part_of[u]);
    std::sort(parts.begin(), parts.end());
    if (std::adjacent_find(parts.begin(), parts.end()) != parts.end()) ++result.crowded;
  }
  const double d = static_cast<double>(result.degree);
  result.bound = eps * d * d;
  result.fraction = graph.v_count == 0 ? 0.0 : static_cast<double>(result.crowded) / graph.v_count;
  result.holds = static_cast<double>(result.crowded) <= result.bound * static_cast<double>(graph.v_count);
  return result;
}

namespace {

std::vector<ProjectionEdge> biregular_topology(std::uint32_t a_count, std::uint32_t b_count, std::uint32_t d_a,
                                               std::uint32_t d_b, Rng& rng) {
  require(static_cast<std::uint64_t>(a_count) * d_a == static_cast<std::uint64_t>(b_count) * d_b,
          "bi-regular degrees violate a_count*D_A = b_count*D_B");
  std::vector<std::uint32_t> b_stubs;
  for (std::uint32_t b = 0; b < b_count; ++b)
    for (std::uint32_t i = 0; i < d_b; ++i) b_stubs.push_back(b);
  rng.shuffle(std::span<std::uint32_t>(b_stubs));
  std::vector<ProjectionEdge> edges;
  std::vector<std::uint32_t> next_slot(b_count, 0);
  std::size_t stub = 0;
  for (std::uint32_t a = 0; a < a_count; ++a) {
    for (std::uint32_t i = 0; i < d_a; ++i, ++stub) {
      const std::uint32_t b = b_stubs[stub];
      edges.push_back(ProjectionEdge{a, b, next_slot[b]++, {}});
    }
  }
  return edges;
}

}  // namespace

ProjectionGame random_biregular_game(std::uint32_t a_count, std::uint32_t b_count, std::uint32_t d_a,
                                     std::uint32_t d_b, std::uint32_t sigma_a, std::uint32_t sigma_b,
                                     std::uint64_t seed) {
  Rng rng(seed);
  auto edges = biregular_topology(a_count, b_count, d_a, d_b, rng);
  for (auto& e : edges) {
    e.projection.resize(sigma_a);
    for (auto& x : e.projection) x = static_cast<std::uint32_t>(rng.below(sigma_b));
  }
  return ProjectionGame(a_count, b_count, sigma_a, sigma_b, std::move(edges));
}

std::pair<ProjectionGame, Labeling> planted_biregular_game(std::uint32_t a_count, std::uint32_t b_count,
                                                           std::uint32_t d_a, std::uint32_t d_b,
                                                           std::uint32_t sigma_a, std::uint32_t sigma_b,
                                                           std::uint64_t seed) {
  Rng rng(seed);
  auto edges = biregular_topology(a_count, b_count, d_a, d_b, rng);
  Labeling hidden;
  for (std::uint32_t a = 0; a < a_count; ++a) hidden.labels_a.push_back(static_cast<std::uint32_t>(rng.below(sigma_a)));
  for (std::uint32_t b = 0; b < b_count; ++b) hidden.labels_b.push_back(static_cast<std::uint32_t>(rng.below(sigma_b)));
  for (auto& e : edges) {
    e.projection.resize(sigma_a);
    for (auto& x : e.projection) x = static_cast<std::uint32_t>(rng.below(sigma_b));
    e.projection[hidden.labels_a[e.a]] = hidden.labels_b[e.b];
  }
  return {ProjectionGame(a_count, b_count, sigma_a, sigma_b, std::move(edges)), std::move(hidden)};
}

}  // namespace gapcover
