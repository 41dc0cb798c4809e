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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapcover/combinatorics.hpp"

namespace gapcover {

struct ProjectionEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t slot = 0;                 // index among b's incident edges
  std::vector<std::uint32_t> projection;  // [sigma_a] -> [sigma_b]

  friend bool operator==(const ProjectionEdge&, const ProjectionEdge&) = default;
};

// Bipartite projection game. Parallel edges are allowed and are distinct
// edges with distinct slots at their b endpoint.
class ProjectionGame {
 public:
  ProjectionGame(std::uint32_t a_count, std::uint32_t b_count, std::uint32_t sigma_a, std::uint32_t sigma_b,
                 std::vector<ProjectionEdge> edges);

  std::uint32_t a_count() const { return a_count_; }
  std::uint32_t b_count() const { return b_count_; }
  std::uint32_t sigma_a() const { return sigma_a_; }
  std::uint32_t sigma_b() const { return sigma_b_; }
  const std::vector<ProjectionEdge>& edges() const { return edges_; }

  // Edge indices incident to b, ordered by slot.
  const std::vector<std::uint32_t>& edges_at_b(std::uint32_t b) const { return at_b_[b]; }
  const std::vector<std::uint32_t>& edges_at_a(std::uint32_t a) const { return at_a_[a]; }

  // (D_A, D_B) when every a has degree D_A and every b has degree D_B.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> biregular_degrees() const;

  friend bool operator==(const ProjectionGame& x, const ProjectionGame& y) {
    return x.a_count_ == y.a_count_ && x.b_count_ == y.b_count_ && x.sigma_a_ == y.sigma_a_ &&
           x.sigma_b_ == y.sigma_b_ && x.edges_ == y.edges_;
  }

 private:
  std::uint32_t a_count_;
  std::uint32_t b_count_;
  std::uint32_t sigma_a_;
  std::uint32_t sigma_b_;
  std::vector<ProjectionEdge> edges_;
  std::vector<std::vector<std::uint32_t>> at_a_;
  std::vector<std::vector<std::uint32_t>> at_b_;
};

struct Labeling {
  std::vector<std::uint32_t> labels_a;
  std::vector<std::uint32_t> labels_b;
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

// ell labels per a vertex, each list sorted and duplicate-free.
struct LLabeling {
  std::uint32_t ell = 1;
  std::vector<std::vector<std::uint32_t>> labels_a;
};

Fraction satisfied_fraction(const ProjectionGame& pg, const Labeling& labeling);

struct BestValue {
  Fraction value;
  Labeling witness;
};

// Exact maximum over labelings. Each b takes its most-voted projected label
// (smallest on ties), so only A labelings are enumerated, lexicographically.
BestValue best_value(const ProjectionGame& pg, std::uint64_t budget = kEnumerationBudget);

// True iff every pair of distinct edges at b maps its endpoints' labels to
// different symbols. Vacuously true below degree 2.
bool totally_disagrees(const ProjectionGame& pg, const std::vector<std::uint32_t>& labels_a, std::uint32_t b);
bool totally_list_disagrees(const ProjectionGame& pg, const LLabeling& labeling, std::uint32_t b);

// Fraction of b on which A does not totally (list-)disagree.
Fraction agreement_fraction(const ProjectionGame& pg, const std::vector<std::uint32_t>& labels_a);
Fraction list_agreement_fraction(const ProjectionGame& pg, const LLabeling& labeling);

struct AgreementValue {
  Fraction value;
  std::vector<std::uint32_t> witness;
};

struct ListAgreementValue {
  Fraction value;
  LLabeling witness;
};

// Maximum over A labelings of agreement_fraction.
AgreementValue agreement_soundness(const ProjectionGame& pg, std::uint64_t budget = kEnumerationBudget);

// Maximum over ell-labelings of list_agreement_fraction; label sets are
// enumerated in lexicographic combination order.
ListAgreementValue list_agreement_soundness(const ProjectionGame& pg, std::uint32_t ell,
                                            std::uint64_t budget = kEnumerationBudget);

struct BipartiteGraph {
  std::uint32_t u_count = 0;
  std::uint32_t v_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (u, v)
};

BipartiteGraph underlying_graph(const ProjectionGame& pg);

struct PartitionPropertyResult {
  bool precondition_met = true;
  std::string violation;  // why the precondition failed
  bool holds = false;
  std::uint64_t crowded = 0;  // v with two distinct neighbours in one part
  std::uint32_t degree = 0;   // common V-degree D
  double fraction = 0.0;
  double bound = 0.0;  // eps * D^2
};

// `part_of[u]` names u's part. Every part must hold at most eps*|U|
// vertices and every v must have the same degree; violations are reported
// in the result rather than thrown.
PartitionPropertyResult check_partition_property(const BipartiteGraph& graph, const std::vector<std::uint32_t>& part_of,
                                                 double eps);

// Configuration-model bi-regular multigraph with uniform random projections.
ProjectionGame random_biregular_game(std::uint32_t a_count, std::uint32_t b_count, std::uint32_t d_a,
                                     std::uint32_t d_b, std::uint32_t sigma_a, std::uint32_t sigma_b,
                                     std::uint64_t seed);

// Same topology, with projections drawn so that a hidden labeling satisfies
// every edge. Returns the game and that labeling.
std::pair<ProjectionGame, Labeling> planted_biregular_game(std::uint32_t a_count, std::uint32_t b_count,
                                                           std::uint32_t d_a, std::uint32_t d_b,
                                                           std::uint32_t sigma_a, std::uint32_t sigma_b,
                                                           std::uint64_t seed);

}  // namespace gapcover
