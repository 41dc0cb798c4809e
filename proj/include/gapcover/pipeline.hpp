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

#include "gapcover/artifact.hpp"
#include "gapcover/reductions.hpp"

namespace gapcover {

// Stage entry points shared by the pipeline, the CLI and the C API. Each is
// a pure function of its arguments.

Artifact stage_gen_formula(std::uint32_t num_vars, std::uint64_t seed);

// params.type: clause_variable | k_prover (provers, rho) |
// projection (a_count, b_count, d_a, d_b, sigma_a, sigma_b, planted).
// `formula` is ignored for projection games.
Artifact stage_build_game(const std::optional<Artifact>& formula, const ojson& params, std::uint64_t seed);

// params.type: universal (n, k) | special (m, d) | anti_universal (n, k, b) |
// partition (L, k, d).
Artifact stage_build_gadget(const ojson& params, std::uint64_t seed);

struct ReduceOutput {
  Artifact instance;
  std::optional<Cover> witness;  // completeness witness, when one is known
  bool satisfiable_side = false;
  std::vector<std::uint32_t> block_offset;  // k-prover blocks, empty otherwise
  std::uint32_t provers = 0;
};

// params.type: ly (gadget = special set system) | feige (d; seed feeds the
// per-block partition systems) | moshkovitz (gadget = partition system,
// optional duplication).
ReduceOutput stage_reduce(const Artifact& game, const std::optional<Artifact>& gadget, const ojson& params,
                          std::uint64_t seed);

inline constexpr std::array<const char*, 12> kReportColumns = {
    "pipeline",      "seed",          "universe_size",       "subset_count",
    "greedy_size",   "exact_size",    "exact_optimal",       "witness_size",
    "ratio_exact_witness", "ratio_greedy_exact", "satisfiable_side", "completeness_ok"};

struct ReportRow {
  std::string pipeline;
  std::uint64_t seed = 0;
  GapReport report;
};

// Fixed columns as in kReportColumns; absent values are empty cells and
// ratios carry six decimals.
std::string render_csv(const std::vector<ReportRow>& rows);
Artifact report_artifact(const std::vector<ReportRow>& rows);

struct PipelineResult {
  bool completeness_ok = true;
  std::vector<ReportRow> rows;
  std::vector<std::string> artifacts;  // paths, in emission order
  std::string csv_path;
  std::string report_path;
};

// config: pipeline (ly | feige | moshkovitz), output_dir, seeds (array) and
// the pipeline's parameters; see README. Any stage failure throws with the
// stage name and artifact path.
PipelineResult run_pipeline(const ojson& config);

}  // namespace gapcover
