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
// Independent reference implementations for tests. Each one is written
// against the definitions directly and shares no search code with the
// library, so agreement between the two is evidence rather than echo.
#pragma once

#include <cstdint>
#include <vector>

#include "gapcover/formulas.hpp"
#include "gapcover/projection_games.hpp"
#include "gapcover/proof_systems.hpp"
#include "gapcover/set_systems.hpp"
#include "gapcover/setcover.hpp"

namespace oracle {

using gapcover::Fraction;

// Minimum cover size by trying every selection in order of size.
std::size_t min_cover_size(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& subsets);

// Maximum satisfied-clause count by recursive assignment.
std::size_t max_satisfied(const gapcover::CnfFormula& f);

// Game value by enumerating both strategy tables completely.
Fraction game_value(const gapcover::TwoProverGame& g);

// H(n) = sum_{i=1..n} 1/i.
Fraction harmonic(std::uint32_t n);

// Universality over all n-bit masks of popcount k.
bool is_universal(const std::vector<std::uint64_t>& strings, std::uint32_t n, std::uint32_t k);

// No oriented family of at most d distinct indices covers the universe.
bool is_special(const gapcover::SpecialSetSystem& sys, std::uint32_t d);

bool is_anti_universal(const std::vector<std::vector<std::uint32_t>>& functions, std::uint32_t n, std::uint32_t k,
                       std::uint32_t b);

// Each partition's parts are disjoint and cover [0, m), and no choice of
// at most one part per partition with fewer than d parts covers [0, m).
bool is_partition_system(const gapcover::PartitionSystem& ps, std::uint32_t d);

// Best satisfied fraction over both labelings.
Fraction projection_value(const gapcover::ProjectionGame& pg);

// Agreement by scanning all ordered edge pairs at each b.
Fraction agreement_value(const gapcover::ProjectionGame& pg);
Fraction list_agreement_value(const gapcover::ProjectionGame& pg, std::uint32_t ell);

}  // namespace oracle
