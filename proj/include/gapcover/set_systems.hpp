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

#include <boost/dynamic_bitset.hpp>

#include "gapcover/combinatorics.hpp"

namespace gapcover {

// Builders sample at a target size, re-sample up to kSamplesPerSize times,
// and double the size up to kSizeDoublings times before giving up.
inline constexpr int kSizeDoublings = 4;
inline constexpr int kSamplesPerSize = 8;

// ---------------------------------------------------------------------------
// (n, k)-universal sets. Bit i of a string is index i, so n <= 64.

struct UniversalSet {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::vector<std::uint64_t> strings;

  friend bool operator==(const UniversalSet&, const UniversalSet&) = default;
};

struct UniversalCounterexample {
  std::vector<std::uint32_t> window;  // 0-based indices, ascending
  std::string missing;                // pattern over the window, window[0] first
};

struct UniversalVerdict {
  bool ok = true;
  std::optional<UniversalCounterexample> counterexample;
  explicit operator bool() const { return ok; }
};

// Checks strength k (which may differ from set.k). Windows are visited in
// lexicographic order and patterns in string order, so the first missing
// pattern is the reported one.
UniversalVerdict verify_universal(const UniversalSet& set, std::uint32_t k,
                                  std::uint64_t budget = kVerificationBudget);

std::uint64_t universal_target_size(std::uint32_t n, std::uint32_t k);

// Las Vegas construction. The verified sample is deduplicated, sorted and,
// when `minimize` is set, pruned to an inclusion-minimal universal set.
UniversalSet build_universal(std::uint32_t n, std::uint32_t k, std::uint64_t seed, bool minimize = true);

// ---------------------------------------------------------------------------
// Special set systems: C_1..C_m over B such that no union of at most d sets,
// each C_i or its complement with distinct indices, equals B.

struct SpecialSetSystem {
  std::uint32_t universe_size = 0;
  std::vector<boost::dynamic_bitset<>> sets;  // m sets over [0, universe_size)
  std::uint32_t certified_d = 0;
  std::vector<std::uint64_t> base_strings;  // diagnostic payload, may be empty

  std::uint32_t m() const { return static_cast<std::uint32_t>(sets.size()); }
  friend bool operator==(const SpecialSetSystem&, const SpecialSetSystem&) = default;
};

struct OrientedIndex {
  std::uint32_t index = 0;
  bool complement = false;
  friend bool operator==(const OrientedIndex&, const OrientedIndex&) = default;
};

struct SpecialVerdict {
  bool ok = true;
  std::vector<OrientedIndex> covering;  // a covering collection when !ok
  explicit operator bool() const { return ok; }
};

// Runs the direct check and then the complementary-pair formulation; the
// two must agree or an Internal error is thrown.
SpecialVerdict verify_special(const SpecialSetSystem& sys, std::uint32_t d,
                              std::uint64_t budget = kVerificationBudget);

// B = strings of an (m, d)-universal set, C_i = { b : bit i of b is 1 }.
SpecialSetSystem special_from_universal(std::uint32_t m, std::uint32_t d, std::uint64_t seed);
SpecialSetSystem special_from_strings(std::uint32_t m, std::uint32_t d, const std::vector<std::uint64_t>& strings);

// The randomized size bound (d + d ln m + 2) 2^d.
double special_size_bound(std::uint32_t m, std::uint32_t d);

// ---------------------------------------------------------------------------
// (n, k, b)-anti-universal sets. Only u with pairwise-distinct coordinates
// are quantified.

struct AntiUniversalSet {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t b = 0;
  std::vector<std::vector<std::uint32_t>> functions;  // each maps [n] -> [b]

  friend bool operator==(const AntiUniversalSet&, const AntiUniversalSet&) = default;
};

struct AntiUniversalCounterexample {
  std::vector<std::uint32_t> u;
  std::vector<std::uint32_t> v;
};

struct AntiUniversalVerdict {
  bool ok = true;
  std::optional<AntiUniversalCounterexample> counterexample;
  explicit operator bool() const { return ok; }
};

AntiUniversalVerdict verify_anti_universal(const AntiUniversalSet& family, std::uint32_t k,
                                           std::uint64_t budget = kVerificationBudget);

std::uint64_t anti_universal_target_size(std::uint32_t n, std::uint32_t k, std::uint32_t b);

AntiUniversalSet build_anti_universal(std::uint32_t n, std::uint32_t k, std::uint32_t b, std::uint64_t seed,
                                      bool minimize = true, std::uint64_t budget = kVerificationBudget);

// ---------------------------------------------------------------------------
// Partition systems: L partitions of [0, m) into k parts each.

struct PartitionSystem {
  std::uint32_t m = 0;
  std::uint32_t L = 0;
  std::uint32_t k = 0;
  // partitions[j][i] = sorted elements of part i of partition j
  std::vector<std::vector<std::vector<std::uint32_t>>> partitions;
  std::uint32_t certified_d = 0;
  std::vector<std::vector<std::uint32_t>> element_functions;  // diagnostic payload

  friend bool operator==(const PartitionSystem&, const PartitionSystem&) = default;
};

struct PartSelection {
  std::uint32_t partition = 0;
  std::uint32_t part = 0;
  friend bool operator==(const PartSelection&, const PartSelection&) = default;
};

struct PartitionVerdict {
  bool ok = true;
  std::string reason;                  // set when !ok
  std::vector<PartSelection> covering; // covering selection, if that was the failure
  explicit operator bool() const { return ok; }
};

// Checks well-formedness, then that no selection of fewer than certified_d
// parts from pairwise-distinct partitions covers the universe.
PartitionVerdict verify_partition(const PartitionSystem& ps, std::uint64_t budget = kVerificationBudget);

// Universe = members of an (L, min(d, L), k)-anti-universal family; partition
// j groups members by their value at j.
PartitionSystem partition_from_anti_universal(std::uint32_t L, std::uint32_t k, std::uint32_t d,
                                              std::uint64_t seed);
PartitionSystem partition_from_functions(std::uint32_t L, std::uint32_t k, std::uint32_t d,
                                         std::vector<std::vector<std::uint32_t>> functions);

}  // namespace gapcover
