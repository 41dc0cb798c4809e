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
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

namespace gapcover {

inline constexpr std::uint32_t kBitsetUniverseLimit = 4096;
inline constexpr std::uint64_t kExactNodeBudget = 100'000'000;

using Subset = std::vector<std::uint32_t>;

// Subsets are stored sorted and duplicate-free. Construction checks element
// ranges but not coverage; see orphan_element().
class SetCoverInstance {
 public:
  SetCoverInstance(std::uint32_t universe_size, std::vector<Subset> subsets,
                   nlohmann::ordered_json provenance = nlohmann::ordered_json::object());

  std::uint32_t universe_size() const { return n_; }
  std::size_t subset_count() const { return subsets_.size(); }
  const std::vector<Subset>& subsets() const { return subsets_; }
  const Subset& subset(std::size_t i) const { return subsets_.at(i); }
  const nlohmann::ordered_json& provenance() const { return provenance_; }
  nlohmann::ordered_json& provenance() { return provenance_; }

  // Bitset view of subset i; cached when universe_size <= kBitsetUniverseLimit.
  boost::dynamic_bitset<> mask(std::size_t i) const;

  // Smallest element contained in no subset.
  std::optional<std::uint32_t> orphan_element() const;
  // Throws InvalidArgument naming the orphan.
  void require_coverable() const;

  friend bool operator==(const SetCoverInstance& x, const SetCoverInstance& y) {
    return x.n_ == y.n_ && x.subsets_ == y.subsets_ && x.provenance_ == y.provenance_;
  }

 private:
  std::uint32_t n_;
  std::vector<Subset> subsets_;
  nlohmann::ordered_json provenance_;
  std::vector<boost::dynamic_bitset<>> masks_;
};

struct Cover {
  std::vector<std::uint32_t> chosen;
  std::size_t size() const { return chosen.size(); }
  friend bool operator==(const Cover&, const Cover&) = default;
};

// Most newly covered elements first, lowest index on ties.
Cover greedy_cover(const SetCoverInstance& inst);

struct ExactResult {
  Cover cover;
  bool optimal = true;
  std::uint64_t nodes = 0;
};

// Branch and bound on the lowest-index uncovered element. The incumbent is
// the smaller of the greedy cover and `hint` (which must be a valid cover).
// On budget exhaustion the incumbent is returned with optimal = false.
ExactResult exact_cover(const SetCoverInstance& inst, const std::optional<Cover>& hint = std::nullopt,
                        std::uint64_t node_budget = kExactNodeBudget);

struct CoverVerdict {
  bool ok = true;
  std::optional<std::uint32_t> first_uncovered;
  explicit operator bool() const { return ok; }
};

// Throws InvalidArgument on an out-of-range subset index.
CoverVerdict verify_cover(const SetCoverInstance& inst, const Cover& cover);

// Random instance where every element lies in some subset.
SetCoverInstance random_instance(std::uint32_t universe_size, std::uint32_t subset_count,
                                 std::uint32_t max_subset_size, std::uint64_t seed);

}  // namespace gapcover
