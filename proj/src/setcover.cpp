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
#include "gapcover/setcover.hpp"

#include <algorithm>
#include <map>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

SetCoverInstance::SetCoverInstance(std::uint32_t universe_size, std::vector<Subset> subsets,
                                   nlohmann::ordered_json provenance)
    : n_(universe_size), subsets_(std::move(subsets)), provenance_(std::move(provenance)) {
  for (std::size_t i = 0; i < subsets_.size(); ++i) {
    auto& s = subsets_[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    require(s.empty() || s.back() < n_, "subset " + std::to_string(i) + " contains element " +
                                            (s.empty() ? std::string() : std::to_string(s.back())) +
                                            " outside the universe of size " + std::to_string(n_));
  }
  if (n_ <= kBitsetUniverseLimit) {
    masks_.reserve(subsets_.size());
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
      boost::dynamic_bitset<> m(n_);
      for (std::uint32_t e : subsets_[i]) m.set(e);
      masks_.push_back(std::move(m));
    }
  }
}

boost::dynamic_bitset<> SetCoverInstance::mask(std::size_t i) const {
  if (!masks_.empty() || subsets_.empty()) return masks_.at(i);
  boost::dynamic_bitset<> m(n_);
  for (std::uint32_t e : subsets_.at(i)) m.set(e);
  return m;
}

std::optional<std::uint32_t> SetCoverInstance::orphan_element() const {
  std::vector<bool> seen(n_, false);
  for (const auto& s : subsets_)
    for (std::uint32_t e : s) seen[e] = true;
  for (std::uint32_t e = 0; e < n_; ++e)
    if (!seen[e]) return e;
  return std::nullopt;
}

void SetCoverInstance::require_coverable() const {
  if (auto orphan = orphan_element())
    fail(ErrorCode::InvalidArgument, "element " + std::to_string(*orphan) + " belongs to no subset");
}

namespace {

std::vector<boost::dynamic_bitset<>> all_masks(const SetCoverInstance& inst) {
  std::vector<boost::dynamic_bitset<>> masks;
  masks.reserve(inst.subset_count());
  for (std::size_t i = 0; i < inst.subset_count(); ++i) masks.push_back(inst.mask(i));
  return masks;
}

Cover greedy_on(const std::vector<boost::dynamic_bitset<>>& masks, std::uint32_t n) {
  Cover cover;
  boost::dynamic_bitset<> uncovered(n);
  uncovered.set();
  while (uncovered.any()) {
    std::size_t best = masks.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      const std::size_t gain = (masks[i] & uncovered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == masks.size()) fail(ErrorCode::InvalidArgument, "element " + std::to_string(uncovered.find_first()) +
                                                                   " belongs to no subset");
    cover.chosen.push_back(static_cast<std::uint32_t>(best));
    uncovered -= masks[best];
  }
  return cover;
}

class BranchAndBound {
 public:
  BranchAndBound(std::vector<boost::dynamic_bitset<>> masks, std::uint32_t n, std::uint64_t budget)
      : masks_(std::move(masks)), n_(n), budget_(budget), containing_(n) {
    for (std::uint32_t i = 0; i < masks_.size(); ++i)
      for (auto e = masks_[i].find_first(); e != boost::dynamic_bitset<>::npos; e = masks_[i].find_next(e))
        containing_[e].push_back(i);
  }

  // Returns false when the budget ran out.
  bool run(std::vector<std::uint32_t> incumbent) {
    best_ = std::move(incumbent);
    boost::dynamic_bitset<> uncovered(n_);
    uncovered.set();
    std::vector<std::uint32_t> chosen;
    search(uncovered, chosen);
    return !exhausted_;
  }

  const std::vector<std::uint32_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::size_t lower_bound(const boost::dynamic_bitset<>& uncovered) const {
    const std::size_t left = uncovered.count();
    std::size_t widest = 0;
    for (const auto& m : masks_) widest = std::max(widest, (m & uncovered).count());
    std::size_t bound = widest == 0 ? left : (left + widest - 1) / widest;
    // Elements no two of which share a subset each need their own subset.
    std::vector<bool> used(masks_.size(), false);
    std::size_t packing = 0;
    for (auto e = uncovered.find_first(); e != boost::dynamic_bitset<>::npos; e = uncovered.find_next(e)) {
      const auto& list = containing_[e];
      if (std::none_of(list.begin(), list.end(), [&](std::uint32_t i) { return used[i]; })) {
        ++packing;
        for (std::uint32_t i : list) used[i] = true;
      }
    }
    return std::max(bound, packing);
  }

  void search(const boost::dynamic_bitset<>& uncovered, std::vector<std::uint32_t>& chosen) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    const auto e = uncovered.find_first();
    if (e == boost::dynamic_bitset<>::npos) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + lower_bound(uncovered) >= best_.size()) return;
    std::vector<std::pair<std::size_t, std::uint32_t>> order;
    for (std::uint32_t i : containing_[e]) order.emplace_back((masks_[i] & uncovered).count(), i);
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& [gain, i] : order) {
      chosen.push_back(i);
      search(uncovered - masks_[i], chosen);
      chosen.pop_back();
      if (exhausted_ || chosen.size() + 1 >= best_.size()) return;
    }
  }

  std::vector<boost::dynamic_bitset<>> masks_;
  std::uint32_t n_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint32_t>> containing_;
  std::vector<std::uint32_t> best_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Cover greedy_cover(const SetCoverInstance& inst) { return greedy_on(all_masks(inst), inst.universe_size()); }

ExactResult exact_cover(const SetCoverInstance& inst, const std::optional<Cover>& hint, std::uint64_t node_budget) {
  inst.require_coverable();
  ExactResult result;
  result.cover = greedy_cover(inst);
  if (hint) {
    require(verify_cover(inst, *hint).ok, "hint is not a cover");
    if (hint->size() < result.cover.size()) result.cover = *hint;
  }

  // Identical and dominated subsets never shorten a minimum cover.
  const auto masks = all_masks(inst);
  std::map<boost::dynamic_bitset<>, std::uint32_t> first_copy;
  for (std::uint32_t i = 0; i < masks.size(); ++i) first_copy.emplace(masks[i], i);
  std::vector<std::uint32_t> kept;
  for (const auto& [m, i] : first_copy) {
    const bool dominated = std::any_of(first_copy.begin(), first_copy.end(), [&](const auto& other) {
      return other.second != i && m.is_proper_subset_of(other.first);
    });
    if (!dominated) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<boost::dynamic_bitset<>> reduced;
  for (std::uint32_t i : kept) reduced.push_back(masks[i]);

  // Map the incumbent into the reduced family by replacing each chosen
  // subset with a kept superset.
  std::vector<std::uint32_t> incumbent;
  for (std::uint32_t c : result.cover.chosen) {
    for (std::uint32_t r = 0; r < kept.size(); ++r) {
      if (masks[c].is_subset_of(reduced[r])) {
        incumbent.push_back(r);
        break;
      }
    }
  }

  BranchAndBound search(std::move(reduced), inst.universe_size(), node_budget);
  result.optimal = search.run(incumbent);
  result.nodes = search.nodes();
  if (search.best().size() < result.cover.size()) {
    result.cover.chosen.clear();
    for (std::uint32_t r : search.best()) result.cover.chosen.push_back(kept[r]);
    std::sort(result.cover.chosen.begin(), result.cover.chosen.end());
  }
  return result;
}

CoverVerdict verify_cover(const SetCoverInstance& inst, const Cover& cover) {
  std::vector<bool> covered(inst.universe_size(), false);
  for (std::uint32_t i : cover.chosen) {
    require(i < inst.subset_count(), "cover index " + std::to_string(i) + " out of range");
    for (std::uint32_t e : inst.subset(i)) covered[e] = true;
  }
  for (std::uint32_t e = 0; e < inst.universe_size(); ++e)
    if (!covered[e]) return CoverVerdict{false, e};
  return CoverVerdict{};
}

SetCoverInstance random_instance(std::uint32_t universe_size, std::uint32_t subset_count,
                                 std::uint32_t max_subset_size, std::uint64_t seed) {
  require(subset_count >= 1 || universe_size == 0, "need at least one subset");
  require(max_subset_size >= 1, "max_subset_size must be positive");
  Rng rng(seed);
  std::vector<Subset> subsets(subset_count);
  for (auto& s : subsets) {
    const auto size = 1 + rng.below(std::min(max_subset_size, std::max<std::uint32_t>(universe_size, 1)));
    for (std::uint64_t j = 0; j < size && universe_size > 0; ++j)
      s.push_back(static_cast<std::uint32_t>(rng.below(universe_size)));
  }
  // Place each element in one random subset so none is orphaned.
  for (std::uint32_t e = 0; e < universe_size; ++e) subsets[rng.below(subset_count)].push_back(e);
  nlohmann::ordered_json prov = {{"generator", "random_instance"}, {"seed", seed}};
  return SetCoverInstance(universe_size, std::move(subsets), std::move(prov));
}

}  // namespace gapcover
