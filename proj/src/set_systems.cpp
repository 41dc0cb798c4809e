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
#include "gapcover/set_systems.hpp"

#include <algorithm>
#include <cmath>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

namespace {

// Shared Las Vegas driver: sample at target, target*2, ... until `verified`.
template <typename Sample, typename Verified>
auto sample_until_verified(std::uint64_t target, std::uint64_t seed, Sample sample, Verified verified,
                           const std::string& what) {
  std::uint64_t size = std::max<std::uint64_t>(target, 1);
  std::uint64_t stream = 0;
  for (int level = 0; level <= kSizeDoublings; ++level, size *= 2) {
    for (int attempt = 0; attempt < kSamplesPerSize; ++attempt) {
      Rng rng(derive_seed(seed, stream++));
      auto candidate = sample(size, rng);
      if (verified(candidate)) return candidate;
    }
  }
  fail(ErrorCode::RetriesExhausted, what + ": no verified sample after " + std::to_string(kSizeDoublings) +
                                        " doublings");
}

// Greedy inclusion-minimal pruning in index order.
template <typename T, typename Verified>
void prune_to_minimal(std::vector<T>& items, Verified verified) {
  for (std::size_t i = 0; i < items.size();) {
    std::vector<T> trial = items;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (verified(trial))
      items = std::move(trial);
    else
      ++i;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

UniversalVerdict verify_universal(const UniversalSet& set, std::uint32_t k, std::uint64_t budget) {
  require(set.n <= 64, "universal sets support n <= 64");
  require(k <= set.n, "strength exceeds string length");
  require(k <= 24, "strength too large to verify");
  const std::uint64_t work = sat_mul(binomial(set.n, k), sat_add(std::uint64_t{1} << k, set.strings.size()));
  if (work > budget) fail(ErrorCode::BudgetExceeded, "verify_universal work " + std::to_string(work));

  UniversalVerdict verdict;
  const std::uint64_t patterns = std::uint64_t{1} << k;
  std::vector<bool> seen(patterns);
  for_each_combination(set.n, k, [&](std::span<const std::uint32_t> window) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint64_t s : set.strings) {
      std::uint64_t p = 0;
      for (std::uint32_t idx : window) p = (p << 1) | ((s >> idx) & 1U);
      seen[p] = true;
    }
    for (std::uint64_t p = 0; p < patterns; ++p) {
      if (seen[p]) continue;
      UniversalCounterexample cx;
      cx.window.assign(window.begin(), window.end());
      for (std::uint32_t j = 0; j < k; ++j) cx.missing.push_back(((p >> (k - 1 - j)) & 1U) ? '1' : '0');
      verdict.ok = false;
      verdict.counterexample = std::move(cx);
      return false;
    }
    return true;
  });
  return verdict;
}

std::uint64_t universal_target_size(std::uint32_t n, std::uint32_t k) {
  const double kd = static_cast<double>(k);
  const double size = std::ldexp(1.0, static_cast<int>(k)) *
                      (kd * std::log(static_cast<double>(n)) +
                       std::log(static_cast<double>(binomial(n, k))) + 2.0);
  return static_cast<std::uint64_t>(std::ceil(size));
}

UniversalSet build_universal(std::uint32_t n, std::uint32_t k, std::uint64_t seed, bool minimize) {
  require(n >= 1 && n <= 64, "universal sets support 1 <= n <= 64");
  require(k <= n, "strength k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  auto is_universal = [&](const std::vector<std::uint64_t>& strings) {
    return verify_universal(UniversalSet{n, k, strings}, k).ok;
  };
  auto strings = sample_until_verified(
      universal_target_size(n, k), seed,
      [&](std::uint64_t size, Rng& rng) {
        std::vector<std::uint64_t> s(size);
        for (auto& x : s) x = rng.next() & mask;
        return s;
      },
      is_universal, "build_universal");
  std::sort(strings.begin(), strings.end());
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  if (minimize) prune_to_minimal(strings, is_universal);
  return UniversalSet{n, k, std::move(strings)};
}

// ---------------------------------------------------------------------------

namespace {

// First collection of at most d oriented distinct indices covering B.
std::optional<std::vector<OrientedIndex>> find_oriented_cover(const SpecialSetSystem& sys, std::uint32_t d) {
  std::optional<std::vector<OrientedIndex>> found;
  const std::uint32_t top = std::min(d, sys.m());
  for (std::uint32_t j = 1; j <= top && !found; ++j) {
    for_each_combination(sys.m(), j, [&](std::span<const std::uint32_t> indices) {
      for (std::uint64_t orient = 0; orient < (std::uint64_t{1} << j); ++orient) {
        boost::dynamic_bitset<> uni(sys.universe_size);
        for (std::uint32_t t = 0; t < j; ++t) {
          const bool comp = ((orient >> t) & 1U) != 0;
          uni |= comp ? ~sys.sets[indices[t]] : sys.sets[indices[t]];
        }
        if (uni.all()) {
          std::vector<OrientedIndex> cover;
          for (std::uint32_t t = 0; t < j; ++t) cover.push_back({indices[t], ((orient >> t) & 1U) != 0});
          found = std::move(cover);
          return false;
        }
      }
      return true;
    });
  }
  return found;
}

// True iff every covering family of at most d sets drawn from the 2m sets
// {C_i, complement C_i} contains both orientations of some index.
bool complementary_pair_property(const SpecialSetSystem& sys, std::uint32_t d) {
  const std::uint32_t total = 2 * sys.m();
  bool holds = true;
  for (std::uint32_t j = 1; j <= std::min(d, total) && holds; ++j) {
    for_each_combination(total, j, [&](std::span<const std::uint32_t> members) {
      boost::dynamic_bitset<> uni(sys.universe_size);
      std::vector<int> orientations(sys.m(), 0);
      bool paired = false;
      for (std::uint32_t x : members) {
        const std::uint32_t idx = x / 2;
        const bool comp = (x % 2) == 1;
        uni |= comp ? ~sys.sets[idx] : sys.sets[idx];
        orientations[idx] |= comp ? 2 : 1;
        paired |= orientations[idx] == 3;
      }
      if (uni.all() && !paired) {
        holds = false;
        return false;
      }
      return true;
    });
  }
  return holds;
}

}  // namespace

SpecialVerdict verify_special(const SpecialSetSystem& sys, std::uint32_t d, std::uint64_t budget) {
  for (const auto& s : sys.sets) require(s.size() == sys.universe_size, "special set has wrong universe size");
  std::uint64_t work = 0;
  for (std::uint32_t j = 1; j <= std::min(d, 2 * sys.m()); ++j)
    work = sat_add(work, sat_mul(binomial(2 * sys.m(), j), std::uint64_t{1} + sys.universe_size / 64));
  if (work > budget) fail(ErrorCode::BudgetExceeded, "verify_special work " + std::to_string(work));

  SpecialVerdict verdict;
  if (auto cover = find_oriented_cover(sys, d)) {
    verdict.ok = false;
    verdict.covering = std::move(*cover);
  }
  if (verdict.ok != complementary_pair_property(sys, d))
    fail(ErrorCode::Internal, "special property checks disagree");
  return verdict;
}

SpecialSetSystem special_from_strings(std::uint32_t m, std::uint32_t d, const std::vector<std::uint64_t>& strings) {
  SpecialSetSystem sys;
  sys.universe_size = static_cast<std::uint32_t>(strings.size());
  sys.certified_d = d;
  sys.base_strings = strings;
  sys.sets.assign(m, boost::dynamic_bitset<>(strings.size()));
  for (std::size_t b = 0; b < strings.size(); ++b)
    for (std::uint32_t i = 0; i < m; ++i)
      if ((strings[b] >> i) & 1U) sys.sets[i].set(b);
  return sys;
}

double special_size_bound(std::uint32_t m, std::uint32_t d) {
  const double dd = static_cast<double>(d);
  return (dd + dd * std::log(static_cast<double>(m)) + 2.0) * std::ldexp(1.0, static_cast<int>(d));
}

SpecialSetSystem special_from_universal(std::uint32_t m, std::uint32_t d, std::uint64_t seed) {
  require(d <= m, "special set system needs d <= m");
  const UniversalSet base = build_universal(m, d, seed);
  if (static_cast<double>(base.strings.size()) > special_size_bound(m, d))
    log_warning("special set universe of " + std::to_string(base.strings.size()) +
                " exceeds the randomized size bound for m=" + std::to_string(m) + ", d=" + std::to_string(d));
  return special_from_strings(m, d, base.strings);
}

// ---------------------------------------------------------------------------

AntiUniversalVerdict verify_anti_universal(const AntiUniversalSet& family, std::uint32_t k, std::uint64_t budget) {
  require(family.b >= 1, "anti-universal range must be non-empty");
  for (const auto& f : family.functions) {
    require(f.size() == family.n, "anti-universal member has wrong domain size");
    for (std::uint32_t x : f) require(x < family.b, "anti-universal member value out of range");
  }
  AntiUniversalVerdict verdict;
  if (k == 0 || k > family.n) return verdict;
  const std::uint64_t work =
      sat_mul(sat_mul(sat_pow(family.n, k), sat_pow(family.b, k)), std::max<std::size_t>(family.functions.size(), 1));
  if (work > budget) fail(ErrorCode::BudgetExceeded, "verify_anti_universal work " + std::to_string(work));

  std::vector<std::uint32_t> values(family.functions.size() * k);
  for_each_tuple(k, family.n, [&](std::span<const std::uint32_t> u) {
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = i + 1; j < k; ++j)
        if (u[i] == u[j]) return true;
    for (std::size_t f = 0; f < family.functions.size(); ++f)
      for (std::uint32_t i = 0; i < k; ++i) values[f * k + i] = family.functions[f][u[i]];
    const bool all_avoided = for_each_tuple(k, family.b, [&](std::span<const std::uint32_t> v) {
      for (std::size_t f = 0; f < family.functions.size(); ++f) {
        bool avoids = true;
        for (std::uint32_t i = 0; i < k && avoids; ++i) avoids = values[f * k + i] != v[i];
        if (avoids) return true;
      }
      verdict.ok = false;
      verdict.counterexample = AntiUniversalCounterexample{{u.begin(), u.end()}, {v.begin(), v.end()}};
      return false;
    });
    return all_avoided;
  });
  return verdict;
}

std::uint64_t anti_universal_target_size(std::uint32_t n, std::uint32_t k, std::uint32_t b) {
  require(b >= 2, "anti-universal sets need b >= 2");
  const double kd = static_cast<double>(k);
  const double bd = static_cast<double>(b);
  const double size = std::pow(bd / (bd - 1.0), kd) *
                      (kd * std::log(static_cast<double>(std::max<std::uint32_t>(n, 1))) + kd * std::log(bd) + 2.0);
  return static_cast<std::uint64_t>(std::ceil(size));
}

AntiUniversalSet build_anti_universal(std::uint32_t n, std::uint32_t k, std::uint32_t b, std::uint64_t seed,
                                      bool minimize, std::uint64_t budget) {
  require(b >= 2, "anti-universal sets need b >= 2");
  require(n >= 1, "anti-universal sets need a non-empty domain");
  const std::uint64_t target = anti_universal_target_size(n, k, b);
  const std::uint64_t largest = sat_mul(target, std::uint64_t{1} << kSizeDoublings);
  const std::uint32_t strength = std::min(k, n);
  if (sat_mul(sat_mul(sat_pow(n, strength), sat_pow(b, strength)), largest) > budget)
    fail(ErrorCode::BudgetExceeded, "anti-universal (" + std::to_string(n) + "," + std::to_string(k) + "," +
                                        std::to_string(b) + ") target size " + std::to_string(target) +
                                        " exceeds the verification budget");
  using Family = std::vector<std::vector<std::uint32_t>>;
  auto is_anti_universal = [&](const Family& fns) {
    return verify_anti_universal(AntiUniversalSet{n, k, b, fns}, k, budget).ok;
  };
  Family fns = sample_until_verified(
      target, seed,
      [&](std::uint64_t size, Rng& rng) {
        Family f(size, std::vector<std::uint32_t>(n));
        for (auto& fn : f)
          for (auto& x : fn) x = static_cast<std::uint32_t>(rng.below(b));
        return f;
      },
      is_anti_universal, "build_anti_universal");
  std::sort(fns.begin(), fns.end());
  fns.erase(std::unique(fns.begin(), fns.end()), fns.end());
  if (minimize) prune_to_minimal(fns, is_anti_universal);
  return AntiUniversalSet{n, k, b, std::move(fns)};
}

// ---------------------------------------------------------------------------

PartitionVerdict verify_partition(const PartitionSystem& ps, std::uint64_t budget) {
  PartitionVerdict verdict;
  auto reject = [&](std::string reason) {
    verdict.ok = false;
    verdict.reason = std::move(reason);
    return verdict;
  };
  if (ps.partitions.size() != ps.L)
    return reject("expected " + std::to_string(ps.L) + " partitions, found " + std::to_string(ps.partitions.size()));
  std::vector<std::vector<boost::dynamic_bitset<>>> parts(ps.L);
  for (std::uint32_t j = 0; j < ps.L; ++j) {
    if (ps.partitions[j].size() != ps.k)
      return reject("partition " + std::to_string(j) + " has " + std::to_string(ps.partitions[j].size()) +
                    " parts, expected " + std::to_string(ps.k));
    boost::dynamic_bitset<> seen(ps.m);
    for (std::uint32_t i = 0; i < ps.k; ++i) {
      boost::dynamic_bitset<> part(ps.m);
      for (std::uint32_t e : ps.partitions[j][i]) {
        if (e >= ps.m) return reject("partition " + std::to_string(j) + " part " + std::to_string(i) +
                                     " names element " + std::to_string(e) + " outside the universe");
        if (seen[e]) return reject("element " + std::to_string(e) + " appears twice in partition " +
                                   std::to_string(j));
        seen.set(e);
        part.set(e);
      }
      parts[j].push_back(std::move(part));
    }
    if (!seen.all()) {
      std::size_t missing = 0;
      while (seen[missing]) ++missing;
      return reject("element " + std::to_string(missing) + " is missing from partition " + std::to_string(j));
    }
  }

  std::uint64_t work = 0;
  for (std::uint32_t j = 0; j < ps.certified_d && j <= ps.L; ++j)
    work = sat_add(work, sat_mul(binomial(ps.L, j), sat_pow(ps.k, j)));
  if (work > budget) fail(ErrorCode::BudgetExceeded, "verify_partition work " + std::to_string(work));

  if (ps.m == 0 && ps.certified_d > 0) {
    verdict.ok = false;
    verdict.reason = "the empty selection covers an empty universe";
    return verdict;
  }
  for (std::uint32_t j = 1; j < ps.certified_d && j <= ps.L && verdict.ok; ++j) {
    for_each_combination(ps.L, j, [&](std::span<const std::uint32_t> chosen) {
      return for_each_tuple(j, ps.k, [&](std::span<const std::uint32_t> which) {
        boost::dynamic_bitset<> uni(ps.m);
        for (std::uint32_t t = 0; t < j; ++t) uni |= parts[chosen[t]][which[t]];
        if (!uni.all()) return true;
        verdict.ok = false;
        verdict.reason = "a selection of " + std::to_string(j) + " parts from distinct partitions covers the universe";
        for (std::uint32_t t = 0; t < j; ++t) verdict.covering.push_back({chosen[t], which[t]});
        return false;
      });
    });
  }
  return verdict;
}

PartitionSystem partition_from_functions(std::uint32_t L, std::uint32_t k, std::uint32_t d,
                                         std::vector<std::vector<std::uint32_t>> functions) {
  PartitionSystem ps;
  ps.m = static_cast<std::uint32_t>(functions.size());
  ps.L = L;
  ps.k = k;
  ps.certified_d = d;
  ps.partitions.assign(L, std::vector<std::vector<std::uint32_t>>(k));
  for (std::uint32_t e = 0; e < ps.m; ++e) {
    require(functions[e].size() == L, "partition member has wrong domain size");
    for (std::uint32_t j = 0; j < L; ++j) {
      require(functions[e][j] < k, "partition member value out of range");
      ps.partitions[j][functions[e][j]].push_back(e);
    }
  }
  ps.element_functions = std::move(functions);
  return ps;
}

PartitionSystem partition_from_anti_universal(std::uint32_t L, std::uint32_t k, std::uint32_t d, std::uint64_t seed) {
  require(k >= 2, "partition systems need k >= 2 parts");
  require(d >= 1, "partition systems need d >= 1");
  require(L >= 1, "partition systems need at least one partition");
  AntiUniversalSet family = build_anti_universal(L, std::min(d, L), k, seed);
  return partition_from_functions(L, k, d, std::move(family.functions));
}

}  // namespace gapcover
