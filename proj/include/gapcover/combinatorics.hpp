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
#include <functional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

namespace gapcover {

using Fraction = boost::rational<std::int64_t>;

// Default work limits shared by the exhaustive routines.
inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 28;
inline constexpr std::uint64_t kVerificationBudget = std::uint64_t{1} << 30;

// Saturating arithmetic: results clamp at UINT64_MAX.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Sum_{i=1..n} 1/i.
double harmonic(std::uint64_t n);

// Visits every k-subset of [0, n) in lexicographic order. The callback
// returns false to stop early; the function returns false iff stopped.
bool for_each_combination(std::uint32_t n, std::uint32_t k,
                          const std::function<bool(std::span<const std::uint32_t>)>& visit);

// Visits every digit vector in [0, radix)^length, last digit fastest.
bool for_each_tuple(std::uint32_t length, std::uint32_t radix,
                    const std::function<bool(std::span<const std::uint32_t>)>& visit);

}  // namespace gapcover
