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
#include "gapcover/combinatorics.hpp"

#include <atomic>
#include <iostream>

#include "gapcover/error.hpp"

namespace gapcover {

namespace {
std::atomic<bool> g_warnings_muted{false};
}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::BudgetExceeded: return "budget exceeded";
    case ErrorCode::RetriesExhausted: return "retries exhausted";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Schema: return "schema error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

void log_warning(const std::string& msg) {
  if (!g_warnings_muted.load()) std::cerr << "warning: " << msg << '\n';
}

void set_warnings_muted(bool muted) { g_warnings_muted.store(muted); }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    result = sat_mul(result, base);
    if (result == UINT64_MAX) break;
  }
  return result;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(result);
}

double harmonic(std::uint64_t n) {
  double h = 0.0;
  for (std::uint64_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

bool for_each_combination(std::uint32_t n, std::uint32_t k,
                          const std::function<bool(std::span<const std::uint32_t>)>& visit) {
  if (k > n) return true;
  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(idx)) return false;
    std::int64_t pos = static_cast<std::int64_t>(k) - 1;
    while (pos >= 0 && idx[pos] == n - k + static_cast<std::uint32_t>(pos)) --pos;
    if (pos < 0) return true;
    ++idx[pos];
    for (std::uint32_t j = static_cast<std::uint32_t>(pos) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool for_each_tuple(std::uint32_t length, std::uint32_t radix,
                    const std::function<bool(std::span<const std::uint32_t>)>& visit) {
  if (radix == 0 && length > 0) return true;
  std::vector<std::uint32_t> digits(length, 0);
  while (true) {
    if (!visit(digits)) return false;
    std::int64_t pos = static_cast<std::int64_t>(length) - 1;
    while (pos >= 0 && digits[pos] + 1 == radix) {
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) return true;
    ++digits[pos];
  }
}

}  // namespace gapcover
