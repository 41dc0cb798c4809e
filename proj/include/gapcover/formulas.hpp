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
#include <string_view>
#include <vector>

namespace gapcover {

// A literal over a 0-based variable index. DIMACS text uses 1-based signed
// integers; conversion happens only at the text boundary.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  static Literal from_dimacs(std::int64_t value);
  std::int64_t to_dimacs() const {
    return negated ? -static_cast<std::int64_t>(var) - 1 : static_cast<std::int64_t>(var) + 1;
  }
  // True iff the literal holds when its variable takes `value`.
  bool satisfied_by(bool value) const { return value != negated; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

// Bit i of a packed assignment is the value of variable i.
struct Assignment {
  std::vector<bool> values;

  static Assignment from_bits(std::uint64_t bits, std::uint32_t num_vars);
  std::uint64_t to_bits() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

class CnfFormula {
 public:
  CnfFormula() = default;
  // Throws InvalidArgument if a literal references a variable >= num_vars.
  CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t clause_count() const { return clauses_.size(); }

  bool clause_satisfied(std::size_t clause, const Assignment& assignment) const;
  std::size_t satisfied_count(const Assignment& assignment) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::uint32_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

// A 3CNF where every variable occurs in exactly five clauses and no clause
// repeats a variable. Construction validates all of this.
class Sat5Formula {
 public:
  explicit Sat5Formula(CnfFormula base);

  const CnfFormula& base() const { return base_; }
  std::uint32_t num_vars() const { return base_.num_vars(); }
  std::size_t clause_count() const { return base_.clause_count(); }
  const std::vector<Clause>& clauses() const { return base_.clauses(); }

  // Empty when the formula is a valid 3SAT-5 instance.
  static std::optional<std::string> check(const CnfFormula& f);

 private:
  CnfFormula base_;
};

CnfFormula parse_dimacs(std::string_view text);

// Mirrors parse_dimacs. When `seed` is given a "c seed <n>" comment line is
// written before the header.
std::string emit_dimacs(const CnfFormula& formula, std::optional<std::uint64_t> seed = std::nullopt);

// The value of the first "c seed <n>" comment, if any.
std::optional<std::uint64_t> dimacs_seed(std::string_view text);

inline constexpr std::uint32_t kDefaultMaxSatBudget = 24;
inline constexpr int kSat5RepairBudget = 1000;
inline constexpr int kSat5ReseedAttempts = 16;

// Configuration-model 3SAT-5 generator; deterministic per seed.
Sat5Formula random_3sat5(std::uint32_t num_vars, std::uint64_t seed);

struct MaxSatResult {
  std::size_t best_count = 0;
  Assignment witness;
};

// Exhaustive maximum; ties go to the numerically smallest packed assignment.
MaxSatResult max_sat(const CnfFormula& formula, std::uint32_t budget_vars = kDefaultMaxSatBudget);

}  // namespace gapcover
