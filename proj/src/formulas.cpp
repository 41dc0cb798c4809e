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
#include "gapcover/formulas.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

Literal Literal::from_dimacs(std::int64_t value) {
  require(value != 0, "literal 0 is a clause terminator, not a literal");
  return value > 0 ? Literal{static_cast<std::uint32_t>(value - 1), false}
                   : Literal{static_cast<std::uint32_t>(-value - 1), true};
}

Assignment Assignment::from_bits(std::uint64_t bits, std::uint32_t num_vars) {
  Assignment a;
  a.values.resize(num_vars);
  for (std::uint32_t i = 0; i < num_vars; ++i) a.values[i] = ((bits >> i) & 1U) != 0;
  return a;
}

std::uint64_t Assignment::to_bits() const {
  require(values.size() <= 64, "assignment too long to pack");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i]) bits |= std::uint64_t{1} << i;
  return bits;
}

CnfFormula::CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t c = 0; c < clauses_.size(); ++c)
    for (const Literal& lit : clauses_[c])
      require(lit.var < num_vars_, "clause " + std::to_string(c) + " references variable " +
                                       std::to_string(lit.var + 1) + " beyond " +
                                       std::to_string(num_vars_));
}

bool CnfFormula::clause_satisfied(std::size_t clause, const Assignment& assignment) const {
  require(assignment.values.size() == num_vars_, "assignment length does not match formula");
  return std::any_of(clauses_[clause].begin(), clauses_[clause].end(),
                     [&](const Literal& l) { return l.satisfied_by(assignment.values[l.var]); });
}

std::size_t CnfFormula::satisfied_count(const Assignment& assignment) const {
  std::size_t count = 0;
  for (std::size_t c = 0; c < clauses_.size(); ++c)
    if (clause_satisfied(c, assignment)) ++count;
  return count;
}

std::optional<std::string> Sat5Formula::check(const CnfFormula& f) {
  if (f.num_vars() == 0 || f.num_vars() % 3 != 0)
    return "variable count " + std::to_string(f.num_vars()) + " is not a positive multiple of 3";
  if (f.clause_count() * 3 != static_cast<std::size_t>(f.num_vars()) * 5)
    return "clause count " + std::to_string(f.clause_count()) + " is not 5/3 of the variable count";
  std::vector<int> occurrences(f.num_vars(), 0);
  for (std::size_t c = 0; c < f.clause_count(); ++c) {
    const Clause& clause = f.clauses()[c];
    if (clause.size() != 3) return "clause " + std::to_string(c) + " does not have 3 literals";
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j)
        if (clause[i].var == clause[j].var)
          return "clause " + std::to_string(c) + " repeats variable " +
                 std::to_string(clause[i].var + 1);
      ++occurrences[clause[i].var];
    }
  }
  for (std::uint32_t v = 0; v < f.num_vars(); ++v)
    if (occurrences[v] != 5)
      return "variable " + std::to_string(v + 1) + " occurs " + std::to_string(occurrences[v]) +
             " times";
  return std::nullopt;
}

Sat5Formula::Sat5Formula(CnfFormula base) : base_(std::move(base)) {
  if (auto problem = check(base_)) fail(ErrorCode::InvalidArgument, "not a 3SAT-5 formula: " + *problem);
}

namespace {

class DimacsLexer {
 public:
  explicit DimacsLexer(std::string_view text) : text_(text) {}

  // Next whitespace-delimited token outside comment lines; empty at end.
  std::string_view next() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
        if (ch == '\n') at_line_start_ = true;
        ++pos_;
        continue;
      }
      if (at_line_start_ && ch == 'c') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      at_line_start_ = false;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return text_.substr(start, pos_ - start);
    }
    return {};
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  bool at_line_start_ = true;
};

std::int64_t parse_int(std::string_view token, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    fail(ErrorCode::Parse, std::string("malformed ") + what + " '" + std::string(token) + "'");
  return value;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  DimacsLexer lex(text);
  if (lex.next() != "p" || lex.next() != "cnf")
    fail(ErrorCode::Parse, "malformed header: expected 'p cnf V C'");
  const std::string_view v_tok = lex.next();
  const std::string_view c_tok = lex.next();
  if (v_tok.empty() || c_tok.empty()) fail(ErrorCode::Parse, "malformed header: missing counts");
  const std::int64_t num_vars = parse_int(v_tok, "variable count");
  const std::int64_t num_clauses = parse_int(c_tok, "clause count");
  if (num_vars < 0 || num_clauses < 0 || num_vars > UINT32_MAX)
    fail(ErrorCode::Parse, "malformed header: counts out of range");

  std::vector<Clause> clauses;
  Clause current;
  bool open = false;
  for (std::string_view tok = lex.next(); !tok.empty(); tok = lex.next()) {
    if (tok == "%") break;
    const std::int64_t value = parse_int(tok, "literal");
    if (value == 0) {
      clauses.push_back(std::move(current));
      current.clear();
      open = false;
      continue;
    }
    const std::int64_t index = value < 0 ? -value : value;
    if (index > num_vars)
      fail(ErrorCode::Parse, "literal " + std::to_string(value) + " index out of range (V=" +
                                 std::to_string(num_vars) + ")");
    current.push_back(Literal::from_dimacs(value));
    open = true;
  }
  if (open) fail(ErrorCode::Parse, "clause not 0-terminated at end of input");
  if (static_cast<std::int64_t>(clauses.size()) != num_clauses)
    fail(ErrorCode::Parse, "header declares " + std::to_string(num_clauses) + " clauses, found " +
                               std::to_string(clauses.size()));
  return CnfFormula(static_cast<std::uint32_t>(num_vars), std::move(clauses));
}

std::string emit_dimacs(const CnfFormula& formula, std::optional<std::uint64_t> seed) {
  std::ostringstream out;
  if (seed) out << "c seed " << *seed << '\n';
  out << "p cnf " << formula.num_vars() << ' ' << formula.clause_count() << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause) out << lit.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

std::optional<std::uint64_t> dimacs_seed(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string c, key;
    std::uint64_t value = 0;
    if (words >> c >> key >> value && c == "c" && key == "seed") return value;
  }
  return std::nullopt;
}

namespace {

bool triple_has_duplicate(const std::vector<std::uint32_t>& slots, std::size_t t) {
  const std::uint32_t a = slots[3 * t], b = slots[3 * t + 1], c = slots[3 * t + 2];
  return a == b || a == c || b == c;
}

bool triple_contains_except(const std::vector<std::uint32_t>& slots, std::size_t t,
                            std::size_t skip, std::uint32_t var) {
  for (std::size_t p = 3 * t; p < 3 * t + 3; ++p)
    if (p != skip && slots[p] == var) return true;
  return false;
}

// Shuffled configuration model with transposition repair. Returns false if
// the repair budget runs out.
bool try_configuration(std::uint32_t num_vars, Rng& rng, std::vector<std::uint32_t>& slots) {
  slots.clear();
  for (std::uint32_t v = 0; v < num_vars; ++v)
    for (int copy = 0; copy < 5; ++copy) slots.push_back(v);
  rng.shuffle(std::span<std::uint32_t>(slots));

  const std::size_t triples = slots.size() / 3;
  int repairs = 0;
  for (std::size_t t = 0; t < triples;) {
    if (!triple_has_duplicate(slots, t)) {
      ++t;
      continue;
    }
    if (++repairs > kSat5RepairBudget) return false;
    // Move the later copy of the repeated variable out of this triple.
    std::size_t bad = 3 * t + 2;
    if (slots[3 * t] == slots[3 * t + 1]) bad = 3 * t + 1;
    const std::size_t other = static_cast<std::size_t>(rng.below(slots.size()));
    if (other / 3 == t) continue;
    const std::uint32_t outgoing = slots[bad];
    const std::uint32_t incoming = slots[other];
    if (triple_contains_except(slots, other / 3, other, outgoing)) continue;
    if (triple_contains_except(slots, t, bad, incoming)) continue;
    std::swap(slots[bad], slots[other]);
    // A swap never breaks an earlier triple, but restart the scan to keep the
    // loop simple and its order deterministic.
    t = 0;
  }
  return true;
}

}  // namespace

Sat5Formula random_3sat5(std::uint32_t num_vars, std::uint64_t seed) {
  require(num_vars >= 3 && num_vars % 3 == 0,
          "3SAT-5 needs a variable count divisible by 3 (got " + std::to_string(num_vars) + ")");
  std::vector<std::uint32_t> slots;
  for (int attempt = 0; attempt < kSat5ReseedAttempts; ++attempt) {
    Rng rng(attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (!try_configuration(num_vars, rng, slots)) continue;
    std::vector<Clause> clauses(slots.size() / 3);
    for (std::size_t i = 0; i < slots.size(); ++i)
      clauses[i / 3].push_back(Literal{slots[i], rng.coin()});
    return Sat5Formula(CnfFormula(num_vars, std::move(clauses)));
  }
  fail(ErrorCode::RetriesExhausted, "3SAT-5 repair failed after " +
                                        std::to_string(kSat5ReseedAttempts) + " reseeds");
}

MaxSatResult max_sat(const CnfFormula& formula, std::uint32_t budget_vars) {
  const std::uint32_t n = formula.num_vars();
  if (n > budget_vars || n > 40)
    fail(ErrorCode::BudgetExceeded, "max_sat: " + std::to_string(n) +
                                        " variables exceeds exhaustive budget of " +
                                        std::to_string(budget_vars));
  struct Masks {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(formula.clause_count());
  for (const Clause& clause : formula.clauses()) {
    Masks m;
    for (const Literal& lit : clause) (lit.negated ? m.negative : m.positive) |= std::uint64_t{1} << lit.var;
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::size_t best = 0;
  std::uint64_t best_bits = 0;
  bool any = false;
  for (std::uint64_t x = 0; x < total; ++x) {
    std::size_t count = 0;
    for (const Masks& m : masks)
      if ((x & m.positive) != 0 || (~x & m.negative) != 0) ++count;
    if (!any || count > best) {
      best = count;
      best_bits = x;
      any = true;
      if (best == masks.size()) break;
    }
  }
  return MaxSatResult{best, Assignment::from_bits(best_bits, n)};
}

}  // namespace gapcover
