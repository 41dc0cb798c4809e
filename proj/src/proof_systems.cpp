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
#include "gapcover/proof_systems.hpp"

#include <algorithm>
#include <bit>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

namespace {
constexpr std::uint64_t kMaxAcceptTable = std::uint64_t{1} << 31;
}  // namespace

TwoProverGame::TwoProverGame(std::vector<SeedQueries> seed_queries,
                             std::array<std::uint32_t, 2> query_counts,
                             std::array<std::uint64_t, 2> answer_counts,
                             boost::dynamic_bitset<> accept, bool functional)
    : seed_queries_(std::move(seed_queries)),
      query_counts_(query_counts),
      answer_counts_(answer_counts),
      accept_(std::move(accept)),
      functional_(functional) {
  require(answer_counts_[0] > 0 && answer_counts_[1] > 0, "answer alphabets must be non-empty");
  const std::uint64_t cells = sat_mul(sat_mul(seed_queries_.size(), answer_counts_[0]), answer_counts_[1]);
  require(accept_.size() == cells, "acceptance table has wrong size");
  for (int p = 0; p < 2; ++p) {
    std::vector<bool> used(query_counts_[p], false);
    for (const SeedQueries& q : seed_queries_) {
      require(q[p] < query_counts_[p], "seed query out of range for prover " + std::to_string(p + 1));
      used[q[p]] = true;
    }
    for (std::uint32_t q = 0; q < query_counts_[p]; ++q)
      require(used[q], "query " + std::to_string(q) + " of prover " + std::to_string(p + 1) +
                           " is never asked");
  }
  if (!functional_) return;
  answer_of_.assign(seed_queries_.size() * answer_counts_[0], -1);
  for (std::uint64_t r = 0; r < seed_queries_.size(); ++r) {
    for (std::uint64_t a1 = 0; a1 < answer_counts_[0]; ++a1) {
      for (std::uint64_t a2 = 0; a2 < answer_counts_[1]; ++a2) {
        if (!accepts(r, a1, a2)) continue;
        std::int64_t& slot = answer_of_[r * answer_counts_[0] + a1];
        require(slot < 0, "functional answer property violated at seed " + std::to_string(r) +
                              ", a1 " + std::to_string(a1));
        slot = static_cast<std::int64_t>(a2);
      }
    }
  }
}

TwoProverGame TwoProverGame::from_predicate(std::vector<SeedQueries> seed_queries,
                                            std::array<std::uint32_t, 2> query_counts,
                                            std::array<std::uint64_t, 2> answer_counts,
                                            const Predicate& predicate, bool functional) {
  const std::uint64_t cells = sat_mul(sat_mul(seed_queries.size(), answer_counts[0]), answer_counts[1]);
  if (cells > kMaxAcceptTable)
    fail(ErrorCode::BudgetExceeded, "acceptance table of " + std::to_string(cells) + " cells is too large");
  boost::dynamic_bitset<> accept(cells);
  std::uint64_t cell = 0;
  for (std::uint64_t r = 0; r < seed_queries.size(); ++r)
    for (std::uint64_t a1 = 0; a1 < answer_counts[0]; ++a1)
      for (std::uint64_t a2 = 0; a2 < answer_counts[1]; ++a2, ++cell)
        if (predicate(r, a1, a2)) accept.set(cell);
  return TwoProverGame(std::move(seed_queries), query_counts, answer_counts, std::move(accept), functional);
}

std::optional<std::uint64_t> TwoProverGame::functional_answer(std::uint64_t seed, std::uint64_t a1) const {
  require(functional_, "game has no functional answer map");
  const std::int64_t a2 = answer_of_[seed * answer_counts_[0] + a1];
  if (a2 < 0) return std::nullopt;
  return static_cast<std::uint64_t>(a2);
}

TwoProverGame clause_variable_game(const CnfFormula& formula) {
  std::vector<bool> occurs(formula.num_vars(), false);
  std::vector<SeedQueries> seeds;
  for (std::size_t c = 0; c < formula.clause_count(); ++c) {
    const Clause& clause = formula.clauses()[c];
    require(clause.size() == 3, "clause/variable game needs 3 literals per clause");
    require(clause[0].var != clause[1].var && clause[0].var != clause[2].var &&
                clause[1].var != clause[2].var,
            "clause/variable game needs distinct variables per clause");
    for (std::uint32_t pos = 0; pos < 3; ++pos) {
      seeds.push_back({static_cast<std::uint32_t>(c), clause[pos].var});
      occurs[clause[pos].var] = true;
    }
  }
  require(std::all_of(occurs.begin(), occurs.end(), [](bool b) { return b; }),
          "clause/variable game needs every variable to occur");
  const auto& clauses = formula.clauses();
  auto predicate = [&](std::uint64_t r, std::uint64_t a1, std::uint64_t a2) {
    const Clause& clause = clauses[r / 3];
    const std::uint64_t pos = r % 3;
    bool satisfied = false;
    for (std::uint32_t j = 0; j < 3; ++j) satisfied |= clause[j].satisfied_by(((a1 >> j) & 1U) != 0);
    return satisfied && ((a1 >> pos) & 1U) == a2;
  };
  return TwoProverGame::from_predicate(
      std::move(seeds), {static_cast<std::uint32_t>(formula.clause_count()), formula.num_vars()},
      {8, 2}, predicate, true);
}

TwoProverGame clause_variable_game(const Sat5Formula& formula) {
  return clause_variable_game(formula.base());
}

std::array<ProverStrategy, 2> clause_variable_strategies(const CnfFormula& formula,
                                                         const Assignment& assignment) {
  require(assignment.values.size() == formula.num_vars(), "assignment length does not match formula");
  std::array<ProverStrategy, 2> s;
  for (const Clause& clause : formula.clauses()) {
    std::uint64_t triple = 0;
    for (std::uint32_t j = 0; j < clause.size(); ++j)
      if (assignment.values[clause[j].var]) triple |= std::uint64_t{1} << j;
    s[0].table.push_back(triple);
  }
  for (bool v : assignment.values) s[1].table.push_back(v ? 1 : 0);
  return s;
}

std::uint64_t accepting_seeds(const TwoProverGame& game, const ProverStrategy& first,
                              const ProverStrategy& second) {
  require(first.table.size() == game.query_count(0) && second.table.size() == game.query_count(1),
          "strategy does not cover the prover's query set");
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < game.seed_count(); ++r) {
    const std::uint64_t a1 = first.table[game.query(r, 0)];
    const std::uint64_t a2 = second.table[game.query(r, 1)];
    require(a1 < game.answer_count(0) && a2 < game.answer_count(1), "strategy answer out of alphabet");
    if (game.accepts(r, a1, a2)) ++count;
  }
  return count;
}

GameValue game_value_exact(const TwoProverGame& game, std::uint64_t budget) {
  std::array<std::uint64_t, 2> work{};
  for (int p = 0; p < 2; ++p) {
    const std::uint64_t tables = sat_pow(game.answer_count(p), game.query_count(p));
    work[p] = sat_mul(sat_mul(tables, std::max<std::uint64_t>(game.seed_count(), 1)),
                      game.answer_count(1 - p));
  }
  const int enumerated = work[1] <= work[0] ? 1 : 0;
  const int responder = 1 - enumerated;
  if (work[enumerated] > budget)
    fail(ErrorCode::BudgetExceeded, "game_value_exact needs " + std::to_string(work[enumerated]) +
                                        " evaluations, budget " + std::to_string(budget));

  std::vector<std::vector<std::uint64_t>> seeds_by_query(game.query_count(responder));
  for (std::uint64_t r = 0; r < game.seed_count(); ++r) seeds_by_query[game.query(r, responder)].push_back(r);

  GameValue best;
  best.seeds = game.seed_count();
  bool found = false;
  std::vector<std::uint64_t> response(game.query_count(responder), 0);
  const auto accepts = [&](std::uint64_t r, std::uint64_t mine, std::uint64_t theirs) {
    return enumerated == 0 ? game.accepts(r, mine, theirs) : game.accepts(r, theirs, mine);
  };
  for_each_tuple(game.query_count(enumerated), static_cast<std::uint32_t>(game.answer_count(enumerated)),
                 [&](std::span<const std::uint32_t> table) {
                   std::uint64_t total = 0;
                   for (std::uint32_t q = 0; q < seeds_by_query.size(); ++q) {
                     std::uint64_t best_count = 0;
                     std::uint64_t best_answer = 0;
                     for (std::uint64_t a = 0; a < game.answer_count(responder); ++a) {
                       std::uint64_t count = 0;
                       for (std::uint64_t r : seeds_by_query[q])
                         if (accepts(r, table[game.query(r, enumerated)], a)) ++count;
                       if (count > best_count) {
                         best_count = count;
                         best_answer = a;
                       }
                     }
                     response[q] = best_answer;
                     total += best_count;
                   }
                   if (!found || total > best.accepting) {
                     found = true;
                     best.accepting = total;
                     ProverStrategy mine{std::vector<std::uint64_t>(table.begin(), table.end())};
                     ProverStrategy theirs{response};
                     best.first = enumerated == 0 ? mine : theirs;
                     best.second = enumerated == 0 ? theirs : mine;
                   }
                   return best.accepting < game.seed_count();
                 });
  return best;
}

double game_value_sampled(const TwoProverGame& game, const ProverStrategy& first,
                          const ProverStrategy& second, std::uint64_t samples, std::uint64_t seed) {
  require(samples >= 1, "need at least one sample");
  require(game.seed_count() > 0, "game has no seeds");
  require(first.table.size() == game.query_count(0) && second.table.size() == game.query_count(1),
          "strategy does not cover the prover's query set");
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t r = rng.below(game.seed_count());
    if (game.accepts(r, first.table[game.query(r, 0)], second.table[game.query(r, 1)])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

namespace {

// Packs digits (most significant first) in a uniform radix.
std::uint64_t pack(std::span<const std::uint64_t> digits, std::uint64_t radix) {
  std::uint64_t v = 0;
  for (std::uint64_t d : digits) v = v * radix + d;
  return v;
}

void unpack(std::uint64_t value, std::uint64_t radix, std::span<std::uint64_t> digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = value % radix;
    value /= radix;
  }
}

}  // namespace

TwoProverGame parallel_repeat(const TwoProverGame& game, std::uint32_t ell, std::uint64_t budget) {
  require(ell >= 1, "repetition count must be at least 1");
  const std::uint64_t seeds = sat_pow(game.seed_count(), ell);
  const std::array<std::uint64_t, 2> answers{sat_pow(game.answer_count(0), ell),
                                             sat_pow(game.answer_count(1), ell)};
  const std::array<std::uint64_t, 2> queries{sat_pow(game.query_count(0), ell),
                                             sat_pow(game.query_count(1), ell)};
  const std::uint64_t cells = sat_mul(sat_mul(seeds, answers[0]), answers[1]);
  if (cells > budget || cells > kMaxAcceptTable || queries[0] > UINT32_MAX || queries[1] > UINT32_MAX)
    fail(ErrorCode::BudgetExceeded, "parallel repetition would need " + std::to_string(cells) +
                                        " table cells");

  std::vector<SeedQueries> seed_queries(seeds);
  std::vector<std::uint64_t> rs(ell), qs(ell), a1s(ell), a2s(ell);
  for (std::uint64_t r = 0; r < seeds; ++r) {
    unpack(r, game.seed_count(), rs);
    for (int p = 0; p < 2; ++p) {
      for (std::uint32_t t = 0; t < ell; ++t) qs[t] = game.query(rs[t], p);
      seed_queries[r][p] = static_cast<std::uint32_t>(pack(qs, game.query_count(p)));
    }
  }
  boost::dynamic_bitset<> accept(cells);
  std::uint64_t cell = 0;
  for (std::uint64_t r = 0; r < seeds; ++r) {
    unpack(r, game.seed_count(), rs);
    for (std::uint64_t a1 = 0; a1 < answers[0]; ++a1) {
      unpack(a1, game.answer_count(0), a1s);
      for (std::uint64_t a2 = 0; a2 < answers[1]; ++a2, ++cell) {
        unpack(a2, game.answer_count(1), a2s);
        bool all = true;
        for (std::uint32_t t = 0; t < ell && all; ++t) all = game.accepts(rs[t], a1s[t], a2s[t]);
        if (all) accept.set(cell);
      }
    }
  }
  return TwoProverGame(std::move(seed_queries),
                       {static_cast<std::uint32_t>(queries[0]), static_cast<std::uint32_t>(queries[1])},
                       answers, std::move(accept), game.has_functional_answer());
}

TwoProverGame random_two_prover_game(std::uint64_t seeds, std::array<std::uint32_t, 2> query_counts,
                                     std::array<std::uint64_t, 2> answer_counts,
                                     std::uint32_t accept_percent, bool functional,
                                     std::uint64_t seed) {
  require(seeds >= query_counts[0] && seeds >= query_counts[1] && query_counts[0] > 0 && query_counts[1] > 0,
          "need at least as many seeds as queries");
  require(accept_percent <= 100, "acceptance percentage above 100");
  Rng rng(seed);
  std::vector<SeedQueries> seed_queries(seeds);
  for (int p = 0; p < 2; ++p) {
    std::vector<std::uint32_t> column(seeds);
    for (std::uint64_t r = 0; r < seeds; ++r)
      column[r] = r < query_counts[p] ? static_cast<std::uint32_t>(r)
                                      : static_cast<std::uint32_t>(rng.below(query_counts[p]));
    rng.shuffle(std::span<std::uint32_t>(column));
    for (std::uint64_t r = 0; r < seeds; ++r) seed_queries[r][p] = column[r];
  }
  const std::uint64_t cells = sat_mul(sat_mul(seeds, answer_counts[0]), answer_counts[1]);
  require(cells <= kMaxAcceptTable, "random game table too large");
  boost::dynamic_bitset<> accept(cells);
  for (std::uint64_t r = 0; r < seeds; ++r) {
    for (std::uint64_t a1 = 0; a1 < answer_counts[0]; ++a1) {
      const std::uint64_t base = (r * answer_counts[0] + a1) * answer_counts[1];
      if (functional) {
        if (rng.below(100) < accept_percent) accept.set(base + rng.below(answer_counts[1]));
        continue;
      }
      for (std::uint64_t a2 = 0; a2 < answer_counts[1]; ++a2)
        if (rng.below(100) < accept_percent) accept.set(base + a2);
    }
  }
  return TwoProverGame(std::move(seed_queries), query_counts, answer_counts, std::move(accept), functional);
}

BalancedCode::BalancedCode(std::uint32_t rho, std::vector<std::uint64_t> words)
    : rho_(rho), words_(std::move(words)) {
  if (auto problem = check(rho_, words_)) fail(ErrorCode::InvalidArgument, "invalid balanced code: " + *problem);
}

std::optional<std::string> BalancedCode::check(std::uint32_t rho, const std::vector<std::uint64_t>& words) {
  if (rho < 2 || rho % 2 != 0 || rho > kMaxCodeLength)
    return "word length must be even and in [2, " + std::to_string(kMaxCodeLength) + "]";
  if (words.empty()) return "code has no words";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i] >> rho != 0) return "word " + std::to_string(i) + " is longer than rho";
    if (static_cast<std::uint32_t>(std::popcount(words[i])) != rho / 2)
      return "word " + std::to_string(i) + " does not have weight rho/2";
    for (std::size_t j = 0; j < i; ++j)
      if (3 * static_cast<std::uint32_t>(std::popcount(words[i] ^ words[j])) < rho)
        return "words " + std::to_string(j) + " and " + std::to_string(i) + " are closer than rho/3";
  }
  return std::nullopt;
}

std::string BalancedCode::word_string(std::size_t word) const {
  std::string s(rho_, '0');
  for (std::uint32_t j = 0; j < rho_; ++j)
    if (bit(word, j)) s[j] = '1';
  return s;
}

std::uint64_t BalancedCode::parse_word(const std::string& text) {
  require(!text.empty() && text.size() <= 64, "malformed code word '" + text + "'");
  std::uint64_t w = 0;
  for (std::size_t j = 0; j < text.size(); ++j) {
    require(text[j] == '0' || text[j] == '1', "malformed code word '" + text + "'");
    if (text[j] == '1') w |= std::uint64_t{1} << j;
  }
  return w;
}

BalancedCode balanced_code(std::uint32_t k, std::uint32_t rho, std::uint64_t seed) {
  require(rho >= 2 && rho % 2 == 0 && rho <= kMaxCodeLength,
          "code length must be even and in [2, " + std::to_string(kMaxCodeLength) + "]");
  require(k >= 1, "code needs at least one word");
  if (binomial(rho, rho / 2) < k)
    fail(ErrorCode::InvalidArgument, "only " + std::to_string(binomial(rho, rho / 2)) +
                                         " words of weight " + std::to_string(rho / 2) + " exist, need " +
                                         std::to_string(k));
  std::vector<std::uint64_t> candidates;
  for_each_combination(rho, rho / 2, [&](std::span<const std::uint32_t> ones) {
    std::uint64_t w = 0;
    for (std::uint32_t j : ones) w |= std::uint64_t{1} << j;
    candidates.push_back(w);
    return true;
  });
  constexpr int kRestarts = 64;
  Rng rng(seed);
  for (int attempt = 0; attempt < kRestarts; ++attempt) {
    rng.shuffle(std::span<std::uint64_t>(candidates));
    std::vector<std::uint64_t> picked;
    for (std::uint64_t w : candidates) {
      const bool far = std::all_of(picked.begin(), picked.end(), [&](std::uint64_t p) {
        return 3 * static_cast<std::uint32_t>(std::popcount(w ^ p)) >= rho;
      });
      if (far) picked.push_back(w);
      if (picked.size() == k) return BalancedCode(rho, std::move(picked));
    }
  }
  fail(ErrorCode::RetriesExhausted, "no balanced code with " + std::to_string(k) + " words of length " +
                                        std::to_string(rho) + " found");
}

const char* to_string(Acceptance a) {
  switch (a) {
    case Acceptance::Strong: return "strong";
    case Acceptance::Weak: return "weak";
    case Acceptance::Reject: return "reject";
  }
  return "?";
}

KProverGame::KProverGame(Sat5Formula formula, BalancedCode code)
    : formula_(std::move(formula)), code_(std::move(code)) {
  require(code_.size() >= 2, "k-prover game needs at least two provers");
  const std::uint64_t n = formula_.num_vars();
  const std::uint64_t m = formula_.clause_count();
  seed_count_ = sat_pow(5 * n, rho());
  if (seed_count_ > kSeedBudget)
    fail(ErrorCode::BudgetExceeded, "(5n)^rho = " + std::to_string(seed_count_) + " seeds exceeds budget");
  query_count_ = sat_mul(sat_pow(n, rho() / 2), sat_pow(m, rho() / 2));
}

std::vector<KProverGame::Coordinate> KProverGame::decode_seed(std::uint64_t seed) const {
  require(seed < seed_count_, "seed out of range");
  const std::uint64_t base = 3 * formula_.clause_count();
  std::vector<Coordinate> coords(rho());
  for (std::uint32_t t = rho(); t-- > 0;) {
    const std::uint64_t v = seed % base;
    seed /= base;
    coords[t] = Coordinate{static_cast<std::uint32_t>(v / 3), static_cast<std::uint32_t>(v % 3)};
  }
  return coords;
}

std::uint32_t KProverGame::distinguished_variable(const std::vector<Coordinate>& coords, std::uint32_t t) const {
  return formula_.clauses()[coords[t].clause][coords[t].position].var;
}

std::uint64_t KProverGame::query_index(std::size_t prover, const std::vector<Coordinate>& coords) const {
  std::uint64_t index = 0;
  for (std::uint32_t t = 0; t < rho(); ++t) {
    if (code_.bit(prover, t))
      index = index * formula_.clause_count() + coords[t].clause;
    else
      index = index * formula_.num_vars() + distinguished_variable(coords, t);
  }
  return index;
}

std::uint64_t KProverGame::induced_assignment(std::size_t prover, const std::vector<Coordinate>& coords,
                                              std::uint64_t answer) const {
  const std::uint32_t half = rho() / 2;
  std::uint32_t variable_slot = 0;
  std::uint32_t clause_slot = 0;
  std::uint64_t induced = 0;
  for (std::uint32_t t = 0; t < rho(); ++t) {
    std::uint32_t bit_pos = 0;
    if (code_.bit(prover, t))
      bit_pos = half + 3 * clause_slot++ + coords[t].position;
    else
      bit_pos = variable_slot++;
    if ((answer >> bit_pos) & 1U) induced |= std::uint64_t{1} << t;
  }
  return induced;
}

ProverStrategy KProverGame::strategy_from_assignment(std::size_t prover, const Assignment& assignment) const {
  require(prover < prover_count(), "prover index out of range");
  require(assignment.values.size() == formula_.num_vars(), "assignment length does not match formula");
  const std::uint32_t half = rho() / 2;
  ProverStrategy s;
  s.table.resize(query_count_);
  std::vector<std::uint64_t> digits(rho());
  for (std::uint64_t q = 0; q < query_count_; ++q) {
    std::uint64_t rest = q;
    for (std::uint32_t t = rho(); t-- > 0;) {
      const std::uint64_t radix = code_.bit(prover, t) ? formula_.clause_count() : formula_.num_vars();
      digits[t] = rest % radix;
      rest /= radix;
    }
    std::uint64_t answer = 0;
    std::uint32_t variable_slot = 0;
    std::uint32_t clause_slot = 0;
    for (std::uint32_t t = 0; t < rho(); ++t) {
      if (code_.bit(prover, t)) {
        const Clause& clause = formula_.clauses()[digits[t]];
        for (std::uint32_t j = 0; j < 3; ++j)
          if (assignment.values[clause[j].var]) answer |= std::uint64_t{1} << (half + 3 * clause_slot + j);
        ++clause_slot;
      } else {
        if (assignment.values[digits[t]]) answer |= std::uint64_t{1} << variable_slot;
        ++variable_slot;
      }
    }
    s.table[q] = answer;
  }
  return s;
}

Acceptance evaluate_acceptance(const KProverGame& game, const std::vector<ProverStrategy>& strategies,
                               std::uint64_t seed) {
  require(strategies.size() == game.prover_count(), "need one strategy per prover");
  const auto coords = game.decode_seed(seed);
  std::vector<std::uint64_t> induced(game.prover_count());
  for (std::size_t i = 0; i < game.prover_count(); ++i) {
    const std::uint64_t q = game.query_index(i, coords);
    require(q < strategies[i].table.size(), "strategy of prover " + std::to_string(i + 1) +
                                                " is missing query " + std::to_string(q));
    induced[i] = game.induced_assignment(i, coords, strategies[i].table[q]);
  }
  std::size_t consistent = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < induced.size(); ++i)
    for (std::size_t j = i + 1; j < induced.size(); ++j, ++pairs)
      if (induced[i] == induced[j]) ++consistent;
  if (consistent == pairs) return Acceptance::Strong;
  return consistent > 0 ? Acceptance::Weak : Acceptance::Reject;
}

}  // namespace gapcover
