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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gapcover/combinatorics.hpp"
#include "gapcover/formulas.hpp"

namespace gapcover {

// Provers are indexed 0 and 1 in code (prover 1 and prover 2 in prose).
using SeedQueries = std::array<std::uint32_t, 2>;

// One-round two-prover game with a materialised acceptance table. Queries
// and answers are dense indices; every query index is asked by some seed.
class TwoProverGame {
 public:
  using Predicate = std::function<bool(std::uint64_t seed, std::uint64_t a1, std::uint64_t a2)>;

  // `accept` has bit (seed * A1 + a1) * A2 + a2 set iff the verifier accepts.
  // With `functional`, construction checks that each (seed, a1) accepts at
  // most one a2.
  TwoProverGame(std::vector<SeedQueries> seed_queries, std::array<std::uint32_t, 2> query_counts,
                std::array<std::uint64_t, 2> answer_counts, boost::dynamic_bitset<> accept,
                bool functional);

  static TwoProverGame from_predicate(std::vector<SeedQueries> seed_queries,
                                      std::array<std::uint32_t, 2> query_counts,
                                      std::array<std::uint64_t, 2> answer_counts,
                                      const Predicate& predicate, bool functional);

  std::uint64_t seed_count() const { return seed_queries_.size(); }
  std::uint32_t query(std::uint64_t seed, int prover) const { return seed_queries_[seed][prover]; }
  const std::vector<SeedQueries>& seed_queries() const { return seed_queries_; }
  std::uint32_t query_count(int prover) const { return query_counts_[prover]; }
  std::uint64_t answer_count(int prover) const { return answer_counts_[prover]; }

  bool accepts(std::uint64_t seed, std::uint64_t a1, std::uint64_t a2) const {
    return accept_[(seed * answer_counts_[0] + a1) * answer_counts_[1] + a2];
  }
  const boost::dynamic_bitset<>& accept_table() const { return accept_; }

  bool has_functional_answer() const { return functional_; }
  // The unique accepting a2 for (seed, a1), or nullopt.
  std::optional<std::uint64_t> functional_answer(std::uint64_t seed, std::uint64_t a1) const;

  friend bool operator==(const TwoProverGame&, const TwoProverGame&) = default;

 private:
  std::vector<SeedQueries> seed_queries_;
  std::array<std::uint32_t, 2> query_counts_;
  std::array<std::uint64_t, 2> answer_counts_;
  boost::dynamic_bitset<> accept_;
  bool functional_ = false;
  std::vector<std::int64_t> answer_of_;  // seed * A1 + a1 -> a2 or -1
};

// A deterministic prover: answer for each query index.
struct ProverStrategy {
  std::vector<std::uint64_t> table;

  std::uint64_t operator()(std::uint64_t query) const { return table.at(query); }
  friend bool operator==(const ProverStrategy&, const ProverStrategy&) = default;
};

struct GameValue {
  std::uint64_t accepting = 0;
  std::uint64_t seeds = 0;
  ProverStrategy first;
  ProverStrategy second;

  Fraction value() const {
    return seeds == 0 ? Fraction(0) : Fraction(static_cast<std::int64_t>(accepting),
                                               static_cast<std::int64_t>(seeds));
  }
};

// P1 answers the clause index with a bit triple (bit j = value of the
// clause's j-th variable); P2 answers the queried variable with one bit.
// Seeds are (clause, position) pairs, seed = 3 * clause + position. The
// general overload accepts any 3CNF with distinct variables per clause in
// which every variable occurs.
TwoProverGame clause_variable_game(const CnfFormula& formula);
TwoProverGame clause_variable_game(const Sat5Formula& formula);

// Strategies answering every query according to one assignment.
std::array<ProverStrategy, 2> clause_variable_strategies(const CnfFormula& formula,
                                                         const Assignment& assignment);

// Maximum acceptance over deterministic strategy pairs. One prover's table
// is enumerated lexicographically (query 0 most significant, answers
// ascending); the other plays a best response. Work counted as
// tables * seeds * answers must stay within `budget`.
GameValue game_value_exact(const TwoProverGame& game, std::uint64_t budget = kEnumerationBudget);

// Accepting seeds for a fixed strategy pair.
std::uint64_t accepting_seeds(const TwoProverGame& game, const ProverStrategy& first,
                              const ProverStrategy& second);

double game_value_sampled(const TwoProverGame& game, const ProverStrategy& first,
                          const ProverStrategy& second, std::uint64_t samples, std::uint64_t seed);

// ell-fold parallel repetition. Tuples are packed mixed-radix with
// coordinate 0 most significant.
TwoProverGame parallel_repeat(const TwoProverGame& game, std::uint32_t ell,
                              std::uint64_t budget = kEnumerationBudget);

// Random test supplier: every query index is used, each (seed, a1, a2) is
// accepted with probability `accept_percent`/100. With `functional`, at most
// one a2 per (seed, a1) accepts.
TwoProverGame random_two_prover_game(std::uint64_t seeds, std::array<std::uint32_t, 2> query_counts,
                                     std::array<std::uint64_t, 2> answer_counts,
                                     std::uint32_t accept_percent, bool functional,
                                     std::uint64_t seed);

// k words of even length rho, each of weight rho/2, pairwise Hamming
// distance at least rho/3. Bit j of a word is coordinate j.
class BalancedCode {
 public:
  BalancedCode(std::uint32_t rho, std::vector<std::uint64_t> words);

  std::uint32_t rho() const { return rho_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::uint64_t>& words() const { return words_; }
  bool bit(std::size_t word, std::uint32_t coordinate) const {
    return ((words_[word] >> coordinate) & 1U) != 0;
  }
  // Coordinate 0 first, e.g. "10" for a word with only bit 0 set.
  std::string word_string(std::size_t word) const;
  static std::uint64_t parse_word(const std::string& text);

  static std::optional<std::string> check(std::uint32_t rho, const std::vector<std::uint64_t>& words);

 private:
  std::uint32_t rho_;
  std::vector<std::uint64_t> words_;
};

inline constexpr std::uint32_t kMaxCodeLength = 24;

BalancedCode balanced_code(std::uint32_t k, std::uint32_t rho, std::uint64_t seed);

enum class Acceptance { Reject, Weak, Strong };
const char* to_string(Acceptance a);

// Feige's k-prover protocol over a 3SAT-5 formula. A seed picks, for each of
// rho coordinates, a clause and a position in it (coordinate value
// 3 * clause + position, coordinate 0 most significant). Prover i receives the
// clause at coordinates where its code word has a 1 and the distinguished
// variable elsewhere.
//
// Query indices pack the received items mixed-radix in coordinate order
// (variable digits base n, clause digits base clause-count). Answers are
// 2*rho bits: rho/2 distinguished-variable bits, then rho/2 clause triples.
class KProverGame {
 public:
  static constexpr std::uint64_t kSeedBudget = std::uint64_t{1} << 24;

  KProverGame(Sat5Formula formula, BalancedCode code);

  const Sat5Formula& formula() const { return formula_; }
  const BalancedCode& code() const { return code_; }
  std::size_t prover_count() const { return code_.size(); }
  std::uint32_t rho() const { return code_.rho(); }
  std::uint64_t seed_count() const { return seed_count_; }
  std::uint64_t query_count() const { return query_count_; }
  std::uint32_t answer_bits() const { return 2 * rho(); }
  std::uint64_t answer_count() const { return std::uint64_t{1} << answer_bits(); }

  struct Coordinate {
    std::uint32_t clause;
    std::uint32_t position;
  };
  std::vector<Coordinate> decode_seed(std::uint64_t seed) const;
  std::uint32_t distinguished_variable(const std::vector<Coordinate>& coords, std::uint32_t t) const;

  std::uint64_t query_index(std::size_t prover, const std::vector<Coordinate>& coords) const;
  std::uint64_t query_index(std::size_t prover, std::uint64_t seed) const {
    return query_index(prover, decode_seed(seed));
  }

  // The rho-bit string (bit t = value of distinguished variable t) that a
  // prover's answer asserts on this seed.
  std::uint64_t induced_assignment(std::size_t prover, const std::vector<Coordinate>& coords,
                                   std::uint64_t answer) const;

  ProverStrategy strategy_from_assignment(std::size_t prover, const Assignment& assignment) const;

 private:
  Sat5Formula formula_;
  BalancedCode code_;
  std::uint64_t seed_count_ = 0;
  std::uint64_t query_count_ = 0;
};

// Throws InvalidArgument if a strategy is missing or lacks a query.
Acceptance evaluate_acceptance(const KProverGame& game, const std::vector<ProverStrategy>& strategies,
                               std::uint64_t seed);

}  // namespace gapcover
