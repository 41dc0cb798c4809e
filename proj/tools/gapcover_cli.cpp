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
// Command-line front end. Talks to the library only through gapcover.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapcover/gapcover.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitFailed = 1;  // a verification or completeness check failed
constexpr int kExitError = 3;   // the library reported an error

struct ArtifactDeleter {
  void operator()(gc_artifact* a) const { gc_artifact_free(a); }
};
using ArtifactPtr = std::unique_ptr<gc_artifact, ArtifactDeleter>;

struct StringDeleter {
  void operator()(char* s) const { gc_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(gc_status status) {
  if (status != GC_OK) throw CliError(gc_last_error());
}

ArtifactPtr load(const std::string& path) {
  gc_artifact* a = nullptr;
  check(gc_artifact_load(path.c_str(), &a));
  return ArtifactPtr(a);
}

void save(const gc_artifact* a, const std::string& path) { check(gc_artifact_save(a, path.c_str())); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw CliError("cannot write " + path);
}

std::string snake(std::string s) {
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap-reduction workbench for Set Cover"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gc_version()));

  // gen-formula
  auto* gen = app.add_subcommand("gen-formula", "Generate a random 3SAT-5 formula");
  std::uint32_t vars = 0;
  std::uint64_t seed = 0;
  std::string out_path, dimacs_path;
  gen->add_option("--vars", vars, "Variable count (multiple of 3)")->required();
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", out_path, "Artifact output path")->required();
  gen->add_option("--dimacs", dimacs_path, "Also write DIMACS here");

  // build-game
  auto* game = app.add_subcommand("build-game", "Build a proof-system or projection game");
  std::string game_type, formula_path;
  std::uint32_t provers = 2, rho = 2, a_count = 0, b_count = 0, d_a = 0, d_b = 0, sigma_a = 0, sigma_b = 0;
  bool planted = false;
  game->add_option("--type", game_type, "clause-variable | k-prover | projection")->required()
      ->check(CLI::IsMember({"clause-variable", "k-prover", "projection"}));
  game->add_option("--formula", formula_path, "Formula artifact (or .cnf DIMACS)");
  game->add_option("--seed", seed, "Seed for codes and random games")->required();
  game->add_option("--out", out_path, "Artifact output path")->required();
  game->add_option("--provers", provers, "k-prover: prover count");
  game->add_option("--rho", rho, "k-prover: repetition count (even)");
  game->add_option("--a-count", a_count, "projection: |A|");
  game->add_option("--b-count", b_count, "projection: |B|");
  game->add_option("--d-a", d_a, "projection: A-degree");
  game->add_option("--d-b", d_b, "projection: B-degree");
  game->add_option("--sigma-a", sigma_a, "projection: |Sigma_A|");
  game->add_option("--sigma-b", sigma_b, "projection: |Sigma_B|");
  game->add_flag("--planted", planted, "projection: plant a satisfying labeling");

  // build-gadget
  auto* gadget = app.add_subcommand("build-gadget", "Build and verify a combinatorial gadget");
  std::string gadget_type;
  std::uint32_t gn = 0, gk = 0, gb = 0, gm = 0, gd = 0, gL = 0;
  gadget->add_option("--type", gadget_type, "universal | special | anti-universal | partition")->required()
      ->check(CLI::IsMember({"universal", "special", "anti-universal", "partition"}));
  gadget->add_option("--seed", seed, "Sampling seed")->required();
  gadget->add_option("--out", out_path, "Artifact output path")->required();
  gadget->add_option("--n", gn, "universal / anti-universal: length");
  gadget->add_option("--k", gk, "strength, or parts per partition");
  gadget->add_option("--b", gb, "anti-universal: alphabet size");
  gadget->add_option("--m", gm, "special: number of sets");
  gadget->add_option("--d", gd, "special / partition: certified d");
  gadget->add_option("--L", gL, "partition: number of partitions");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Reduce a game and gadget to a Set Cover instance");
  std::string reduce_type, game_path, gadget_path, witness_out;
  std::uint32_t rd = 2, duplication = 1;
  reduce->add_option("--type", reduce_type, "ly | feige | moshkovitz")->required()
      ->check(CLI::IsMember({"ly", "feige", "moshkovitz"}));
  reduce->add_option("--game", game_path, "Game artifact")->required();
  reduce->add_option("--gadget", gadget_path, "Gadget artifact (ly, moshkovitz)");
  reduce->add_option("--seed", seed, "Seed for per-block partition systems")->required();
  reduce->add_option("--d", rd, "feige: certified d of the per-block systems");
  reduce->add_option("--duplication", duplication, "moshkovitz: copies per element");
  reduce->add_option("--out", out_path, "Instance output path")->required();
  reduce->add_option("--witness-out", witness_out, "Write the completeness witness cover here");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve a Set Cover instance");
  std::string instance_path, method = "exact";
  std::uint64_t budget = 100000000;
  solve->add_option("--instance", instance_path, "Instance artifact")->required();
  solve->add_option("--method", method, "greedy | exact")->check(CLI::IsMember({"greedy", "exact"}));
  solve->add_option("--budget", budget, "Exact search node budget");
  solve->add_option("--out", out_path, "Cover output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Re-verify an artifact, or a cover against an instance");
  std::string artifact_path, cover_path;
  verify->add_option("--artifact", artifact_path, "Artifact path")->required();
  verify->add_option("--cover", cover_path, "Cover file to check against an instance artifact");

  // report
  auto* report = app.add_subcommand("report", "Emit a CSV gap report for an instance");
  std::string witness_path;
  bool satisfiable = false, greedy_only = false;
  std::uint64_t row_seed = 0;
  report->add_option("--instance", instance_path, "Instance artifact")->required();
  report->add_option("--witness", witness_path, "Completeness witness cover");
  report->add_flag("--satisfiable", satisfiable, "Instance comes from the satisfiable side");
  report->add_flag("--greedy-only", greedy_only, "Skip the exact solver");
  report->add_option("--row-seed", row_seed, "Seed label written in the seed column");
  report->add_option("--out", out_path, "CSV output path (default stdout)");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Run a full pipeline from a JSON config");
  std::string config_path;
  pipeline->add_option("--config", config_path, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      gc_artifact* raw = nullptr;
      check(gc_gen_formula(vars, seed, &raw));
      ArtifactPtr f(raw);
      save(f.get(), out_path);
      if (!dimacs_path.empty()) {
        char* text = nullptr;
        check(gc_formula_to_dimacs(f.get(), 1, seed, &text));
        OwnedString owned(text);
        spit(dimacs_path, text);
      }
    } else if (*game) {
      json params = {{"type", snake(game_type)}};
      ArtifactPtr formula;
      if (game_type == "k-prover") {
        params["provers"] = provers;
        params["rho"] = rho;
      } else if (game_type == "projection") {
        params.update({{"a_count", a_count}, {"b_count", b_count}, {"d_a", d_a}, {"d_b", d_b},
                       {"sigma_a", sigma_a}, {"sigma_b", sigma_b}, {"planted", planted}});
      }
      if (game_type != "projection") {
        if (formula_path.empty()) throw CliError("--formula is required for " + game_type + " games");
        if (formula_path.size() > 4 && formula_path.substr(formula_path.size() - 4) == ".cnf") {
          gc_artifact* raw = nullptr;
          check(gc_formula_from_dimacs(slurp(formula_path).c_str(), &raw));
          formula.reset(raw);
        } else {
          formula = load(formula_path);
        }
      }
      gc_artifact* raw = nullptr;
      check(gc_build_game(formula.get(), params.dump().c_str(), seed, &raw));
      ArtifactPtr g(raw);
      save(g.get(), out_path);
    } else if (*gadget) {
      json params = {{"type", snake(gadget_type)}};
      if (gadget_type == "universal") params.update({{"n", gn}, {"k", gk}});
      if (gadget_type == "special") params.update({{"m", gm}, {"d", gd}});
      if (gadget_type == "anti-universal") params.update({{"n", gn}, {"k", gk}, {"b", gb}});
      if (gadget_type == "partition") params.update({{"L", gL}, {"k", gk}, {"d", gd}});
      gc_artifact* raw = nullptr;
      check(gc_build_gadget(params.dump().c_str(), seed, &raw));
      ArtifactPtr g(raw);
      save(g.get(), out_path);
    } else if (*reduce) {
      json params = {{"type", reduce_type}, {"d", rd}, {"duplication", duplication}};
      ArtifactPtr g = load(game_path);
      ArtifactPtr gd_art;
      if (!gadget_path.empty()) gd_art = load(gadget_path);
      gc_artifact* raw = nullptr;
      char* witness = nullptr;
      check(gc_reduce(g.get(), gd_art.get(), params.dump().c_str(), seed, &raw, &witness));
      ArtifactPtr inst(raw);
      OwnedString owned(witness);
      save(inst.get(), out_path);
      if (!witness_out.empty()) {
        if (witness == nullptr) throw CliError("no completeness witness is known for this input");
        spit(witness_out, witness);
      }
    } else if (*solve) {
      ArtifactPtr inst = load(instance_path);
      char* cover = nullptr;
      int optimal = 0;
      check(gc_solve(inst.get(), method.c_str(), budget, &cover, &optimal));
      OwnedString owned(cover);
      if (out_path.empty()) std::cout << cover;
      else spit(out_path, cover);
      if (method == "exact" && !optimal) std::cerr << "warning: node budget exhausted, cover may not be minimum\n";
    } else if (*verify) {
      ArtifactPtr a = load(artifact_path);
      if (!cover_path.empty()) {
        int ok = 0;
        std::uint32_t first = 0;
        check(gc_verify_cover(a.get(), slurp(cover_path).c_str(), &ok, &first));
        if (ok) std::cout << "ok: cover covers the universe\n";
        else std::cout << "fail: element " << first << " is uncovered\n";
        return ok ? 0 : kExitFailed;
      }
      int ok = 0;
      char* message = nullptr;
      check(gc_artifact_verify(a.get(), &ok, &message));
      OwnedString owned(message);
      std::cout << (ok ? "ok: " : "fail: ") << message << '\n';
      return ok ? 0 : kExitFailed;
    } else if (*report) {
      ArtifactPtr inst = load(instance_path);
      std::string witness;
      if (!witness_path.empty()) witness = slurp(witness_path);
      char* csv = nullptr;
      check(gc_report(inst.get(), witness_path.empty() ? nullptr : witness.c_str(), satisfiable, greedy_only,
                      row_seed, &csv));
      OwnedString owned(csv);
      if (out_path.empty()) std::cout << csv;
      else spit(out_path, csv);
    } else if (*pipeline) {
      int ok = 0;
      char* csv_path = nullptr;
      check(gc_run_pipeline(slurp(config_path).c_str(), &ok, &csv_path));
      OwnedString owned(csv_path);
      std::cout << (ok ? "completeness: pass" : "completeness: FAIL") << "\nreport: " << csv_path << '\n';
      return ok ? 0 : kExitFailed;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
