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
#include "gapcover/pipeline.hpp"

#include <cstdio>
#include <filesystem>

#include "gapcover/error.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

namespace {

template <typename T>
T param(const ojson& p, const char* name) {
  const auto it = p.find(name);
  if (it == p.end()) fail(ErrorCode::InvalidArgument, std::string("missing parameter '") + name + "'");
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::InvalidArgument, std::string("parameter '") + name + "' has the wrong type");
  }
}

template <typename T>
T param_or(const ojson& p, const char* name, T fallback) {
  return p.contains(name) ? param<T>(p, name) : fallback;
}

std::optional<Assignment> satisfying_assignment(const CnfFormula& f) {
  const MaxSatResult best = max_sat(f);
  if (best.best_count != f.clause_count()) return std::nullopt;
  return best.witness;
}

}  // namespace

Artifact stage_gen_formula(std::uint32_t num_vars, std::uint64_t seed) {
  const Sat5Formula f = random_3sat5(num_vars, seed);
  return to_artifact(f.base(), {{"generator", "random_3sat5"}, {"seed", seed}, {"sat5", true}});
}

Artifact stage_build_game(const std::optional<Artifact>& formula, const ojson& params, std::uint64_t seed) {
  const auto type = param<std::string>(params, "type");
  if (type == "projection") {
    const auto a_count = param<std::uint32_t>(params, "a_count");
    const auto b_count = param<std::uint32_t>(params, "b_count");
    const auto d_a = param<std::uint32_t>(params, "d_a");
    const auto d_b = param<std::uint32_t>(params, "d_b");
    const auto sigma_a = param<std::uint32_t>(params, "sigma_a");
    const auto sigma_b = param<std::uint32_t>(params, "sigma_b");
    const bool planted = param_or<bool>(params, "planted", false);
    ojson prov = {{"generator", planted ? "planted_biregular_game" : "random_biregular_game"}, {"seed", seed}};
    if (planted) {
      auto [pg, labeling] = planted_biregular_game(a_count, b_count, d_a, d_b, sigma_a, sigma_b, seed);
      return to_artifact(pg, labeling, std::move(prov));
    }
    return to_artifact(random_biregular_game(a_count, b_count, d_a, d_b, sigma_a, sigma_b, seed), std::nullopt,
                       std::move(prov));
  }
  require(formula.has_value(), "a " + type + " game needs a formula");
  const CnfFormula f = formula_from(*formula);
  ojson prov = {{"formula", formula->provenance}};
  if (type == "clause_variable") {
    (void)clause_variable_game(f);  // validates the formula shape
    return clause_variable_artifact(f, std::move(prov));
  }
  if (type == "k_prover") {
    const auto provers = param<std::uint32_t>(params, "provers");
    const auto rho = param<std::uint32_t>(params, "rho");
    prov["code_seed"] = seed;
    return to_artifact(KProverGame(Sat5Formula(f), balanced_code(provers, rho, seed)), std::move(prov));
  }
  fail(ErrorCode::InvalidArgument, "unknown game type '" + type + "'");
}

Artifact stage_build_gadget(const ojson& params, std::uint64_t seed) {
  const auto type = param<std::string>(params, "type");
  ojson prov = {{"seed", seed}};
  if (type == "universal")
    return to_artifact(build_universal(param<std::uint32_t>(params, "n"), param<std::uint32_t>(params, "k"), seed),
                       std::move(prov));
  if (type == "special")
    return to_artifact(special_from_universal(param<std::uint32_t>(params, "m"), param<std::uint32_t>(params, "d"), seed),
                       std::move(prov));
  if (type == "anti_universal")
    return to_artifact(build_anti_universal(param<std::uint32_t>(params, "n"), param<std::uint32_t>(params, "k"),
                                            param<std::uint32_t>(params, "b"), seed),
                       std::move(prov));
  if (type == "partition")
    return to_artifact(partition_from_anti_universal(param<std::uint32_t>(params, "L"), param<std::uint32_t>(params, "k"),
                                                     param<std::uint32_t>(params, "d"), seed),
                       std::move(prov));
  fail(ErrorCode::InvalidArgument, "unknown gadget type '" + type + "'");
}

ReduceOutput stage_reduce(const Artifact& game, const std::optional<Artifact>& gadget, const ojson& params,
                          std::uint64_t seed) {
  const auto type = param<std::string>(params, "type");
  ReduceOutput out;
  if (type == "ly") {
    require(gadget.has_value(), "the ly reduction needs a special set system");
    const TwoProverGame g = two_prover_game_from(game);
    const SpecialSetSystem sss = special_from(*gadget);
    LyInstanceMap map = ly_reduce(g, sss);
    if (game.subtype == "clause_variable") {
      const CnfFormula f = formula_from([&] {
        Artifact a = game;
        a.kind = "formula";
        a.subtype.clear();
        return a;
      }());
      if (auto assignment = satisfying_assignment(f)) {
        const auto strategies = clause_variable_strategies(f, *assignment);
        out.witness = ly_witness(map, strategies[0], strategies[1]);
        out.satisfiable_side = true;
      }
    }
    map.instance.provenance()["game"] = game.provenance;
    map.instance.provenance()["gadget"] = gadget->provenance;
    out.instance = to_artifact(map.instance);
    return out;
  }
  if (type == "feige") {
    const KProverGame g = k_prover_game_from(game);
    const auto d = param<std::uint32_t>(params, "d");
    FeigeInstanceMap map = feige_reduce(g, seed, std::uint32_t{1} << g.rho(), static_cast<std::uint32_t>(g.prover_count()), d);
    if (auto assignment = satisfying_assignment(g.formula().base())) {
      out.witness = feige_witness(map, g, *assignment);
      out.satisfiable_side = true;
    }
    out.block_offset = map.block_offset;
    out.provers = static_cast<std::uint32_t>(map.provers);
    map.instance.provenance()["game"] = game.provenance;
    out.instance = to_artifact(map.instance);
    return out;
  }
  if (type == "moshkovitz") {
    require(gadget.has_value(), "the moshkovitz reduction needs a partition system");
    const ProjectionGame pg = projection_game_from(game);
    const PartitionSystem ps = partition_from(*gadget);
    MoshkovitzInstanceMap map = moshkovitz_reduce(pg, ps, param_or<std::uint32_t>(params, "duplication", 1));
    if (auto planted = planted_labeling_from(game)) {
      out.witness = moshkovitz_witness(map, *planted);
      out.satisfiable_side = true;
    }
    map.instance.provenance()["game"] = game.provenance;
    map.instance.provenance()["gadget"] = gadget->provenance;
    out.instance = to_artifact(map.instance);
    return out;
  }
  fail(ErrorCode::InvalidArgument, "unknown reduction '" + type + "'");
}

// ---------------------------------------------------------------------------

namespace {

std::string ratio_cell(const std::optional<double>& r) {
  if (!r) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *r);
  return buf;
}

std::string opt_cell(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

ojson opt_json(const std::optional<std::size_t>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson ratio_json(const std::optional<double>& r) { return r ? ojson(ratio_cell(r)) : ojson(nullptr); }

}  // namespace

std::string render_csv(const std::vector<ReportRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) out += (i ? "," : "") + std::string(kReportColumns[i]);
  out += '\n';
  for (const ReportRow& row : rows) {
    const GapReport& r = row.report;
    out += row.pipeline + ',' + std::to_string(row.seed) + ',' + std::to_string(r.universe_size) + ',' +
           std::to_string(r.subset_count) + ',' + std::to_string(r.greedy_size) + ',' + opt_cell(r.exact_size) + ',' +
           (r.exact_size ? (r.exact_optimal ? "true" : "false") : "") + ',' + opt_cell(r.witness_size) + ',' +
           ratio_cell(r.ratio_exact_witness()) + ',' + ratio_cell(r.ratio_greedy_exact()) + ',' +
           (r.satisfiable_side ? "true" : "false") + ',' + (r.completeness_ok ? "true" : "false") + '\n';
  }
  return out;
}

Artifact report_artifact(const std::vector<ReportRow>& rows) {
  Artifact a;
  a.kind = "report";
  ojson columns = ojson::array();
  for (const char* c : kReportColumns) columns.push_back(c);
  a.fields["columns"] = std::move(columns);
  for (const ReportRow& row : rows) {
    const GapReport& r = row.report;
    ojson rec = ojson::object();
    rec["pipeline"] = row.pipeline;
    rec["seed"] = row.seed;
    rec["universe_size"] = r.universe_size;
    rec["subset_count"] = r.subset_count;
    rec["greedy_size"] = r.greedy_size;
    rec["exact_size"] = opt_json(r.exact_size);
    rec["exact_optimal"] = r.exact_size ? ojson(r.exact_optimal) : ojson(nullptr);
    rec["witness_size"] = opt_json(r.witness_size);
    rec["ratio_exact_witness"] = ratio_json(r.ratio_exact_witness());
    rec["ratio_greedy_exact"] = ratio_json(r.ratio_greedy_exact());
    rec["satisfiable_side"] = r.satisfiable_side;
    rec["completeness_ok"] = r.completeness_ok;
    rec["greedy_only"] = r.greedy_only;
    rec["provenance"] = r.provenance;
    a.records.push_back(std::move(rec));
  }
  return a;
}

namespace {

class Runner {
 public:
  explicit Runner(const ojson& config) : config_(config) {
    pipeline_ = param<std::string>(config, "pipeline");
    require(pipeline_ == "ly" || pipeline_ == "feige" || pipeline_ == "moshkovitz",
            "unknown pipeline '" + pipeline_ + "'");
    dir_ = param<std::string>(config, "output_dir");
    greedy_only_ = param_or<bool>(config, "greedy_only", pipeline_ == "feige");
    budget_ = param_or<std::uint64_t>(config, "node_budget", kExactNodeBudget);
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) fail(ErrorCode::Io, "cannot create output directory " + dir_ + ": " + ec.message());
  }

  PipelineResult run() {
    for (std::uint64_t seed : param<std::vector<std::uint64_t>>(config_, "seeds")) run_seed(seed);
    result_.csv_path = path(pipeline_ + "_report.csv");
    stage("report", result_.csv_path, [&] { write_file(result_.csv_path, render_csv(result_.rows)); });
    result_.report_path = path(pipeline_ + "_report.jsonl");
    persist("report", result_.report_path, report_artifact(result_.rows));
    return std::move(result_);
  }

 private:
  std::string path(const std::string& name) const { return (std::filesystem::path(dir_) / name).string(); }

  template <typename Fn>
  auto stage(const std::string& name, const std::string& artifact_path, Fn fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.code(), "stage " + name + " failed (" + artifact_path + "): " + e.what());
    }
  }

  // Writes, reloads, and re-verifies; a persisted artifact that does not
  // round-trip or verify aborts the run.
  void persist(const std::string& stage_name, const std::string& file, const Artifact& artifact) {
    stage(stage_name, file, [&] {
      const std::string text = serialize(artifact);
      write_file(file, text);
      const Artifact back = load_artifact(file);
      if (serialize(back) != text) fail(ErrorCode::Internal, "artifact does not round-trip");
      const ArtifactVerdict v = verify_artifact(back);
      if (!v.ok) fail(ErrorCode::Internal, "artifact fails verification: " + v.message);
    });
    result_.artifacts.push_back(file);
  }

  void run_seed(std::uint64_t seed) {
    const std::string tag = pipeline_ + "_" + std::to_string(seed);
    const std::string game_path = path(tag + "_game.jsonl");
    const std::string gadget_path = path(tag + "_gadget.jsonl");
    const std::string instance_path = path(tag + "_instance.jsonl");
    Artifact game;
    std::optional<Artifact> gadget;

    if (pipeline_ == "moshkovitz") {
      ojson gp = {{"type", "projection"},
                  {"a_count", param<std::uint32_t>(config_, "a_count")},
                  {"b_count", param<std::uint32_t>(config_, "b_count")},
                  {"d_a", param<std::uint32_t>(config_, "d_a")},
                  {"d_b", param<std::uint32_t>(config_, "d_b")},
                  {"sigma_a", param<std::uint32_t>(config_, "sigma_a")},
                  {"sigma_b", param<std::uint32_t>(config_, "sigma_b")},
                  {"planted", param_or<bool>(config_, "planted", true)}};
      game = stage("games", game_path, [&] { return stage_build_game(std::nullopt, gp, seed); });
      persist("games", game_path, game);
      ojson pp = {{"type", "partition"}, {"L", gp["sigma_b"]}, {"k", gp["d_b"]}, {"d", param<std::uint32_t>(config_, "d")}};
      const auto gadget_seed = derive_seed(param<std::uint64_t>(config_, "gadget_seed"), seed);
      gadget = stage("gadgets", gadget_path, [&] { return stage_build_gadget(pp, gadget_seed); });
      persist("gadgets", gadget_path, *gadget);
    } else {
      const std::string formula_path = path(tag + "_formula.jsonl");
      const auto n = param<std::uint32_t>(config_, "n");
      const Artifact formula = stage("formulas", formula_path, [&] { return stage_gen_formula(n, seed); });
      persist("formulas", formula_path, formula);
      if (pipeline_ == "ly") {
        game = stage("games", game_path, [&] { return stage_build_game(formula, {{"type", "clause_variable"}}, seed); });
        persist("games", game_path, game);
        ojson sp = {{"type", "special"}, {"m", 2}, {"d", param<std::uint32_t>(config_, "d")}};
        const auto gadget_seed = param<std::uint64_t>(config_, "gadget_seed");
        gadget = stage("gadgets", gadget_path, [&] { return stage_build_gadget(sp, gadget_seed); });
        persist("gadgets", gadget_path, *gadget);
      } else {
        ojson kp = {{"type", "k_prover"}, {"provers", param<std::uint32_t>(config_, "k")},
                    {"rho", param<std::uint32_t>(config_, "rho")}};
        const auto code_seed = param<std::uint64_t>(config_, "code_seed");
        game = stage("games", game_path, [&] { return stage_build_game(formula, kp, code_seed); });
        persist("games", game_path, game);
      }
    }

    ojson rp = {{"type", pipeline_}};
    std::uint64_t reduce_seed = 0;
    if (pipeline_ == "feige") {
      rp["d"] = param<std::uint32_t>(config_, "d");
      reduce_seed = derive_seed(param<std::uint64_t>(config_, "ps_seed"), seed);
    }
    if (pipeline_ == "moshkovitz") rp["duplication"] = param_or<std::uint32_t>(config_, "duplication", 1);
    const ReduceOutput reduced = stage("reduce", instance_path, [&] { return stage_reduce(game, gadget, rp, reduce_seed); });
    persist("reduce", instance_path, reduced.instance);

    const SetCoverInstance inst = instance_from(reduced.instance);
    if (reduced.witness) {
      const std::string witness_path = path(tag + "_witness.json");
      stage("reduce", witness_path, [&] { write_file(witness_path, serialize_cover(*reduced.witness)); });
      result_.artifacts.push_back(witness_path);
    }
    GapReport report = stage("solve", instance_path, [&] {
      return gap_report(inst, reduced.witness, reduced.satisfiable_side, greedy_only_, budget_);
    });

    stage("verify", instance_path, [&] {
      if (!reduced.satisfiable_side) return;
      bool ok = report.completeness_ok;
      if (pipeline_ == "ly" && report.exact_size && report.exact_optimal)
        ok = ok && report.exact_size == report.witness_size;
      if (pipeline_ == "feige" && reduced.witness) {
        for (std::uint32_t hits : block_hits(inst, reduced.block_offset, *reduced.witness))
          ok = ok && hits == reduced.provers;
      }
      report.completeness_ok = ok;
    });
    if (reduced.satisfiable_side && !report.completeness_ok) result_.completeness_ok = false;
    result_.rows.push_back(ReportRow{pipeline_, seed, std::move(report)});
  }

  const ojson& config_;
  std::string pipeline_;
  std::string dir_;
  bool greedy_only_ = false;
  std::uint64_t budget_ = kExactNodeBudget;
  PipelineResult result_;
};

}  // namespace

PipelineResult run_pipeline(const ojson& config) { return Runner(config).run(); }

}  // namespace gapcover
