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
#include "gapcover/gapcover.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "gapcover/artifact.hpp"
#include "gapcover/error.hpp"
#include "gapcover/pipeline.hpp"

struct gc_artifact {
  gapcover::Artifact value;
};

namespace {

thread_local std::string g_last_error;

gc_status to_status(gapcover::ErrorCode code) {
  using gapcover::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return GC_INVALID_ARGUMENT;
    case ErrorCode::Parse: return GC_PARSE;
    case ErrorCode::BudgetExceeded: return GC_BUDGET_EXCEEDED;
    case ErrorCode::RetriesExhausted: return GC_RETRIES_EXHAUSTED;
    case ErrorCode::Io: return GC_IO;
    case ErrorCode::Schema: return GC_SCHEMA;
    case ErrorCode::Internal: return GC_INTERNAL;
  }
  return GC_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's message.
template <typename Fn>
gc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GC_OK;
  } catch (const gapcover::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GC_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GC_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require_ptr(const void* p, const char* name) {
  gapcover::require(p != nullptr, std::string(name) + " must not be NULL");
}

gapcover::ojson parse_params(const char* text) {
  require_ptr(text, "params_json");
  try {
    return gapcover::ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    gapcover::fail(gapcover::ErrorCode::Parse, std::string("params: ") + e.what());
  }
}

gc_artifact* wrap(gapcover::Artifact a) { return new gc_artifact{std::move(a)}; }

}  // namespace

extern "C" {

const char* gc_last_error(void) { return g_last_error.c_str(); }

const char* gc_version(void) { return "1.0.0"; }

void gc_string_free(char* s) { std::free(s); }

void gc_artifact_free(gc_artifact* artifact) { delete artifact; }

gc_status gc_artifact_load(const char* path, gc_artifact** out) {
  return guarded([&] {
    require_ptr(path, "path");
    require_ptr(out, "out");
    *out = wrap(gapcover::load_artifact(path));
  });
}

gc_status gc_artifact_parse(const char* text, gc_artifact** out) {
  return guarded([&] {
    require_ptr(text, "text");
    require_ptr(out, "out");
    *out = wrap(gapcover::parse_artifact(text));
  });
}

gc_status gc_artifact_save(const gc_artifact* artifact, const char* path) {
  return guarded([&] {
    require_ptr(artifact, "artifact");
    require_ptr(path, "path");
    gapcover::save_artifact(artifact->value, path);
  });
}

gc_status gc_artifact_serialize(const gc_artifact* artifact, char** out) {
  return guarded([&] {
    require_ptr(artifact, "artifact");
    require_ptr(out, "out");
    *out = dup_string(gapcover::serialize(artifact->value));
  });
}

gc_status gc_artifact_kind(const gc_artifact* artifact, char** out) {
  return guarded([&] {
    require_ptr(artifact, "artifact");
    require_ptr(out, "out");
    const auto& a = artifact->value;
    *out = dup_string(a.subtype.empty() ? a.kind : a.kind + "/" + a.subtype);
  });
}

gc_status gc_artifact_verify(const gc_artifact* artifact, int* ok, char** message) {
  return guarded([&] {
    require_ptr(artifact, "artifact");
    require_ptr(ok, "ok");
    const auto verdict = gapcover::verify_artifact(artifact->value);
    *ok = verdict.ok ? 1 : 0;
    if (message != nullptr) *message = dup_string(verdict.message);
  });
}

gc_status gc_gen_formula(uint32_t num_vars, uint64_t seed, gc_artifact** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = wrap(gapcover::stage_gen_formula(num_vars, seed));
  });
}

gc_status gc_formula_from_dimacs(const char* text, gc_artifact** out) {
  return guarded([&] {
    require_ptr(text, "text");
    require_ptr(out, "out");
    gapcover::ojson prov = gapcover::ojson::object();
    if (auto seed = gapcover::dimacs_seed(text)) prov["seed"] = *seed;
    *out = wrap(gapcover::to_artifact(gapcover::parse_dimacs(text), std::move(prov)));
  });
}

gc_status gc_formula_to_dimacs(const gc_artifact* formula, int with_seed, uint64_t seed, char** out) {
  return guarded([&] {
    require_ptr(formula, "formula");
    require_ptr(out, "out");
    const auto f = gapcover::formula_from(formula->value);
    *out = dup_string(gapcover::emit_dimacs(f, with_seed ? std::optional<std::uint64_t>(seed) : std::nullopt));
  });
}

gc_status gc_build_game(const gc_artifact* formula, const char* params_json, uint64_t seed, gc_artifact** out) {
  return guarded([&] {
    require_ptr(out, "out");
    std::optional<gapcover::Artifact> f;
    if (formula != nullptr) f = formula->value;
    *out = wrap(gapcover::stage_build_game(f, parse_params(params_json), seed));
  });
}

gc_status gc_build_gadget(const char* params_json, uint64_t seed, gc_artifact** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = wrap(gapcover::stage_build_gadget(parse_params(params_json), seed));
  });
}

gc_status gc_reduce(const gc_artifact* game, const gc_artifact* gadget, const char* params_json, uint64_t seed,
                    gc_artifact** instance, char** witness_json) {
  return guarded([&] {
    require_ptr(game, "game");
    require_ptr(instance, "instance");
    std::optional<gapcover::Artifact> g;
    if (gadget != nullptr) g = gadget->value;
    auto out = gapcover::stage_reduce(game->value, g, parse_params(params_json), seed);
    if (witness_json != nullptr)
      *witness_json = out.witness ? dup_string(gapcover::serialize_cover(*out.witness)) : nullptr;
    *instance = wrap(std::move(out.instance));
  });
}

gc_status gc_solve(const gc_artifact* instance, const char* method, uint64_t node_budget, char** cover_json,
                   int* optimal) {
  return guarded([&] {
    require_ptr(instance, "instance");
    require_ptr(method, "method");
    require_ptr(cover_json, "cover_json");
    const auto inst = gapcover::instance_from(instance->value);
    const std::string m = method;
    gapcover::Cover cover;
    bool exact_optimal = false;
    if (m == "greedy") {
      cover = gapcover::greedy_cover(inst);
    } else if (m == "exact") {
      auto r = gapcover::exact_cover(inst, std::nullopt, node_budget == 0 ? gapcover::kExactNodeBudget : node_budget);
      cover = std::move(r.cover);
      exact_optimal = r.optimal;
    } else {
      gapcover::fail(gapcover::ErrorCode::InvalidArgument, "unknown method '" + m + "'");
    }
    *cover_json = dup_string(gapcover::serialize_cover(cover));
    if (optimal != nullptr) *optimal = exact_optimal ? 1 : 0;
  });
}

gc_status gc_verify_cover(const gc_artifact* instance, const char* cover_json, int* ok, uint32_t* first_uncovered) {
  return guarded([&] {
    require_ptr(instance, "instance");
    require_ptr(cover_json, "cover_json");
    require_ptr(ok, "ok");
    const auto inst = gapcover::instance_from(instance->value);
    const auto verdict = gapcover::verify_cover(inst, gapcover::parse_cover(cover_json));
    *ok = verdict.ok ? 1 : 0;
    if (first_uncovered != nullptr && verdict.first_uncovered) *first_uncovered = *verdict.first_uncovered;
  });
}

gc_status gc_report(const gc_artifact* instance, const char* witness_json, int satisfiable_side, int greedy_only,
                    uint64_t seed, char** csv) {
  return guarded([&] {
    require_ptr(instance, "instance");
    require_ptr(csv, "csv");
    const auto inst = gapcover::instance_from(instance->value);
    std::optional<gapcover::Cover> witness;
    if (witness_json != nullptr) witness = gapcover::parse_cover(witness_json);
    gapcover::GapReport r = gapcover::gap_report(inst, witness, satisfiable_side != 0, greedy_only != 0);
    *csv = dup_string(gapcover::render_csv({gapcover::ReportRow{r.reduction, seed, std::move(r)}}));
  });
}

gc_status gc_run_pipeline(const char* config_json, int* completeness_ok, char** csv_path) {
  return guarded([&] {
    require_ptr(completeness_ok, "completeness_ok");
    const auto result = gapcover::run_pipeline(parse_params(config_json));
    *completeness_ok = result.completeness_ok ? 1 : 0;
    if (csv_path != nullptr) *csv_path = dup_string(result.csv_path);
  });
}

}  // extern "C"
