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
#include "gapcover/artifact.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gapcover/error.hpp"

namespace gapcover {

namespace {

const std::set<std::string, std::less<>> kKinds = {"formula", "game", "set_system", "projection_game", "instance",
                                                   "report"};
const std::set<std::string, std::less<>> kReserved = {"format", "schema_version", "kind", "subtype", "provenance",
                                                      "records"};

[[noreturn]] void schema_error(const std::string& what) { fail(ErrorCode::Schema, what); }

void expect(const Artifact& a, std::string_view kind, std::string_view subtype) {
  if (a.kind != kind || a.subtype != subtype)
    schema_error("expected a " + std::string(kind) + (subtype.empty() ? "" : "/" + std::string(subtype)) +
                 " artifact, found " + a.kind + (a.subtype.empty() ? "" : "/" + a.subtype));
}

template <typename T>
T field(const Artifact& a, const char* name) {
  const auto it = a.fields.find(name);
  if (it == a.fields.end()) schema_error(a.kind + " header lacks field '" + name + "'");
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    schema_error(a.kind + " header field '" + name + "' has the wrong type");
  }
}

template <typename T>
T member(const ojson& record, const char* name, std::size_t index) {
  const auto it = record.find(name);
  if (it == record.end()) schema_error("record " + std::to_string(index) + " lacks '" + name + "'");
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception&) {
    schema_error("record " + std::to_string(index) + " field '" + name + "' has the wrong type");
  }
}

Artifact make(std::string kind, std::string subtype, ojson provenance) {
  Artifact a;
  a.kind = std::move(kind);
  a.subtype = std::move(subtype);
  a.provenance = provenance.is_null() ? ojson::object() : std::move(provenance);
  return a;
}

std::vector<ojson> clause_records(const CnfFormula& f) {
  std::vector<ojson> out;
  for (const Clause& c : f.clauses()) {
    ojson lits = ojson::array();
    for (const Literal& l : c) lits.push_back(l.to_dimacs());
    out.push_back({{"clause", std::move(lits)}});
  }
  return out;
}

CnfFormula clauses_from(const Artifact& a) {
  const auto num_vars = field<std::uint32_t>(a, "num_vars");
  const auto count = field<std::size_t>(a, "clause_count");
  if (count != a.records.size())
    schema_error("header declares " + std::to_string(count) + " clauses, found " + std::to_string(a.records.size()));
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    Clause c;
    for (std::int64_t v : member<std::vector<std::int64_t>>(a.records[i], "clause", i)) {
      if (v == 0) schema_error("clause " + std::to_string(i) + " contains literal 0");
      c.push_back(Literal::from_dimacs(v));
    }
    clauses.push_back(std::move(c));
  }
  return CnfFormula(num_vars, std::move(clauses));
}

std::string bit_string(std::uint64_t bits, std::uint32_t n) {
  std::string s(n, '0');
  for (std::uint32_t i = 0; i < n; ++i)
    if ((bits >> i) & 1U) s[i] = '1';
  return s;
}

std::uint64_t parse_bits(const std::string& s, std::uint32_t n, std::size_t index) {
  if (s.size() != n) schema_error("string " + std::to_string(index) + " has length " + std::to_string(s.size()));
  std::uint64_t bits = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (s[i] != '0' && s[i] != '1') schema_error("string " + std::to_string(index) + " is not binary");
    if (s[i] == '1') bits |= std::uint64_t{1} << i;
  }
  return bits;
}

}  // namespace

std::string serialize(const Artifact& artifact) {
  ojson header = ojson::object();
  header["format"] = kArtifactFormat;
  header["schema_version"] = kSchemaVersion;
  header["kind"] = artifact.kind;
  if (!artifact.subtype.empty()) header["subtype"] = artifact.subtype;
  for (const auto& [key, value] : artifact.fields.items()) header[key] = value;
  header["provenance"] = artifact.provenance;
  header["records"] = artifact.records.size();
  std::string out = header.dump();
  out += '\n';
  for (const ojson& r : artifact.records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

Artifact parse_artifact(std::string_view text) {
  std::vector<ojson> lines;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.empty()) continue;
    try {
      lines.push_back(ojson::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (lines.empty()) schema_error("artifact is empty");
  const ojson& header = lines.front();
  if (!header.is_object() || header.value("format", std::string()) != kArtifactFormat)
    schema_error("first line is not an artifact header");
  if (!header.contains("schema_version") || !header["schema_version"].is_number_integer())
    schema_error("header lacks schema_version");
  const int version = header["schema_version"].get<int>();
  if (version != kSchemaVersion)
    schema_error("unsupported schema_version " + std::to_string(version) + " (this build reads " +
                 std::to_string(kSchemaVersion) + ")");
  Artifact a;
  a.kind = header.value("kind", std::string());
  if (!kKinds.contains(a.kind)) schema_error("unknown artifact kind '" + a.kind + "'");
  a.subtype = header.value("subtype", std::string());
  if (header.contains("provenance")) a.provenance = header["provenance"];
  for (const auto& [key, value] : header.items())
    if (!kReserved.contains(key)) a.fields[key] = value;
  a.records.assign(lines.begin() + 1, lines.end());
  if (!header.contains("records") || header["records"] != a.records.size())
    schema_error("header record count does not match the " + std::to_string(a.records.size()) + " records present");
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << contents;
  if (!out) fail(ErrorCode::Io, "write to " + path + " failed");
}

Artifact load_artifact(const std::string& path) { return parse_artifact(read_file(path)); }

void save_artifact(const Artifact& artifact, const std::string& path) { write_file(path, serialize(artifact)); }

// ---------------------------------------------------------------------------

Artifact to_artifact(const CnfFormula& formula, ojson provenance) {
  Artifact a = make("formula", "", std::move(provenance));
  a.fields["num_vars"] = formula.num_vars();
  a.fields["clause_count"] = formula.clause_count();
  a.records = clause_records(formula);
  return a;
}

CnfFormula formula_from(const Artifact& artifact) {
  expect(artifact, "formula", "");
  return clauses_from(artifact);
}

Artifact clause_variable_artifact(const CnfFormula& formula, ojson provenance) {
  Artifact a = to_artifact(formula, std::move(provenance));
  a.kind = "game";
  a.subtype = "clause_variable";
  return a;
}

Artifact to_artifact(const KProverGame& game, ojson provenance) {
  Artifact a = to_artifact(game.formula().base(), std::move(provenance));
  a.kind = "game";
  a.subtype = "k_prover";
  a.fields["rho"] = game.rho();
  ojson code = ojson::array();
  for (std::size_t i = 0; i < game.code().size(); ++i) code.push_back(game.code().word_string(i));
  a.fields["code"] = std::move(code);
  return a;
}

Artifact to_artifact(const TwoProverGame& game, ojson provenance) {
  Artifact a = make("game", "two_prover", std::move(provenance));
  a.fields["seeds"] = game.seed_count();
  a.fields["query_counts"] = {game.query_count(0), game.query_count(1)};
  a.fields["answer_counts"] = {game.answer_count(0), game.answer_count(1)};
  a.fields["functional"] = game.has_functional_answer();
  for (std::uint64_t r = 0; r < game.seed_count(); ++r) {
    ojson accept = ojson::array();
    for (std::uint64_t a1 = 0; a1 < game.answer_count(0); ++a1)
      for (std::uint64_t a2 = 0; a2 < game.answer_count(1); ++a2)
        if (game.accepts(r, a1, a2)) accept.push_back({a1, a2});
    a.records.push_back({{"seed", r}, {"queries", {game.query(r, 0), game.query(r, 1)}}, {"accept", std::move(accept)}});
  }
  return a;
}

TwoProverGame two_prover_game_from(const Artifact& artifact) {
  if (artifact.kind == "game" && artifact.subtype == "clause_variable") return clause_variable_game(clauses_from(artifact));
  expect(artifact, "game", "two_prover");
  const auto seeds = field<std::uint64_t>(artifact, "seeds");
  const auto qc = field<std::array<std::uint32_t, 2>>(artifact, "query_counts");
  const auto ac = field<std::array<std::uint64_t, 2>>(artifact, "answer_counts");
  const auto functional = field<bool>(artifact, "functional");
  if (seeds != artifact.records.size()) schema_error("seed count does not match the records");
  const std::uint64_t cells = sat_mul(sat_mul(seeds, ac[0]), ac[1]);
  if (cells > (std::uint64_t{1} << 31)) schema_error("acceptance table too large");
  std::vector<SeedQueries> queries;
  boost::dynamic_bitset<> accept(cells);
  for (std::size_t r = 0; r < artifact.records.size(); ++r) {
    const auto& rec = artifact.records[r];
    if (member<std::uint64_t>(rec, "seed", r) != r) schema_error("record " + std::to_string(r) + " is out of order");
    queries.push_back(member<SeedQueries>(rec, "queries", r));
    for (const auto& pair : member<std::vector<std::array<std::uint64_t, 2>>>(rec, "accept", r)) {
      require(pair[0] < ac[0] && pair[1] < ac[1], "accepting pair out of range in seed " + std::to_string(r));
      accept.set((r * ac[0] + pair[0]) * ac[1] + pair[1]);
    }
  }
  return TwoProverGame(std::move(queries), qc, ac, std::move(accept), functional);
}

KProverGame k_prover_game_from(const Artifact& artifact) {
  expect(artifact, "game", "k_prover");
  const auto rho = field<std::uint32_t>(artifact, "rho");
  std::vector<std::uint64_t> words;
  for (const auto& w : field<std::vector<std::string>>(artifact, "code")) {
    if (w.size() != rho) schema_error("code word '" + w + "' does not have length rho");
    words.push_back(BalancedCode::parse_word(w));
  }
  return KProverGame(Sat5Formula(clauses_from(artifact)), BalancedCode(rho, std::move(words)));
}

// ---------------------------------------------------------------------------

Artifact to_artifact(const UniversalSet& set, ojson provenance) {
  Artifact a = make("set_system", "universal", std::move(provenance));
  a.fields["n"] = set.n;
  a.fields["k"] = set.k;
  for (std::uint64_t s : set.strings) a.records.push_back({{"string", bit_string(s, set.n)}});
  return a;
}

UniversalSet universal_from(const Artifact& artifact) {
  expect(artifact, "set_system", "universal");
  UniversalSet set;
  set.n = field<std::uint32_t>(artifact, "n");
  set.k = field<std::uint32_t>(artifact, "k");
  if (set.n > 64) schema_error("universal sets support n <= 64");
  for (std::size_t i = 0; i < artifact.records.size(); ++i)
    set.strings.push_back(parse_bits(member<std::string>(artifact.records[i], "string", i), set.n, i));
  return set;
}

Artifact to_artifact(const SpecialSetSystem& sys, ojson provenance) {
  Artifact a = make("set_system", "special", std::move(provenance));
  a.fields["universe_size"] = sys.universe_size;
  a.fields["m"] = sys.m();
  a.fields["certified_d"] = sys.certified_d;
  a.fields["base_strings"] = sys.base_strings;
  for (const auto& set : sys.sets) {
    ojson elems = ojson::array();
    for (auto b = set.find_first(); b != boost::dynamic_bitset<>::npos; b = set.find_next(b)) elems.push_back(b);
    a.records.push_back({{"set", std::move(elems)}});
  }
  return a;
}

SpecialSetSystem special_from(const Artifact& artifact) {
  expect(artifact, "set_system", "special");
  SpecialSetSystem sys;
  sys.universe_size = field<std::uint32_t>(artifact, "universe_size");
  sys.certified_d = field<std::uint32_t>(artifact, "certified_d");
  sys.base_strings = field<std::vector<std::uint64_t>>(artifact, "base_strings");
  if (field<std::size_t>(artifact, "m") != artifact.records.size()) schema_error("set count does not match m");
  for (std::size_t i = 0; i < artifact.records.size(); ++i) {
    boost::dynamic_bitset<> set(sys.universe_size);
    for (std::uint32_t b : member<std::vector<std::uint32_t>>(artifact.records[i], "set", i)) {
      require(b < sys.universe_size, "special set " + std::to_string(i) + " has element " + std::to_string(b) +
                                         " outside the universe");
      set.set(b);
    }
    sys.sets.push_back(std::move(set));
  }
  return sys;
}

Artifact to_artifact(const AntiUniversalSet& set, ojson provenance) {
  Artifact a = make("set_system", "anti_universal", std::move(provenance));
  a.fields["n"] = set.n;
  a.fields["k"] = set.k;
  a.fields["b"] = set.b;
  for (const auto& f : set.functions) a.records.push_back({{"function", f}});
  return a;
}

AntiUniversalSet anti_universal_from(const Artifact& artifact) {
  expect(artifact, "set_system", "anti_universal");
  AntiUniversalSet set;
  set.n = field<std::uint32_t>(artifact, "n");
  set.k = field<std::uint32_t>(artifact, "k");
  set.b = field<std::uint32_t>(artifact, "b");
  for (std::size_t i = 0; i < artifact.records.size(); ++i) {
    auto f = member<std::vector<std::uint32_t>>(artifact.records[i], "function", i);
    require(f.size() == set.n, "function " + std::to_string(i) + " does not have n values");
    for (std::uint32_t v : f) require(v < set.b, "function " + std::to_string(i) + " leaves [0, b)");
    set.functions.push_back(std::move(f));
  }
  return set;
}

Artifact to_artifact(const PartitionSystem& ps, ojson provenance) {
  Artifact a = make("set_system", "partition", std::move(provenance));
  a.fields["m"] = ps.m;
  a.fields["L"] = ps.L;
  a.fields["k"] = ps.k;
  a.fields["certified_d"] = ps.certified_d;
  a.fields["element_functions"] = ps.element_functions;
  for (std::size_t j = 0; j < ps.partitions.size(); ++j)
    a.records.push_back({{"partition", j}, {"parts", ps.partitions[j]}});
  return a;
}

PartitionSystem partition_from(const Artifact& artifact) {
  expect(artifact, "set_system", "partition");
  PartitionSystem ps;
  ps.m = field<std::uint32_t>(artifact, "m");
  ps.L = field<std::uint32_t>(artifact, "L");
  ps.k = field<std::uint32_t>(artifact, "k");
  ps.certified_d = field<std::uint32_t>(artifact, "certified_d");
  ps.element_functions = field<std::vector<std::vector<std::uint32_t>>>(artifact, "element_functions");
  for (std::size_t j = 0; j < artifact.records.size(); ++j) {
    if (member<std::size_t>(artifact.records[j], "partition", j) != j)
      schema_error("partition record " + std::to_string(j) + " is out of order");
    ps.partitions.push_back(member<std::vector<std::vector<std::uint32_t>>>(artifact.records[j], "parts", j));
  }
  return ps;
}

// ---------------------------------------------------------------------------

Artifact to_artifact(const ProjectionGame& pg, const std::optional<Labeling>& planted, ojson provenance) {
  Artifact a = make("projection_game", "", std::move(provenance));
  a.fields["a_count"] = pg.a_count();
  a.fields["b_count"] = pg.b_count();
  a.fields["sigma_a"] = pg.sigma_a();
  a.fields["sigma_b"] = pg.sigma_b();
  a.fields["edge_count"] = pg.edges().size();
  if (planted) a.fields["planted"] = {{"labels_a", planted->labels_a}, {"labels_b", planted->labels_b}};
  for (const ProjectionEdge& e : pg.edges())
    a.records.push_back({{"a", e.a}, {"b", e.b}, {"slot", e.slot}, {"projection", e.projection}});
  return a;
}

ProjectionGame projection_game_from(const Artifact& artifact) {
  expect(artifact, "projection_game", "");
  if (field<std::size_t>(artifact, "edge_count") != artifact.records.size())
    schema_error("edge count does not match the records");
  std::vector<ProjectionEdge> edges;
  for (std::size_t i = 0; i < artifact.records.size(); ++i) {
    const auto& r = artifact.records[i];
    edges.push_back(ProjectionEdge{member<std::uint32_t>(r, "a", i), member<std::uint32_t>(r, "b", i),
                                   member<std::uint32_t>(r, "slot", i),
                                   member<std::vector<std::uint32_t>>(r, "projection", i)});
  }
  return ProjectionGame(field<std::uint32_t>(artifact, "a_count"), field<std::uint32_t>(artifact, "b_count"),
                        field<std::uint32_t>(artifact, "sigma_a"), field<std::uint32_t>(artifact, "sigma_b"),
                        std::move(edges));
}

std::optional<Labeling> planted_labeling_from(const Artifact& artifact) {
  expect(artifact, "projection_game", "");
  const auto it = artifact.fields.find("planted");
  if (it == artifact.fields.end()) return std::nullopt;
  try {
    return Labeling{(*it)["labels_a"].get<std::vector<std::uint32_t>>(),
                    (*it)["labels_b"].get<std::vector<std::uint32_t>>()};
  } catch (const nlohmann::json::exception&) {
    schema_error("planted labeling is malformed");
  }
}

// ---------------------------------------------------------------------------

Artifact to_artifact(const SetCoverInstance& inst) {
  Artifact a = make("instance", "", inst.provenance());
  a.fields["universe_size"] = inst.universe_size();
  a.fields["subset_count"] = inst.subset_count();
  for (const Subset& s : inst.subsets()) a.records.push_back({{"subset", s}});
  return a;
}

SetCoverInstance instance_from(const Artifact& artifact) {
  expect(artifact, "instance", "");
  if (field<std::size_t>(artifact, "subset_count") != artifact.records.size())
    schema_error("subset count does not match the records");
  std::vector<Subset> subsets;
  for (std::size_t i = 0; i < artifact.records.size(); ++i)
    subsets.push_back(member<Subset>(artifact.records[i], "subset", i));
  return SetCoverInstance(field<std::uint32_t>(artifact, "universe_size"), std::move(subsets), artifact.provenance);
}

// ---------------------------------------------------------------------------

namespace {

ArtifactVerdict check_artifact(const Artifact& a) {
  ArtifactVerdict v{true, a.kind, "ok"};
  auto reject = [&](std::string why) {
    v.ok = false;
    v.message = std::move(why);
    return v;
  };
  if (a.kind == "formula") {
    const CnfFormula f = formula_from(a);
    if (a.provenance.value("sat5", false))
      if (auto why = Sat5Formula::check(f)) return reject(*why);
    v.message = std::to_string(f.num_vars()) + " variables, " + std::to_string(f.clause_count()) + " clauses";
  } else if (a.kind == "game") {
    if (a.subtype == "k_prover") {
      const KProverGame g = k_prover_game_from(a);
      v.message = std::to_string(g.prover_count()) + " provers, " + std::to_string(g.seed_count()) + " seeds";
    } else {
      const TwoProverGame g = two_prover_game_from(a);
      v.message = std::to_string(g.seed_count()) + " seeds";
    }
  } else if (a.kind == "set_system") {
    if (a.subtype == "universal") {
      const UniversalSet s = universal_from(a);
      const auto verdict = verify_universal(s, s.k);
      if (!verdict) {
        std::string w;
        for (std::uint32_t i : verdict.counterexample->window) w += (w.empty() ? "" : ",") + std::to_string(i);
        return reject("window {" + w + "} misses pattern " + verdict.counterexample->missing);
      }
    } else if (a.subtype == "special") {
      const SpecialSetSystem s = special_from(a);
      const auto verdict = verify_special(s, s.certified_d);
      if (!verdict) {
        std::string c;
        for (const auto& o : verdict.covering)
          c += (c.empty() ? "" : ",") + std::string(o.complement ? "~C" : "C") + std::to_string(o.index);
        return reject("oriented collection {" + c + "} covers the universe");
      }
    } else if (a.subtype == "anti_universal") {
      const AntiUniversalSet s = anti_universal_from(a);
      const auto verdict = verify_anti_universal(s, s.k);
      if (!verdict) {
        std::string u, t;
        for (std::uint32_t x : verdict.counterexample->u) u += (u.empty() ? "" : ",") + std::to_string(x);
        for (std::uint32_t x : verdict.counterexample->v) t += (t.empty() ? "" : ",") + std::to_string(x);
        return reject("no function avoids targets (" + t + ") at positions (" + u + ")");
      }
    } else if (a.subtype == "partition") {
      const auto verdict = verify_partition(partition_from(a));
      if (!verdict) return reject(verdict.reason);
    } else {
      schema_error("unknown set_system subtype '" + a.subtype + "'");
    }
  } else if (a.kind == "projection_game") {
    const ProjectionGame pg = projection_game_from(a);
    if (auto planted = planted_labeling_from(a))
      if (satisfied_fraction(pg, *planted) != Fraction(1)) return reject("planted labeling does not satisfy every edge");
  } else if (a.kind == "instance") {
    const SetCoverInstance inst = instance_from(a);
    if (auto orphan = inst.orphan_element())
      return reject("element " + std::to_string(*orphan) + " belongs to no subset");
  } else if (a.kind == "report") {
    const auto columns = field<std::vector<std::string>>(a, "columns");
    for (std::size_t i = 0; i < a.records.size(); ++i)
      for (const auto& c : columns)
        if (!a.records[i].contains(c)) return reject("report row " + std::to_string(i) + " lacks column " + c);
  }
  return v;
}

}  // namespace

ArtifactVerdict verify_artifact(const Artifact& artifact) {
  try {
    return check_artifact(artifact);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema) throw;
    return ArtifactVerdict{false, artifact.kind, e.what()};
  }
}

ArtifactVerdict verify_artifact_file(const std::string& path) { return verify_artifact(load_artifact(path)); }

std::string serialize_cover(const Cover& cover) {
  ojson j = {{"cover", cover.chosen}};
  return j.dump() + "\n";
}

Cover parse_cover(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("cover: ") + e.what());
  }
  if (!j.is_object() || !j.contains("cover")) schema_error("cover file lacks 'cover'");
  if (!j["cover"].is_array()) schema_error("'cover' must be an array");
  Cover c;
  for (const ojson& x : j["cover"]) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() > UINT32_MAX)
      schema_error("cover indices must be non-negative 32-bit integers");
    c.chosen.push_back(x.get<std::uint32_t>());
  }
  return c;
}

}  // namespace gapcover
