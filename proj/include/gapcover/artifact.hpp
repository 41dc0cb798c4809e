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

#include <json.hpp>

#include "gapcover/formulas.hpp"
#include "gapcover/projection_games.hpp"
#include "gapcover/proof_systems.hpp"
#include "gapcover/set_systems.hpp"
#include "gapcover/setcover.hpp"

namespace gapcover {

using ojson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactFormat = "gapcover-artifact";

// JSON-lines artifact: one header object, then one object per payload
// record. The header carries format, schema_version, kind, an optional
// subtype, kind-specific fields, provenance and the record count.
struct Artifact {
  std::string kind;     // formula | game | set_system | projection_game | instance | report
  std::string subtype;  // e.g. "clause_variable", "partition"; empty when unused
  ojson fields = ojson::object();
  ojson provenance = ojson::object();
  std::vector<ojson> records;

  friend bool operator==(const Artifact&, const Artifact&) = default;
};

std::string serialize(const Artifact& artifact);
// Throws Parse on malformed JSON and Schema on a bad header.
Artifact parse_artifact(std::string_view text);

Artifact load_artifact(const std::string& path);
void save_artifact(const Artifact& artifact, const std::string& path);

// Typed conversions. from_* throws Schema when the kind or subtype differs.
Artifact to_artifact(const CnfFormula& formula, ojson provenance = ojson::object());
CnfFormula formula_from(const Artifact& artifact);

// Clause/variable and k-prover games are stored by their formula (and code),
// explicit two-prover games by their acceptance table.
Artifact clause_variable_artifact(const CnfFormula& formula, ojson provenance = ojson::object());
Artifact to_artifact(const KProverGame& game, ojson provenance = ojson::object());
Artifact to_artifact(const TwoProverGame& game, ojson provenance = ojson::object());
TwoProverGame two_prover_game_from(const Artifact& artifact);
KProverGame k_prover_game_from(const Artifact& artifact);

Artifact to_artifact(const UniversalSet& set, ojson provenance = ojson::object());
Artifact to_artifact(const SpecialSetSystem& sys, ojson provenance = ojson::object());
Artifact to_artifact(const AntiUniversalSet& set, ojson provenance = ojson::object());
Artifact to_artifact(const PartitionSystem& ps, ojson provenance = ojson::object());
UniversalSet universal_from(const Artifact& artifact);
SpecialSetSystem special_from(const Artifact& artifact);
AntiUniversalSet anti_universal_from(const Artifact& artifact);
PartitionSystem partition_from(const Artifact& artifact);

Artifact to_artifact(const ProjectionGame& pg, const std::optional<Labeling>& planted = std::nullopt,
                     ojson provenance = ojson::object());
ProjectionGame projection_game_from(const Artifact& artifact);
std::optional<Labeling> planted_labeling_from(const Artifact& artifact);

// Instance provenance travels in the header's provenance field.
Artifact to_artifact(const SetCoverInstance& inst);
SetCoverInstance instance_from(const Artifact& artifact);

struct ArtifactVerdict {
  bool ok = true;
  std::string kind;
  std::string message;
  explicit operator bool() const { return ok; }
};

// Re-runs the defining check for the artifact's kind. Unknown kinds and
// schema mismatches throw Schema.
ArtifactVerdict verify_artifact(const Artifact& artifact);
ArtifactVerdict verify_artifact_file(const std::string& path);

// Cover files are a single JSON object {"cover": [indices]}.
std::string serialize_cover(const Cover& cover);
Cover parse_cover(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gapcover
