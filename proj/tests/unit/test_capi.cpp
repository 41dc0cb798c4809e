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
#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "gapcover/gapcover.h"

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  gc_string_free(s);
  return out;
}

struct ArtifactPtr {
  gc_artifact* p = nullptr;
  ~ArtifactPtr() { gc_artifact_free(p); }
};

}  // namespace

TEST(CApi, VersionAndNullArguments) {
  EXPECT_STREQ(gc_version(), "1.0.0");
  EXPECT_EQ(gc_gen_formula(3, 0, nullptr), GC_INVALID_ARGUMENT);
  EXPECT_NE(std::string(gc_last_error()), "");
  gc_string_free(nullptr);
  gc_artifact_free(nullptr);
}

TEST(CApi, FormulaDimacsRoundTrip) {
  ArtifactPtr f;
  ASSERT_EQ(gc_gen_formula(6, 9, &f.p), GC_OK);
  char* kind = nullptr;
  ASSERT_EQ(gc_artifact_kind(f.p, &kind), GC_OK);
  EXPECT_EQ(take(kind), "formula");
  char* dimacs = nullptr;
  ASSERT_EQ(gc_formula_to_dimacs(f.p, 1, 9, &dimacs), GC_OK);
  const std::string text = take(dimacs);
  EXPECT_EQ(text.rfind("c seed 9\n", 0), 0u);
  ArtifactPtr g;
  ASSERT_EQ(gc_formula_from_dimacs(text.c_str(), &g.p), GC_OK);
  char* again = nullptr;
  ASSERT_EQ(gc_formula_to_dimacs(g.p, 1, 9, &again), GC_OK);
  EXPECT_EQ(take(again), text);
}

TEST(CApi, ErrorCodesMap) {
  ArtifactPtr a;
  EXPECT_EQ(gc_gen_formula(4, 0, &a.p), GC_INVALID_ARGUMENT);
  EXPECT_EQ(gc_formula_from_dimacs("p cnf 1 1\n5 0\n", &a.p), GC_PARSE);
  EXPECT_EQ(gc_artifact_parse("{}\n", &a.p), GC_SCHEMA);
  EXPECT_EQ(gc_artifact_load("/nonexistent/dir/x.jsonl", &a.p), GC_IO);
  EXPECT_EQ(a.p, nullptr);
}

TEST(CApi, LyEndToEnd) {
  ArtifactPtr formula, game, gadget, instance;
  ASSERT_EQ(gc_gen_formula(3, 1, &formula.p), GC_OK);
  ASSERT_EQ(gc_build_game(formula.p, "{\"type\":\"clause_variable\"}", 1, &game.p), GC_OK) << gc_last_error();
  ASSERT_EQ(gc_build_gadget("{\"type\":\"special\",\"m\":2,\"d\":2}", 0, &gadget.p), GC_OK) << gc_last_error();
  char* witness = nullptr;
  ASSERT_EQ(gc_reduce(game.p, gadget.p, "{\"type\":\"ly\"}", 0, &instance.p, &witness), GC_OK) << gc_last_error();
  ASSERT_NE(witness, nullptr);
  const std::string w = take(witness);

  int ok = 0;
  uint32_t first = 0;
  ASSERT_EQ(gc_verify_cover(instance.p, w.c_str(), &ok, &first), GC_OK);
  EXPECT_EQ(ok, 1);

  char* cover = nullptr;
  int optimal = 0;
  ASSERT_EQ(gc_solve(instance.p, "exact", 0, &cover, &optimal), GC_OK) << gc_last_error();
  EXPECT_EQ(optimal, 1);
  const std::string c = take(cover);
  ASSERT_EQ(gc_verify_cover(instance.p, c.c_str(), &ok, &first), GC_OK);
  EXPECT_EQ(ok, 1);

  ASSERT_EQ(gc_verify_cover(instance.p, "{\"cover\":[]}", &ok, &first), GC_OK);
  EXPECT_EQ(ok, 0);
  EXPECT_EQ(first, 0u);

  char* csv = nullptr;
  ASSERT_EQ(gc_report(instance.p, w.c_str(), 1, 0, 1, &csv), GC_OK) << gc_last_error();
  const std::string report = take(csv);
  EXPECT_NE(report.find("\nly,1,60,46,"), std::string::npos) << report;
  EXPECT_NE(report.find(",8,true,8,1.000000,"), std::string::npos) << report;

  EXPECT_EQ(gc_solve(instance.p, "magic", 0, &cover, &optimal), GC_INVALID_ARGUMENT);
}

TEST(CApi, ArtifactSerializeSaveVerify) {
  ArtifactPtr u, back;
  ASSERT_EQ(gc_build_gadget("{\"type\":\"universal\",\"n\":4,\"k\":2}", 3, &u.p), GC_OK);
  char* text = nullptr;
  ASSERT_EQ(gc_artifact_serialize(u.p, &text), GC_OK);
  const std::string t = take(text);
  const std::string path = (std::filesystem::temp_directory_path() / "gapcover_capi_u.jsonl").string();
  ASSERT_EQ(gc_artifact_save(u.p, path.c_str()), GC_OK);
  ASSERT_EQ(gc_artifact_load(path.c_str(), &back.p), GC_OK);
  char* text2 = nullptr;
  ASSERT_EQ(gc_artifact_serialize(back.p, &text2), GC_OK);
  EXPECT_EQ(take(text2), t);
  int ok = 0;
  char* message = nullptr;
  ASSERT_EQ(gc_artifact_verify(back.p, &ok, &message), GC_OK);
  gc_string_free(message);
  EXPECT_EQ(ok, 1);
  std::remove(path.c_str());
}

TEST(CApi, PipelineRuns) {
  const std::string dir = (std::filesystem::temp_directory_path() / "gapcover_capi_pipeline").string();
  const std::string config = "{\"pipeline\":\"ly\",\"output_dir\":\"" + dir +
                             "\",\"seeds\":[2],\"n\":3,\"d\":2,\"gadget_seed\":1}";
  int ok = 0;
  char* csv_path = nullptr;
  ASSERT_EQ(gc_run_pipeline(config.c_str(), &ok, &csv_path), GC_OK) << gc_last_error();
  EXPECT_EQ(ok, 1);
  EXPECT_TRUE(std::filesystem::exists(take(csv_path)));
}
