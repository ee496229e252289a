// Copyright 2026 The hominv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hominv/io.hpp"

#include <gtest/gtest.h>

#include "hominv/errors.hpp"

namespace hominv {
namespace {

TEST(StateJson, RoundTrip) {
  const DensityMatrix rho = random_state(11, ensemble::MixedGinibre{});
  const DensityMatrix back = io::parse_state_json(io::state_to_json(rho));
  EXPECT_LT((back.entries() - rho.entries()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(StateJson, CoefficientForm) {
  const DensityMatrix rho = io::parse_state_json(
      R"({"t": [[1,0,0,0],[0,-1,0,0],[0,0,-1,0],[0,0,0,-1]]})");
  EXPECT_LT((rho.entries() - singlet_state().entries()).cwiseAbs().maxCoeff(), 1e-15);
  const DensityMatrix real = io::parse_state_json(
      R"({"rho": [[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]]})");
  EXPECT_LT((real.entries() - maximally_mixed_state().entries()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(StateJson, Errors) {
  EXPECT_THROW(io::parse_state_json("{"), ValidationError);
  EXPECT_THROW(io::parse_state_json("[]"), ValidationError);
  EXPECT_THROW(io::parse_state_json(R"({"x": 1})"), ValidationError);
  EXPECT_THROW(io::parse_state_json(R"({"t": [[1,0,0],[0,1,0],[0,0,1]]})"), ValidationError);
  EXPECT_THROW(io::parse_state_json(R"({"rho": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,"x"]]})"), ValidationError);
  // Parses, but fails physical validation (trace 2).
  EXPECT_THROW(io::parse_state_json(R"({"rho": [[1,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]]})"), ValidationError);
  EXPECT_THROW(io::read_text("/nonexistent/state.json"), ValidationError);
}

TEST(InvariantIo, JsonRoundTrip) {
  const InvariantVector v = jing_invariants(coeffs_from_density(werner_state(0.4)));
  const InvariantVector back = io::invariant_vector_from_json(io::invariant_vector_to_json(v));
  EXPECT_EQ(back.family(), Family::Jing);
  EXPECT_EQ(back.source(), v.source());
  EXPECT_EQ(back.values(), v.values());
  EXPECT_THROW(io::invariant_vector_from_json(R"({"family":"jing","values":[1],"source":"direct"})"),
               ValidationError);
}

TEST(InvariantIo, Csv) {
  EXPECT_EQ(io::invariants_csv_header(Family::Jing).substr(0, 26), "state_id,family,source,J1,");
  const std::string row = io::invariants_csv_row("s", makhlin_invariants(coeffs_from_density(singlet_state())));
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 20);
  EXPECT_EQ(row.rfind("s,makhlin,direct,", 0), 0u);
}

TEST(CatalogIo, RoundTrip) {
  const DiagramCatalog& cat = DiagramCatalog::builtin();
  const DiagramCatalog back = io::catalog_from_json(io::catalog_to_json(cat));
  ASSERT_EQ(back.entries().size(), 18u);
  for (const auto& e : cat.entries()) EXPECT_EQ(back.diagram(e.label).edges(), e.diagram.edges());
}

TEST(CatalogIo, ShippedFileMatchesBuiltin) {
  const std::string text = io::read_text(std::filesystem::path(HOMINV_SOURCE_DIR) / "data" / "catalog.json");
  EXPECT_EQ(text, io::catalog_to_json(DiagramCatalog::builtin()));
}

TEST(CatalogIo, BadEntryNamesLabel) {
  std::string text = io::catalog_to_json(DiagramCatalog::builtin());
  const auto at = text.find("\"c3\", \"n_copies\": 3");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 19, "\"c3\", \"n_copies\": 0");
  try {
    io::catalog_from_json(text);
    FAIL() << "expected CatalogError";
  } catch (const CatalogError& e) {
    EXPECT_NE(std::string(e.what()).find("'c3'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::catalog_from_json("not json"), CatalogError);
  EXPECT_THROW(io::catalog_from_json(R"({"version": 2, "entries": []})"), CatalogError);
  EXPECT_THROW(io::catalog_from_json(R"({"version": 1, "entries": [{"label": "zz", "n_copies": 2, "edges": []}]})"),
               CatalogError);
  EXPECT_THROW(io::load_catalog("/nonexistent.json"), CatalogError);
}

TEST(CountIo, RoundTrip) {
  const CountTable t =
      sample_events(interferometer_config("fig5-bottom"), coeffs_from_density(werner_state(0.7)), 5000, 3);
  const std::string csv = io::count_table_to_csv(t, R"({"command":"simulate"})");
  EXPECT_NE(csv.find("# manifest={\"command\":\"simulate\"}"), std::string::npos);
  EXPECT_EQ(io::count_table_from_csv(csv), t);
}

TEST(CountIo, Errors) {
  EXPECT_THROW(io::count_table_from_csv("D_a1,D_b1,count\na,a,1\n"), ValidationError);
  const std::string head = "# config=fig5-top\n# Z=3\n# seed=0\nD_a1,D_b1,count\n";
  EXPECT_THROW(io::count_table_from_csv(head + "a,x,3\n"), ValidationError);
  EXPECT_THROW(io::count_table_from_csv(head + "a,a,2\n"), ValidationError);  // Z mismatch
  EXPECT_THROW(io::count_table_from_csv(head + "a,a,3,1\n"), ValidationError);
  EXPECT_THROW(io::count_table_from_csv(head + "a,a,-3\n"), ValidationError);
  EXPECT_THROW(io::count_table_from_csv("# config=fig99\n"), ValidationError);
  EXPECT_EQ(io::count_table_from_csv(head + "a,a,3\n").counts[3], 3u);
}

TEST(Manifest, OptionalFields) {
  io::RunManifest m{.command = "simulate", .inputs = {"builtin:singlet"}, .seed = 4};
  const std::string j = io::manifest_to_json(m);
  EXPECT_NE(j.find("\"seed\""), std::string::npos);
  EXPECT_EQ(j.find("wall_clock"), std::string::npos);
  EXPECT_EQ(j.find("\"events\""), std::string::npos);
  m.wall_clock_seconds = 0.5;
  EXPECT_NE(io::manifest_to_json(m).find("wall_clock"), std::string::npos);
}

}  // namespace
}  // namespace hominv
