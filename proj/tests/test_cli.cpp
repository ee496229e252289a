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

// Drives the installed command-line tool through a shell.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hominv/io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hominv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd = env + " '" HOMINV_CLI "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, SingletInvariants) {
  const Result r = run("invariants --state builtin:singlet");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["vectors"].size(), 1u);
  EXPECT_EQ(j["vectors"][0]["family"], "makhlin");
  EXPECT_NEAR(j["vectors"][0]["values"][0].get<double>(), -1.0, 1e-12);  // det beta
}

TEST_F(Cli, BothFamiliesWriteFiles) {
  const Result r = run("invariants --state builtin:werner:0.3 --family both --out " + path("inv"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("inv.json")));
  EXPECT_TRUE(fs::exists(path("inv_makhlin.csv")));
  EXPECT_TRUE(fs::exists(path("inv_jing.csv")));
  EXPECT_TRUE(fs::exists(path("inv.json.manifest.json")));
  EXPECT_NE(slurp(path("inv_jing.csv")).find("J12"), std::string::npos);
}

TEST_F(Cli, MissingStateFile) {
  const Result r = run("invariants --state " + path("nope.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nope.json"), std::string::npos);
}

TEST_F(Cli, StateFromFile) {
  hominv::io::write_text(path("s.json"), R"({"t": [[1,0,0,0],[0,-1,0,0],[0,0,-1,0],[0,0,0,-1]]})");
  const Result r = run("nonlocality --state " + path("s.json") + " --path jing");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"state_id\": \"s\""), std::string::npos);
}

TEST_F(Cli, SimulateIsReproducible) {
  const std::string base = "simulate --state builtin:random:3 --config fig6 --events 70000 --seed 5 --out ";
  ASSERT_EQ(run(base + path("a.csv")).code, 0);
  ASSERT_EQ(run(base + path("b.csv")).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  const hominv::CountTable t = hominv::io::count_table_from_csv(slurp(path("a.csv")));
  EXPECT_EQ(t.counts.size(), 64u);
  EXPECT_EQ(t.total, 70000u);
  EXPECT_TRUE(fs::exists(path("a.csv.manifest.json")));
  EXPECT_NE(slurp(path("a.csv.manifest.json")).find("wall_clock"), std::string::npos);
  EXPECT_EQ(slurp(path("a.csv")).find("wall_clock"), std::string::npos);
}

TEST_F(Cli, SingletAlwaysAnticoalescesOnIntraCopyPair) {
  const Result r = run("simulate --state builtin:singlet --config fig7-l0 --events 1000 --seed 2");
  ASSERT_EQ(r.code, 0) << r.err;
  const hominv::CountTable t = hominv::io::count_table_from_csv(r.out);
  EXPECT_EQ(t.counts[1], 1000u);
}

TEST_F(Cli, SimulateRejectsBadArguments) {
  EXPECT_EQ(run("simulate --state builtin:singlet --config fig7-l0 --events 0").code, 2);
  EXPECT_EQ(run("simulate --state builtin:singlet --config fig8").code, 2);
  EXPECT_EQ(run("invariants --state builtin:werner:1.5").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
}

TEST_F(Cli, NonlocalityDirect) {
  const Result r = run("nonlocality --state builtin:werner:0.9 --path direct");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["M"].get<double>(), 0.62, 1e-12) << r.out;
}

TEST_F(Cli, EstimatedNonlocality) {
  std::string counts;
  for (const char* c : {"fig5-top", "fig5-bottom", "fig6"}) {
    const std::string f = path(std::string(c) + ".csv");
    ASSERT_EQ(run(std::string("simulate --state builtin:werner:0.9 --events 200000 --config ") + c + " --out " + f).code, 0);
    counts += " " + f;
  }
  const Result r = run("nonlocality --path estimated --counts" + counts);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["method"], "estimated-jing");
  EXPECT_NEAR(j["M"].get<double>(), 0.62, 5 * j["uncertainties"]["M"].get<double>() + j["split_bound"].get<double>());
}

TEST_F(Cli, EmptyTableIsInsufficientStatistics) {
  hominv::io::write_text(path("z.csv"), "# config=fig5-top\n# Z=0\nD_a1,D_b1,count\nc,c,0\n");
  const Result r = run("nonlocality --path estimated --counts " + path("z.csv"));
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(Cli, VerifyPasses) {
  const Result r = run("verify --seed 7 --n-states 50");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("verify: PASS"), std::string::npos);
}

TEST_F(Cli, VerifyRejectsZeroStates) { EXPECT_EQ(run("verify --n-states 0").code, 2); }

TEST_F(Cli, VerifyBlamesCorruptedCatalog) {
  // Swap c4 for c5's diagram: the identities that use c4 break.
  std::string text = slurp(fs::path(HOMINV_SOURCE_DIR) / "data" / "catalog.json");
  const auto c4 = text.find("\"label\": \"c4\"");
  const auto c5 = text.find("\"label\": \"c5\"");
  const auto edges = [&](std::size_t at) {
    const auto b = text.find("\"edges\"", at);
    return std::pair{b, text.find('\n', b) - b};
  };
  const auto [b5, n5] = edges(c5);
  const std::string c5_edges = text.substr(b5, n5);
  const auto [b4, n4] = edges(c4);
  text.replace(b4, n4, c5_edges);
  hominv::io::write_text(path("bad.json"), text);

  const Result r = run("verify --seed 7 --n-states 20 --catalog " + path("bad.json"));
  EXPECT_EQ(r.code, 4) << r.out;
  EXPECT_NE(r.out.find("suspect labels:"), std::string::npos);
  EXPECT_NE(r.out.find(" c4"), std::string::npos);

  // Same file picked up through the environment.
  EXPECT_EQ(run("verify --seed 7 --n-states 20", "HOMINV_CATALOG='" + path("bad.json") + "'").code, 4);
}

TEST_F(Cli, CatalogPrintsBuiltin) {
  const Result r = run("catalog");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(fs::path(HOMINV_SOURCE_DIR) / "data" / "catalog.json"));
}

TEST_F(Cli, ResourcesAndTables) {
  const Result res = run("resources --format csv");
  ASSERT_EQ(res.code, 0);
  EXPECT_EQ(res.out.rfind("method,copies", 0), 0u);
  const Result tab = run("tables --config fig5-bottom");
  ASSERT_EQ(tab.code, 0);
  EXPECT_NE(tab.out.find("0 of 16 rows differ"), std::string::npos) << tab.out;
}

}  // namespace
