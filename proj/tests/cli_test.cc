// Copyright 2026 The Reident Risk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace reident::cli {
namespace {

using ::testing::HasSubstr;
using ::testing::IsEmpty;
using ::testing::StartsWith;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args, bool styled = false) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(args, out, err, styled);
  return {code, out.str(), err.str()};
}

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = std::filesystem::temp_directory_path() /
           ("reident_cli_" + std::to_string(getpid()) + "_" + info->name());
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Path(const std::string& file) const {
    return (dir_ / file).string();
  }

  void Emit(const std::string& name) {
    ASSERT_EQ(Invoke({"fixtures", "emit", name, "--dir", dir_.string()}).code,
              kExitOk);
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, FixturesRoundTripThroughAssess) {
  for (const std::string name : {"initial", "kanon", "hipaa"}) {
    Emit(name);
    Result r = Invoke({"assess", "--data", Path(name + ".csv"), "--meta",
                       Path(name + ".meta.json")});
    EXPECT_EQ(r.code, kExitOk) << name << ": " << r.err;
    EXPECT_THAT(r.err, IsEmpty());
    const nlohmann::json report = nlohmann::json::parse(r.out);
    EXPECT_EQ(report["overall_risk"]["label"], "Critical") << name;
  }
}

TEST_F(CliTest, EmittedFixtureMatchesTable) {
  Emit("kanon");
  const std::string csv = Slurp(Path("kanon.csv"));
  EXPECT_THAT(csv, StartsWith("Age,Gender,Country,Admission Date,Blood Type,"
                              "Disease\n2*,M,Africa,2019-**-**,Positive "
                              "Rehsus,Colds\n"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
}

TEST_F(CliTest, MarkdownAndBothFormats) {
  Emit("hipaa");
  Result md = Invoke({"assess", "--data", Path("hipaa.csv"), "--meta",
                      Path("hipaa.meta.json"), "--format", "markdown"});
  EXPECT_EQ(md.code, kExitOk);
  EXPECT_THAT(md.out, HasSubstr("Overall risk: **4-Critical**"));

  Result both = Invoke({"assess", "--data", Path("hipaa.csv"), "--meta",
                        Path("hipaa.meta.json"), "--format", "both", "--out",
                        Path("report")});
  EXPECT_EQ(both.code, kExitOk) << both.err;
  EXPECT_THAT(both.out, IsEmpty());
  EXPECT_EQ(Slurp(Path("report.md")), md.out);
  EXPECT_THAT(Slurp(Path("report.json")), HasSubstr("\"overall_risk\""));

  Result no_out = Invoke({"assess", "--data", Path("hipaa.csv"), "--meta",
                          Path("hipaa.meta.json"), "--format", "both"});
  EXPECT_EQ(no_out.code, kExitInvalid);
}

TEST_F(CliTest, OutputIsByteIdenticalAcrossRuns) {
  Emit("initial");
  const std::vector<std::string> args = {"assess", "--data",
                                         Path("initial.csv"), "--meta",
                                         Path("initial.meta.json")};
  EXPECT_EQ(Invoke(args).out, Invoke(args).out);
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
  Emit("hipaa");
  nlohmann::json meta = nlohmann::json::parse(Slurp(Path("hipaa.meta.json")));
  meta["attributes"][5].erase("severity");
  std::ofstream(Path("broken.meta.json")) << meta.dump();
  Result r = Invoke({"assess", "--data", Path("hipaa.csv"), "--meta",
                     Path("broken.meta.json")});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_THAT(r.err, HasSubstr("error: Disease: missing severity"));
  EXPECT_THAT(r.out, IsEmpty());
}

TEST_F(CliTest, IoAndParseFailuresExitOne) {
  Emit("hipaa");
  Result missing = Invoke({"assess", "--data", Path("nope.csv"), "--meta",
                           Path("hipaa.meta.json")});
  EXPECT_EQ(missing.code, kExitFailure);
  EXPECT_THAT(missing.err, HasSubstr("nope.csv: no such file"));

  std::ofstream(Path("bad.json")) << "{";
  Result bad = Invoke(
      {"assess", "--data", Path("hipaa.csv"), "--meta", Path("bad.json")});
  EXPECT_EQ(bad.code, kExitFailure);
  EXPECT_THAT(bad.err, HasSubstr("malformed JSON"));
}

TEST_F(CliTest, Metrics) {
  Emit("kanon");
  Emit("hipaa");
  Result k = Invoke({"metric", "k", "--data", Path("kanon.csv"), "--qi",
                     "Age,Gender,Country,Admission Date,Blood Type"});
  EXPECT_EQ(k.code, kExitOk);
  EXPECT_EQ(k.out, "{\"k\":3}\n");

  Result l = Invoke({"metric", "ldiv", "--data", Path("kanon.csv"), "--qi",
                     "Age,Gender,Country", "--sensitive", "Disease"});
  EXPECT_EQ(l.out, "{\"l\":1}\n");

  Result dr = Invoke({"metric", "dr", "--data", Path("hipaa.csv"), "--qi",
                      "Age,Gender,Country", "--sensitive", "Disease"});
  EXPECT_EQ(dr.code, kExitOk);
  const nlohmann::json value = nlohmann::json::parse(dr.out);
  EXPECT_EQ(value["dr"], "1.000000");
  EXPECT_EQ(value["inference"], 4);
  EXPECT_EQ(value["h_s_given_qi"], "0.000000");
}

TEST_F(CliTest, MetricErrors) {
  Emit("kanon");
  Result unknown = Invoke({"metric", "dr", "--data", Path("kanon.csv"), "--qi",
                           "Height", "--sensitive", "Disease"});
  EXPECT_EQ(unknown.code, kExitInvalid);
  EXPECT_THAT(unknown.err, HasSubstr("unknown attribute \"Height\""));

  Result no_sensitive =
      Invoke({"metric", "dr", "--data", Path("kanon.csv"), "--qi", "Age"});
  EXPECT_EQ(no_sensitive.code, kExitInvalid);

  Result bad_kind =
      Invoke({"metric", "entropy", "--data", Path("kanon.csv"), "--qi", "Age"});
  EXPECT_EQ(bad_kind.code, kExitInvalid);
}

TEST_F(CliTest, UnknownFixtureExitsTwo) {
  Result r = Invoke({"fixtures", "emit", "adult", "--dir", dir_.string()});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_THAT(r.err, HasSubstr("unknown fixture \"adult\""));
  EXPECT_FALSE(std::filesystem::exists(dir_ / "adult.csv"));
}

TEST_F(CliTest, UsageErrorsAndHelp) {
  EXPECT_EQ(Invoke({}).code, kExitInvalid);
  EXPECT_EQ(Invoke({"assess", "--data", "x.csv"}).code, kExitInvalid);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitInvalid);
  Result help = Invoke({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_THAT(help.out, HasSubstr("assess"));
  Result sub_help = Invoke({"assess", "--help"});
  EXPECT_EQ(sub_help.code, kExitOk);
  EXPECT_THAT(sub_help.out, HasSubstr("--meta"));
}

TEST_F(CliTest, StyledErrorPrefix) {
  EXPECT_THAT(Invoke({"frobnicate"}, true).err, StartsWith("\x1b[31merror:"));
  EXPECT_THAT(Invoke({"frobnicate"}, false).err, StartsWith("error: "));
}

}  // namespace
}  // namespace reident::cli
