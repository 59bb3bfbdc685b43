// Copyright 2026 The HyperDP Authors
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

#include "hyperdp/cli.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hyperdp/experiments.h"
#include "hyperdp/io.h"
#include "json.hpp"

namespace hyperdp {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = std::filesystem::path(::testing::TempDir()) /
           (std::string("hyperdp_cli_") + info->name());
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::string Contents(const std::string& name) const {
    absl::StatusOr<std::string> text = ReadFile(Path(name));
    EXPECT_TRUE(text.ok()) << name;
    return text.ok() ? *text : "";
  }
  bool Exists(const std::string& name) const {
    return std::filesystem::exists(dir_ / name);
  }
  size_t FileCount() const {
    size_t count = 0;
    for ([[maybe_unused]] const auto& e :
         std::filesystem::directory_iterator(dir_)) {
      ++count;
    }
    return count;
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, ExitCodeMapping) {
  EXPECT_EQ(ExitCodeForStatus(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCodeForStatus(absl::InvalidArgumentError("x")), 1);
  EXPECT_EQ(ExitCodeForStatus(absl::NotFoundError("x")), 1);
  EXPECT_EQ(ExitCodeForStatus(absl::ResourceExhaustedError("x")), 1);
  EXPECT_EQ(ExitCodeForStatus(absl::FailedPreconditionError("x")), 3);
  EXPECT_EQ(ExitCodeForStatus(absl::OutOfRangeError("x")), 2);
  EXPECT_EQ(ExitCodeForStatus(absl::UnavailableError("x")), 2);
}

TEST_F(CliTest, HelpAndBadFlags) {
  EXPECT_EQ(Invoke({"--help"}).code, 0);
  EXPECT_EQ(Invoke({"gen", "--help"}).code, 0);
  EXPECT_EQ(Invoke({}).code, 1);
  EXPECT_EQ(Invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(Invoke({"gen", "--n", "ten"}).code, 1);
}

TEST_F(CliTest, GenWritesTwoReproducibleFiles) {
  const std::vector<std::string> args = {
      "gen", "--n", "100", "--h", "3", "--a", "13", "--b", "1",
      "--seed", "7", "--balanced", "--out", Path("g.json")};
  Result first = Invoke(args);
  ASSERT_EQ(first.code, 0) << first.err;
  ASSERT_TRUE(Exists("g.json"));
  ASSERT_TRUE(Exists("g.truth.json"));
  const std::string graph = Contents("g.json");
  const std::string truth = Contents("g.truth.json");
  Result second = Invoke(args);
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(Contents("g.json"), graph);
  EXPECT_EQ(Contents("g.truth.json"), truth);
  EXPECT_EQ(first.out, second.out);
  auto labels = nlohmann::json::parse(truth)["labels"];
  int sum = 0;
  for (int l : labels) sum += l;
  EXPECT_EQ(sum, 0);
  EXPECT_EQ(nlohmann::json::parse(graph)["n"], 100);
}

TEST_F(CliTest, GenRejectsInfeasibleModelsWithoutWriting) {
  Result big_a = Invoke({"gen", "--n", "10", "--h", "3", "--a", "10000", "--b",
                      "1", "--out", Path("x.json")});
  EXPECT_EQ(big_a.code, 1);
  EXPECT_THAT(big_a.err, HasSubstr("exceed"));
  Result small_n = Invoke({"gen", "--n", "2", "--h", "3", "--a", "1", "--b",
                        "1", "--out", Path("x.json")});
  EXPECT_EQ(small_n.code, 1);
  EXPECT_EQ(FileCount(), 0u);
}

TEST_F(CliTest, RecoverSpectralReportsZeroErrorOnStrongSignal) {
  ASSERT_EQ(Invoke({"gen", "--n", "100", "--h", "3", "--a", "13", "--b", "1",
                 "--seed", "7", "--balanced", "--out", Path("g.json")})
                .code,
            0);
  Result r = Invoke({"recover", "--alg", "spectral", "--in", Path("g.json"),
                  "--truth", Path("g.truth.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto json = nlohmann::json::parse(r.out);
  EXPECT_EQ(json["method"], "spectral");
  EXPECT_EQ(json["error"], 0.0);
  EXPECT_EQ(json["exact_success"], true);
  EXPECT_EQ(json["labeling"]["labels"][0], 1);
}

TEST_F(CliTest, RecoverMlOnSmallInstance) {
  // Two disjoint triangles' worth of in-cluster edges on n = 6.
  ASSERT_TRUE(WriteFileAtomic(
                  Path("g.json"),
                  R"({"n":6,"h":3,"edges":[[0,1,2],[3,4,5],[0,1,3]]})")
                  .ok());
  ASSERT_TRUE(
      WriteFileAtomic(Path("p.json"), R"({"p":0.5,"q":0.1})").ok());
  Result r = Invoke({"recover", "--alg", "ml", "--in", Path("g.json"),
                  "--params", Path("p.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto json = nlohmann::json::parse(r.out);
  EXPECT_EQ(json["method"], "ml_exhaustive");
  EXPECT_EQ(json["labeling"]["labels"],
            nlohmann::json::parse("[1,1,1,-1,-1,-1]"));
  // ML without a model is a usage error.
  EXPECT_EQ(Invoke({"recover", "--alg", "ml", "--in", Path("g.json")}).code, 1);
  EXPECT_EQ(Invoke({"recover", "--alg", "tensor", "--in", Path("g.json")}).code,
            1);
  EXPECT_EQ(Invoke({"recover", "--in", Path("missing.json")}).code, 1);
}

TEST_F(CliTest, PrivatizeStabilitySurrogateNeedsAcknowledgment) {
  ASSERT_EQ(Invoke({"gen", "--n", "40", "--h", "3", "--a", "13", "--b", "1",
                 "--seed", "1", "--balanced", "--out", Path("g.json")})
                .code,
            0);
  const std::vector<std::string> base = {
      "privatize", "--mech", "stability", "--eps", "2", "--t", "1",
      "--in", Path("g.json"), "--a", "13", "--b", "1", "--seed", "5",
      "--out", Path("out.json")};
  Result refused = Invoke(base);
  EXPECT_EQ(refused.code, 3);
  EXPECT_FALSE(Exists("out.json"));
  std::vector<std::string> acknowledged = base;
  acknowledged.push_back("--acknowledge-noncertified");
  ASSERT_EQ(Invoke(acknowledged).code, 0);
  const std::string first = Contents("out.json");
  auto json = nlohmann::json::parse(first);
  EXPECT_EQ(json["mechanism"], "stability_surrogate");
  EXPECT_EQ(json["certified"], false);
  EXPECT_TRUE(json.contains("laplace_draw"));
  ASSERT_EQ(Invoke(acknowledged).code, 0);
  EXPECT_EQ(Contents("out.json"), first);
  // Exact distance was requested explicitly but n is too large.
  std::vector<std::string> exact = base;
  exact.insert(exact.end(), {"--distance", "exact"});
  EXPECT_EQ(Invoke(exact).code, 1);
}

TEST_F(CliTest, PrivatizeRrWritesPerturbedGraph) {
  ASSERT_EQ(Invoke({"gen", "--n", "30", "--h", "3", "--a", "10", "--b", "1",
                 "--seed", "2", "--balanced", "--out", Path("g.json")})
                .code,
            0);
  const std::vector<std::string> args = {
      "privatize", "--mech", "rr", "--eps", "3", "--in", Path("g.json"),
      "--seed", "9", "--estimator", "spectral", "--out", Path("out.json"),
      "--graph-out", Path("rr.json")};
  ASSERT_EQ(Invoke(args).code, 0);
  auto out = nlohmann::json::parse(Contents("out.json"));
  EXPECT_EQ(out["mechanism"], "rr");
  EXPECT_NEAR(out["flip_probability"].get<double>(), 1 / (std::exp(3.0) + 1),
              1e-15);
  EXPECT_EQ(out["perturbed_graph"], Path("rr.json"));
  const std::string perturbed = Contents("rr.json");
  EXPECT_NE(perturbed, Contents("g.json"));
  ASSERT_EQ(Invoke(args).code, 0);
  EXPECT_EQ(Contents("rr.json"), perturbed);
  EXPECT_EQ(Invoke({"privatize", "--mech", "rr", "--in", Path("g.json")}).code,
            1);
}

TEST_F(CliTest, PrivatizeSmallExactMechanisms) {
  ASSERT_EQ(Invoke({"gen", "--n", "8", "--h", "3", "--a", "3", "--b", "1",
                 "--seed", "1", "--balanced", "--out", Path("g.json")})
                .code,
            0);
  for (const std::string mech : {"stability", "bayes", "expo"}) {
    Result r = Invoke({"privatize", "--mech", mech, "--eps", "1", "--t", "1",
                    "--in", Path("g.json"), "--a", "3", "--b", "1", "--seed",
                    "4"});
    ASSERT_EQ(r.code, 0) << mech << ": " << r.err;
    auto json = nlohmann::json::parse(r.out);
    EXPECT_EQ(json["certified"], true) << mech;
    EXPECT_EQ(json["labeling"]["n"], 8) << mech;
  }
  EXPECT_EQ(Invoke({"privatize", "--mech", "laplace", "--in", Path("g.json")})
                .code,
            1);
  EXPECT_EQ(Invoke({"privatize", "--mech", "stability", "--eps", "1", "--t", "1",
                 "--delta", "0.1", "--in", Path("g.json"), "--a", "3", "--b",
                 "1"})
                .code,
            1);
}

TEST_F(CliTest, ThresholdRrAnchor) {
  Result r = Invoke({"threshold", "--mech", "rr", "--a", "13", "--b", "1",
                  "--h", "3", "--n", "100", "--eps", "5.8611"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto json = nlohmann::json::parse(r.out);
  EXPECT_EQ(json["mechanism"], "rr");
  EXPECT_NEAR(json["margin"].get<double>(), 0.0, 1e-3);
  EXPECT_EQ(json["inputs"]["n"], 100);
  EXPECT_NEAR(json["auxiliaries"]["rr_min_eps"]["value"].get<double>(),
              5.8611, 5e-4);
  EXPECT_TRUE(json.contains("satisfied"));
}

TEST_F(CliTest, ThresholdOtherMechanisms) {
  auto margin = [](const Result& r) {
    return nlohmann::json::parse(r.out)["margin"].get<double>();
  };
  Result none = Invoke({"threshold", "--mech", "none", "--a", "13", "--b", "1",
                     "--h", "3"});
  ASSERT_EQ(none.code, 0);
  EXPECT_NEAR(margin(none), std::pow(std::sqrt(13.0) - 1.0, 2) - 4.0, 1e-12);
  Result expo = Invoke({"threshold", "--mech", "expo", "--a", "13", "--b", "1",
                     "--h", "3", "--eps", "0.5"});
  ASSERT_EQ(expo.code, 0);
  EXPECT_NEAR(margin(expo), 0.5 * 12 - 4, 1e-12);
  Result bayes = Invoke({"threshold", "--mech", "bayes", "--a", "13", "--b",
                      "1", "--h", "3"});
  ASSERT_EQ(bayes.code, 0);
  EXPECT_NEAR(margin(bayes), 144.0 / 13.0 - 4.0, 1e-12);
  Result stability = Invoke({"threshold", "--mech", "stability", "--a", "13",
                          "--b", "1", "--h", "3", "--eps", "3", "--t", "1"});
  ASSERT_EQ(stability.code, 0);
  EXPECT_EQ(nlohmann::json::parse(stability.out)["auxiliaries"]["region"],
            "green");
  EXPECT_EQ(Invoke({"threshold", "--mech", "rr", "--a", "13", "--b", "1", "--h",
                 "3", "--eps", "7"})
                .code,
            1);  // missing --n
  EXPECT_EQ(Invoke({"threshold", "--mech", "magic", "--a", "1", "--b", "1",
                 "--h", "3"})
                .code,
            1);
}

TEST_F(CliTest, RegionsBoundaryFollowsLogA) {
  Result r = Invoke({"regions", "--h", "3", "--t", "1", "--b", "1", "--a-min",
                  "5", "--a-max", "40", "--a-steps", "8", "--eps-min", "0.25",
                  "--eps-max", "5", "--eps-steps", "20", "--out",
                  Path("regions.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(Contents("regions.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "a,eps,region");
  int non_gray = 0;
  while (std::getline(csv, line)) {
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    const double a = std::stod(line.substr(0, c1));
    const double eps = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const std::string region = line.substr(c2 + 1);
    if (region == "gray") continue;
    ++non_gray;
    // With t = 1, b = 1 the budget floor is (t+1)/2 ln(a/b) = ln(a).
    EXPECT_EQ(region == "green", eps >= std::log(a)) << line;
  }
  EXPECT_GT(non_gray, 20);
}

TEST_F(CliTest, ExperimentThreadCountsGiveIdenticalBytes) {
  const std::vector<std::string> base = {
      "experiment", "--n", "30", "--h", "3", "--b", "1", "--a-values",
      "5,9,15", "--eps", "4", "--mechanism", "rr", "--estimator", "spectral",
      "--trials", "8", "--seed", "99"};
  std::vector<std::string> trials_files;
  for (const std::string threads : {"1", "4", "8"}) {
    std::vector<std::string> args = base;
    args.insert(args.end(),
                {"--threads", threads, "--out-trials",
                 Path("trials" + threads + ".csv"), "--out-summary",
                 Path("summary" + threads + ".csv"), "--manifest",
                 Path("manifest" + threads + ".json")});
    Result r = Invoke(args);
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(Contents("trials1.csv"), Contents("trials4.csv"));
  EXPECT_EQ(Contents("trials1.csv"), Contents("trials8.csv"));
  EXPECT_EQ(Contents("summary1.csv"), Contents("summary4.csv"));
  EXPECT_EQ(Contents("summary1.csv"), Contents("summary8.csv"));
  EXPECT_THAT(Contents("trials1.csv"),
              StartsWith("mechanism,estimator,n,h,a,b,eps,t,trial,seed,error,"
                         "exact_success\n"));
  auto manifest = nlohmann::json::parse(Contents("manifest4.json"));
  EXPECT_EQ(manifest["config"]["master_seed"], 99);
  EXPECT_EQ(manifest["version"], std::string(kVersion));
  auto records = ParseTrialCsv(Contents("trials8.csv"));
  ASSERT_TRUE(records.ok());
  EXPECT_EQ(records->size(), 24u);
}

TEST_F(CliTest, ExperimentConfigFileWithOverrides) {
  ASSERT_TRUE(WriteFileAtomic(Path("config.json"), R"({
    "n": 30, "h": 3, "b": 1, "eps_values": [2, 8], "a": 13,
    "mechanism": "rr", "estimator": "spectral", "trials": 3,
    "master_seed": 4})")
                  .ok());
  Result r = Invoke({"experiment", "--config", Path("config.json"), "--trials",
                  "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto summary = ParseSummaryCsv(r.out);
  ASSERT_TRUE(summary.ok()) << summary.status();
  ASSERT_EQ(summary->size(), 2u);
  EXPECT_EQ((*summary)[0].sweep_param, "eps");
  EXPECT_EQ((*summary)[0].trials, 2);

  ASSERT_TRUE(
      WriteFileAtomic(Path("bad.json"), R"({"n": 30, "tirals": 3})").ok());
  Result bad = Invoke({"experiment", "--config", Path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_THAT(bad.err, HasSubstr("tirals"));
}

TEST_F(CliTest, ExperimentStabilitySurrogateRefusedWithoutFlag) {
  const std::vector<std::string> base = {
      "experiment", "--n", "30", "--h", "3", "--a-values", "13",
      "--mechanism", "stability", "--trials", "1", "--out-summary",
      Path("s.csv")};
  EXPECT_EQ(Invoke(base).code, 3);
  EXPECT_FALSE(Exists("s.csv"));
  std::vector<std::string> ok = base;
  ok.push_back("--acknowledge-noncertified");
  EXPECT_EQ(Invoke(ok).code, 0);
}

TEST_F(CliTest, ThreadsFallBackToEnvironment) {
  ASSERT_EQ(setenv("HYPERDP_THREADS", "4", 1), 0);
  Result env = Invoke({"experiment", "--n", "30", "--h", "3", "--a-values",
                    "6,12", "--trials", "5", "--seed", "3"});
  ASSERT_EQ(unsetenv("HYPERDP_THREADS"), 0);
  Result serial = Invoke({"experiment", "--n", "30", "--h", "3", "--a-values",
                       "6,12", "--trials", "5", "--seed", "3", "--threads",
                       "1"});
  ASSERT_EQ(env.code, 0);
  ASSERT_EQ(serial.code, 0);
  EXPECT_EQ(env.out, serial.out);
  EXPECT_EQ(Invoke({"experiment", "--a-values", "6", "--threads", "0"}).code, 1);
}

TEST_F(CliTest, AuditExponentialReportsZeroSlack) {
  Result r = Invoke({"audit", "--mech", "expo", "--n", "6", "--eps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto json = nlohmann::json::parse(r.out);
  EXPECT_EQ(json["max_slack"], 0.0);
  EXPECT_EQ(json["certified"], true);
  EXPECT_EQ(json["graphs"], 50);
  Result threaded =
      Invoke({"audit", "--mech", "expo", "--n", "6", "--eps", "1", "--threads",
           "4"});
  EXPECT_EQ(threaded.out, r.out);
}

TEST_F(CliTest, AuditSurrogateCertificationIsRefused) {
  const std::vector<std::string> base = {
      "audit", "--mech", "stability", "--n", "5", "--label-space",
      "near_balanced", "--a", "3", "--eps", "1", "--t", "1", "--surrogate"};
  EXPECT_EQ(Invoke(base).code, 3);
  std::vector<std::string> mc = base;
  mc.insert(mc.end(), {"--monte-carlo", "--graphs", "2", "--samples", "200"});
  Result r = Invoke(mc);
  ASSERT_EQ(r.code, 0) << r.err;
  auto json = nlohmann::json::parse(r.out);
  EXPECT_EQ(json["certified"], false);
  EXPECT_THAT(json["note"].get<std::string>(), HasSubstr("NOT CERTIFIED"));
}

}  // namespace
}  // namespace hyperdp
