#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "hardycover/pipeline.hpp"

using namespace hardycover;

namespace {

const std::string kConfigs = HARDYCOVER_CONFIG_DIR;

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunConfig load(const std::string& name) { return parse_config(read(kConfigs + "/" + name), kConfigs); }

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const config_error& e) {
    return e.what();
  }
  return "";
}

const Check* find(const Report& r, const std::string& prefix) {
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

}  // namespace

TEST(ParseConfig, MinimalIsometryGetsDefaults) {
  const auto cfg = parse_config(
      R"({"mode":"isometry","rho1":0.6,"n":3,"alpha":0.7,"signs":[1,-1]})");
  EXPECT_EQ(cfg.mode, "isometry");
  EXPECT_EQ(cfg.isometry.samples, 1024u);
  EXPECT_EQ(cfg.isometry.degree, 8);
  EXPECT_EQ(cfg.isometry.m, 1);
  EXPECT_EQ(cfg.isometry.trials, 20);
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_EQ(cfg.tol.exact, 1e-12);
  EXPECT_EQ(cfg.tol.product, 1e-10);
  EXPECT_EQ(cfg.tol.isometry, 1e-9);
  EXPECT_EQ(cfg.isometry.signs[1], -1);
}

TEST(ParseConfig, Rejections) {
  EXPECT_NE(error_of(R"({"mode":"bogus"})").find("unknown mode"), std::string::npos);
  EXPECT_NE(error_of(R"({"mode":"isometry","rho1":0.6,"rho1":0.7,"n":3,"alpha":0.7,"signs":[1,-1]})")
                .find("duplicate key 'rho1'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode":"isometry","rho1":0.6,"n":3,"alpha":0.7,"signs":[1,-1],"gamma":1})")
                .find("'gamma'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode":"isometry","rho1":0.6,"n":3,"signs":[1,-1]})").find("'alpha'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"rho1":0.6})").find("'mode'"), std::string::npos);
  EXPECT_NE(error_of(R"({"mode":"group","s":0,"k":1,"tolerances":{"exact":0}})").find("positive"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode":"group","s":0,"k":1,"tolerances":{"loose":1}})")
                .find("'tolerances.loose'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode":"isometry","rho1":0.6,"n":3,"alpha":0.7,"signs":[1,2]})").find("signs"),
            std::string::npos);
  EXPECT_NE(error_of("{not json").find("malformed"), std::string::npos);
  EXPECT_NE(error_of(R"({"mode":"verify","s":0,"k":2,"covering":{},"chi1":{}})").find("'G1'"),
            std::string::npos);
  // Nested duplicates are caught as well.
  EXPECT_NE(error_of(R"({"mode":"group","s":0,"k":1,"tolerances":{"exact":1,"exact":2}})")
                .find("duplicate"),
            std::string::npos);
}

TEST(RunPipeline, VerifyTorusFixturePasses) {
  const Report r = run_pipeline(load("torus3_verify.json"));
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.checks.size(), 20u);
  ASSERT_TRUE(r.data.contains("J2"));
}

TEST(RunPipeline, InconsistentChi1NamesRewrittenRelator) {
  const Report r = run_pipeline(load("torus3_inconsistent.json"));
  EXPECT_FALSE(r.pass());
  const Check* bad = nullptr;
  for (const auto& c : r.checks) {
    if (!c.pass) {
      bad = &c;
      break;
    }
  }
  ASSERT_NE(bad, nullptr);
  EXPECT_EQ(bad->name, "chi1 rewritten relator s2_B1 s1_B1^-1");
}

TEST(RunPipeline, InduceWritesBlockStructure) {
  RunConfig cfg = load("torus3_induce.json");
  cfg.out = ::testing::TempDir() + "/induced.json";
  const Report r = run_pipeline(cfg);
  ASSERT_TRUE(r.pass());
  const Json out = parse_json_strict(read(cfg.out));
  EXPECT_EQ(out["m"], 1);
  EXPECT_EQ(out["n"], 3);
  EXPECT_EQ(out["block_structure"]["A1"], Json::parse("[[1,2],[2,3],[3,1]]"));
  EXPECT_EQ(out["block_structure"]["B1"], Json::parse("[[1,1],[2,2],[3,3]]"));
  const auto& a = out["images"]["A1"];
  EXPECT_NEAR(a[2][0][0].get<double>(), std::cos(0.7), 1e-15);
  EXPECT_NEAR(a[2][0][1].get<double>(), std::sin(0.7), 1e-15);
}

TEST(RunPipeline, IsometryDefaults) {
  const Report r = run_pipeline(load("isometry_default.json"));
  EXPECT_TRUE(r.pass());
  ASSERT_EQ(r.data["trials"].size(), 20u);
  for (const auto& t : r.data["trials"]) EXPECT_LT(t["residual"].get<double>(), 1e-9);
  EXPECT_EQ(r.data["convergence"].size(), 6u);
}

TEST(RunPipeline, DiskAndIdentityCoveringAreExact) {
  const Report disk = run_pipeline(load("disk_verify.json"));
  EXPECT_TRUE(disk.pass());
  for (const auto& c : disk.checks) EXPECT_EQ(*c.residual, 0.0) << c.name;
  const Report id = run_pipeline(load("isometry_identity.json"));
  EXPECT_TRUE(id.pass());
}

TEST(RunPipeline, ModuleErrorsBecomeFailedChecks) {
  RunConfig cfg = parse_config(
      R"({"mode":"isometry","rho1":0.6,"n":3,"alpha":0.7,"signs":[1,-1],"samples":100})");
  const Report r = run_pipeline(cfg);
  EXPECT_FALSE(r.pass());
  const Check* err = find(r, "error:");
  ASSERT_NE(err, nullptr);
  EXPECT_FALSE(err->residual.has_value());

  cfg = parse_config(
      R"({"mode":"verify","s":0,"k":2,"covering":{"n":2,"perms":{"A1":[1,2],"B1":[1,2]}},
          "chi1":{"m":1,"images":{}},"G1":[[1]]})");
  const Report disconnected = run_pipeline(cfg);
  EXPECT_FALSE(disconnected.pass());
  ASSERT_NE(find(disconnected, "error: disconnected cover"), nullptr);
}

TEST(RunPipeline, GroupMode) {
  RunConfig cfg = parse_config(R"({"mode":"group","s":1,"k":2,"double":true})");
  const Report r = run_pipeline(cfg);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.data["genus"], 3);
  EXPECT_EQ(r.data["generators"].size(), 6u);
  EXPECT_EQ(r.data["tau"]["B1"], Json::parse(R"([["B1",-1]])"));
  EXPECT_EQ(r.data["relator"].size(), 12u);
}

TEST(EmitReport, DeterministicJsonAndSchema) {
  const RunConfig cfg = load("isometry_default.json");
  Report a = run_pipeline(cfg);
  Report b = run_pipeline(cfg);
  a.elapsed_ms = 1.0;
  b.elapsed_ms = 99.0;
  const std::string ja = emit_report(a, ReportFormat::json);
  EXPECT_EQ(ja, emit_report(b, ReportFormat::json));
  const Json j = Json::parse(ja);
  for (const char* key : {"version", "seed", "config", "checks", "pass", "data"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("name") && c.contains("residual") && c.contains("tolerance") &&
                c.contains("pass"));
  }
  EXPECT_EQ(j["config"]["samples"], 1024);
  const std::string text = emit_report(a, ReportFormat::text);
  EXPECT_NE(text.find("all checks passed"), std::string::npos);
}

TEST(EmitReport, UnwritablePath) {
  const Report r = run_pipeline(parse_config(R"({"mode":"group","s":0,"k":1})"));
  EXPECT_THROW(emit_report(r, ReportFormat::json, "/nonexistent-dir/report.json"), io_error);
}

TEST(Report, OverallPassNeedsEveryCheck) {
  Report r;
  EXPECT_FALSE(r.pass());
  r.add("a", 0.0, 1e-12);
  EXPECT_TRUE(r.pass());
  r.add("b", 1.0, 1e-12);
  EXPECT_FALSE(r.pass());
}
