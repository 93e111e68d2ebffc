#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "lcbm/cli.h"
#include "oracle_values.h"

namespace lcbm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"lcbm"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string field(const std::string& row, int index) {
  std::istringstream in(row);
  std::string cell;
  for (int i = 0; i <= index; ++i) std::getline(in, cell, ',');
  return cell;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("lcbm_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                              ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()
                       ->current_test_info()
                       ->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(CliBound, FixedDeltaRow) {
  const Result r = run({"bound", "fixed-delta", "--eps", "2", "--delta", "3.125e-2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "theorem,epsilon,delta,n,d,m,T,raw,clamped,vacuous");
  EXPECT_NEAR(std::stod(field(rows[1], 7)), oracle::fd_2_2m5, 1e-15);
  EXPECT_EQ(field(rows[1], 9), "false");
}

TEST(CliBound, VacuousRow) {
  const Result r =
      run({"bound", "local-deviation", "--eps", "0.1", "--delta", "3.125e-2"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = lines(r.out);
  EXPECT_EQ(field(rows[1], 8), "1");
  EXPECT_EQ(field(rows[1], 9), "true");
}

TEST(CliBound, GridAndJsonl) {
  const Result r = run({"bound", "truncated-global", "--eps", "1,2", "--delta",
                        "2^-6,2^-5", "--n", "4", "--format", "jsonl"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const json first = json::parse(rows[0]);
  EXPECT_EQ(first.at("theorem"), "truncated_global");
  EXPECT_NEAR(first.at("raw").get<double>(), oracle::tg_1_2m6_4, 1e-15);
}

TEST(CliBound, UsageErrors) {
  const Result missing = run({"bound", "fixed-delta", "--eps", "2"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("delta"), std::string::npos);
  EXPECT_NE(missing.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"bound", "no-such-theorem", "--eps", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"bound", "fixed-delta", "--eps", "2", "--delta", "0.5"}).code,
            kExitUsage);
  EXPECT_EQ(run({"bound", "fixed-delta", "--eps", "x", "--delta", "2^-5"}).code,
            kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(CliSup, DeterministicWithOracle) {
  const auto args = {"sup",     "--seed",  "123",        "--level",
                     "5",       "--delta", "3.125e-2",   "--kind",
                     "gap-global", "--oracle", "1.52587890625e-5"};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_GE(j.at("value").get<double>(),
            j.at("oracle").at("value").get<double>());
  EXPECT_GE(j.at("oracle").at("gap").get<double>(), 0.0);
  EXPECT_EQ(j.at("seed"), 123);
  EXPECT_EQ(j.at("level"), 5);
}

TEST(CliSup, ZeroCoefficients) {
  for (const char* kind : {"gap-global", "fixed-global", "uniform"}) {
    const Result r = run({"sup", "--seed", "1", "--level", "4", "--delta",
                          "2^-5", "--kind", kind, "--zero-coefficients"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(json::parse(r.out).at("value"), 0.0) << kind;
  }
}

TEST(CliSup, Errors) {
  EXPECT_EQ(run({"sup", "--seed", "1", "--level", "4", "--delta", "2",
                 "--kind", "gap-global"}).code,
            kExitUsage);
  EXPECT_EQ(run({"sup", "--seed", "1", "--level", "4", "--delta", "2^-5",
                 "--kind", "bogus"}).code,
            kExitUsage);
}

TEST(CliAudit, Values) {
  const Result r = run({"audit", "--k", "1,2", "--eps", "1,30"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NEAR(std::stod(field(rows[1], 3)), oracle::I1_1, 1e-12);
  EXPECT_EQ(field(rows[1], 6), "false");
  EXPECT_NEAR(std::stod(field(rows[2], 3)), 1.0, 1e-6);
  EXPECT_NEAR(std::stod(field(rows[3], 3)), oracle::I2_1, 1e-12);
  EXPECT_EQ(run({"audit", "--k", "3", "--eps", "1"}).code, kExitUsage);
}

TEST(CliVerify, WritesReportAndManifest) {
  TempDir dir;
  const std::string out = dir.str();
  const Result r = run({"verify", "--theorem", "truncated-local", "--eps", "1",
                        "--delta", "2^-4", "--n", "4", "--trials", "500",
                        "--seed", "3", "--out-dir", out.c_str(), "--name",
                        "tl"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  ASSERT_TRUE(fs::exists(dir.path() / "tl.jsonl"));
  ASSERT_TRUE(fs::exists(dir.path() / "tl.csv"));
  ASSERT_TRUE(fs::exists(dir.path() / "tl.manifest.json"));
  std::ifstream mf(dir.path() / "tl.manifest.json");
  const json manifest = json::parse(mf);
  for (const char* key : {"schema_version", "tool_version", "config_hash",
                          "master_seed", "started", "finished",
                          "command_line", "outputs"}) {
    EXPECT_TRUE(manifest.contains(key)) << key;
  }
  EXPECT_EQ(manifest.at("master_seed"), 3);
  std::ifstream rf(dir.path() / "tl.jsonl");
  std::string line;
  ASSERT_TRUE(std::getline(rf, line));
  const json report = json::parse(line);
  EXPECT_EQ(report.at("trials"), 500);
  EXPECT_EQ(manifest.at("record_config_hashes"),
            json::array({report.at("config_hash")}));
}

TEST(CliVerify, DeterministicAcrossWorkers) {
  TempDir dir;
  const std::string out = dir.str();
  auto go = [&](const char* workers, const char* name) {
    return run({"verify", "--theorem", "block-local", "--eps", "1", "--m", "4",
                "--trials", "300", "--seed", "9", "--workers", workers,
                "--out-dir", out.c_str(), "--name", name});
  };
  ASSERT_EQ(go("1", "a").code, kExitOk);
  ASSERT_EQ(go("2", "b").code, kExitOk);
  auto slurp = [&](const char* file) {
    std::ifstream in(dir.path() / file);
    return json::parse(in);
  };
  std::ifstream a(dir.path() / "a.jsonl"), b(dir.path() / "b.jsonl");
  std::string la, lb;
  std::getline(a, la);
  std::getline(b, lb);
  json ja = json::parse(la), jb = json::parse(lb);
  for (json* j : {&ja, &jb}) {
    j->erase("wall_time");
    j->at("config").erase("workers");
  }
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(slurp("a.manifest.json").at("config_hash"),
            slurp("b.manifest.json").at("config_hash"));
}

TEST(CliVerify, ExitCodes) {
  TempDir dir;
  const std::string out = dir.str();
  EXPECT_EQ(run({"verify", "--theorem", "truncated-global", "--eps", "1",
                 "--delta", "2^-6", "--n", "4", "--trials", "0", "--out-dir",
                 out.c_str()}).code,
            kExitUsage);
  const Result bad = run({"verify", "--theorem", "truncated-local", "--eps",
                          "1", "--delta", "2^-4", "--n", "4", "--trials",
                          "1000", "--bound-scale", "1e-6", "--out-dir",
                          out.c_str(), "--name", "bad"});
  EXPECT_EQ(bad.code, kExitViolated) << bad.err;
  EXPECT_TRUE(fs::exists(dir.path() / "bad.jsonl"));
}

TEST(CliVerify, ConfigFile) {
  TempDir dir;
  const fs::path cfg = dir.path() / "cfg.json";
  {
    std::ofstream f(cfg);
    f << R"([{"theorem": "tail", "n": 4, "d": 1, "J": 8, "trials": 200},
             {"theorem": "truncated_local", "epsilon": 1, "delta": "2^-10",
              "n": 4, "trials": 200}])";
  }
  const std::string out = dir.str();
  const Result r = run({"verify", "--config", cfg.string().c_str(), "--out-dir",
                        out.c_str(), "--name", "batch"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(dir.path() / "batch.jsonl");
  int count = 0;
  for (std::string l; std::getline(in, l);) ++count;
  EXPECT_EQ(count, 2);
  std::ofstream(cfg) << R"({"theorem": "tail", "unknown_key": 1})";
  EXPECT_EQ(run({"verify", "--config", cfg.string().c_str(), "--out-dir",
                 out.c_str()}).code,
            kExitUsage);
}

TEST(CliVerify, OutputDirFromEnvironment) {
  TempDir dir;
  ::setenv("LCBM_OUTPUT_DIR", dir.str().c_str(), 1);
  const Result r = run({"verify", "--theorem", "tail", "--n", "4", "--d", "1",
                        "--J", "6", "--trials", "50", "--name", "env"});
  ::unsetenv("LCBM_OUTPUT_DIR");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "env.jsonl"));
  EXPECT_TRUE(fs::exists(dir.path() / "env.manifest.json"));
}

TEST(CliOracleCompare, SmallSweepPasses) {
  const Result r = run({"oracle-compare", "--seeds", "3", "--levels", "3,4",
                        "--deltas", "2^-5", "--resolution", "2^-12"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(rows.size(), 1u + 3 * 2 * 1 * 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(field(rows[i], 7), "true") << rows[i];
    EXPECT_EQ(field(rows[i], 8), "true") << rows[i];
  }
}

TEST(Fnv1a, KnownValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace lcbm
