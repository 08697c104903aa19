#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hermlab/cli.hpp"

using namespace hermlab;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result hl(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string item; std::getline(ls, item, ',');) f.push_back(item);
    rows.push_back(f);
  }
  return rows;
}

TEST(Cli, EvalFubiniStudyOrigin) {
  const Result r = hl({"eval", "--metric", "fubini_study", "--n", "2", "--point", "0,0;0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["s"].get<double>(), 6.0, 1e-12);
  EXPECT_NEAR(j["s_hat"].get<double>(), 6.0, 1e-12);
  EXPECT_NEAR(j["H"]["min"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["H"]["max"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(j["constant_H"]["verdict"], true);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(hl({"eval", "--metric", "bergman", "--n", "2", "--point", "2,0;0,0"}).code, 3);
  EXPECT_EQ(hl({"eval", "--metric", "fubini_study", "--n", "2", "--point", "nan,0;0,0"}).code, 4);
  EXPECT_EQ(hl({"eval", "--metric", "nope", "--n", "2", "--point", "0,0;0,0"}).code, 2);
  EXPECT_EQ(hl({"eval", "--metric", "flat", "--point", "0,0;0,0"}).code, 2);
  EXPECT_EQ(hl({"eval", "--metric", "flat", "--n", "2", "--point", "0,0;x"}).code, 2);
  EXPECT_EQ(hl({"eval", "--metric", "flat", "--n", "3", "--point", "0,0;0,0"}).code, 2);
  EXPECT_EQ(hl({"eval", "--metric", "flat", "--n", "2"}).code, 2);
  EXPECT_EQ(hl({"bogus"}).code, 2);
  EXPECT_EQ(hl({}).code, 2);
  EXPECT_EQ(hl({"--help"}).code, 0);
  EXPECT_EQ(hl({"verify", "--metric", "flat", "--n", "2", "--checks", "nope"}).code, 2);
  EXPECT_EQ(hl({"list", "--format", "xml"}).code, 2);
  const Result bad = hl({"eval", "--metric", "bergman", "--n", "2", "--point", "2,0;0,0"});
  EXPECT_NE(bad.err.find("domain"), std::string::npos);
  EXPECT_TRUE(bad.out.empty());
}

TEST(Cli, VerifyPassesAndFails) {
  const Result ok = hl({"verify", "--metric", "example31", "--n", "3", "--count", "20", "--seed", "7", "--tol", "1e-6"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["points"].size(), 20u);
  // the star identities sit at roundoff, above an impossible tolerance
  EXPECT_EQ(hl({"verify", "--metric", "example31", "--n", "3", "--count", "3", "--tol", "1e-30"}).code, 1);
  // explicit points are validated before any work
  const Result dom = hl({"verify", "--metric", "bergman", "--n", "2", "--point", "0.1,0;0,0", "--point", "3,0;0,0"});
  EXPECT_EQ(dom.code, 3);
  EXPECT_TRUE(dom.out.empty());
  EXPECT_NE(dom.err.find("domain"), std::string::npos);
}

TEST(Cli, VerifyFlatIsZero) {
  const Result r = hl({"verify", "--metric", "flat", "--n", "3", "--checks", "lee,tau1", "--count", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"]["lee"]["max_residual"].get<double>(), 0.0);
  EXPECT_EQ(j["checks"]["tau1"]["max_residual"].get<double>(), 0.0);
}

TEST(Cli, CustomSpecFileUsesFiniteDifferences) {
  const auto path = std::filesystem::temp_directory_path() / "hermlab_cli_custom.json";
  {
    std::ofstream f(path);
    // e^{|z|^2 / 2} times the flat metric
    const std::string r2 = R"({"op":"+","args":[{"op":"abs2","arg":{"var":"z","k":1}},)"
                           R"({"op":"abs2","arg":{"var":"z","k":2}}]})";
    const std::string e = R"({"op":"exp","arg":{"op":"*","args":[0.5,)" + r2 + "]}}";
    f << R"({"n":2,"entries":[{"i":1,"j":1,"expr":)" << e << R"(},{"i":2,"j":2,"expr":)" << e << "}]}";
  }
  const Result r = hl({"verify", "--metric", "custom", "--spec-file", path.string(), "--count", "4", "--checks",
                       "lee,tau1,lck-ricci"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["jet"], "fd");
  EXPECT_EQ(j["tol"].get<double>(), 1e-4);
  EXPECT_EQ(hl({"verify", "--metric", "custom", "--spec-file", path.string(), "--n", "3"}).code, 2);
  EXPECT_EQ(hl({"verify", "--metric", "flat", "--n", "2", "--spec-file", path.string()}).code, 2);
  EXPECT_EQ(hl({"verify", "--metric", "custom", "--spec-file", path.string(), "--jet", "analytic"}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, ScanExample31ConstantFollowsExponential) {
  const Result r = hl({"scan", "--metric", "example31", "--n", "2", "--param", "c=1", "--grid", "1:0:2:21",
                       "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 22u);
  const auto& head = rows[0];
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(head.begin(), head.end(), name) - head.begin());
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][col("re_z1")]);
    EXPECT_NEAR(std::stod(rows[i][col("c")]), -std::exp(-x * x), 1e-8) << x;
    EXPECT_EQ(rows[i][col("constant_H")], "true");
  }
}

TEST(Cli, ScanExample32AndFlat) {
  const Result r = hl({"scan", "--metric", "example32", "--n", "3", "--count", "8", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : nlohmann::json::parse(r.out)["rows"]) {
    EXPECT_NEAR(row["constant_H"]["c"].get<double>(), 0.0, 1e-10);
    EXPECT_GT(row["max_abs_R"].get<double>(), 0.5);
    EXPECT_LT(row["max_abs_K"].get<double>(), 1e-8);
  }
  const Result f = hl({"scan", "--metric", "flat", "--n", "2", "--count", "4"});
  for (const auto& row : nlohmann::json::parse(f.out)["rows"]) {
    EXPECT_EQ(row["s"].get<double>(), 0.0);
    EXPECT_EQ(row["max_abs_R"].get<double>(), 0.0);
  }
}

TEST(Cli, ListAndOutputFile) {
  const Result r = hl({"list"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["id"], "flat");
  EXPECT_EQ(csv_rows(hl({"list", "--format", "csv"}).out).size(), j.size() + 1);

  const auto path = std::filesystem::temp_directory_path() / "hermlab_cli_out.json";
  const Result w = hl({"eval", "--metric", "flat", "--n", "2", "--point", "0.1,0;0,0.2", "--output", path.string()});
  ASSERT_EQ(w.code, 0);
  EXPECT_TRUE(w.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(nlohmann::json::parse(in)["n"], 2);
  std::filesystem::remove(path);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"verify", "--metric", "example33", "--n", "2", "--count", "6", "--format", "csv"};
  EXPECT_EQ(hl(args).out, hl(args).out);
  const std::vector<std::string> scan{"scan", "--metric", "random_poly", "--n", "3", "--count", "5", "--param", "seed=3"};
  EXPECT_EQ(hl(scan).out, hl(scan).out);
}

#ifdef HERMLAB_BINARY
TEST(Cli, BinaryRuns) {
  const std::string cmd = std::string(HERMLAB_BINARY) + " eval --metric fubini_study --n 2 --point '0,0;0,0' --format text";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, p)) out += buf;
  EXPECT_EQ(pclose(p), 0);
  EXPECT_NE(out.find("s              6"), std::string::npos) << out;
  const std::string bad = std::string(HERMLAB_BINARY) + " eval --metric bergman --n 2 --point '2,0;0,0' 2>/dev/null";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
}
#endif

}  // namespace
