#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qha::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(QHA_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify exit codes") {
    CHECK(run({"verify", "--scenario", "wh:2"}).code == 0);
    CHECK(run({"verify", "--scenario", fixture("broken_measure.ini")}).code == 1);
    const auto missing = run({"verify", "--scenario", fixture("does_not_exist.ini")});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("does_not_exist") != std::string::npos);
    CHECK(run({"verify", "--scenario", "gabor:3"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"verify", "--all", "--scenario", "wh:2"}).code == 2);
    CHECK(run({"verify", "--scenario", "wh:2", "--format", "yaml"}).code == 2);
    CHECK(run({}).code == 2);
  }

  TEST_CASE("scenario files") {
    for (const char* f : {"wh4.ini", "cosets.ini", "twisted_4_1.ini"})
      CHECK(run({"verify", "--scenario", fixture(f)}).code == 0);
  }

  TEST_CASE("structured report") {
    const auto r = run({"verify", "--scenario", "wh:2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["pass"] == true);
    const auto& s = doc["scenarios"][0];
    CHECK(s["id"] == "wh:2");
    CHECK(s["spec"].get<std::string>().find("[group]") != std::string::npos);
    for (const auto& c : s["checks"])
      for (const char* key : {"name", "anchor", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass"}) CHECK(c.contains(key));
    CHECK(run({"verify", "--scenario", "wh:2", "--format", "json"}).out == r.out);
  }

  TEST_CASE("seed override and QHA_SEED") {
    const auto base = run({"verify", "--scenario", "wh:2", "--format", "json"}).out;
    const auto flagged = run({"verify", "--scenario", "wh:2", "--format", "json", "--seed", "5"}).out;
    CHECK(flagged != base);
    ::setenv("QHA_SEED", "5", 1);
    const auto env = run({"verify", "--scenario", "wh:2", "--format", "json"}).out;
    ::setenv("QHA_SEED", "not-a-number", 1);
    const auto bad = run({"verify", "--scenario", "wh:2"});
    ::unsetenv("QHA_SEED");
    CHECK(env == flagged);
    CHECK(bad.code == 2);
  }

  TEST_CASE("tolerance overrides") {
    const auto r = run({"verify", "--scenario", "wh:2", "--tol-rel", "1e-30", "--tol-abs", "1e-300"});
    CHECK(r.code == 1);
    CHECK(run({"verify", "--scenario", "wh:2", "--tol-rel", "-1"}).code == 2);
  }

  TEST_CASE("duflo command") {
    for (const auto& [id, value] : std::vector<std::pair<std::string, double>>{
             {"wh:4", 0.25}, {"translation:cyclic(6)", 1.0}, {"irrep:s3:std", 2.0}}) {
      const auto r = run({"duflo", "--scenario", id, "--format", "json"});
      REQUIRE(r.code == 0);
      const auto doc = nlohmann::json::parse(r.out);
      const auto& s = doc["scenarios"][0];
      CHECK(s["scalar"] == true);
      CHECK(std::abs(s["scalar_value"].get<double>() - value) <= 1e-9 * value);
      CHECK(s["expected"]["pass"] == true);
    }
    const auto text = run({"duflo", "--scenario", "wh:4"});
    CHECK(text.out.find("spectrum") != std::string::npos);
    CHECK(text.out.find("cross-check") != std::string::npos);
    CHECK(text.out.find("semi-invariance") != std::string::npos);
  }

  TEST_CASE("refine command") {
    CHECK(run({"refine", "--scenario", "wh:2"}).code == 2);
    CHECK(run({"refine", "--scenario", "affine-wavelet:1", "--grids", "1"}).code == 2);
    CHECK(run({"refine", "--scenario", "affine-wavelet:1", "--grids", "2,1"}).code == 2);
    const auto r = run({"refine", "--scenario", "affine-wavelet:1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& rows = doc["scenarios"][0]["rows"];
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i]["orthogonality"].get<double>() < rows[i - 1]["orthogonality"].get<double>());
      CHECK(rows[i]["semi_invariance"].get<double>() < rows[i - 1]["semi_invariance"].get<double>());
    }
  }

  TEST_CASE("list and --out") {
    const auto l = run({"list"});
    CHECK(l.code == 0);
    CHECK(l.out.find("wh:8") != std::string::npos);
    const auto path = std::filesystem::temp_directory_path() / "qha_cli_out.txt";
    CHECK(run({"verify", "--scenario", "wh:2", "--out", path.string()}).code == 0);
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str().find("ALL PASS") != std::string::npos);
    std::filesystem::remove(path);
  }
}
