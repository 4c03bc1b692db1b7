#include "hhh/cli.hpp"
#include "hhh/engine.hpp"
#include "hhh/torus_base.hpp"
#include "temp_dir.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace hhh;
using hhh::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

void writeFile(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("hhh subcommand") {
  const Run pair = run({"hhh", "--d", "0,0,1,1", "--format", "text"});
  CHECK(pair.code == kExitOk);
  CHECK(pair.out == serialize(Engine().hhhCoxeter({0, 0, 1, 1}, EvalMode::FullA)));
  CHECK(pair.out.rfind("series v1 denom 4\n1 0 -1 1\n", 0) == 0);
  CHECK(run({"hhh", "--d", "0,0,1,1", "--format", "text"}).out == pair.out);

  const Run a0 = run({"hhh", "--d", "0,1,2,2", "--a0", "--format", "json"});
  CHECK(a0.code == kExitOk);
  CHECK(nlohmann::json::parse(a0.out)["format"] == "series");

  const Run series = run({"hhh", "--d", "0,0,0,0", "--series", "1"});
  CHECK(series.code == kExitOk);
  CHECK(series.out.rfind("expansion v1 order 1\n", 0) == 0);

  CHECK(run({"hhh", "--d", "0,0,2,2", "--format", "latex"}).out.rfind("\\frac{", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({"hhh", "--d", "2,1,3,3"}).code == kExitInvalidInput);
  CHECK(run({"hhh", "--d", "1,2,3"}).code == kExitInvalidInput);
  CHECK(run({"hhh", "--d", "0,0,x,1"}).code == kExitInvalidInput);
  CHECK(run({"hhh", "--d", "0,0,1,1", "--format", "xml"}).code == kExitInvalidInput);
  CHECK(run({"hhh"}).code == kExitInvalidInput);
  CHECK(run({}).code == kExitInvalidInput);
  CHECK(run({"frobnicate"}).code == kExitInvalidInput);

  const Run missing = run({"hhh", "--d", "1,1,1,1"});
  CHECK(missing.code == kExitMissingBaseCase);
  CHECK(missing.err.find("missing base case") != std::string::npos);

  CHECK(run({"hhh", "--help"}).code == kExitOk);
}

TEST_CASE("hilb and verify") {
  const Run hilb = run({"hilb", "--d", "0,0,1,1", "--max-total", "2"});
  CHECK(hilb.code == kExitOk);
  CHECK_FALSE(hilb.out.empty());
  const Run json = run({"hilb", "--d", "0,0,1,1", "--max-total", "2", "--format", "json"});
  CHECK(nlohmann::json::parse(json.out)["maxTotal"] == 2);
  CHECK(run({"hilb", "--d", "0,0,1,1", "--format", "latex"}).code == kExitInvalidInput);

  const Run verify = run({"verify", "--d", "0,1,1,2", "--max-total", "8"});
  CHECK(verify.code == kExitOk);
  CHECK(verify.out.find("mismatches 0 pass") != std::string::npos);

  const Run verifyJson = run({"verify", "--d", "0,0,1,1", "--max-total", "6", "--format", "json"});
  CHECK(verifyJson.code == kExitOk);
  CHECK(nlohmann::json::parse(verifyJson.out)["shift"]["t"] == -1);
}

TEST_CASE("base-case files through the command line") {
  TempDir dir;
  BaseCaseTable table;
  table.insert({1, EvalMode::A0, overOneMinusQ(1 + GradedSeries::q() * GradedSeries::t(-6), 4), "x"});
  const std::string text = serializeBaseCases(table);
  writeFile(dir.path / "good.basecase", text);

  const Run imported = run({"basecase", "import", (dir.path / "good.basecase").string()});
  CHECK(imported.code == kExitOk);
  CHECK(imported.out.find("n 1 mode a0 denom 4 terms 2") != std::string::npos);
  CHECK(imported.out.find("fingerprint " + table.fingerprint()) != std::string::npos);

  const Run listed = run({"basecase", "list", "--base", (dir.path / "good.basecase").string()});
  CHECK(listed.code == kExitOk);
  CHECK(listed.out.find("n 1 mode a0") != std::string::npos);

  std::string tampered = text;
  tampered.replace(tampered.find("term 1 1 -6 0"), 13, "term 2 1 -6 0");
  writeFile(dir.path / "bad.basecase", tampered);
  const Run rejected = run({"basecase", "import", (dir.path / "bad.basecase").string()});
  CHECK(rejected.code == kExitInvalidInput);
  CHECK(rejected.err.find("checksum") != std::string::npos);
  CHECK(run({"basecase", "import", (dir.path / "none.basecase").string()}).code == kExitInvalidInput);

  // The imported a0 entry feeds the engine.
  const Run a0 = run({"hhh", "--d", "1,1,1,1", "--a0", "--base", (dir.path / "good.basecase").string()});
  CHECK(a0.code == kExitOk);
  CHECK(a0.out == serialize(table.find(1, EvalMode::A0)->value));

  const Run derived = run({"basecase", "derive", "--n", "1", "--out", (dir.path / "d.basecase").string()});
  CHECK(derived.code == kExitOk);
  const BaseCaseTable roundTrip = importBaseCases(dir.path / "d.basecase");
  IdealOracle oracle;
  CHECK(roundTrip.find(1, EvalMode::A0)->value == deriveFt4A0(1, oracle).value);
  CHECK(run({"basecase", "derive", "--n", "0"}).code == kExitInvalidInput);
}

TEST_CASE("cache directory from the environment") {
  TempDir dir;
  ::setenv("HHH_CACHE", dir.path.c_str(), 1);
  const Run cold = run({"hhh", "--d", "0,1,2,2"});
  const Run warm = run({"hhh", "--d", "0,1,2,2"});
  ::unsetenv("HHH_CACHE");
  CHECK(cold.code == kExitOk);
  CHECK(warm.out == cold.out);
  CHECK(std::distance(std::filesystem::directory_iterator(dir.path), {}) > 0);
}

TEST_CASE("selftest subcommand") {
  const Run one = run({"selftest", "--criterion", "1"});
  CHECK(one.code == kExitOk);
  CHECK(one.out.rfind("criterion 1 PASS", 0) == 0);
}
