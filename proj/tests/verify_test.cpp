#include "hhh/errors.hpp"
#include "hhh/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>

using namespace hhh;

namespace {

const GradedSeries q = GradedSeries::q();
const GradedSeries t = GradedSeries::t();

std::shared_ptr<const BaseCaseProvider> derivingProvider(IdealOracle& oracle) {
  return std::make_shared<const BaseCaseProvider>(BaseCaseTable{}, oracleDeriver(oracle));
}

}  // namespace

TEST_CASE("positivity reports") {
  const PositivityReport ok = positivityCheck(overOneMinusQ(1 + q * GradedSeries::t(-1), 4), 8, "x");
  CHECK(ok.pass);
  CHECK(ok.minCoefficient == 0);
  CHECK(toText(ok) == "positivity x order 8 min 0 pass\n");

  const PositivityReport bad = positivityCheck(1 - q, 4, "y");
  CHECK_FALSE(bad.pass);
  CHECK(bad.minCoefficient == -1);
  CHECK(toText(bad) == "positivity y order 4 min -1 fail\n");

  CHECK(positivityCheck(closed::k4Closed(), 10).pass);
}

TEST_CASE("engine against the ideal on small cases") {
  Engine engine;
  IdealOracle oracle;

  const MatchReport unit = compareWithIdeal(engine, oracle, {0, 0, 0, 0}, 8);
  CHECK(unit.pass);
  CHECK(unit.shift == Monomial{0, 0, 0});

  const MatchReport pair = compareWithIdeal(engine, oracle, {0, 0, 1, 1}, 10);
  CHECK(pair.pass);
  CHECK(pair.shift == Monomial{0, -1, 0});
  CHECK(toText(pair) == "match d 0,0,1,1 max-total 10 shift q^0 t^-1 mismatches 0 pass\n");

  for (const CoxeterDegrees d : {CoxeterDegrees{0, 1, 1, 1}, CoxeterDegrees{0, 1, 2, 2}, CoxeterDegrees{0, 2, 2, 2}}) {
    const MatchReport r = compareWithIdeal(engine, oracle, d, 8);
    CHECK(r.pass);
    CHECK(r.shift == Monomial{0, -(2 * d.d2() + d.d3()), 0});
    CHECK(compareWithIdeal(engine, oracle, d, 6).shift == r.shift);
  }

  const nlohmann::json j = nlohmann::json::parse(toJson(pair));
  CHECK(j["maxTotal"] == 10);
  CHECK(j["shift"]["t"] == -1);
  CHECK(j["verdict"] == "pass");
  CHECK(j["mismatches"].empty());
}

TEST_CASE("engine against the ideal with a derived base case") {
  IdealOracle oracle;
  Engine engine(derivingProvider(oracle));
  const MatchReport r = compareWithIdeal(engine, oracle, {1, 1, 1, 1}, 8);
  CHECK(r.pass);
  CHECK(r.shift == Monomial{0, -6, 0});
  CHECK_THROWS_AS(compareWithIdeal(engine, oracle, {1, 1, 1, 1}, 3), AmbiguousShift);

  Engine bare;
  CHECK_THROWS_AS(compareWithIdeal(bare, oracle, {1, 1, 1, 1}, 8), MissingBaseCase);
}

TEST_CASE("a wrong base case is reported") {
  IdealOracle oracle;
  const DerivedBaseCase right = deriveFt4A0(1, oracle);
  BaseCaseTable table;
  table.insert({1, EvalMode::A0, right.value + overOneMinusQ(GradedSeries::monomial({2, -6, 0}), 4), "wrong"});
  Engine engine(std::make_shared<const BaseCaseProvider>(table));
  const MatchReport r = compareWithIdeal(engine, oracle, {1, 1, 1, 1}, 8);
  CHECK_FALSE(r.pass);
  REQUIRE_FALSE(r.mismatches.empty());
  for (const Mismatch& m : r.mismatches) CHECK(m.engine != BigInt(m.oracle));
  CHECK(toText(r).find("fail") != std::string::npos);
}

TEST_CASE("closed-form identities") {
  const CrossCheckReport report = closedFormCrossChecks();
  CHECK(report.pass());
  CHECK(report.failures().empty());
  CHECK(report.checks.size() > 50);
  CHECK(closedFormCrossChecks(2, 2).checks.size() < report.checks.size());
}

TEST_CASE("shipped base cases agree with the ideal beyond their own closure") {
  const auto shipped = std::filesystem::path(HHH_DATA_DIR) / "ft4_a0.basecase";
  if (!std::filesystem::exists(shipped)) return;
  IdealOracle oracle;
  Engine engine(std::make_shared<const BaseCaseProvider>(importBaseCases(shipped)));
  const MatchReport r = compareWithIdeal(engine, oracle, {2, 2, 3, 3}, 12);
  CHECK(r.pass);
  CHECK(r.shift == Monomial{0, -13, 0});
}
