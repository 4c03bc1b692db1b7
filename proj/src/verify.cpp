#include "hhh/verify.hpp"

#include "hhh/errors.hpp"

#include <json.hpp>

#include <limits>
#include <sstream>

namespace hhh {

PositivityReport positivityCheck(const GradedSeries& x, int order, std::string id) {
  PositivityReport r;
  r.id = std::move(id);
  r.order = order;
  r.minCoefficient = expand(x, order).minCoefficient();
  r.pass = r.minCoefficient >= 0;
  return r;
}

namespace {

// Coefficient of q^p t^r in numerator / ((1-q)^e (1-t)^4).
BigInt engineCoefficient(const LaurentPoly& numerator, int e, int p, int r) {
  BigInt total = 0;
  for (const auto& [m, c] : numerator.terms()) {
    const int dp = p - m.q, dr = r - m.t;
    if (dp < 0 || dr < 0) continue;
    const BigInt wq = e == 0 ? BigInt(dp == 0 ? 1 : 0) : binomial(e - 1 + dp, dp);
    if (wq == 0) continue;
    total += c * wq * binomial(3 + dr, dr);
  }
  return total;
}

}  // namespace

MatchReport compareWithIdeal(Engine& engine, IdealOracle& oracle, const CoxeterDegrees& d, int maxTotal) {
  MatchReport report;
  report.d = d;
  report.maxTotal = maxTotal;

  const GradedSeries hhh = engine.hhhCoxeter(d, EvalMode::A0);
  const BidegreeTable table = oracle.hilbTable(d, maxTotal);
  if (hhh.isZero()) throw AmbiguousShift("engine series is zero");

  // Clear negative t-powers.
  int minT = std::numeric_limits<int>::max();
  for (const auto& [m, c] : hhh.numerator().terms()) minT = std::min(minT, m.t);
  const int clear = std::max(0, -minT);
  const LaurentPoly numerator = shift(hhh.numerator(), {0, clear, 0});

  // Lowest nonzero entry in (p + r, p) order on each side. On the engine side it
  // is the lowest numerator term, which no other term reaches.
  const Monomial engineLow = [&] {
    Monomial best = numerator.terms().begin()->first;
    for (const auto& [m, c] : numerator.terms())
      if (std::make_pair(m.q + m.t, m.q) < std::make_pair(best.q + best.t, best.q)) best = m;
    return best;
  }();
  int p0 = -1, r0 = -1;
  for (int total = 0; total <= maxTotal && p0 < 0; ++total)
    for (int p = 0; p <= total; ++p)
      if (table.at(p, total - p) != 0) {
        p0 = p;
        r0 = total - p;
        break;
      }
  if (p0 < 0) throw AmbiguousShift("oracle table is zero up to total degree " + std::to_string(maxTotal));

  const int alpha = p0 - engineLow.q;
  const int beta = r0 - engineLow.t;
  report.shift = {-alpha, -(beta + clear), 0};

  for (int total = 0; total <= maxTotal; ++total)
    for (int p = 0; p <= total; ++p) {
      const int r = total - p;
      const BigInt e = engineCoefficient(numerator, hhh.denomExp(), p - alpha, r - beta);
      const std::int64_t o = table.at(p, r);
      if (e != BigInt(o)) report.mismatches.push_back({{p, r}, e, o});
    }

  bool nonnegative = true;
  for (const auto& [m, c] : hhh.numerator().terms())
    if (m.q - report.shift.q < 0 || m.t - report.shift.t < 0) nonnegative = false;
  report.pass = report.mismatches.empty() && nonnegative;
  return report;
}

// ---------------------------------------------------------------------------
// Reports

std::string toText(const PositivityReport& r) {
  std::ostringstream out;
  out << "positivity " << (r.id.empty() ? "-" : r.id) << " order " << r.order << " min " << r.minCoefficient
      << ' ' << (r.pass ? "pass" : "fail") << '\n';
  return out.str();
}

std::string toText(const MatchReport& r) {
  std::ostringstream out;
  out << "match d " << r.d.toString() << " max-total " << r.maxTotal << " shift q^" << r.shift.q << " t^"
      << r.shift.t << " mismatches " << r.mismatches.size() << ' ' << (r.pass ? "pass" : "fail") << '\n';
  for (const auto& m : r.mismatches)
    out << "  mismatch " << m.at.p << ' ' << m.at.r << " engine " << m.engine << " oracle " << m.oracle << '\n';
  return out.str();
}

std::string toJson(const MatchReport& r) {
  nlohmann::ordered_json j;
  j["d"] = r.d.values();
  j["maxTotal"] = r.maxTotal;
  j["shift"] = {{"q", r.shift.q}, {"t", r.shift.t}};
  j["verdict"] = r.pass ? "pass" : "fail";
  auto mismatches = nlohmann::ordered_json::array();
  for (const auto& m : r.mismatches)
    mismatches.push_back({{"p", m.at.p}, {"r", m.at.r}, {"engine", m.engine.str()}, {"oracle", m.oracle}});
  j["mismatches"] = std::move(mismatches);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Closed-form identities

bool CrossCheckReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<IdentityCheck> CrossCheckReport::failures() const {
  std::vector<IdentityCheck> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c);
  return out;
}

CrossCheckReport closedFormCrossChecks(int maxN, int maxK) {
  CrossCheckReport report;
  auto check = [&](std::string name, const GradedSeries& lhs, const GradedSeries& rhs) {
    IdentityCheck c{std::move(name), lhs == rhs, {}, {}};
    if (!c.pass) {
      c.lhs = serialize(lhs);
      c.rhs = serialize(rhs);
    }
    report.checks.push_back(std::move(c));
  };

  check("k4 closed form = closure product", closed::k4Closed(), closed::closureProduct(4));

  const Monomial ratio{1, -3, 0};
  for (int n = 0; n <= maxN; ++n) {
    check("geometric factor n=" + std::to_string(n),
          geomSum(ratio, n) * (1 - GradedSeries::monomial(ratio)),
          1 - GradedSeries::monomial({n, -3 * n, 0}));
    check("C closed form = twisted form at k=0, n=" + std::to_string(n), closed::cUntwisted(n),
          closed::ctw3(n, 0));
    for (int k = 0; k <= maxK; ++k)
      check("twisted C closed form = recursion, n=" + std::to_string(n) + " k=" + std::to_string(k),
            closed::ctw3(n, k), closed::ctw3ByRecursion(n, k));
  }

  Engine engine;
  const GradedSeries qt2 = GradedSeries::monomial({1, -2, 0});
  for (int n = 1; n <= maxN; ++n)
    for (int k = 0; k <= maxK; ++k) {
      const GradedSeries twisted = GradedSeries::t(-2) * engine.evalCtw3(n - 1, k + 1, EvalMode::FullA) +
                                   qt2 * engine.evalBtw3(n - 1, k + 1, EvalMode::FullA);
      const GradedSeries oneStep = GradedSeries::t(-2) * engine.evalCtw3(n, k, EvalMode::FullA) + qt2 * twisted;
      check("twisted B(n,0) one-step = two-step, n=" + std::to_string(n) + " k=" + std::to_string(k), oneStep,
            engine.evalBtw3(n, k, EvalMode::FullA));
    }
  return report;
}

}  // namespace hhh
