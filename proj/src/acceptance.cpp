#include "hhh/acceptance.hpp"

#include "hhh/cache.hpp"
#include "hhh/engine.hpp"
#include "hhh/errors.hpp"
#include "hhh/ideal_oracle.hpp"
#include "hhh/parallel.hpp"
#include "hhh/torus_base.hpp"
#include "hhh/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace hhh {

namespace {

const std::vector<CoxeterDegrees>& matchGrid() {
  static const std::vector<CoxeterDegrees> grid{{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 1, 1}, {0, 1, 2, 2},
                                                {0, 2, 2, 2}, {1, 1, 1, 1}, {1, 1, 2, 2}};
  return grid;
}

int matchOrder(std::size_t index) { return index < 3 ? 10 : 8; }

struct Session {
  explicit Session(const AcceptanceOptions& options)
      : threads(std::max(1u, options.threads)),
        cache(options.cacheDir ? std::make_unique<Cache>(*options.cacheDir) : nullptr),
        oracle(OracleOptions{Ambient::Reduced, RankMethod::Exact, threads, cache.get()}),
        provider(std::make_shared<const BaseCaseProvider>(
            options.baseFile ? importBaseCases(*options.baseFile) : BaseCaseTable{}, liveDeriver(oracle))),
        engine(provider, cache.get()) {}

  // Only n = 1 is cheap enough to reconstruct during the suite.
  static BaseCaseProvider::Deriver liveDeriver(IdealOracle& oracle) {
    return [&oracle](int n) -> DerivedBaseCase {
      if (n > 1)
        throw MissingBaseCase("a0 base case for n = " + std::to_string(n) + " must come from a base-case file");
      return deriveFt4A0(n, oracle);
    };
  }

  unsigned threads;
  std::unique_ptr<Cache> cache;
  IdealOracle oracle;
  std::shared_ptr<const BaseCaseProvider> provider;
  Engine engine;
};

struct Outcome {
  std::ostringstream out;
  bool pass = true;
  std::string failure;

  void check(bool ok, const std::string& line) {
    out << (ok ? "ok   " : "FAIL ") << line << '\n';
    if (!ok && pass) {
      pass = false;
      failure = line;
    }
  }
};

GradedSeries kA() { return GradedSeries::a(); }
GradedSeries kT() { return GradedSeries::t(); }

void closedForms(Session&, Outcome& o) {
  const CrossCheckReport report = closedFormCrossChecks(6, 6);
  for (const auto& c : report.checks) {
    o.check(c.pass, c.name);
    if (!c.pass) o.out << c.lhs << c.rhs;
  }
}

void baseCases(Session& s, Outcome& o) {
  const GradedSeries oneMinusQ = 1 - GradedSeries::q();
  for (int k = 0; k <= 8; ++k) {
    const GradedSeries lhs = (GradedSeries::t(2) + kA()) * (kT() + kA()) * oneMinusQ * ft2(k);
    o.check(lhs == s.engine.evalCtw3(0, k, EvalMode::FullA), "Ctw3(0," + std::to_string(k) + ") closes K3 around ft2");
  }
  GradedSeries previous;
  for (int k = 0; k <= 10; ++k) {
    const GradedSeries u = oneMinusQ * ft2(k);
    const GradedSeries expected =
        k == 0 ? overOneMinusQ(pow(1 + kA(), 2))
               : GradedSeries::t(-1) * (kT() + kA()) * (1 + kA()) + GradedSeries::monomial({1, -1, 0}) * previous;
    o.check(u == expected, "u(" + std::to_string(k) + ") recursion");
    previous = u;
  }
}

void splitLinks(Session& s, Outcome& o) {
  const GradedSeries unknots = pow(overOneMinusQ(1 + kA()), 2);
  for (int k = 0; k <= 8; ++k) {
    const CoxeterDegrees d(0, 0, k, k);
    o.check(s.engine.hhhCoxeter(d, EvalMode::FullA) == ft2(k) * unknots, "HHH(" + d.toString() + ") = ft2 * unknot^2");
  }
}

void positivity(Session& s, Outcome& o) {
  struct Case {
    CoxeterDegrees d;
    EvalMode mode;
  };
  std::vector<Case> cases;
  for (int d2 = 0; d2 <= 4; ++d2)
    for (int d3 = d2; d3 <= 4; ++d3) cases.push_back({{0, d2, d3, d3}, EvalMode::FullA});
  for (int d1 = 0; d1 <= 3; ++d1)
    for (int d2 = d1; d2 <= 3; ++d2)
      for (int d3 = d2; d3 <= 3; ++d3) cases.push_back({{d1, d2, d3, d3}, EvalMode::A0});

  std::vector<std::string> lines(cases.size());
  std::vector<char> ok(cases.size(), 0);
  parallelFor(cases.size(), s.threads, [&](std::size_t i) {
    const auto& c = cases[i];
    const std::string id = c.d.toString() + " " + std::string(toString(c.mode));
    try {
      const PositivityReport r = positivityCheck(s.engine.hhhCoxeter(c.d, c.mode), 12, id);
      ok[i] = r.pass;
      lines[i] = toText(r);
    } catch (const MissingBaseCase& e) {
      lines[i] = "positivity " + id + " missing base case: " + e.what() + "\n";
    }
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::string line = lines[i];
    line.pop_back();
    o.check(ok[i], line);
  }
}

void engineVsOracle(Session& s, Outcome& o) {
  const auto& grid = matchGrid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int order = matchOrder(i);
    try {
      const MatchReport high = compareWithIdeal(s.engine, s.oracle, grid[i], order);
      const MatchReport low = compareWithIdeal(s.engine, s.oracle, grid[i], order - 2);
      std::string text = toText(high);
      text.pop_back();
      o.check(high.pass, text);
      o.check(low.pass && low.shift == high.shift,
              "shift stable between max-total " + std::to_string(order - 2) + " and " + std::to_string(order));
    } catch (const std::runtime_error& e) {
      o.check(false, "match d " + grid[i].toString() + ": " + e.what());
    }
  }
}

void reconstruction(Session& s, Outcome& o) {
  const DerivedBaseCase derived = deriveFt4A0(1, s.oracle);
  o.check(true, "ft4(1) a0 stabilized at order " + std::to_string(derived.order) + ", t-shift " +
                    std::to_string(derived.tShift));
  o.out << serialize(derived.value);

  auto live = std::make_shared<const BaseCaseProvider>(BaseCaseTable{}, oracleDeriver(s.oracle));
  Engine engine(live, s.cache.get());
  const CoxeterDegrees d(1, 1, 1, 1);
  o.check(engine.hhhCoxeter(d, EvalMode::A0) == live->ft4(1, EvalMode::A0), "HHH(1,1,1,1) a0 = ft4(1) a0");
  o.check(live->ft4(1, EvalMode::A0) == derived.value, "provider value = reconstruction");
  if (const auto* shipped = s.provider->table().find(1, EvalMode::A0))
    o.check(shipped->value == derived.value, "base-case file entry n = 1 = reconstruction");

  const auto& grid = matchGrid();
  std::vector<BidegreeTable> tables;
  for (const auto& d : grid) tables.push_back(s.oracle.hilbTable(d, 8));
  for (const auto& t : tables) {
    bool symmetric = true;
    for (int p = 0; p <= 8; ++p)
      for (int r = 0; p + r <= 8; ++r) symmetric = symmetric && t.at(p, r) == t.at(r, p);
    o.check(symmetric, "x<->y symmetry " + t.d.toString());
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto& a = grid[i].values();
      const auto& b = grid[j].values();
      if (i == j || a[0] > b[0] || a[1] > b[1] || a[2] > b[2]) continue;
      bool monotone = true;
      for (int p = 0; p <= 8; ++p)
        for (int r = 0; p + r <= 8; ++r) monotone = monotone && tables[i].at(p, r) >= tables[j].at(p, r);
      o.check(monotone, "monotone " + grid[i].toString() + " >= " + grid[j].toString());
    }
}

std::string tableBody(const BidegreeTable& t) {
  const std::string text = serialize(t);
  return text.substr(text.find('\n') + 1);
}

void lastDegree(Session& s, Outcome& o) {
  const auto& grid = matchGrid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CoxeterDegrees& d = grid[i];
    const CoxeterDegrees bumped(d.d1(), d.d2(), d.d3(), d.d3() + 2);
    const std::string pair = d.toString() + " vs " + bumped.toString();
    for (EvalMode mode : {EvalMode::A0, EvalMode::FullA}) {
      if (mode == EvalMode::FullA && d.d1() > 0) continue;
      const std::string x = serialize(s.engine.hhhCoxeter(d, mode));
      const std::string y = serialize(s.engine.hhhCoxeter(bumped, mode));
      o.check(x == y, "engine " + std::string(toString(mode)) + " " + pair + " " + sha256Hex(x).substr(0, 16));
    }
    const std::string x = tableBody(s.oracle.hilbTable(d, matchOrder(i)));
    const std::string y = tableBody(s.oracle.hilbTable(bumped, matchOrder(i)));
    o.check(x == y, "oracle " + pair + " " + sha256Hex(x).substr(0, 16));
  }
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Session&, Outcome&);
  double limitSeconds;  // 0 for none
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "closed-form identities", closedForms, 1},
      {2, "base-case consistency", baseCases, 1},
      {3, "split-link factorization", splitLinks, 0},
      {4, "positivity certificates", positivity, 60},
      {5, "engine vs ideal oracle", engineVsOracle, 600},
      {6, "a0 base-case reconstruction", reconstruction, 0},
      {7, "largest degree irrelevant", lastDegree, 0},
  };
  return list;
}

CriterionResult runOne(const Criterion& c, Session& session, bool enforceTimeLimits) {
  CriterionResult r;
  r.id = c.id;
  r.title = c.title;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(session, o);
  } catch (const std::exception& e) {
    o.check(false, std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = o.pass;
  r.failure = o.failure;
  r.transcript = o.out.str();
  if (r.pass && enforceTimeLimits && c.limitSeconds > 0 && r.seconds > c.limitSeconds) {
    r.pass = false;
    r.failure = "exceeded time limit of " + std::to_string(static_cast<int>(c.limitSeconds)) + " s";
  }
  return r;
}

std::string runTranscripts(AcceptanceOptions options) {
  options.enforceTimeLimits = false;
  Session session(options);
  std::string all;
  for (const auto& c : criteria()) {
    const CriterionResult r = runOne(c, session, false);
    all += "criterion " + std::to_string(r.id) + "\n" + r.transcript;
  }
  return all;
}

std::filesystem::path freshTempDir() {
  std::random_device rd;
  std::ostringstream name;
  name << "hhh-acceptance-" << std::hex << rd() << rd();
  auto dir = std::filesystem::temp_directory_path() / name.str();
  std::filesystem::create_directories(dir);
  return dir;
}

CriterionResult determinism(const AcceptanceOptions& options, const std::string* reference) {
  CriterionResult r;
  r.id = 8;
  r.title = "determinism";
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::vector<std::filesystem::path> dirs;
  try {
    std::string first = reference ? *reference : std::string();
    const unsigned parallel = std::max(2u, options.threads);
    for (unsigned threads : {1u, parallel}) {
      dirs.push_back(freshTempDir());
      for (const char* state : {"cold", "warm"}) {
        AcceptanceOptions run = options;
        run.threads = threads;
        run.cacheDir = dirs.back();
        const std::string text = runTranscripts(run);
        const std::string label = std::string(threads == 1 ? "serial" : "parallel") + " " + state;
        if (first.empty()) first = text;
        o.check(text == first, label + " transcript " + sha256Hex(text).substr(0, 16));
      }
    }
  } catch (const std::exception& e) {
    o.check(false, std::string("error: ") + e.what());
  }
  for (const auto& d : dirs) {
    std::error_code ec;
    std::filesystem::remove_all(d, ec);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = o.pass;
  r.failure = o.failure;
  r.transcript = o.out.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options, const std::vector<int>& only) {
  auto selected = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  std::vector<CriterionResult> results;
  std::string transcripts;
  bool all = true;
  {
    Session session(options);
    for (const auto& c : criteria()) {
      if (!selected(c.id)) {
        all = false;
        continue;
      }
      results.push_back(runOne(c, session, options.enforceTimeLimits));
      transcripts += "criterion " + std::to_string(c.id) + "\n" + results.back().transcript;
    }
  }
  if (selected(8)) results.push_back(determinism(options, all ? &transcripts : nullptr));
  return results;
}

std::string summaryLine(const CriterionResult& r) {
  std::ostringstream out;
  out << "criterion " << r.id << ' ' << (r.pass ? "PASS" : "FAIL") << ' ' << r.title << " (" << std::fixed
      << std::setprecision(2) << r.seconds << " s)";
  if (!r.pass) out << ": " << r.failure;
  return out.str();
}

std::optional<std::filesystem::path> bundledBaseFile() {
#ifdef HHH_DATA_DIR
  const std::filesystem::path file = std::filesystem::path(HHH_DATA_DIR) / "ft4_a0.basecase";
  if (std::filesystem::exists(file)) return file;
#endif
  return std::nullopt;
}

}  // namespace hhh
