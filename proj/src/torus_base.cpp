#include "hhh/torus_base.hpp"

#include "hhh/cache.hpp"
#include "hhh/errors.hpp"
#include "hhh/once_map.hpp"

#include <fstream>
#include <sstream>

namespace hhh {

namespace {

const GradedSeries kQ = GradedSeries::q();
const GradedSeries kT = GradedSeries::t();
const GradedSeries kA = GradedSeries::a();

}  // namespace

GradedSeries ft2Reduced(int k) {
  if (k < 0) throw std::invalid_argument("ft2: twist count must be nonnegative");
  // Insert K_1, grow it through one JM_2 at a time, let K_2
  // absorb the remaining twists and close both strands.
  GradedSeries u = overOneMinusQ(pow(1 + kA, 2));
  const GradedSeries grow = GradedSeries::t(-1) * (kT + kA) * (1 + kA);
  const GradedSeries stay = kQ * GradedSeries::t(-1);
  for (int i = 0; i < k; ++i) u = grow + stay * u;
  return u;
}

GradedSeries ft2(int k) { return overOneMinusQ(ft2Reduced(k)); }

// ---------------------------------------------------------------------------
// BaseCaseTable

void BaseCaseTable::insert(BaseCaseEntry entry) {
  if (entry.n < 1) throw std::invalid_argument("base-case entries start at n = 1");
  if (entry.mode == EvalMode::A0 && hasATerms(entry.value))
    throw std::invalid_argument("a0 base case for n = " + std::to_string(entry.n) + " contains a-terms");
  const BigInt lo = expand(entry.value, kPositivityOrder).minCoefficient();
  if (lo < 0)
    throw PositivityViolation("base case n = " + std::to_string(entry.n) + " (" +
                              std::string(toString(entry.mode)) + ") has coefficient " + lo.str() +
                              " below q-order " + std::to_string(kPositivityOrder));
  const auto key = std::make_pair(entry.n, entry.mode);
  if (entries_.contains(key))
    throw std::invalid_argument("duplicate base case for n = " + std::to_string(entry.n));
  entries_.emplace(key, std::move(entry));
}

const BaseCaseEntry* BaseCaseTable::find(int n, EvalMode mode) const {
  auto it = entries_.find({n, mode});
  return it == entries_.end() ? nullptr : &it->second;
}

std::string BaseCaseTable::fingerprint() const { return sha256Hex(serializeBaseCases(*this)); }

// ---------------------------------------------------------------------------
// File format

namespace {

std::string blockBody(const BaseCaseEntry& e) {
  std::ostringstream out;
  out << "family FT4\n"
      << "n " << e.n << '\n'
      << "mode " << toString(e.mode) << '\n'
      << "denom-exponent " << e.value.denomExp() << '\n';
  for (const auto& [m, c] : e.value.numerator().terms())
    out << "term " << c << ' ' << m.q << ' ' << m.t << ' ' << m.a << '\n';
  return out.str();
}

}  // namespace

std::string serializeBaseCases(const BaseCaseTable& table) {
  std::string out = "hhh-basecase v1\n";
  for (const auto& [key, entry] : table.entries()) {
    const std::string body = blockBody(entry);
    out += body;
    out += "checksum " + sha256Hex(body) + "\n";
    out += "end\n";
  }
  return out;
}

BaseCaseTable parseBaseCases(std::string_view text, std::string_view provenance) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineNo;
    return true;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("base-case line " + std::to_string(lineNo) + ": " + what);
  };
  auto expectField = [&](std::string_view name) -> std::string {
    if (!next()) throw fail("unexpected end of file, expected `" + std::string(name) + "`");
    if (line.rfind(std::string(name) + " ", 0) != 0) throw fail("expected `" + std::string(name) + "`");
    return line.substr(name.size() + 1);
  };
  auto toInt = [&](const std::string& s) -> int {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw fail("not an integer: " + s);
    }
    if (used != s.size()) throw fail("not an integer: " + s);
    return v;
  };

  if (!next() || line != "hhh-basecase v1") throw fail("missing `hhh-basecase v1` header");

  BaseCaseTable table;
  while (next()) {
    if (line.empty()) throw fail("blank line");
    std::string body;
    if (line != "family FT4") throw fail("expected `family FT4`");
    body += line + "\n";
    const int n = toInt(expectField("n"));
    body += "n " + std::to_string(n) + "\n";
    const std::string modeText = expectField("mode");
    EvalMode mode;
    try {
      mode = parseEvalMode(modeText);
    } catch (const ParseError&) {
      throw fail("unknown mode " + modeText);
    }
    body += "mode " + modeText + "\n";
    const int denom = toInt(expectField("denom-exponent"));
    if (denom < 0) throw fail("negative denominator exponent");
    body += "denom-exponent " + std::to_string(denom) + "\n";

    LaurentPoly numerator;
    Monomial previous{};
    bool first = true;
    std::string checksum;
    while (true) {
      if (!next()) throw fail("unexpected end of file inside block");
      if (line.rfind("checksum ", 0) == 0) {
        checksum = line.substr(9);
        break;
      }
      if (line.rfind("term ", 0) != 0) throw fail("expected `term` or `checksum`");
      std::istringstream row(line.substr(5));
      std::string coef, extra;
      Monomial m;
      if (!(row >> coef >> m.q >> m.t >> m.a) || (row >> extra)) throw fail("malformed term");
      if (m.q < 0 || m.a < 0) throw fail("negative q or a exponent");
      if (!first && !(previous < m)) throw fail("terms out of canonical order");
      BigInt c;
      try {
        c = BigInt(coef);
      } catch (const std::exception&) {
        throw fail("bad coefficient " + coef);
      }
      if (c == 0) throw fail("zero coefficient");
      numerator.addTerm(m, c);
      body += line + "\n";
      previous = m;
      first = false;
    }
    if (!next() || line != "end") throw fail("expected `end`");
    if (sha256Hex(body) != checksum)
      throw ChecksumMismatch("checksum mismatch in base case n = " + std::to_string(n));

    GradedSeries value(std::move(numerator), denom);
    if (value.denomExp() != denom) throw fail("value is not in canonical form");
    try {
      table.insert({n, mode, std::move(value), std::string(provenance)});
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
  }
  return table;
}

BaseCaseTable importBaseCases(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open base-case file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseBaseCases(buffer.str(), "file:" + file.filename().string());
}

void exportBaseCases(const BaseCaseTable& table, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << serializeBaseCases(table);
  if (!out) throw std::runtime_error("cannot write base-case file: " + file.string());
}

// ---------------------------------------------------------------------------
// Reconstruction from the ideal oracle

namespace {

// Hilb(J) (1-q)^4 (1-t)^4 restricted to total degree <= order.
std::map<std::pair<int, int>, BigInt> truncatedNumerator(const BidegreeTable& table, int order) {
  static constexpr int kSigned[5] = {1, -4, 6, -4, 1};
  std::map<std::pair<int, int>, BigInt> out;
  for (int p = 0; p <= order; ++p)
    for (int r = 0; p + r <= order; ++r) {
      BigInt v = 0;
      for (int i = 0; i <= 4 && i <= p; ++i)
        for (int j = 0; j <= 4 && j <= r; ++j)
          v += BigInt(kSigned[i] * kSigned[j]) * BigInt(table.at(p - i, r - j));
      if (v != 0) out.emplace(std::make_pair(p, r), v);
    }
  return out;
}

}  // namespace

DerivedBaseCase deriveFt4A0(int n, const BidegreeTable& oracleTable, int order) {
  if (order < 2) throw std::invalid_argument("deriveFt4A0: order must be at least 2");
  if (oracleTable.maxTotal < order)
    throw std::invalid_argument("deriveFt4A0: oracle table is truncated below the requested order");

  const auto wide = truncatedNumerator(oracleTable, order);
  const auto narrow = truncatedNumerator(oracleTable, order - 2);
  if (narrow.empty())
    throw NotStabilized("numerator for n = " + std::to_string(n) + " is still zero at order " +
                        std::to_string(order - 2));
  if (wide != narrow)
    throw NotStabilized("numerator for n = " + std::to_string(n) + " still changes at order " +
                        std::to_string(order));

  const int s = PairExponents(oracleTable.d).total();
  LaurentPoly numerator;
  for (const auto& [pr, c] : wide) numerator.addTerm({pr.first, pr.second - s, 0}, c);
  DerivedBaseCase result{GradedSeries(std::move(numerator), 4), s, order};

  const BigInt lo = expand(result.value, std::max(order, BaseCaseTable::kPositivityOrder)).minCoefficient();
  if (lo < 0)
    throw NegativeCoefficient("reconstructed base case for n = " + std::to_string(n) +
                              " has negative coefficient " + lo.str());
  return result;
}

DerivedBaseCase deriveFt4A0(int n, IdealOracle& oracle, int startOrder, int maxOrder) {
  if (n < 0) throw std::invalid_argument("deriveFt4A0: n must be nonnegative");
  const CoxeterDegrees d(n, n, n, n);
  // J(n^4) has nothing below total degree 6n.
  for (int order = std::max({2, startOrder, 6 * n + 2}); order <= maxOrder; order += 2) {
    try {
      return deriveFt4A0(n, oracle.hilbTable(d, order), order);
    } catch (const NotStabilized&) {
    }
  }
  throw NotStabilized("numerator for n = " + std::to_string(n) + " did not stabilize by order " +
                      std::to_string(maxOrder));
}

BaseCaseProvider::Deriver oracleDeriver(IdealOracle& oracle) {
  return [&oracle](int n) { return deriveFt4A0(n, oracle); };
}

// ---------------------------------------------------------------------------
// BaseCaseProvider

struct BaseCaseProvider::Derived {
  OnceMap<int, DerivedBaseCase> values;
};

BaseCaseProvider::BaseCaseProvider(BaseCaseTable table, Deriver deriver)
    : table_(std::move(table)), deriver_(std::move(deriver)), derived_(std::make_unique<Derived>()) {}

BaseCaseProvider::~BaseCaseProvider() = default;

GradedSeries BaseCaseProvider::ft4(int n, EvalMode mode) const {
  if (n < 0) throw std::invalid_argument("ft4: n must be nonnegative");
  if (n == 0) {
    const GradedSeries unknot = mode == EvalMode::FullA ? 1 + kA : GradedSeries(1);
    return pow(overOneMinusQ(unknot), 4);
  }
  if (mode == EvalMode::FullA) {
    if (const auto* e = table_.find(n, EvalMode::FullA)) return e->value;
    throw MissingBaseCase("HHH(FT4^" + std::to_string(n) +
                          ") with the a-grading is not derivable here; import a base-case table");
  }
  if (const auto* e = table_.find(n, EvalMode::A0)) return e->value;
  if (const auto* e = table_.find(n, EvalMode::FullA)) return specializeA0(e->value);
  if (deriver_) return derived_->values.getOrCompute(n, [&] { return deriver_(n); }).value;
  throw MissingBaseCase("no a0 base case for HHH(FT4^" + std::to_string(n) + ")");
}

BaseCaseTable BaseCaseProvider::derivedEntries() const {
  BaseCaseTable out;
  for (const auto& [n, d] : derived_->values.populated())
    out.insert({n, EvalMode::A0, d.value,
                "derived: ideal oracle J(" + std::to_string(n) + "^4), order " + std::to_string(d.order)});
  return out;
}

}  // namespace hhh
