#include "hhh/ring.hpp"

#include "hhh/errors.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace hhh {

QTAMonomial toQTA(const Monomial& m) {
  return {2 * m.q - 2 * m.t - 2 * m.a, 2 * m.t, m.a};
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(long c) : LaurentPoly(BigInt(c)) {}

LaurentPoly::LaurentPoly(const BigInt& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, const BigInt& c) {
  LaurentPoly p;
  p.addTerm(m, c);
  return p;
}

BigInt LaurentPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::addTerm(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
  LaurentPoly r;
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) r.addTerm(mx * my, cx * cy);
  return r;
}

LaurentPoly operator-(const LaurentPoly& x) {
  LaurentPoly r;
  for (const auto& [m, c] : x.terms_) r.terms_.emplace(m, -c);
  return r;
}

LaurentPoly shift(const LaurentPoly& p, const Monomial& m) {
  LaurentPoly r;
  for (const auto& [k, c] : p.terms()) r.addTerm(k * m, c);
  return r;
}

LaurentPoly mulOneMinusQ(LaurentPoly p, int k) {
  for (int i = 0; i < k; ++i) p -= shift(p, {1, 0, 0});
  return p;
}

bool divOneMinusQ(const LaurentPoly& p, LaurentPoly& out) {
  // Group by (t, a); each group is a polynomial in q that must vanish at q = 1.
  // If P = (1 - q) Q then Q_k = P_0 + ... + P_k.
  std::map<std::pair<int, int>, std::vector<std::pair<int, BigInt>>> groups;
  for (const auto& [m, c] : p.terms()) groups[{m.t, m.a}].emplace_back(m.q, c);

  LaurentPoly quotient;
  for (const auto& [ta, qs] : groups) {
    BigInt total = 0;
    for (const auto& [e, c] : qs) total += c;
    if (total != 0) return false;
    // qs is sorted by q exponent because map iteration is ordered by (q, t, a)
    // and we only ever append.
    BigInt running = 0;
    int next = qs.front().first;
    std::size_t idx = 0;
    const int top = qs.back().first;
    for (int e = next; e < top; ++e) {
      if (idx < qs.size() && qs[idx].first == e) running += qs[idx++].second;
      if (running != 0) quotient.addTerm({e, ta.first, ta.second}, running);
    }
  }
  out = std::move(quotient);
  return true;
}

// ---------------------------------------------------------------------------
// GradedSeries

GradedSeries::GradedSeries(LaurentPoly numerator, int denomExp)
    : numerator_(std::move(numerator)), denomExp_(denomExp) {
  if (denomExp_ < 0) {
    numerator_ = mulOneMinusQ(std::move(numerator_), -denomExp_);
    denomExp_ = 0;
  }
  canonicalize();
}

void GradedSeries::canonicalize() {
  if (numerator_.isZero()) {
    denomExp_ = 0;
    return;
  }
  LaurentPoly quotient;
  while (denomExp_ > 0 && divOneMinusQ(numerator_, quotient)) {
    numerator_ = std::move(quotient);
    --denomExp_;
  }
}

GradedSeries add(const GradedSeries& x, const GradedSeries& y) {
  const int e = std::max(x.denomExp(), y.denomExp());
  LaurentPoly n = mulOneMinusQ(x.numerator(), e - x.denomExp());
  n += mulOneMinusQ(y.numerator(), e - y.denomExp());
  return GradedSeries(std::move(n), e);
}

GradedSeries mul(const GradedSeries& x, const GradedSeries& y) {
  return GradedSeries(x.numerator() * y.numerator(), x.denomExp() + y.denomExp());
}

GradedSeries neg(const GradedSeries& x) {
  return GradedSeries(-x.numerator(), x.denomExp());
}

GradedSeries overOneMinusQ(const GradedSeries& x, int k) {
  return GradedSeries(x.numerator(), x.denomExp() + k);
}

GradedSeries pow(const GradedSeries& x, unsigned n) {
  GradedSeries r(1);
  for (unsigned i = 0; i < n; ++i) r = r * x;
  return r;
}

GradedSeries shift(const GradedSeries& x, const Monomial& m) {
  return GradedSeries(shift(x.numerator(), m), x.denomExp());
}

GradedSeries geomSum(const Monomial& x, int n) {
  LaurentPoly p;
  Monomial power{};
  for (int i = 0; i < n; ++i) {
    p.addTerm(power, BigInt(1));
    power = power * x;
  }
  return GradedSeries(std::move(p));
}

GradedSeries specializeA0(const GradedSeries& x) {
  LaurentPoly p;
  for (const auto& [m, c] : x.numerator().terms())
    if (m.a == 0) p.addTerm(m, c);
  return GradedSeries(std::move(p), x.denomExp());
}

bool hasATerms(const GradedSeries& x) {
  for (const auto& [m, c] : x.numerator().terms())
    if (m.a != 0) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Expansion

BigInt CoeffTable::at(const Monomial& m) const {
  auto it = entries.find(m);
  return it == entries.end() ? BigInt(0) : it->second;
}

BigInt CoeffTable::minCoefficient() const {
  BigInt lo = 0;
  for (const auto& [m, c] : entries)
    if (c < lo) lo = c;
  return lo;
}

CoeffTable expand(const GradedSeries& x, int qOrder) {
  CoeffTable table;
  table.qOrder = qOrder;
  const int e = x.denomExp();
  for (const auto& [m, c] : x.numerator().terms()) {
    for (int j = 0; m.q + j <= qOrder; ++j) {
      // 1/(1-q)^e = sum_j binom(e-1+j, j) q^j; e == 0 contributes j == 0 only.
      if (e == 0 && j > 0) break;
      BigInt w = e == 0 ? BigInt(1) : binomial(e - 1 + j, j);
      auto& slot = table.entries[{m.q + j, m.t, m.a}];
      slot += c * w;
    }
  }
  std::erase_if(table.entries, [](const auto& kv) { return kv.second == 0; });
  return table;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize(const GradedSeries& x) {
  std::ostringstream out;
  out << "series v1 denom " << x.denomExp() << '\n';
  for (const auto& [m, c] : x.numerator().terms())
    out << c << ' ' << m.q << ' ' << m.t << ' ' << m.a << '\n';
  out << "end\n";
  return out.str();
}

GradedSeries parseSeries(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty series text");
  std::istringstream head(line);
  std::string w1, w2, w3;
  int e = -1;
  if (!(head >> w1 >> w2 >> w3 >> e) || w1 != "series" || w2 != "v1" || w3 != "denom" || e < 0)
    throw ParseError("bad series header: " + line);

  LaurentPoly p;
  bool ended = false;
  Monomial previous{};
  bool first = true;
  while (std::getline(in, line)) {
    if (line == "end") {
      ended = true;
      break;
    }
    std::istringstream row(line);
    std::string coef;
    Monomial m;
    if (!(row >> coef >> m.q >> m.t >> m.a)) throw ParseError("bad series term: " + line);
    std::string extra;
    if (row >> extra) throw ParseError("trailing data in term: " + line);
    if (m.q < 0 || m.a < 0) throw ParseError("negative q or a exponent: " + line);
    if (!first && !(previous < m)) throw ParseError("terms out of canonical order: " + line);
    BigInt c;
    try {
      c = BigInt(coef);
    } catch (const std::exception&) {
      throw ParseError("bad coefficient: " + coef);
    }
    if (c == 0) throw ParseError("zero coefficient stored: " + line);
    p.addTerm(m, c);
    previous = m;
    first = false;
  }
  if (!ended) throw ParseError("series text missing `end`");
  GradedSeries s(std::move(p), e);
  if (s.denomExp() != e) throw ParseError("series is not in canonical form");
  return s;
}

}  // namespace hhh
