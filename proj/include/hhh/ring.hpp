#pragma once

// Exact arithmetic in Z[q, a][t, t^-1] localized at (1 - q).
//
// Every value is stored as numerator / (1 - q)^e in canonical form: either
// e == 0 or (1 - q) does not divide the numerator. Equality of canonical forms
// is equality of the underlying rational functions.

#include "hhh/bigint.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace hhh {

struct Monomial {
  int q = 0;  // >= 0
  int t = 0;
  int a = 0;  // >= 0

  auto operator<=>(const Monomial&) const = default;

  Monomial operator*(const Monomial& o) const { return {q + o.q, t + o.t, a + o.a}; }
};

// Exponents in the (Q, T, A) presentation, q = Q^2, t = T^2 Q^-2, a = A Q^-2.
struct QTAMonomial {
  int Q = 0;
  int T = 0;
  int A = 0;

  auto operator<=>(const QTAMonomial&) const = default;
};

QTAMonomial toQTA(const Monomial& m);

class LaurentPoly {
 public:
  using Terms = std::map<Monomial, BigInt>;

  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const BigInt& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const Monomial& m, const BigInt& c = BigInt(1));

  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  BigInt coeff(const Monomial& m) const;

  // Adds c * m, dropping the term if the result is zero.
  void addTerm(const Monomial& m, const BigInt& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);

  friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
  friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
  friend LaurentPoly operator-(const LaurentPoly& x);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  Terms terms_;
};

// Multiplies every exponent vector by m.
LaurentPoly shift(const LaurentPoly& p, const Monomial& m);
LaurentPoly mulOneMinusQ(LaurentPoly p, int k = 1);
// Returns false (and leaves `out` untouched) when (1 - q) does not divide p.
bool divOneMinusQ(const LaurentPoly& p, LaurentPoly& out);

class GradedSeries {
 public:
  GradedSeries() = default;
  GradedSeries(long c) : GradedSeries(LaurentPoly(c)) {}  // NOLINT
  GradedSeries(LaurentPoly numerator, int denomExp = 0);  // NOLINT

  static GradedSeries q(int e = 1) { return monomial({e, 0, 0}); }
  static GradedSeries t(int e = 1) { return monomial({0, e, 0}); }
  static GradedSeries a(int e = 1) { return monomial({0, 0, e}); }
  static GradedSeries monomial(const Monomial& m, const BigInt& c = BigInt(1)) {
    return GradedSeries(LaurentPoly::monomial(m, c));
  }

  const LaurentPoly& numerator() const { return numerator_; }
  int denomExp() const { return denomExp_; }
  bool isZero() const { return numerator_.isZero(); }

  friend bool operator==(const GradedSeries&, const GradedSeries&) = default;

 private:
  void canonicalize();

  LaurentPoly numerator_;
  int denomExp_ = 0;
};

GradedSeries add(const GradedSeries& x, const GradedSeries& y);
GradedSeries mul(const GradedSeries& x, const GradedSeries& y);
GradedSeries neg(const GradedSeries& x);

inline GradedSeries operator+(const GradedSeries& x, const GradedSeries& y) { return add(x, y); }
inline GradedSeries operator-(const GradedSeries& x, const GradedSeries& y) { return add(x, neg(y)); }
inline GradedSeries operator-(const GradedSeries& x) { return neg(x); }
inline GradedSeries operator*(const GradedSeries& x, const GradedSeries& y) { return mul(x, y); }

// x / (1 - q)^k
GradedSeries overOneMinusQ(const GradedSeries& x, int k = 1);
GradedSeries pow(const GradedSeries& x, unsigned n);
GradedSeries shift(const GradedSeries& x, const Monomial& m);

// sum_{i=0}^{n-1} x^i, kept as a polynomial.
GradedSeries geomSum(const Monomial& x, int n);

// Drops every term with a positive a-exponent.
GradedSeries specializeA0(const GradedSeries& x);
bool hasATerms(const GradedSeries& x);

struct CoeffTable {
  std::map<Monomial, BigInt> entries;  // absent key means 0
  int qOrder = 0;

  BigInt at(const Monomial& m) const;
  BigInt minCoefficient() const;  // 0 for an empty table

  friend bool operator==(const CoeffTable&, const CoeffTable&) = default;
};

// Coefficients of q^i for all i <= qOrder.
CoeffTable expand(const GradedSeries& x, int qOrder);

// Canonical text form: `series v1 denom <e>`, one `<coef> <q> <t> <a>` line per
// term in (q, t, a) lexicographic order, then `end`.
std::string serialize(const GradedSeries& x);
GradedSeries parseSeries(std::string_view text);

}  // namespace hhh
