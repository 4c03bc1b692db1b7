#include "hhh/bigint.hpp"
#include "hhh/errors.hpp"
#include "hhh/ideal_oracle.hpp"

#include <boost/multiprecision/gmp.hpp>
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace hhh;

namespace {

using Rational = boost::multiprecision::mpq_rational;
using Poly = std::map<ExponentVector, BigInt>;

Poly mul(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [ex, cx] : x)
    for (const auto& [ey, cy] : y) {
      ExponentVector e;
      for (int i = 0; i < 8; ++i) e[i] = ex[i] + ey[i];
      out[e] += cx * cy;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Poly power(const Poly& x, int k) {
  Poly out{{ExponentVector{}, BigInt(1)}};
  for (int i = 0; i < k; ++i) out = mul(out, x);
  return out;
}

// x_i - x_j (offset 0) or y_i - y_j (offset 4), 1-based strands.
Poly difference(int i, int j, int offset) {
  ExponentVector a{}, b{};
  a[offset + i - 1] = 1;
  b[offset + j - 1] = 1;
  return {{a, BigInt(1)}, {b, BigInt(-1)}};
}

std::vector<BigInt> coordinates(const Poly& f, const std::vector<ExponentVector>& basis) {
  std::vector<BigInt> v(basis.size());
  for (const auto& [e, c] : f) {
    auto it = std::lower_bound(basis.begin(), basis.end(), e);
    REQUIRE(it != basis.end());
    REQUIRE(*it == e);
    v[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return v;
}

bool annihilates(const ConstraintSystem& s, const std::vector<BigInt>& v) {
  for (Eigen::Index r = 0; r < s.matrix.outerSize(); ++r) {
    BigInt sum = 0;
    for (IntMatrix::InnerIterator it(s.matrix, r); it; ++it) sum += BigInt(it.value()) * v[static_cast<std::size_t>(it.col())];
    if (sum != 0) return false;
  }
  return true;
}

// Dense rational row reduction; returns a basis of the row space.
std::vector<std::vector<Rational>> rowBasis(std::vector<std::vector<Rational>> rows) {
  std::vector<std::vector<Rational>> out;
  if (rows.empty()) return out;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

// Basis of {v : row . v = 0 for all rows}.
std::vector<std::vector<Rational>> nullSpace(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  const auto reduced = rowBasis(rows);
  std::vector<int> pivotCol;
  for (const auto& r : reduced) {
    std::size_t c = 0;
    while (r[c] == 0) ++c;
    pivotCol.push_back(static_cast<int>(c));
  }
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivotCol.begin(), pivotCol.end(), static_cast<int>(free)) != pivotCol.end()) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t k = 0; k < reduced.size(); ++k) v[pivotCol[k]] = -reduced[k][free] / reduced[k][pivotCol[k]];
    out.push_back(std::move(v));
  }
  return out;
}

// Brute force dim J in bidegree bd: the pair ideal (u, v)^e in bidegree bd is
// spanned by u^s v^(e-s) times monomials; J is the intersection of the six
// spans, computed as the null space of the stacked annihilators.
long bruteDimJ(const CoxeterDegrees& d, Bidegree bd) {
  const auto basis = monomialBasis(bd, Ambient::Full);
  const std::size_t n = basis.size();
  const PairExponents pe(d);
  std::vector<std::vector<Rational>> annihilators;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      const int e = pe.at(i, j);
      if (e == 0) continue;
      std::vector<std::vector<Rational>> span;
      for (int s = 0; s <= e; ++s) {
        if (s > bd.p || e - s > bd.r) continue;
        const Poly g = mul(power(difference(i, j, 0), s), power(difference(i, j, 4), e - s));
        for (const auto& m : monomialBasis({bd.p - s, bd.r - (e - s)}, Ambient::Full)) {
          const auto v = coordinates(mul(g, {{m, BigInt(1)}}), basis);
          span.emplace_back(v.begin(), v.end());
        }
      }
      for (auto& a : nullSpace(span, n)) annihilators.push_back(std::move(a));
    }
  return static_cast<long>(n - rowBasis(annihilators).size());
}

BigInt binom(int n, int k) { return k < 0 || k > n ? BigInt(0) : binomial(n, k); }

// Coefficient of q^p t^r in N(q, t) / ((1-q)^4 (1-t)^4).
BigInt seriesCoefficient(const std::map<std::pair<int, int>, int>& numerator, int p, int r) {
  BigInt total = 0;
  for (const auto& [e, c] : numerator)
    if (p >= e.first && r >= e.second) total += BigInt(c) * binom(p - e.first + 3, 3) * binom(r - e.second + 3, 3);
  return total;
}

}  // namespace

TEST_CASE("single pair constraints") {
  const Bidegree linear{1, 0};
  CHECK(pairConstraints(3, 4, 0, linear).matrix.rows() == 0);
  CHECK(solutionDim(pairConstraints(3, 4, 0, linear)) == 4);

  const ConstraintSystem one = pairConstraints(3, 4, 1, linear);
  CHECK(solutionDim(one) == 1);
  CHECK(annihilates(one, coordinates(difference(3, 4, 0), monomialBasis(linear))));
  CHECK_FALSE(annihilates(one, coordinates(difference(2, 4, 0), monomialBasis(linear))));

  CHECK(solutionDim(pairConstraints(3, 4, 2, linear)) == 0);
  for (const auto& tag : one.provenance) CHECK((tag.i == 3 && tag.j == 4 && tag.xOrder + tag.yOrder < 1));
}

TEST_CASE("whole ring when every exponent vanishes") {
  for (int p = 0; p <= 4; ++p)
    for (int r = 0; r <= 4; ++r) {
      const long expected = (binom(p + 3, 3) * binom(r + 3, 3)).convert_to<long>();
      CHECK(monomialSpaceDim({p, r}) == expected);
      CHECK(dimJ({0, 0, 0, 0}, {p, r}) == expected);
      CHECK(dimJ({0, 0, 0, 3}, {p, r}, Ambient::Reduced) == expected);
    }
}

TEST_CASE("Vandermonde and linear forms") {
  CHECK(dimJ({1, 1, 1, 1}, {6, 0}) == 1);
  CHECK(dimJ({1, 1, 1, 1}, {1, 0}) == 0);
  CHECK(dimJ({1, 1, 1, 1}, {5, 0}) == 0);
  CHECK(dimJ({1, 1, 1, 1}, {6, 0}, Ambient::Reduced) == 1);
}

TEST_CASE("single pair ideal matches inclusion-exclusion") {
  // Hilb(J) = (q + t - qt) / ((1-q)^4 (1-t)^4)
  const std::map<std::pair<int, int>, int> numerator{{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, -1}};
  const BidegreeTable table = hilbTable({0, 0, 1, 1}, 10);
  for (int p = 0; p <= 10; ++p)
    for (int r = 0; p + r <= 10; ++r) CHECK(BigInt(table.at(p, r)) == seriesCoefficient(numerator, p, r));
}

TEST_CASE("brute force spans agree with derivative constraints") {
  for (const CoxeterDegrees& d : {CoxeterDegrees{0, 0, 1, 1}, CoxeterDegrees{0, 1, 1, 1}, CoxeterDegrees{1, 1, 1, 1},
                                  CoxeterDegrees{0, 1, 2, 2}, CoxeterDegrees{1, 1, 2, 2}, CoxeterDegrees{0, 0, 3, 3}})
    for (int p = 0; p <= 3; ++p)
      for (int r = 0; p + r <= 4; ++r) {
        CAPTURE(d.toString());
        CAPTURE(p);
        CAPTURE(r);
        const long expected = bruteDimJ(d, {p, r});
        CHECK(dimJ(d, {p, r}, Ambient::Full) == expected);
        CHECK(dimJ(d, {p, r}, Ambient::Reduced) == expected);
      }
}

TEST_CASE("full and translation-reduced routes agree") {
  for (const CoxeterDegrees& d : {CoxeterDegrees{0, 1, 1, 1}, CoxeterDegrees{1, 1, 1, 1}, CoxeterDegrees{0, 1, 2, 2},
                                  CoxeterDegrees{1, 1, 2, 2}, CoxeterDegrees{0, 2, 2, 2}}) {
    OracleOptions full;
    full.ambient = Ambient::Full;
    const BidegreeTable a = hilbTable(d, 6, full);
    const BidegreeTable b = hilbTable(d, 6);
    CHECK(serialize(a) == serialize(b));
  }
}

TEST_CASE("product of pair powers is a member") {
  for (const CoxeterDegrees& d : {CoxeterDegrees{0, 1, 1, 1}, CoxeterDegrees{1, 1, 1, 1}, CoxeterDegrees{0, 1, 2, 2},
                                  CoxeterDegrees{1, 1, 2, 2}}) {
    const PairExponents pe(d);
    Poly xs{{ExponentVector{}, BigInt(1)}}, ys = xs, mixed = xs;
    int px = 0, mixedX = 0, mixedY = 0, pair = 0;
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j, ++pair) {
        const int e = pe.at(i, j);
        xs = mul(xs, power(difference(i, j, 0), e));
        ys = mul(ys, power(difference(i, j, 4), e));
        mixed = mul(mixed, power(difference(i, j, pair % 2 ? 4 : 0), e));
        px += e;
        (pair % 2 ? mixedY : mixedX) += e;
      }
    const ConstraintSystem sx = idealConstraints(pe, {px, 0});
    const ConstraintSystem sy = idealConstraints(pe, {0, px});
    const ConstraintSystem sm = idealConstraints(pe, {mixedX, mixedY});
    CHECK(annihilates(sx, coordinates(xs, monomialBasis({px, 0}))));
    CHECK(annihilates(sy, coordinates(ys, monomialBasis({0, px}))));
    CHECK(annihilates(sm, coordinates(mixed, monomialBasis({mixedX, mixedY}))));
  }
}

TEST_CASE("symmetry, monotonicity and the ambient bound") {
  const BidegreeTable t112 = hilbTable({1, 1, 2, 2}, 6);
  for (int p = 0; p <= 6; ++p)
    for (int r = 0; p + r <= 6; ++r) CHECK(t112.at(p, r) == t112.at(r, p));

  const BidegreeTable small = hilbTable({0, 1, 1, 1}, 6);
  const BidegreeTable large = hilbTable({1, 1, 1, 1}, 6);
  const BidegreeTable zero = hilbTable({0, 0, 0, 0}, 6);
  bool strict = false;
  for (int p = 0; p <= 6; ++p)
    for (int r = 0; p + r <= 6; ++r) {
      CHECK(small.at(p, r) >= large.at(p, r));
      CHECK(small.at(p, r) <= zero.at(p, r));
      strict = strict || small.at(p, r) < zero.at(p, r);
    }
  CHECK(strict);
}

TEST_CASE("row order does not change the rank") {
  const ConstraintSystem s = idealConstraints(PairExponents({1, 1, 2, 2}), {3, 2});
  const std::size_t rank = constraintRank(s);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(s.matrix.rows()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  std::mt19937 rng{3};
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Eigen::Triplet<std::int64_t>> triplets;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (IntMatrix::InnerIterator it(s.matrix, order[i]); it; ++it)
        triplets.emplace_back(static_cast<Eigen::Index>(i), it.col(), it.value());
    ConstraintSystem shuffled;
    shuffled.matrix.resize(s.matrix.rows(), s.matrix.cols());
    shuffled.matrix.setFromTriplets(triplets.begin(), triplets.end());
    CHECK(constraintRank(shuffled) == rank);
  }
}

TEST_CASE("modular rank agrees with exact rank on the comparison grid") {
  const std::vector<std::pair<CoxeterDegrees, int>> grid{
      {{0, 0, 0, 0}, 10}, {{0, 0, 1, 1}, 10}, {{0, 1, 1, 1}, 10}, {{0, 1, 2, 2}, 8},
      {{0, 2, 2, 2}, 8},  {{1, 1, 1, 1}, 8},  {{1, 1, 2, 2}, 8}};
  for (const auto& [d, order] : grid) {
    OracleOptions modular;
    modular.method = RankMethod::Modular;
    CHECK(serialize(hilbTable(d, order, modular)) == serialize(hilbTable(d, order)));
  }
}

TEST_CASE("serial and parallel tables are identical") {
  OracleOptions parallel;
  parallel.threads = 4;
  CHECK(serialize(hilbTable({1, 1, 2, 2}, 8, parallel)) == serialize(hilbTable({1, 1, 2, 2}, 8)));
}

TEST_CASE("table text and json forms") {
  const BidegreeTable t = hilbTable({0, 0, 1, 1}, 2);
  const std::string text = serialize(t);
  CHECK(text.rfind("hilb v1 d 0 0 1 1 max 2\n0 0 0\n0 1 1\n1 0 1\n", 0) == 0);
  CHECK(serialize(parseHilbTable(text)) == text);
  CHECK_THROWS_AS(parseHilbTable("hilb v1 d 0 0 1 1 max 0\n0 0 5\nend\n"), ParseError);
  const std::string json = toJson(t);
  CHECK(json.find("\"maxTotal\"") != std::string::npos);
}
