#pragma once

// Bigraded Hilbert function of
//
//   J(d1, ..., d4) = intersection over i < j of (x_i - x_j, y_i - y_j)^{d_i}
//
// inside Q[x1..x4, y1..y4], by exact linear algebra in each bidegree.
//
// A polynomial lies in (u, v)^e, u = x_i - x_j, v = y_i - y_j, iff after the
// substitution x_i -> x_j + u, y_i -> y_j + v every coefficient of u^s v^r with
// s + r < e vanishes, i.e. iff d^s/dx_i^s d^r/dy_i^r f restricted to
// x_i = x_j, y_i = y_j is zero for all s + r < e. Each such restriction is a
// monomial-to-monomial map, so the constraint matrix has one entry per
// (column, derivative order).
//
// Ambient::Reduced works in the quotient by the translation x_k -> x_k + c,
// y_k -> y_k + c: strand 4 is pinned to the origin. J is generated by
// translation invariant elements, so the full Hilbert function is the
// two-dimensional prefix sum of the reduced one.

#include "hhh/degrees.hpp"
#include "hhh/elimination.hpp"

#include <Eigen/Core>

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hhh {

class Cache;

struct Bidegree {
  int p = 0;  // x-degree
  int r = 0;  // y-degree

  auto operator<=>(const Bidegree&) const = default;
};

// Exponent of the pair (i, j), i < j, is d_i.
class PairExponents {
 public:
  explicit PairExponents(const CoxeterDegrees& d);

  // Strands are 1-based; requires 1 <= i < j <= 4.
  int at(int i, int j) const;
  // d1, d2, d3: all that influences the ideal.
  std::array<int, 3> signature() const { return sig_; }
  // Sum of the six exponents.
  int total() const { return 3 * sig_[0] + 2 * sig_[1] + sig_[2]; }

 private:
  std::array<int, 3> sig_{};
};

enum class Ambient { Full, Reduced };
enum class RankMethod { Exact, Modular };

// Exponent vector of x1..x4 followed by y1..y4.
using ExponentVector = std::array<int, 8>;

// Monomials of bidegree bd, in canonical (lexicographic) order. Under
// Ambient::Reduced the strand-4 exponents are always zero.
std::vector<ExponentVector> monomialBasis(Bidegree bd, Ambient ambient = Ambient::Full);

struct RowTag {
  int i = 0;  // strand pair, 1-based
  int j = 0;
  int xOrder = 0;  // derivative orders
  int yOrder = 0;
};

struct ConstraintSystem {
  IntMatrix matrix;  // rows = conditions, columns = monomialBasis(bd, ambient)
  std::vector<RowTag> provenance;
};

ConstraintSystem pairConstraints(int i, int j, int exponent, Bidegree bd,
                                 Ambient ambient = Ambient::Full);
// The six pair systems stacked vertically.
ConstraintSystem idealConstraints(const PairExponents& e, Bidegree bd,
                                  Ambient ambient = Ambient::Full);

std::size_t constraintRank(const ConstraintSystem& system, RankMethod method = RankMethod::Exact);

// Dimension of the solution space of `system`, i.e. columns - rank.
long solutionDim(const ConstraintSystem& system, RankMethod method = RankMethod::Exact);

// dim J(d) in bidegree bd of the eight-variable ring. Under Ambient::Reduced the
// value is assembled from reduced dimensions of all smaller bidegrees.
long dimJ(const CoxeterDegrees& d, Bidegree bd, Ambient ambient = Ambient::Full,
          RankMethod method = RankMethod::Exact);

long monomialSpaceDim(Bidegree bd);

struct BidegreeTable {
  CoxeterDegrees d;
  int maxTotal = 0;
  // dims(p, r) for p + r <= maxTotal; other entries are unused.
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> dims;

  bool contains(int p, int r) const { return p >= 0 && r >= 0 && p + r <= maxTotal; }
  std::int64_t at(int p, int r) const { return dims(p, r); }
};

struct OracleOptions {
  Ambient ambient = Ambient::Reduced;
  RankMethod method = RankMethod::Exact;
  unsigned threads = 1;
  Cache* cache = nullptr;
};

// Holds a per-session memo of reduced dimensions so growing truncations reuse
// earlier work.
class IdealOracle {
 public:
  explicit IdealOracle(OracleOptions options = {});
  ~IdealOracle();
  IdealOracle(const IdealOracle&) = delete;
  IdealOracle& operator=(const IdealOracle&) = delete;

  BidegreeTable hilbTable(const CoxeterDegrees& d, int maxTotal);
  const OracleOptions& options() const { return options_; }

 private:
  struct Memo;
  long ambientDim(const PairExponents& e, Bidegree bd);

  OracleOptions options_;
  std::unique_ptr<Memo> memo_;
};

BidegreeTable hilbTable(const CoxeterDegrees& d, int maxTotal, OracleOptions options = {});

// `hilb v1 d <d1> <d2> <d3> <d4> max <N>`, then `<p> <r> <dim>` sorted by
// (p + r, p), then `end`.
std::string serialize(const BidegreeTable& table);
BidegreeTable parseHilbTable(std::string_view text);
std::string toJson(const BidegreeTable& table);

}  // namespace hhh
