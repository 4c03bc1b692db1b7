#pragma once

// Rank of a sparse integer matrix by incremental row echelon reduction,
// templated on the arithmetic used for elimination.
//
//   IntegerScalar  exact, fraction-free (rows are kept primitive)
//   ModPrimeScalar arithmetic modulo 2^61 - 1; rank mod p <= rank over Q

#include "hhh/bigint.hpp"

#include <Eigen/SparseCore>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace hhh {

using IntMatrix = Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor>;

struct IntegerScalar {
  using Value = BigInt;

  static Value fromInt(std::int64_t v) { return Value(v); }
  static bool isZero(const Value& v) { return v == 0; }

  // target <- pivot[lead] * target - target[lead] * pivot, scaled by the gcd,
  // then divided by its content.
  static void reduce(std::vector<std::pair<int, Value>>& target,
                     const std::vector<std::pair<int, Value>>& pivot);
  static void normalize(std::vector<std::pair<int, Value>>& row);
};

struct ModPrimeScalar {
  using Value = std::uint64_t;
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  static Value fromInt(std::int64_t v) {
    const auto p = static_cast<std::int64_t>(kPrime);
    std::int64_t r = v % p;
    return static_cast<Value>(r < 0 ? r + p : r);
  }
  static bool isZero(Value v) { return v == 0; }

  static void reduce(std::vector<std::pair<int, Value>>& target,
                     const std::vector<std::pair<int, Value>>& pivot);
  // Scales the row so the leading entry is 1.
  static void normalize(std::vector<std::pair<int, Value>>& row);
};

// Removes rows with a single live entry (their column is a pivot no other row
// can use) until none remain. Returns the number of pivots found this way;
// `liveColumns[c]` is cleared for each of them.
std::size_t eliminateSingletons(const IntMatrix& m, std::vector<char>& liveColumns);

template <class Scalar>
std::size_t rank(const IntMatrix& m) {
  using Value = typename Scalar::Value;
  using Row = std::vector<std::pair<int, Value>>;

  std::vector<char> live(static_cast<std::size_t>(m.cols()), 1);
  std::size_t r = eliminateSingletons(m, live);

  std::map<int, Row> pivots;  // keyed by leading column
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    Row row;
    for (IntMatrix::InnerIterator it(m, i); it; ++it)
      if (live[static_cast<std::size_t>(it.col())] && it.value() != 0)
        row.emplace_back(static_cast<int>(it.col()), Scalar::fromInt(it.value()));
    if (row.empty()) continue;
    Scalar::normalize(row);
    while (!row.empty()) {
      auto found = pivots.find(row.front().first);
      if (found == pivots.end()) {
        const int lead = row.front().first;
        pivots.emplace(lead, std::move(row));
        ++r;
        break;
      }
      Scalar::reduce(row, found->second);
      if (!row.empty()) Scalar::normalize(row);
    }
  }
  return r;
}

}  // namespace hhh
