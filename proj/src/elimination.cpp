#include "hhh/elimination.hpp"

namespace hhh {

namespace {

template <class Value, class Combine>
std::vector<std::pair<int, Value>> mergeRows(const std::vector<std::pair<int, Value>>& x,
                                             const std::vector<std::pair<int, Value>>& y,
                                             Combine combine) {
  // combine(xv, yv) with absent entries passed as zero.
  std::vector<std::pair<int, Value>> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  const Value zero{0};
  while (i < x.size() || j < y.size()) {
    int col;
    Value v;
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      col = x[i].first;
      v = combine(x[i].second, zero);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      col = y[j].first;
      v = combine(zero, y[j].second);
      ++j;
    } else {
      col = x[i].first;
      v = combine(x[i].second, y[j].second);
      ++i;
      ++j;
    }
    if (v != 0) out.emplace_back(col, std::move(v));
  }
  return out;
}

std::uint64_t mulMod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(prod & ModPrimeScalar::kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
  std::uint64_t s = lo + hi;
  if (s >= ModPrimeScalar::kPrime) s -= ModPrimeScalar::kPrime;
  return s;
}

std::uint64_t powMod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulMod(r, b);
    b = mulMod(b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace

void IntegerScalar::reduce(std::vector<std::pair<int, Value>>& target,
                           const std::vector<std::pair<int, Value>>& pivot) {
  const Value& pl = pivot.front().second;
  const Value& tl = target.front().second;
  Value g = boost::multiprecision::gcd(pl, tl);
  const Value a = pl / g;
  const Value b = tl / g;
  target = mergeRows(target, pivot, [&](const Value& x, const Value& y) { return a * x - b * y; });
}

void IntegerScalar::normalize(std::vector<std::pair<int, Value>>& row) {
  if (row.empty()) return;
  Value g = 0;
  for (const auto& [c, v] : row) {
    g = boost::multiprecision::gcd(g, v);
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) v /= g;
}

void ModPrimeScalar::reduce(std::vector<std::pair<int, Value>>& target,
                            const std::vector<std::pair<int, Value>>& pivot) {
  // pivot is normalized (leading 1): target - target[lead] * pivot
  const Value f = target.front().second;
  target = mergeRows(target, pivot, [&](Value x, Value y) {
    const Value fy = mulMod(f, y);
    return x >= fy ? x - fy : x + kPrime - fy;
  });
}

void ModPrimeScalar::normalize(std::vector<std::pair<int, Value>>& row) {
  if (row.empty() || row.front().second == 1) return;
  const Value inv = powMod(row.front().second, kPrime - 2);
  for (auto& [c, v] : row) v = mulMod(v, inv);
}

std::size_t eliminateSingletons(const IntMatrix& m, std::vector<char>& liveColumns) {
  const auto rows = static_cast<std::size_t>(m.rows());
  // column -> rows touching it
  std::vector<std::vector<int>> byColumn(static_cast<std::size_t>(m.cols()));
  std::vector<int> count(rows, 0);
  for (Eigen::Index i = 0; i < m.outerSize(); ++i)
    for (IntMatrix::InnerIterator it(m, i); it; ++it)
      if (it.value() != 0 && liveColumns[static_cast<std::size_t>(it.col())]) {
        byColumn[static_cast<std::size_t>(it.col())].push_back(static_cast<int>(i));
        ++count[static_cast<std::size_t>(i)];
      }

  std::vector<int> queue;
  for (std::size_t i = 0; i < rows; ++i)
    if (count[i] == 1) queue.push_back(static_cast<int>(i));

  std::size_t found = 0;
  while (!queue.empty()) {
    const int row = queue.back();
    queue.pop_back();
    if (count[static_cast<std::size_t>(row)] != 1) continue;
    int col = -1;
    for (IntMatrix::InnerIterator it(m, row); it; ++it)
      if (it.value() != 0 && liveColumns[static_cast<std::size_t>(it.col())]) {
        col = static_cast<int>(it.col());
        break;
      }
    liveColumns[static_cast<std::size_t>(col)] = 0;
    ++found;
    for (int other : byColumn[static_cast<std::size_t>(col)]) {
      auto& c = count[static_cast<std::size_t>(other)];
      --c;
      if (c == 1) queue.push_back(other);
    }
  }
  return found;
}

}  // namespace hhh
