#include "hhh/ideal_oracle.hpp"

#include "hhh/cache.hpp"
#include "hhh/errors.hpp"
#include "hhh/once_map.hpp"
#include "hhh/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace hhh {

PairExponents::PairExponents(const CoxeterDegrees& d) : sig_{d.d1(), d.d2(), d.d3()} {}

int PairExponents::at(int i, int j) const {
  if (!(1 <= i && i < j && j <= 4)) throw std::out_of_range("pair indices must satisfy 1 <= i < j <= 4");
  return sig_[static_cast<std::size_t>(i - 1)];
}

namespace {

int freeStrands(Ambient ambient) { return ambient == Ambient::Full ? 4 : 3; }

// Compositions of `total` into `parts` nonnegative parts, lexicographic.
void compositions(int total, int parts, std::vector<std::array<int, 4>>& out) {
  std::array<int, 4> current{0, 0, 0, 0};
  auto rec = [&](auto&& self, int index, int remaining) -> void {
    if (index == parts - 1) {
      current[static_cast<std::size_t>(index)] = remaining;
      out.push_back(current);
      current[static_cast<std::size_t>(index)] = 0;
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      current[static_cast<std::size_t>(index)] = v;
      self(self, index + 1, remaining - v);
    }
    current[static_cast<std::size_t>(index)] = 0;
  };
  if (parts == 0) {
    if (total == 0) out.push_back(current);
    return;
  }
  rec(rec, 0, total);
}

std::int64_t fallingFactorial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

std::vector<ExponentVector> monomialBasis(Bidegree bd, Ambient ambient) {
  std::vector<std::array<int, 4>> xs, ys;
  compositions(bd.p, freeStrands(ambient), xs);
  compositions(bd.r, freeStrands(ambient), ys);
  std::vector<ExponentVector> basis;
  basis.reserve(xs.size() * ys.size());
  for (const auto& x : xs)
    for (const auto& y : ys) basis.push_back({x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3]});
  return basis;
}

long monomialSpaceDim(Bidegree bd) {
  auto c3 = [](long n) { return (n + 1) * (n + 2) * (n + 3) / 6; };
  return c3(bd.p) * c3(bd.r);
}

ConstraintSystem pairConstraints(int i, int j, int exponent, Bidegree bd, Ambient ambient) {
  if (!(1 <= i && i < j && j <= 4)) throw std::out_of_range("pair indices must satisfy 1 <= i < j <= 4");
  const auto basis = monomialBasis(bd, ambient);
  const int xi = i - 1, xj = j - 1, yi = i + 3, yj = j + 3;
  // x_j = y_j = 0 in the reduced ambient when j is the pinned strand.
  const bool pinned = ambient == Ambient::Reduced && j == 4;

  using RowKey = std::tuple<int, int, ExponentVector>;
  std::map<RowKey, int> rowIndex;
  struct Entry {
    RowKey row;
    int col;
    std::int64_t value;
  };
  std::vector<Entry> entries;

  for (int s = 0; s < exponent; ++s) {
    for (int r = 0; s + r < exponent; ++r) {
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const ExponentVector& m = basis[c];
        if (m[xi] < s || m[yi] < r) continue;
        ExponentVector target = m;
        target[xi] = 0;
        target[yi] = 0;
        target[xj] += m[xi] - s;
        target[yj] += m[yi] - r;
        if (pinned && (target[xj] != 0 || target[yj] != 0)) continue;
        const std::int64_t value = fallingFactorial(m[xi], s) * fallingFactorial(m[yi], r);
        RowKey key{s, r, target};
        rowIndex.emplace(key, 0);
        entries.push_back({std::move(key), static_cast<int>(c), value});
      }
    }
  }

  ConstraintSystem system;
  int next = 0;
  for (auto& [key, index] : rowIndex) {
    index = next++;
    system.provenance.push_back({i, j, std::get<0>(key), std::get<1>(key)});
  }
  std::vector<Eigen::Triplet<std::int64_t>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) triplets.emplace_back(rowIndex.at(e.row), e.col, e.value);
  system.matrix.resize(next, static_cast<Eigen::Index>(basis.size()));
  system.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return system;
}

ConstraintSystem idealConstraints(const PairExponents& e, Bidegree bd, Ambient ambient) {
  std::vector<ConstraintSystem> parts;
  Eigen::Index rows = 0;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      parts.push_back(pairConstraints(i, j, e.at(i, j), bd, ambient));
      rows += parts.back().matrix.rows();
    }
  ConstraintSystem stacked;
  const Eigen::Index cols = static_cast<Eigen::Index>(monomialBasis(bd, ambient).size());
  std::vector<Eigen::Triplet<std::int64_t>> triplets;
  Eigen::Index offset = 0;
  for (const auto& part : parts) {
    for (Eigen::Index k = 0; k < part.matrix.outerSize(); ++k)
      for (IntMatrix::InnerIterator it(part.matrix, k); it; ++it)
        triplets.emplace_back(offset + it.row(), it.col(), it.value());
    offset += part.matrix.rows();
    stacked.provenance.insert(stacked.provenance.end(), part.provenance.begin(), part.provenance.end());
  }
  stacked.matrix.resize(rows, cols);
  stacked.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return stacked;
}

std::size_t constraintRank(const ConstraintSystem& system, RankMethod method) {
  return method == RankMethod::Exact ? rank<IntegerScalar>(system.matrix)
                                     : rank<ModPrimeScalar>(system.matrix);
}

long solutionDim(const ConstraintSystem& system, RankMethod method) {
  return static_cast<long>(system.matrix.cols()) - static_cast<long>(constraintRank(system, method));
}

long dimJ(const CoxeterDegrees& d, Bidegree bd, Ambient ambient, RankMethod method) {
  const PairExponents e(d);
  if (ambient == Ambient::Full) return solutionDim(idealConstraints(e, bd, ambient), method);
  long total = 0;
  for (int p = 0; p <= bd.p; ++p)
    for (int r = 0; r <= bd.r; ++r) total += solutionDim(idealConstraints(e, {p, r}, ambient), method);
  return total;
}

// ---------------------------------------------------------------------------
// IdealOracle

namespace {

using MemoKey = std::array<int, 5>;  // d1, d2, d3, p, r

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = 0;
    for (int v : k) h = h * 1000003u ^ std::hash<int>{}(v);
    return h;
  }
};

}  // namespace

struct IdealOracle::Memo {
  OnceMap<MemoKey, long, MemoKeyHash> dims;
};

IdealOracle::IdealOracle(OracleOptions options)
    : options_(options), memo_(std::make_unique<Memo>()) {}

IdealOracle::~IdealOracle() = default;

long IdealOracle::ambientDim(const PairExponents& e, Bidegree bd) {
  const auto sig = e.signature();
  const MemoKey key{sig[0], sig[1], sig[2], bd.p, bd.r};
  return memo_->dims.getOrCompute(key, [&]() -> long {
    std::string cacheKey;
    if (options_.cache) {
      std::ostringstream k;
      k << "oracle-dim v1 " << (options_.ambient == Ambient::Full ? "full" : "reduced") << ' '
        << (options_.method == RankMethod::Exact ? "exact" : "modular") << " pairs " << sig[0] << ' '
        << sig[1] << ' ' << sig[2] << " bidegree " << bd.p << ' ' << bd.r;
      cacheKey = k.str();
      if (auto hit = options_.cache->get(cacheKey)) return std::stol(*hit);
    }
    const long dim = solutionDim(idealConstraints(e, bd, options_.ambient), options_.method);
    if (options_.cache) options_.cache->put(cacheKey, std::to_string(dim) + "\n");
    return dim;
  });
}

BidegreeTable IdealOracle::hilbTable(const CoxeterDegrees& d, int maxTotal) {
  if (maxTotal < 0) throw std::invalid_argument("maxTotal must be nonnegative");
  const PairExponents e(d);
  std::vector<Bidegree> jobs;
  for (int total = 0; total <= maxTotal; ++total)
    for (int p = 0; p <= total; ++p) jobs.push_back({p, total - p});
  // Largest systems first keeps the workers busy; results land in fixed slots.
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = jobs.size() - 1 - k;

  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> ambient =
      Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(maxTotal + 1, maxTotal + 1);
  parallelFor(order.size(), options_.threads, [&](std::size_t k) {
    const Bidegree bd = jobs[order[k]];
    ambient(bd.p, bd.r) = ambientDim(e, bd);
  });

  BidegreeTable table;
  table.d = d;
  table.maxTotal = maxTotal;
  if (options_.ambient == Ambient::Full) {
    table.dims = ambient;
    return table;
  }
  // Multiply by 1 / ((1 - q)(1 - t)): two-dimensional prefix sums.
  table.dims = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(maxTotal + 1, maxTotal + 1);
  for (int p = 0; p <= maxTotal; ++p)
    for (int r = 0; p + r <= maxTotal; ++r) {
      std::int64_t v = ambient(p, r);
      if (p > 0) v += table.dims(p - 1, r);
      if (r > 0) v += table.dims(p, r - 1);
      if (p > 0 && r > 0) v -= table.dims(p - 1, r - 1);
      table.dims(p, r) = v;
    }
  return table;
}

BidegreeTable hilbTable(const CoxeterDegrees& d, int maxTotal, OracleOptions options) {
  IdealOracle oracle(options);
  return oracle.hilbTable(d, maxTotal);
}

// ---------------------------------------------------------------------------
// Formats

std::string serialize(const BidegreeTable& table) {
  std::ostringstream out;
  const auto& v = table.d.values();
  out << "hilb v1 d " << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << " max " << table.maxTotal
      << '\n';
  for (int total = 0; total <= table.maxTotal; ++total)
    for (int p = 0; p <= total; ++p) out << p << ' ' << total - p << ' ' << table.at(p, total - p) << '\n';
  out << "end\n";
  return out.str();
}

BidegreeTable parseHilbTable(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty hilb table");
  std::istringstream head(line);
  std::string w1, w2, w3, w4;
  int d1, d2, d3, d4, max;
  if (!(head >> w1 >> w2 >> w3 >> d1 >> d2 >> d3 >> d4 >> w4 >> max) || w1 != "hilb" || w2 != "v1" ||
      w3 != "d" || w4 != "max" || max < 0)
    throw ParseError("bad hilb header: " + line);
  BidegreeTable table;
  table.d = CoxeterDegrees(d1, d2, d3, d4);
  table.maxTotal = max;
  table.dims = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(max + 1, max + 1);
  for (int total = 0; total <= max; ++total)
    for (int p = 0; p <= total; ++p) {
      if (!std::getline(in, line)) throw ParseError("hilb table truncated");
      std::istringstream row(line);
      int rp, rr;
      std::int64_t dim;
      if (!(row >> rp >> rr >> dim) || rp != p || rr != total - p || dim < 0)
        throw ParseError("bad hilb row: " + line);
      if (dim > monomialSpaceDim({p, total - p})) throw ParseError("dimension exceeds the monomial space: " + line);
      table.dims(p, total - p) = dim;
    }
  if (!std::getline(in, line) || line != "end") throw ParseError("hilb table missing `end`");
  return table;
}

std::string toJson(const BidegreeTable& table) {
  nlohmann::ordered_json j;
  j["format"] = "hilb v1";
  j["d"] = table.d.values();
  j["maxTotal"] = table.maxTotal;
  auto rows = nlohmann::ordered_json::array();
  for (int total = 0; total <= table.maxTotal; ++total)
    for (int p = 0; p <= total; ++p) rows.push_back({p, total - p, table.at(p, total - p)});
  j["dims"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace hhh
