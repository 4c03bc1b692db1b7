#include "hhh/engine.hpp"

#include "hhh/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hhh {

namespace {

const GradedSeries kQ = GradedSeries::q();
const GradedSeries kT = GradedSeries::t();
const GradedSeries kA = GradedSeries::a();
const GradedSeries kOneMinusQ = 1 - kQ;

// q^i t^j
GradedSeries qt(int i, int j) { return GradedSeries::monomial({i, j, 0}); }

GradedSeries specialize(const GradedSeries& x, EvalMode mode) {
  return mode == EvalMode::A0 ? specializeA0(x) : x;
}

std::string_view familyName(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::Btw2: return "Btw2";
    case Family::Btw3: return "Btw3";
    case Family::Btw23: return "Btw23";
    case Family::Ctw3: return "Ctw3";
    case Family::JMC: return "JMC";
  }
  return "?";
}

int arity(Family f) { return f == Family::A ? 3 : 2; }

}  // namespace

FamilyKey FamilyKey::make(Family f, std::array<int, 3> p) {
  for (int v : p)
    if (v < 0) throw std::invalid_argument("family parameters must be nonnegative");
  return FamilyKey{f, p};
}

std::string FamilyKey::toString() const {
  std::string s(familyName(family));
  s += '(';
  for (int i = 0; i < arity(family); ++i) {
    if (i) s += ',';
    s += std::to_string(params[static_cast<std::size_t>(i)]);
  }
  return s + ')';
}

std::size_t FamilyKeyHash::operator()(const FamilyKey& k) const {
  std::size_t h = static_cast<std::size_t>(k.family);
  for (int v : k.params) h = h * 1000003u ^ std::hash<int>{}(v);
  return h;
}

FamilyKey rootKey(const CoxeterDegrees& d) {
  return FamilyKey::a(d.d1(), d.d2() - d.d1(), d.d3() - d.d2());
}

// ---------------------------------------------------------------------------
// Closed forms

namespace closed {

GradedSeries k4Closed() {
  return (qt(0, 3) + kA) * (qt(0, 2) + kA) * (kT + kA) * (1 + kA);
}

GradedSeries closureProduct(int strands) {
  GradedSeries r(1);
  for (int i = strands - 1; i >= 0; --i) r = r * (qt(0, i) + kA);
  return r;
}

GradedSeries ctw3(int n, int k) {
  const Monomial ratio{1, -3, 0};
  return qt(0, -3) * geomSum(ratio, n) * k4Closed() +
         qt(n, -3 * n) * (qt(0, 2) + kA) * (kT + kA) * ft2Reduced(k);
}

GradedSeries ctw3ByRecursion(int n, int k) {
  GradedSeries value = (qt(0, 2) + kA) * (kT + kA) * ft2Reduced(k);
  const GradedSeries k4 = qt(0, -3) * k4Closed();
  for (int i = 1; i <= n; ++i) value = k4 + qt(1, -3) * value;
  return value;
}

GradedSeries cUntwisted(int n) {
  const Monomial ratio{1, -3, 0};
  return qt(0, -3) * geomSum(ratio, n) * k4Closed() +
         qt(n, -3 * n) * overOneMinusQ((qt(0, 2) + kA) * (kT + kA) * pow(1 + kA, 2));
}

GradedSeries jmcBase(int k) {
  const GradedSeries t2a = qt(0, 2) + kA;
  return qt(0, -2) * t2a * (t2a * (kT + kA) * (1 + kA) + kQ * (kT + kA) * ft2Reduced(k));
}

GradedSeries btw3Base(int k) { return (kT + kA) * (1 + kA) * ft2(k); }

GradedSeries btw23Base(int j) {
  return (kT + kA) * qt(0, -1) * ((kT + kA) * kOneMinusQ + kQ * (1 + kA)) * ft2(j);
}

}  // namespace closed

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(std::shared_ptr<const BaseCaseProvider> base, Cache* cache)
    : base_(base ? std::move(base) : std::make_shared<const BaseCaseProvider>()), cache_(cache) {
  baseFingerprint_ = base_->table().fingerprint().substr(0, 16) + (base_->canDerive() ? "+oracle" : "");
}

std::vector<FamilyKey> Engine::children(const FamilyKey& key) {
  const auto [n, x, y] = key.params;
  switch (key.family) {
    case Family::Ctw3:
      return {};
    case Family::JMC:
      if (n == 0) return {};
      return {FamilyKey::jmc(n - 1, x)};
    case Family::Btw3:
      if (n == 0) return {};
      return {FamilyKey::ctw3(n, x), FamilyKey::ctw3(n - 1, x + 1), FamilyKey::btw3(n - 1, x + 1)};
    case Family::Btw23:
      if (n == 0) return {};
      return {FamilyKey::ctw3(n, x), FamilyKey::jmc(n - 1, x), FamilyKey::btw23(n - 1, x + 1)};
    case Family::B:
      if (x == 0) return {FamilyKey::btw3(n, 0)};
      return {FamilyKey::ctw3(n, 0), FamilyKey::b(n, x - 1)};
    case Family::Btw2:
      if (x == 0) return {FamilyKey::btw23(n, 0)};
      return {FamilyKey::ctw3(n, 0), FamilyKey::btw2(n, x - 1)};
    case Family::A:
      if (y >= 1) return {FamilyKey::b(n, x), FamilyKey::a(n, x, y - 1)};
      if (x >= 1)
        return {FamilyKey::b(n, x), FamilyKey::btw2(n, x - 1), FamilyKey::b(n, x - 1),
                FamilyKey::a(n, x - 1, 0)};
      return {};
  }
  return {};
}

Expansion Engine::step(const FamilyKey& key, EvalMode mode) const {
  const auto [n, x, y] = key.params;
  const auto kids = children(key);
  Expansion e;
  std::vector<GradedSeries> coeffs;
  switch (key.family) {
    case Family::Ctw3:
      e.constant = closed::ctw3(n, x);
      break;
    case Family::JMC:
      if (n == 0)
        e.constant = closed::jmcBase(x);
      else {
        e.constant = qt(0, -3) * closed::k4Closed();
        coeffs = {qt(1, -3)};
      }
      break;
    case Family::Btw3:
      if (n == 0)
        e.constant = closed::btw3Base(x);
      else
        coeffs = {qt(0, -2), qt(1, -4), qt(2, -4)};
      break;
    case Family::Btw23:
      if (n == 0)
        e.constant = closed::btw23Base(x);
      else
        coeffs = {qt(0, -2), qt(1, -4), qt(2, -4)};
      break;
    case Family::B:
    case Family::Btw2:
      if (x == 0)
        coeffs = {GradedSeries(1)};
      else
        coeffs = {qt(0, -2), qt(1, -2)};
      break;
    case Family::A:
      if (y >= 1)
        coeffs = {qt(0, -1), qt(1, -1)};
      else if (x >= 1)
        coeffs = {qt(0, -1), qt(1, -2), qt(2, -3), qt(3, -3)};
      else
        e.constant = kOneMinusQ * base_->ft4(n, mode);
      break;
  }
  e.constant = specialize(e.constant, mode);
  for (std::size_t i = 0; i < kids.size(); ++i) e.terms.emplace_back(specialize(coeffs[i], mode), kids[i]);
  return e;
}

std::string Engine::cacheKey(const FamilyKey& key, EvalMode mode) const {
  std::string k = "engine v1 " + std::string(toString(mode)) + " " + key.toString();
  // Only A nodes reach the four-strand base cases.
  if (key.family == Family::A && key.n() >= 1) k += " base " + baseFingerprint_;
  return k;
}

GradedSeries Engine::compute(const FamilyKey& key, EvalMode mode) {
  std::string ck;
  if (cache_) {
    ck = cacheKey(key, mode);
    if (auto hit = cache_->get(ck)) return parseSeries(*hit);
  }
  const Expansion e = step(key, mode);
  GradedSeries value = e.constant;
  for (const auto& [coeff, child] : e.terms) value = value + coeff * eval(child, mode);
  if (cache_) cache_->put(ck, serialize(value));
  return value;
}

GradedSeries Engine::eval(const FamilyKey& key, EvalMode mode) {
  return memo_.getOrCompute(MemoKey{key, mode}, [&] { return compute(key, mode); });
}

GradedSeries Engine::hhhCoxeter(const CoxeterDegrees& d, EvalMode mode) {
  return overOneMinusQ(eval(rootKey(d), mode));
}

std::vector<FamilyKey> Engine::trace(const CoxeterDegrees& d) {
  std::set<FamilyKey> seen;
  std::vector<FamilyKey> stack{rootKey(d)};
  while (!stack.empty()) {
    FamilyKey k = stack.back();
    stack.pop_back();
    if (!seen.insert(k).second) continue;
    for (const auto& c : children(k)) stack.push_back(c);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace hhh
