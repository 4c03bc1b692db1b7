#pragma once

// Memoized evaluator for the K_n recursion families on four strands.
//
//   A(n,m,l)  = K_1 FT_2^l FT_3^m FT_4^n
//   B(n,m)    = K_2 FT_3^m FT_4^n          Btw2(n,m)  = s2^2 B(n,m)
//   Btw3(n,k) = s3^2k B(n,0)               Btw23(n,j) = s2^2 s3^2j B(n,0)
//   Ctw3(n,k) = s3^2k K_3 FT_4^n           JMC(n,k)   = (s3 s2^2 s3) s3^2k K_3 FT_4^n
//
// Every node value is the HHH Poincare series of the closed diagram. A node
// expands into a constant plus a linear combination of other nodes with
// monomial coefficients; each expansion strictly decreases (n, m, l) or moves
// from A to B to C.

#include "hhh/cache.hpp"
#include "hhh/degrees.hpp"
#include "hhh/once_map.hpp"
#include "hhh/ring.hpp"
#include "hhh/torus_base.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hhh {

enum class Family : std::uint8_t { A, B, Btw2, Btw3, Btw23, Ctw3, JMC };

struct FamilyKey {
  Family family = Family::A;
  std::array<int, 3> params{0, 0, 0};  // unused trailing slots stay 0

  static FamilyKey a(int n, int m, int l) { return make(Family::A, {n, m, l}); }
  static FamilyKey b(int n, int m) { return make(Family::B, {n, m, 0}); }
  static FamilyKey btw2(int n, int m) { return make(Family::Btw2, {n, m, 0}); }
  static FamilyKey btw3(int n, int k) { return make(Family::Btw3, {n, k, 0}); }
  static FamilyKey btw23(int n, int j) { return make(Family::Btw23, {n, j, 0}); }
  static FamilyKey ctw3(int n, int k) { return make(Family::Ctw3, {n, k, 0}); }
  static FamilyKey jmc(int n, int k) { return make(Family::JMC, {n, k, 0}); }

  int n() const { return params[0]; }
  std::string toString() const;  // e.g. "A(1,0,2)", "Ctw3(2,1)"

  auto operator<=>(const FamilyKey&) const = default;

 private:
  static FamilyKey make(Family f, std::array<int, 3> p);
};

struct FamilyKeyHash {
  std::size_t operator()(const FamilyKey& k) const;
};

// K_1 beta(d) = A(d1, d2 - d1, d3 - d2).
FamilyKey rootKey(const CoxeterDegrees& d);

struct Expansion {
  GradedSeries constant;
  std::vector<std::pair<GradedSeries, FamilyKey>> terms;
};

// Closed forms used as base cases and cross-checks.
namespace closed {

// (t^3+a)(t^2+a)(t+a)(1+a)
GradedSeries k4Closed();
// prod_{i=0}^{strands-1} (t^i + a): closing every strand of K_strands.
GradedSeries closureProduct(int strands);
// s3^2k C(n): t^-3 [sum_{i<n} (q t^-3)^i] K4 + (q t^-3)^n (t^2+a)(t+a)(1-q) FT2(k)
GradedSeries ctw3(int n, int k);
// The same value by unrolling C(n) = t^-3 K4 + q t^-3 C(n-1) down to the
// twisted n = 0 closure.
GradedSeries ctw3ByRecursion(int n, int k);
// C(n) with its untwisted base (t^2+a)(t+a)(1+a)^2/(1-q).
GradedSeries cUntwisted(int n);
// JMC(0,k) = t^-2 (t^2+a) [(t^2+a)(t+a)(1+a) + q (t+a)(1-q) FT2(k)]
GradedSeries jmcBase(int k);
// Btw3(0,k) = (t+a)(1+a) FT2(k)
GradedSeries btw3Base(int k);
// Btw23(0,j) = (t+a) t^-1 [(t+a)(1-q) + q(1+a)] FT2(j)
GradedSeries btw23Base(int j);

}  // namespace closed

class Engine {
 public:
  // Without a provider only ft4(0) is available, so A(n,0,0) with n >= 1 throws
  // MissingBaseCase.
  explicit Engine(std::shared_ptr<const BaseCaseProvider> base = nullptr, Cache* cache = nullptr);

  GradedSeries eval(const FamilyKey& key, EvalMode mode);

  GradedSeries evalA(int n, int m, int l, EvalMode mode) { return eval(FamilyKey::a(n, m, l), mode); }
  GradedSeries evalB(int n, int m, EvalMode mode) { return eval(FamilyKey::b(n, m), mode); }
  GradedSeries evalBtw2(int n, int m, EvalMode mode) { return eval(FamilyKey::btw2(n, m), mode); }
  GradedSeries evalBtw3(int n, int k, EvalMode mode) { return eval(FamilyKey::btw3(n, k), mode); }
  GradedSeries evalBtw23(int n, int j, EvalMode mode) { return eval(FamilyKey::btw23(n, j), mode); }
  GradedSeries evalCtw3(int n, int k, EvalMode mode) { return eval(FamilyKey::ctw3(n, k), mode); }
  GradedSeries evalJMC(int n, int k, EvalMode mode) { return eval(FamilyKey::jmc(n, k), mode); }

  // HHH(beta(d)) = A(d1, d2-d1, d3-d2) / (1 - q).
  GradedSeries hhhCoxeter(const CoxeterDegrees& d, EvalMode mode);

  // One expansion step. Coefficients and constants are a-specialized in a0 mode.
  Expansion step(const FamilyKey& key, EvalMode mode) const;
  // Child nodes of a key, independent of mode and base cases.
  static std::vector<FamilyKey> children(const FamilyKey& key);
  // All nodes reachable from rootKey(d), sorted.
  static std::vector<FamilyKey> trace(const CoxeterDegrees& d);

  std::size_t memoSize() const { return memo_.size(); }
  const BaseCaseProvider& base() const { return *base_; }

 private:
  struct MemoKey {
    FamilyKey key;
    EvalMode mode;
    bool operator==(const MemoKey&) const = default;
  };
  struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
      return FamilyKeyHash{}(k.key) * 31u + static_cast<std::size_t>(k.mode);
    }
  };

  std::string cacheKey(const FamilyKey& key, EvalMode mode) const;
  GradedSeries compute(const FamilyKey& key, EvalMode mode);

  std::shared_ptr<const BaseCaseProvider> base_;
  Cache* cache_;
  std::string baseFingerprint_;
  OnceMap<MemoKey, GradedSeries, MemoKeyHash> memo_;
};

}  // namespace hhh
