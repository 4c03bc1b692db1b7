#pragma once

// Cross-checks between the recursion engine and the ideal oracle, positivity
// certificates and closed-form identities.

#include "hhh/engine.hpp"
#include "hhh/ideal_oracle.hpp"
#include "hhh/ring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hhh {

struct PositivityReport {
  std::string id;
  int order = 0;
  BigInt minCoefficient = 0;
  bool pass = false;
};

PositivityReport positivityCheck(const GradedSeries& x, int order, std::string id = {});

struct Mismatch {
  Bidegree at;
  BigInt engine;
  std::int64_t oracle = 0;
};

struct MatchReport {
  CoxeterDegrees d;
  int maxTotal = 0;
  // HHH^{a=0}(beta) / (1-t)^4 = shift * Hilb(J) on the compared range.
  Monomial shift;
  std::vector<Mismatch> mismatches;
  bool pass = false;
};

// Throws AmbiguousShift when either side has no nonzero entry in range; the
// engine side throws MissingBaseCase if an a0 base case is unavailable.
MatchReport compareWithIdeal(Engine& engine, IdealOracle& oracle, const CoxeterDegrees& d, int maxTotal);

std::string toText(const PositivityReport& report);
std::string toText(const MatchReport& report);
std::string toJson(const MatchReport& report);

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::string lhs;  // canonical forms, filled only on failure
  std::string rhs;
};

struct CrossCheckReport {
  std::vector<IdentityCheck> checks;
  bool pass() const;
  std::vector<IdentityCheck> failures() const;
};

// For n, k <= the bounds:
//   K4 closed form against the closure product,
//   twisted C closed form against the unrolled C recursion,
//   untwisted C closed form against the twisted one at k = 0 and the
//   geometric factor against its telescoping identity,
//   one-step against two-step expansion of s3^2k B(n,0).
CrossCheckReport closedFormCrossChecks(int maxN = 6, int maxK = 6);

}  // namespace hhh
