#pragma once

// External homology inputs of the recursion: the two-strand full twists,
// derived here from the local K_n calculus, and the four-strand full twists,
// which come from a checksummed base-case table (full a-grading) or are
// reconstructed from the ideal oracle (a = 0 only).

#include "hhh/degrees.hpp"
#include "hhh/ideal_oracle.hpp"
#include "hhh/ring.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hhh {

// HHH(FT_2^k). With u(0) = (1+a)^2/(1-q) and
// u(k) = t^-1 (t+a)(1+a) + q t^-1 u(k-1), the value is u(k)/(1-q).
GradedSeries ft2(int k);
// (1 - q) * HHH(FT_2^k), i.e. the closure of K_1 FT_2^k.
GradedSeries ft2Reduced(int k);

struct BaseCaseEntry {
  int n = 0;
  EvalMode mode = EvalMode::FullA;
  GradedSeries value;
  std::string provenance;
};

// Entries are validated on insertion: nonnegative expansion to q-order 10, and
// no a-terms in an a0 entry.
class BaseCaseTable {
 public:
  static constexpr int kPositivityOrder = 10;

  // Throws PositivityViolation or std::invalid_argument.
  void insert(BaseCaseEntry entry);
  const BaseCaseEntry* find(int n, EvalMode mode) const;
  const std::map<std::pair<int, EvalMode>, BaseCaseEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Hash of the canonical serialization; identifies the data behind cached
  // values that depend on the table.
  std::string fingerprint() const;

 private:
  std::map<std::pair<int, EvalMode>, BaseCaseEntry> entries_;
};

// Base-case file format:
//   hhh-basecase v1
//   family FT4 / n <int> / mode <fullA|a0> / denom-exponent <int>
//   term <coef> <qExp> <tExp> <aExp>      (canonical order)
//   checksum <hex>                        (SHA-256 of the block's lines above)
//   end
// with the block repeated for each entry.
std::string serializeBaseCases(const BaseCaseTable& table);
// Throws ParseError, ChecksumMismatch or PositivityViolation.
BaseCaseTable parseBaseCases(std::string_view text, std::string_view provenance = "imported");
BaseCaseTable importBaseCases(const std::filesystem::path& file);
void exportBaseCases(const BaseCaseTable& table, const std::filesystem::path& file);

struct DerivedBaseCase {
  GradedSeries value;  // a0 series
  int tShift = 0;      // the oracle numerator was multiplied by t^-tShift
  int order = 0;       // truncation at which the numerator stabilized
};

// Reconstructs HHH^{a=0} of the closure of beta(d) from the oracle table of
// J(d): N(q,t) = Hilb(J)(1-q)^4(1-t)^4, truncated at total degree `order`, must
// agree with the truncation at `order - 2` (else NotStabilized). The result is
// t^-s N / (1-q)^4 with s = 3 d1 + 2 d2 + d3, and must expand nonnegatively
// (else NegativeCoefficient).
DerivedBaseCase deriveFt4A0(int n, const BidegreeTable& oracleTable, int order);

// Raises the truncation order in steps of two until deriveFt4A0 stabilizes.
DerivedBaseCase deriveFt4A0(int n, IdealOracle& oracle, int startOrder = 4, int maxOrder = 64);

// Supplies HHH(FT_4^n) to the engine. a0 values come from an a0 entry, then a
// specialized fullA entry, then the deriver (if any). Derived values are
// computed once per n.
class BaseCaseProvider {
 public:
  using Deriver = std::function<DerivedBaseCase(int n)>;

  explicit BaseCaseProvider(BaseCaseTable table = {}, Deriver deriver = {});
  ~BaseCaseProvider();

  // Throws MissingBaseCase when no source can supply the value.
  GradedSeries ft4(int n, EvalMode mode) const;

  const BaseCaseTable& table() const { return table_; }
  bool canDerive() const { return static_cast<bool>(deriver_); }
  // Entries derived so far in this session, as a0 table entries.
  BaseCaseTable derivedEntries() const;

 private:
  struct Derived;

  BaseCaseTable table_;
  Deriver deriver_;
  std::unique_ptr<Derived> derived_;
};

// Deriver backed by an oracle (the oracle must outlive the provider).
BaseCaseProvider::Deriver oracleDeriver(IdealOracle& oracle);

}  // namespace hhh
