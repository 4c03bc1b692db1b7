#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace hhh {

// 0 <= d1 <= d2 <= d3 <= d4. The largest degree never influences a result but
// is carried along for validation and display.
class CoxeterDegrees {
 public:
  CoxeterDegrees() = default;
  // Throws InvalidDegrees unless the tuple is nonnegative and sorted.
  CoxeterDegrees(int d1, int d2, int d3, int d4);

  // Parses "d1,d2,d3,d4".
  static CoxeterDegrees parse(std::string_view text);

  int d1() const { return d_[0]; }
  int d2() const { return d_[1]; }
  int d3() const { return d_[2]; }
  int d4() const { return d_[3]; }
  const std::array<int, 4>& values() const { return d_; }

  std::string toString() const;  // "d1,d2,d3,d4"

  auto operator<=>(const CoxeterDegrees&) const = default;

 private:
  std::array<int, 4> d_{0, 0, 0, 0};
};

enum class EvalMode { FullA, A0 };

std::string_view toString(EvalMode mode);
EvalMode parseEvalMode(std::string_view text);

}  // namespace hhh
