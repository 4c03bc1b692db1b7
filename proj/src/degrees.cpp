#include "hhh/degrees.hpp"

#include "hhh/errors.hpp"

#include <charconv>

namespace hhh {

CoxeterDegrees::CoxeterDegrees(int d1, int d2, int d3, int d4) : d_{d1, d2, d3, d4} {
  if (d1 < 0) throw InvalidDegrees("degrees must be nonnegative");
  if (!(d1 <= d2 && d2 <= d3 && d3 <= d4))
    throw InvalidDegrees("degrees must be sorted ascending: " + toString());
}

CoxeterDegrees CoxeterDegrees::parse(std::string_view text) {
  std::array<int, 4> d{};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t end = i < 3 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos)
      throw InvalidDegrees("expected four comma-separated integers: " + std::string(text));
    const auto field = text.substr(pos, end - pos);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), d[i]);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
      throw InvalidDegrees("not an integer: '" + std::string(field) + "'");
    pos = end + 1;
  }
  return CoxeterDegrees(d[0], d[1], d[2], d[3]);
}

std::string CoxeterDegrees::toString() const {
  return std::to_string(d_[0]) + "," + std::to_string(d_[1]) + "," + std::to_string(d_[2]) + "," +
         std::to_string(d_[3]);
}

std::string_view toString(EvalMode mode) { return mode == EvalMode::FullA ? "fullA" : "a0"; }

EvalMode parseEvalMode(std::string_view text) {
  if (text == "fullA") return EvalMode::FullA;
  if (text == "a0") return EvalMode::A0;
  throw ParseError("unknown mode: " + std::string(text));
}

}  // namespace hhh
