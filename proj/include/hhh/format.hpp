#pragma once

#include "hhh/ring.hpp"

#include <string>
#include <string_view>

namespace hhh {

enum class Format { Text, Latex, Json };

std::string_view toString(Format f);
Format parseFormat(std::string_view s);  // throws ParseError

// Text is the canonical serialization. Latex writes the expanded numerator over
// (1-q)^e. Json mirrors the canonical terms, coefficients as decimal strings.
std::string formatSeries(const GradedSeries& x, Format format);

GradedSeries parseSeriesJson(std::string_view text);
GradedSeries parseSeries(std::string_view text, Format format);  // Text or Json

// `expansion v1 order <N>`, one `<coef> <q> <t> <a>` line per nonzero
// coefficient in canonical order, then `end`. Latex ends with O(q^{N+1}).
std::string formatExpansion(const CoeffTable& table, Format format);

}  // namespace hhh
