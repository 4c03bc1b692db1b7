#include "hhh/format.hpp"

#include "hhh/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace hhh {

std::string_view toString(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Latex: return "latex";
    case Format::Json: return "json";
  }
  return "text";
}

Format parseFormat(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "latex") return Format::Latex;
  if (s == "json") return Format::Json;
  throw ParseError("unknown format: " + std::string(s));
}

namespace {

void latexPower(std::ostringstream& out, char var, int e, bool& any) {
  if (e == 0) return;
  if (any) out << ' ';
  out << var;
  if (e != 1) out << "^{" << e << '}';
  any = true;
}

std::string latex(const GradedSeries& x) {
  std::ostringstream num;
  bool first = true;
  for (const auto& [m, c] : x.numerator().terms()) {
    const bool negative = c < 0;
    const BigInt magnitude = negative ? BigInt(-c) : c;
    if (first)
      num << (negative ? "-" : "");
    else
      num << (negative ? " - " : " + ");
    first = false;

    std::ostringstream vars;
    bool any = false;
    latexPower(vars, 'q', m.q, any);
    latexPower(vars, 't', m.t, any);
    latexPower(vars, 'a', m.a, any);
    if (magnitude != 1 || !any) num << magnitude << (any ? " " : "");
    num << vars.str();
  }
  if (first) num << '0';

  const int e = x.denomExp();
  if (e == 0) return num.str();
  std::string denom = "(1-q)";
  if (e > 1) denom += "^{" + std::to_string(e) + "}";
  return "\\frac{" + num.str() + "}{" + denom + "}";
}

std::string json(const GradedSeries& x) {
  nlohmann::ordered_json j;
  j["format"] = "series";
  j["version"] = 1;
  j["denom"] = x.denomExp();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : x.numerator().terms())
    terms.push_back({{"coef", c.str()}, {"q", m.q}, {"t", m.t}, {"a", m.a}});
  j["terms"] = std::move(terms);
  return j.dump(2);
}

}  // namespace

std::string formatSeries(const GradedSeries& x, Format format) {
  switch (format) {
    case Format::Text: return serialize(x);
    case Format::Latex: return latex(x) + "\n";
    case Format::Json: return json(x) + "\n";
  }
  return serialize(x);
}

std::string formatExpansion(const CoeffTable& table, Format format) {
  if (format == Format::Latex) {
    GradedSeries truncated(0);
    for (const auto& [m, c] : table.entries) truncated = truncated + GradedSeries::monomial(m, c);
    return latex(truncated) + " + O(q^{" + std::to_string(table.qOrder + 1) + "})\n";
  }
  if (format == Format::Json) {
    nlohmann::ordered_json j;
    j["format"] = "expansion";
    j["version"] = 1;
    j["order"] = table.qOrder;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : table.entries)
      terms.push_back({{"coef", c.str()}, {"q", m.q}, {"t", m.t}, {"a", m.a}});
    j["terms"] = std::move(terms);
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "expansion v1 order " << table.qOrder << '\n';
  for (const auto& [m, c] : table.entries) out << c << ' ' << m.q << ' ' << m.t << ' ' << m.a << '\n';
  out << "end\n";
  return out.str();
}

GradedSeries parseSeriesJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad series json: ") + e.what());
  }
  // Rebuild the canonical text form so both parsers apply the same checks.
  std::ostringstream out;
  try {
    if (j.at("format") != "series" || j.at("version") != 1) throw ParseError("not a series v1 document");
    out << "series v1 denom " << j.at("denom").get<int>() << '\n';
    for (const auto& term : j.at("terms"))
      out << term.at("coef").get<std::string>() << ' ' << term.at("q").get<int>() << ' ' << term.at("t").get<int>()
          << ' ' << term.at("a").get<int>() << '\n';
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad series json: ") + e.what());
  }
  out << "end\n";
  return parseSeries(out.str());
}

GradedSeries parseSeries(std::string_view text, Format format) {
  switch (format) {
    case Format::Text: return parseSeries(text);
    case Format::Json: return parseSeriesJson(text);
    case Format::Latex: break;
  }
  throw ParseError("latex output is not parsed back");
}

}  // namespace hhh
