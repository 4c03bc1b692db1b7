#include "hhh/cli.hpp"

#include "hhh/acceptance.hpp"
#include "hhh/cache.hpp"
#include "hhh/engine.hpp"
#include "hhh/errors.hpp"
#include "hhh/format.hpp"
#include "hhh/ideal_oracle.hpp"
#include "hhh/torus_base.hpp"
#include "hhh/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>

namespace hhh {

namespace {

struct Flags {
  std::string d;
  bool a0 = false;
  int series = -1;
  int maxTotal = 8;
  std::string format = "text";
  unsigned threads = 1;
  std::string cache;
  std::string base;
  std::vector<int> ns;
  std::string out;
  std::string file;
  std::vector<int> criteria;
  bool verbose = false;
};

struct Context {
  std::unique_ptr<Cache> cache;
  std::unique_ptr<IdealOracle> oracle;
  std::shared_ptr<const BaseCaseProvider> provider;
  std::unique_ptr<Engine> engine;
};

std::optional<std::filesystem::path> cacheDir(const Flags& f) {
  if (!f.cache.empty()) return std::filesystem::path(f.cache);
  if (const char* env = std::getenv("HHH_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

std::optional<std::filesystem::path> baseFile(const Flags& f) {
  if (!f.base.empty()) return std::filesystem::path(f.base);
  return bundledBaseFile();
}

Context makeContext(const Flags& f) {
  Context c;
  if (auto dir = cacheDir(f)) c.cache = std::make_unique<Cache>(*dir);
  c.oracle = std::make_unique<IdealOracle>(OracleOptions{Ambient::Reduced, RankMethod::Exact, f.threads, c.cache.get()});
  BaseCaseTable table;
  if (auto file = baseFile(f)) table = importBaseCases(*file);
  c.provider = std::make_shared<const BaseCaseProvider>(std::move(table), oracleDeriver(*c.oracle));
  c.engine = std::make_unique<Engine>(c.provider, c.cache.get());
  return c;
}

void listTable(const BaseCaseTable& table, std::ostream& out) {
  for (const auto& [key, e] : table.entries())
    out << "n " << e.n << " mode " << toString(e.mode) << " denom " << e.value.denomExp() << " terms "
        << e.value.numerator().size() << " source " << e.provenance << '\n';
  out << "fingerprint " << table.fingerprint() << '\n';
}

int runHhh(const Flags& f, std::ostream& out) {
  const CoxeterDegrees d = CoxeterDegrees::parse(f.d);
  const Format format = parseFormat(f.format);
  Context c = makeContext(f);
  const GradedSeries value = c.engine->hhhCoxeter(d, f.a0 ? EvalMode::A0 : EvalMode::FullA);
  out << (f.series >= 0 ? formatExpansion(expand(value, f.series), format) : formatSeries(value, format));
  return kExitOk;
}

int runHilb(const Flags& f, std::ostream& out) {
  const CoxeterDegrees d = CoxeterDegrees::parse(f.d);
  const Format format = parseFormat(f.format);
  if (format == Format::Latex) throw ParseError("hilb supports text and json output");
  Context c = makeContext(f);
  const BidegreeTable table = c.oracle->hilbTable(d, f.maxTotal);
  out << (format == Format::Json ? toJson(table) : serialize(table));
  return kExitOk;
}

int runVerify(const Flags& f, std::ostream& out) {
  const CoxeterDegrees d = CoxeterDegrees::parse(f.d);
  const Format format = parseFormat(f.format);
  if (format == Format::Latex) throw ParseError("verify supports text and json output");
  Context c = makeContext(f);
  const MatchReport report = compareWithIdeal(*c.engine, *c.oracle, d, f.maxTotal);
  out << (format == Format::Json ? toJson(report) : toText(report));
  return report.pass ? kExitOk : kExitMismatch;
}

int runDerive(const Flags& f, std::ostream& out) {
  for (int n : f.ns)
    if (n < 1) throw InvalidDegrees("basecase derive: n must be at least 1");
  Context c = makeContext(f);
  BaseCaseTable table;
  for (int n : f.ns) {
    const DerivedBaseCase r = deriveFt4A0(n, *c.oracle);
    table.insert({n, EvalMode::A0, r.value, "derived at order " + std::to_string(r.order)});
  }
  if (f.out.empty())
    out << serializeBaseCases(table);
  else
    exportBaseCases(table, f.out);
  return kExitOk;
}

int runImport(const Flags& f, std::ostream& out) {
  listTable(importBaseCases(f.file), out);
  return kExitOk;
}

int runList(const Flags& f, std::ostream& out) {
  const auto file = baseFile(f);
  listTable(file ? importBaseCases(*file) : BaseCaseTable{}, out);
  return kExitOk;
}

int runSelftest(const Flags& f, std::ostream& out) {
  AcceptanceOptions options;
  options.threads = f.threads;
  options.cacheDir = cacheDir(f);
  options.baseFile = baseFile(f);
  bool pass = true;
  for (const auto& r : runAcceptance(options, f.criteria)) {
    if (f.verbose) out << r.transcript;
    out << summaryLine(r) << '\n';
    pass = pass && r.pass;
  }
  return pass ? kExitOk : kExitMismatch;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"HHH of four-strand Coxeter links and the matching ideal Hilbert series", "hhh"};
  app.require_subcommand(1);
  Flags f;

  auto degrees = [&](CLI::App* sub) { sub->add_option("--d", f.d, "d1,d2,d3,d4 (sorted, nonnegative)")->required(); };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", f.threads, "worker count")->check(CLI::PositiveNumber);
    sub->add_option("--cache", f.cache, "cache directory (default $HHH_CACHE)");
    sub->add_option("--base", f.base, "base-case file (default: bundled a0 table)");
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
  };

  CLI::App* hhh = app.add_subcommand("hhh", "Poincare series of the closure of beta(d)");
  degrees(hhh);
  hhh->add_flag("--a0", f.a0, "specialize a = 0");
  hhh->add_option("--series", f.series, "expand to this q-order")->check(CLI::NonNegativeNumber);
  format(hhh);
  common(hhh);

  CLI::App* hilb = app.add_subcommand("hilb", "bigraded Hilbert function of the ideal J(d)");
  degrees(hilb);
  hilb->add_option("--max-total", f.maxTotal, "largest total degree")->check(CLI::NonNegativeNumber);
  format(hilb);
  common(hilb);

  CLI::App* verify = app.add_subcommand("verify", "compare the a = 0 series with the ideal");
  degrees(verify);
  verify->add_option("--max-total", f.maxTotal, "largest total degree")->check(CLI::NonNegativeNumber);
  format(verify);
  common(verify);

  CLI::App* basecase = app.add_subcommand("basecase", "manage four-strand full twist base cases");
  basecase->require_subcommand(1);
  CLI::App* derive = basecase->add_subcommand("derive", "reconstruct a0 entries from the ideal");
  derive->add_option("--n", f.ns, "full twist count (repeatable)")->required();
  derive->add_option("--out", f.out, "write to this file instead of stdout");
  derive->add_option("--threads", f.threads, "worker count")->check(CLI::PositiveNumber);
  derive->add_option("--cache", f.cache, "cache directory (default $HHH_CACHE)");
  CLI::App* import = basecase->add_subcommand("import", "validate a base-case file");
  import->add_option("file", f.file, "base-case file")->required();
  CLI::App* list = basecase->add_subcommand("list", "list the entries of a base-case file");
  list->add_option("--base", f.base, "base-case file (default: bundled a0 table)");

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--criterion", f.criteria, "run only these criteria (repeatable)");
  selftest->add_flag("--verbose", f.verbose, "print transcripts");
  common(selftest);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (hhh->parsed()) return runHhh(f, out);
    if (hilb->parsed()) return runHilb(f, out);
    if (verify->parsed()) return runVerify(f, out);
    if (derive->parsed()) return runDerive(f, out);
    if (import->parsed()) return runImport(f, out);
    if (list->parsed()) return runList(f, out);
    if (selftest->parsed()) return runSelftest(f, out);
  } catch (const MissingBaseCase& e) {
    err << "missing base case: " << e.what() << '\n';
    return kExitMissingBaseCase;
  } catch (const InvalidDegrees& e) {
    err << "invalid degrees: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const ChecksumMismatch& e) {
    err << "checksum mismatch: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const PositivityViolation& e) {
    err << "positivity violation: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const CorruptEntry& e) {
    err << "corrupt cache entry: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const AmbiguousShift& e) {
    err << "ambiguous shift: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitInvalidInput;
}

}  // namespace hhh
