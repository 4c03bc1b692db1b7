#pragma once

// The acceptance suite: eight criteria, each producing a deterministic
// transcript. Criterion 8 reruns 1-7 serially and in parallel, with a cold and
// a warm cache, and compares transcripts byte for byte.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hhh {

struct AcceptanceOptions {
  unsigned threads = 1;
  std::optional<std::filesystem::path> cacheDir;
  // a0 base cases for n >= 2; n = 1 is always derived live as well.
  std::optional<std::filesystem::path> baseFile;
  bool enforceTimeLimits = true;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string transcript;
  std::string failure;  // reason when !pass
  double seconds = 0;
};

// Runs the selected criteria (all when `only` is empty) in order.
std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options, const std::vector<int>& only = {});

// "criterion <id> PASS|FAIL <title> (<seconds> s)"
std::string summaryLine(const CriterionResult& r);

std::optional<std::filesystem::path> bundledBaseFile();

}  // namespace hhh
