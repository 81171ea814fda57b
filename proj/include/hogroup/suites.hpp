#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hogroup {

struct SuiteCheck {
  std::string module;
  std::string invariant;  // e.g. "R.associativity"
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

// Ratio interval of one equivalence on two grids.
struct RatioRow {
  std::string space;
  std::string group;
  std::string params;
  double lo[2] = {0.0, 0.0};  // coarse, fine
  double hi[2] = {0.0, 0.0};
  double moved = 0.0;         // largest relative endpoint change
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 1;
  std::vector<SuiteCheck> checks;
  std::vector<RatioRow> ratios;
  std::vector<std::pair<std::string, double>> metrics;
  bool pass() const;
  // First failing check, or nullptr.
  const SuiteCheck* first_failure() const;
  std::string to_json() const;
  // The ratio table when there is one, the checks otherwise.
  std::string to_csv() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
};

// group, taylor, calderon, aoe, maximal, dyadic, equivalence, wavelet,
// identifications, riesz
const std::vector<std::string>& suite_names();
// Throws Error("cli", "unknown_suite") for other names. Library errors raised
// inside a suite become failing checks named after their module and code.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace hogroup
