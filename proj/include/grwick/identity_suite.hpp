#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grwick/randgen.hpp"
#include "grwick/report.hpp"

namespace grwick {

struct SuiteCheck {
  std::string name;
  int min_dim = 1;  // smallest field dimension the check is meaningful at
  // one randomized instance, exact comparison; true on pass
  std::function<bool(Rng&, int dim, int a_gens)> run;
};

// Exact structural identities of the Gaussian calculus: moment/pairing
// formulas, shift and reordering rules, contraction rules, covariance
// derivatives.
const std::vector<SuiteCheck>& identity_checks();

// Exact operator identities of the interacting-average machinery: ratio vs
// resolvent form, kernel form of the fluctuation operator, exponential
// expansion of the kernel operator.
const std::vector<SuiteCheck>& schwinger_checks();

// Runs `count` instances of every check at each listed dimension (skipping
// dims below a check's minimum) and appends one record per (check, dim).
// Instances draw from streams derived with mix_seed, so the report is
// independent of scheduling; `jobs` > 1 runs (check, dim) cells in parallel.
void run_suite(const std::vector<SuiteCheck>& checks, std::uint64_t seed,
               const std::vector<int>& dims, int count, int a_gens, int jobs,
               ReportWriter& out);

}  // namespace grwick
