#pragma once

#include <optional>

#include "qha/scenarios.hpp"

namespace qha {

struct SuiteOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::optional<int> trials;
};

/// Runs every certificate for the scenario in a fixed order with fixed seeding.
/// Randomized checks are repeated `trials` times and the worst trial is reported.
std::vector<CheckReport> run_suite(const BuiltScenario& scenario, const SuiteOptions& options = {});

/// Duflo estimate with the suite's seeding and cross-check tolerance.
DufloEstimate suite_duflo(const BuiltScenario& scenario, const SuiteOptions& options = {});

/// Expected-D comparison for the scenario's [expect] descriptor.
CheckReport check_expected_duflo(const BuiltScenario& scenario, const DufloEstimate& est, Tolerance tol);

/// Nodes and window used for semi-invariance: all nodes on finite groups,
/// interior dilations on the affine grid.
CheckReport suite_semi_invariance(const BuiltScenario& scenario, const DufloEstimate& est, Tolerance tol);

}  // namespace qha
