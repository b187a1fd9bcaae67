#pragma once

// Scenario descriptions: builtin instances, randomized instances and the
// scenario file format.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qha/duflo.hpp"
#include "qha/wavelet.hpp"

namespace qha {

enum class ExpectKind { none, scalar, inverse_scalar, inverse_frequency };

struct ExpectedDuflo {
  ExpectKind kind = ExpectKind::none;
  double value = 0.0;
  friend bool operator==(const ExpectedDuflo&, const ExpectedDuflo&) = default;
};

struct ScenarioSpec {
  std::string id;
  std::uint64_t seed = 20240601;
  std::vector<double> exponents = default_exponents();
  int trials = 200;

  // [group]
  std::string group;  // finite group name, or "affine"
  int cells = 16;
  int level = 1;
  // [haar]
  HaarNormalization haar = HaarNormalization::counting;
  // [algebra]
  std::string algebra;  // matrix | diagonal | twisted | induced | cells
  std::optional<std::vector<double>> measure;
  bool validate_measure = true;
  // [action]
  std::string action;  // irrep | weyl-heisenberg | translation | cosets | twisted-dual | induced | affine-wavelet
  std::string rep;
  std::string subgroup;
  std::string inner;
  int n = 0;
  int m = 0;
  // [tolerances]
  Tolerance tol{1e-9, 1e-12};
  double quadrature = 1e-2;
  // [expect]
  ExpectedDuflo expect;

  bool is_quadrature() const { return group == "affine"; }
  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// A scenario with its action constructed.
struct BuiltScenario {
  ScenarioSpec spec;
  std::shared_ptr<const Action> action;
  /// Induced scenarios: the action of H on N.
  std::shared_ptr<const Action> inner;
  std::shared_ptr<const TwistedAlgebra> twisted;
  std::optional<WaveletGrid> grid;
};

BuiltScenario build_scenario(const ScenarioSpec& spec);

/// Throws ConfigError for unknown ids.
ScenarioSpec builtin(const std::string& id);
/// The ids run by `--all`.
std::vector<std::string> builtin_ids();
/// Id forms accepted by `builtin`.
std::vector<std::string> builtin_forms();

struct RandomCaps {
  int max_block_dim = 6;
  int max_group_order = 16;
};
ScenarioSpec random_scenario(std::uint64_t seed, RandomCaps caps = {});

/// Scenario text format; errors carry `source:line`.
ScenarioSpec parse_scenario(const std::string& text, const std::string& source = "<string>");
std::string format_scenario(const ScenarioSpec& spec);
ScenarioSpec load_scenario(const std::filesystem::path& path);
void save_scenario(const ScenarioSpec& spec, const std::filesystem::path& path);

std::string to_string(const ExpectedDuflo& e);
ExpectedDuflo parse_expected(const std::string& s);

}  // namespace qha
