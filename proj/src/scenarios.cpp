#include "qha/scenarios.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace qha {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(what + " must be an integer, got '" + s + "'");
}

std::string square_group(int n) { return "cyclic(" + std::to_string(n) + ")xcyclic(" + std::to_string(n) + ")"; }

std::string algebra_for(const std::string& action) {
  if (action == "irrep" || action == "weyl-heisenberg") return "matrix";
  if (action == "translation" || action == "cosets") return "diagonal";
  if (action == "twisted-dual") return "twisted";
  if (action == "induced") return "induced";
  if (action == "affine-wavelet") return "cells";
  throw ConfigError("unknown action kind '" + action +
                    "'; valid: irrep weyl-heisenberg translation cosets twisted-dual induced affine-wavelet");
}

// Inner action for induced scenarios: "pauli" or "wh:<n>", counting measure on H.
std::shared_ptr<const Action> inner_action(const std::string& inner) {
  int n = 0;
  if (inner == "pauli") {
    n = 2;
  } else if (inner.rfind("wh:", 0) == 0) {
    n = parse_int(inner.substr(3), "inner Weyl-Heisenberg order");
  } else {
    throw ConfigError("unknown inner action '" + inner + "'; valid: pauli wh:<n>");
  }
  return std::make_shared<const Action>(
      conjugation_action(finite_weyl_heisenberg(n), HaarNormalization::counting, "weyl-heisenberg"));
}

double inner_inverse_scalar(const std::string& inner) {
  return inner == "pauli" ? 2.0 : static_cast<double>(parse_int(inner.substr(3), "inner Weyl-Heisenberg order"));
}

}  // namespace

BuiltScenario build_scenario(const ScenarioSpec& spec) {
  if (spec.id.empty()) throw ConfigError("scenario needs an id");
  if (spec.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(spec.tol.rel > 0.0) || !(spec.tol.abs > 0.0) || !(spec.quadrature > 0.0))
    throw ConfigError("tolerances must be positive");
  for (double p : spec.exponents)
    if (!(p >= 1.0)) throw ConfigError("exponents must be >= 1");
  const std::string alg = algebra_for(spec.action);
  if (!spec.algebra.empty() && spec.algebra != alg)
    throw ConfigError("action '" + spec.action + "' acts on a '" + alg + "' algebra, not '" + spec.algebra + "'");
  if (spec.measure && alg != "diagonal") throw ConfigError("a measure override needs a diagonal algebra");

  BuiltScenario b;
  b.spec = spec;
  b.spec.algebra = alg;
  if (spec.action == "affine-wavelet") {
    if (spec.group != "affine") throw ConfigError("affine-wavelet acts with group 'affine'");
    if (spec.haar != HaarNormalization::quadrature) throw ConfigError("affine group uses quadrature Haar weights");
    WaveletGrid grid;
    grid.cells = spec.cells;
    grid.level = spec.level;
    grid.validate();
    b.grid = grid;
    b.action = std::make_shared<const Action>(affine_wavelet_action(grid));
    return b;
  }
  if (spec.group == "affine") throw ConfigError("group 'affine' needs the affine-wavelet action");

  auto g = std::make_shared<const FiniteGroup>(parse_group(spec.group));
  if (spec.action == "irrep") {
    const UnitaryRep rep = irrep(spec.group, spec.rep);
    b.action = std::make_shared<const Action>(conjugation_action(rep, spec.haar, "irrep"));
  } else if (spec.action == "weyl-heisenberg") {
    if (spec.group != square_group(spec.n))
      throw ConfigError("weyl-heisenberg with n = " + std::to_string(spec.n) + " needs group " + square_group(spec.n));
    b.action = std::make_shared<const Action>(
        conjugation_action(finite_weyl_heisenberg(spec.n), spec.haar, "weyl-heisenberg"));
  } else if (spec.action == "translation") {
    if (spec.measure) {
      const std::size_t n = g->size();
      std::vector<std::size_t> map(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) map[a * n + c] = g->mul(a, c);
      if (spec.measure->size() != n) throw ConfigError("measure needs " + std::to_string(n) + " values");
      b.action = std::make_shared<const Action>(
          permutation_action(g, spec.haar, std::move(map), *spec.measure, spec.validate_measure));
    } else {
      b.action = std::make_shared<const Action>(translation_action(g, spec.haar));
    }
  } else if (spec.action == "cosets") {
    const Subgroup h = subgroup_by_name(*g, spec.subgroup);
    b.action = std::make_shared<const Action>(coset_action(g, h, spec.haar, spec.measure, spec.validate_measure));
  } else if (spec.action == "twisted-dual") {
    if (spec.group != square_group(spec.n))
      throw ConfigError("twisted-dual with n = " + std::to_string(spec.n) + " needs group " + square_group(spec.n));
    if (spec.haar != HaarNormalization::counting) throw ConfigError("twisted-dual uses counting measure on the dual");
    b.twisted = std::make_shared<const TwistedAlgebra>(twisted_group_algebra(spec.n, spec.m));
    b.action = std::make_shared<const Action>(dual_action(b.twisted));
  } else if (spec.action == "induced") {
    const Subgroup h = subgroup_by_name(*g, spec.subgroup);
    b.inner = inner_action(spec.inner);
    if (b.inner->group().size() != h.group.size())
      throw ConfigError("inner action '" + spec.inner + "' is not an action of " + spec.subgroup);
    b.action = std::make_shared<const Action>(induced_action(g, h, *b.inner, spec.haar));
  }
  return b;
}

std::vector<std::string> builtin_forms() {
  return {"irrep:<group>:<rep>", "wh:<n>", "translation:<group>", "cosets:<G>:<H>", "twisted-dual:<n>:<m>",
          "induced:<G>:<H>:<inner>", "affine-wavelet:<level>"};
}

std::vector<std::string> builtin_ids() {
  std::vector<std::string> ids = {"irrep:s3:std", "irrep:s3:sign", "irrep:s3:trivial"};
  for (int k = 0; k < 8; ++k) ids.push_back("irrep:cyclic(8):" + std::to_string(k));
  for (int n : {2, 3, 4, 5, 8}) ids.push_back("wh:" + std::to_string(n));
  ids.insert(ids.end(), {"translation:cyclic(6)", "cosets:cyclic(6):cyclic(3)", "twisted-dual:8:0",
                         "twisted-dual:4:1", "twisted-dual:4:2", "induced:cyclic(2)xcyclic(4):cyclic(2)xcyclic(2):pauli",
                         "affine-wavelet:1"});
  return ids;
}

ScenarioSpec builtin(const std::string& id) {
  const auto parts = split(id, ':');
  const std::string& fam = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n) {
      std::ostringstream os;
      os << "malformed builtin id '" << id << "'; valid forms:";
      for (const auto& f : builtin_forms()) os << " " << f;
      throw ConfigError(os.str());
    }
  };
  ScenarioSpec s;
  s.id = id;
  if (fam == "irrep") {
    need(3);
    s.group = parts[1];
    s.haar = HaarNormalization::probability;
    s.action = "irrep";
    s.rep = parts[2];
    s.expect = {ExpectKind::scalar, static_cast<double>(irrep(parts[1], parts[2]).dim())};
  } else if (fam == "wh") {
    need(2);
    s.n = parse_int(parts[1], "Weyl-Heisenberg order");
    if (s.n < 2) throw ConfigError("Weyl-Heisenberg order must be >= 2");
    s.group = square_group(s.n);
    s.action = "weyl-heisenberg";
    s.expect = {ExpectKind::scalar, 1.0 / s.n};
  } else if (fam == "translation") {
    need(2);
    s.group = parts[1];
    s.action = "translation";
    s.expect = {ExpectKind::scalar, 1.0};
  } else if (fam == "cosets") {
    need(3);
    s.group = parts[1];
    s.action = "cosets";
    s.subgroup = parts[2];
    s.expect = {ExpectKind::inverse_scalar, static_cast<double>(parse_group(parts[2]).size())};
  } else if (fam == "twisted-dual") {
    need(3);
    s.n = parse_int(parts[1], "twisted-dual order");
    s.m = parse_int(parts[2], "twisted-dual cocycle exponent");
    if (s.n < 1) throw ConfigError("twisted-dual order must be >= 1");
    s.group = square_group(s.n);
    s.action = "twisted-dual";
    s.expect = {ExpectKind::inverse_scalar, static_cast<double>(s.n) * s.n};
  } else if (fam == "induced") {
    need(4);
    s.group = parts[1];
    s.action = "induced";
    s.subgroup = parts[2];
    s.inner = parts[3];
    s.expect = {ExpectKind::inverse_scalar, inner_inverse_scalar(parts[3])};
  } else if (fam == "affine-wavelet") {
    need(2);
    s.group = "affine";
    s.level = parse_int(parts[1], "refinement level");
    if (s.level < 1) throw ConfigError("refinement level must be >= 1");
    s.haar = HaarNormalization::quadrature;
    s.action = "affine-wavelet";
    s.trials = 2;
    s.expect = {ExpectKind::inverse_frequency, 0.0};
  } else {
    std::ostringstream os;
    os << "unknown builtin scenario '" << id << "'; valid forms:";
    for (const auto& f : builtin_forms()) os << " " << f;
    throw ConfigError(os.str());
  }
  s.algebra = algebra_for(s.action);
  return s;
}

ScenarioSpec random_scenario(std::uint64_t seed, RandomCaps caps) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int max_order = std::max(2, caps.max_group_order);
  std::string id;
  switch (pick(0, 5)) {
    case 0:
      if (pick(0, 1) == 0 && caps.max_block_dim >= 2 && max_order >= 6) {
        const char* reps[] = {"std", "sign", "trivial"};
        id = std::string("irrep:s3:") + reps[pick(0, 2)];
      } else {
        const int n = pick(2, max_order);
        id = "irrep:cyclic(" + std::to_string(n) + "):" + std::to_string(pick(0, n - 1));
      }
      break;
    case 1: {
      int hi = 2;
      while ((hi + 1) * (hi + 1) <= max_order && hi + 1 <= caps.max_block_dim) ++hi;
      id = "wh:" + std::to_string(pick(2, hi));
      break;
    }
    case 2:
      id = "translation:cyclic(" + std::to_string(pick(1, max_order)) + ")";
      break;
    case 3: {
      const int n = pick(2, max_order);
      std::vector<int> divisors;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) divisors.push_back(d);
      const int m = divisors[static_cast<std::size_t>(pick(0, static_cast<int>(divisors.size()) - 1))];
      id = "cosets:cyclic(" + std::to_string(n) + "):cyclic(" + std::to_string(m) + ")";
      break;
    }
    case 4: {
      int hi = 2;
      while ((hi + 1) * (hi + 1) <= max_order) ++hi;
      const int n = pick(2, hi);
      id = "twisted-dual:" + std::to_string(n) + ":" + std::to_string(pick(0, n - 1));
      break;
    }
    default:
      id = "induced:cyclic(2)xcyclic(4):cyclic(2)xcyclic(2):pauli";
      break;
  }
  ScenarioSpec s = builtin(id);
  s.id = "random:" + std::to_string(seed) + ":" + id;
  s.seed = rng();
  return s;
}

}  // namespace qha
