// One line per acceptance criterion; exit status 1 if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "qha/suite.hpp"

using namespace qha;

namespace {

constexpr double kIrrepTol = 1e-9;
constexpr double kIrrepSeconds = 1.0;
constexpr double kWhTol = 1e-9;
constexpr int kWhPairs = 100;
constexpr double kWhSeconds = 10.0;
constexpr double kTranslationTol = 1e-12;
constexpr double kCosetTol = 1e-10;
constexpr double kFourierTol = 1e-9;
constexpr double kInducedTol = 1e-9;
constexpr int kInducedSamples = 50;
constexpr double kInequalitySlack = 1e-9;
constexpr int kInequalityTrials = 200;
constexpr double kInequalitySeconds = 60.0;
constexpr double kSemiTol = 1e-9;
constexpr double kCrossTol = 1e-8;
constexpr double kAffineTol = 1e-2;
constexpr double kAffineSeconds = 120.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::string> finite_builtins() {
  std::vector<std::string> ids;
  for (const auto& id : builtin_ids())
    if (!builtin(id).is_quadrature()) ids.push_back(id);
  return ids;
}

double deviation(const AlgebraElement& a, double v) {
  return (a - v * AlgebraElement::identity(a.shape())).norm_inf() / v;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Outcome criterion_irreps() {
  double worst = 0.0;
  std::vector<std::string> ids{"irrep:s3:std", "irrep:s3:sign", "irrep:s3:trivial"};
  for (int k = 0; k < 8; ++k) ids.push_back("irrep:cyclic(8):" + std::to_string(k));
  for (const auto& id : ids) {
    const auto s = build_scenario(builtin(id));
    worst = std::max(worst, deviation(suite_duflo(s).d, s.spec.expect.value));
  }
  return {worst <= kIrrepTol, "11 irreps, max rel err " + sci(worst)};
}

Outcome criterion_weyl_heisenberg() {
  double worst_d = 0.0, worst_orth = 0.0;
  for (int n : {2, 3, 4, 5, 8}) {
    const auto s = build_scenario(builtin("wh:" + std::to_string(n)));
    const auto est = suite_duflo(s);
    worst_d = std::max(worst_d, deviation(est.d, 1.0 / n));
    std::mt19937_64 rng(s.spec.seed + 2);
    for (int t = 0; t < kWhPairs; ++t) {
      const auto x = random_element(s.action->shape(), rng);
      const auto y = random_element(s.action->shape(), rng);
      worst_orth = std::max(worst_orth, check_orthogonality(*s.action, est, x, y, {kWhTol, 0.0}).rel_err);
    }
  }
  return {worst_d <= kWhTol && worst_orth <= kWhTol,
          "D rel err " + sci(worst_d) + ", orthogonality rel err " + sci(worst_orth)};
}

Outcome criterion_translation_cosets() {
  const auto t = build_scenario(builtin("translation:cyclic(6)"));
  const double dt = deviation(suite_duflo(t).d, 1.0);
  const auto c = build_scenario(builtin("cosets:cyclic(6):cyclic(3)"));
  const double dc = deviation(suite_duflo(c).d_inverse, 3.0);
  return {dt <= kTranslationTol && dc <= kCosetTol, "D = 1 err " + sci(dt) + ", D^-1 = 3 err " + sci(dc)};
}

Outcome criterion_fourier() {
  const auto s = build_scenario(builtin("twisted-dual:8:0"));
  const auto est = suite_duflo(s);
  std::mt19937_64 rng(s.spec.seed + 2);
  const auto r = check_fourier_inversion(*s.twisted, est, rng, {kFourierTol, 0.0});
  return {r.passed() && std::abs(r.lhs - 64.0) <= kFourierTol * 64.0,
          "d = " + sci(r.lhs.real()) + ", inversion rel err " + sci(r.rel_err)};
}

Outcome criterion_induced() {
  const auto s = build_scenario(builtin("induced:cyclic(2)xcyclic(4):cyclic(2)xcyclic(2):pauli"));
  const auto outer = suite_duflo(s);
  std::mt19937_64 irng(s.spec.seed + 3);
  const auto inner = estimate_duflo(*s.inner, irng);
  std::mt19937_64 rng(s.spec.seed + 2);
  double worst = 0.0;
  bool ok = true;
  for (int t = 0; t < kInducedSamples; ++t) {
    const auto r = check_induced_identity(outer, inner, random_positive(s.action->shape(), rng), {kInducedTol, 0.0});
    ok = ok && r.passed();
    worst = std::max(worst, r.rel_err);
  }
  return {ok, "50 samples, max rel err " + sci(worst)};
}

bool is_inequality(const std::string& name) {
  for (const char* p : {"young", "interpolation", "l1.", "holder", "araki_lieb_thirring"})
    if (name.rfind(p, 0) == 0) return true;
  return false;
}

Outcome criterion_inequalities() {
  SuiteOptions o;
  o.trials = kInequalityTrials;
  int checks = 0, failures = 0;
  double worst_eq = 0.0;
  for (const auto& id : finite_builtins()) {
    for (const auto& r : run_suite(build_scenario(builtin(id)), o)) {
      if (!is_inequality(r.name)) continue;
      ++checks;
      const bool ok = r.name == "l1.equality" ? r.rel_err <= kInequalitySlack || r.abs_err <= r.tol.abs
                                              : r.rel_err <= kInequalitySlack;
      failures += !ok || !r.passed();
      if (r.name == "l1.equality") worst_eq = std::max(worst_eq, r.rel_err);
    }
  }
  return {failures == 0, std::to_string(checks) + " worst-of-200 reports, " + std::to_string(failures) +
                             " violations, equality rel err " + sci(worst_eq)};
}

Outcome criterion_semi_cross() {
  double semi = 0.0, cross = 0.0;
  for (const auto& id : finite_builtins()) {
    const auto s = build_scenario(builtin(id));
    const auto est = suite_duflo(s);
    semi = std::max(semi, suite_semi_invariance(s, est, {kSemiTol, 0.0}).rel_err);
    cross = std::max(cross, est.cross_check_residual);
  }
  return {semi <= kSemiTol && cross <= kCrossTol, "semi-invariance " + sci(semi) + ", cross-check " + sci(cross)};
}

Outcome criterion_affine() {
  std::ostringstream out, err;
  const int code = cli::run({"refine", "--scenario", "affine-wavelet:1", "--grids", "1,2,4", "--format", "json"}, out, err);
  if (code == 2) return {false, "refine failed: " + err.str()};
  const auto rows = nlohmann::json::parse(out.str())["scenarios"][0]["rows"];
  bool ok = rows[0]["orthogonality"].get<double>() <= kAffineTol && rows[0]["semi_invariance"].get<double>() <= kAffineTol;
  std::string detail = "orthogonality";
  for (const auto& r : rows) detail += " " + sci(r["orthogonality"].get<double>());
  detail += ", semi-invariance";
  for (const auto& r : rows) detail += " " + sci(r["semi_invariance"].get<double>());
  for (std::size_t i = 1; i < rows.size(); ++i)
    ok = ok && rows[i]["orthogonality"].get<double>() < rows[i - 1]["orthogonality"].get<double>() &&
         rows[i]["semi_invariance"].get<double>() < rows[i - 1]["semi_invariance"].get<double>();
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double seconds;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "irrep constant D = d_pi", kIrrepSeconds, criterion_irreps},
      {2, "Weyl-Heisenberg D = 1/n and orthogonality", kWhSeconds, criterion_weyl_heisenberg},
      {3, "translation D = 1, cosets D^-1 = 3", 0.0, criterion_translation_cosets},
      {4, "Fourier inversion d = 64", 0.0, criterion_fourier},
      {5, "induced-action identity", 0.0, criterion_induced},
      {6, "inequality suites", kInequalitySeconds, criterion_inequalities},
      {7, "semi-invariance and cross-check", 0.0, criterion_semi_cross},
      {8, "affine quadrature refinement", kAffineSeconds, criterion_affine},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds > 0.0 && secs > c.seconds) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    all = all && o.pass;
    std::printf("[%s] criterion %d: %s (%s; %.2fs%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs, c.seconds > 0.0 ? (" of " + std::to_string(static_cast<int>(c.seconds)) + "s").c_str() : "");
  }
  return all ? 0 : 1;
}
