#include "qha/suite.hpp"

#include <map>

namespace qha {

namespace {

constexpr Tolerance kStructuralTol{1e-10, 1e-12};

class Worst {
 public:
  void add(CheckReport r) {
    auto it = index_.find(r.name);
    if (it == index_.end()) {
      index_[r.name] = reports_.size();
      counts_.push_back(1);
      reports_.push_back(std::move(r));
      return;
    }
    CheckReport& cur = reports_[it->second];
    ++counts_[it->second];
    const bool worse = (r.status == CheckStatus::fail && cur.status != CheckStatus::fail) ||
                       (r.status == cur.status && r.rel_err > cur.rel_err);
    if (worse) cur = std::move(r);
  }

  std::vector<CheckReport> take() {
    for (std::size_t i = 0; i < reports_.size(); ++i)
      if (counts_[i] > 1) {
        auto& n = reports_[i].notes;
        n += (n.empty() ? "" : "; ") + std::string("worst of ") + std::to_string(counts_[i]) + " trials";
      }
    return std::move(reports_);
  }

 private:
  std::vector<CheckReport> reports_;
  std::vector<int> counts_;
  std::map<std::string, std::size_t> index_;
};

std::uint64_t seed_of(const BuiltScenario& s, const SuiteOptions& o) { return o.seed.value_or(s.spec.seed); }

Tolerance effective_tol(const BuiltScenario& s, const SuiteOptions& o) {
  Tolerance t = s.spec.tol;
  if (s.spec.is_quadrature()) t.rel = s.spec.quadrature;
  if (o.tol_rel) t.rel = *o.tol_rel;
  if (o.tol_abs) t.abs = *o.tol_abs;
  return t;
}

// Tolerance for exact inequalities; quadrature scenarios carry the declared one.
Tolerance inequality_tol(const BuiltScenario& s, const Tolerance& t) {
  return s.spec.is_quadrature() ? t : Tolerance{1e-9, 0.0};
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

// Random element of the spectral algebra of a hermitian d.
AlgebraElement commuting_element(const AlgebraElement& d, std::mt19937_64& rng) {
  const HermitianSpectrum sp = spectrum(d);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < sp.values.size(); ++k) {
    Vector c(sp.values[k].size());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = cplx(n(rng), n(rng));
    blocks.push_back(sp.vectors[k] * c.asDiagonal() * sp.vectors[k].adjoint());
  }
  return AlgebraElement(d.shape(), std::move(blocks));
}

}  // namespace

DufloEstimate suite_duflo(const BuiltScenario& scenario, const SuiteOptions& options) {
  std::mt19937_64 rng(seed_of(scenario, options) + 1);
  return estimate_duflo(*scenario.action, rng, kInfinity, 1e-9);
}

CheckReport check_expected_duflo(const BuiltScenario& scenario, const DufloEstimate& est, Tolerance tol) {
  const ExpectedDuflo& e = scenario.spec.expect;
  CheckReport r;
  r.name = "duflo.expected";
  r.anchor = "duflo-operator-value";
  r.tol = tol;
  const AlgebraElement one = AlgebraElement::identity(est.d.shape());
  switch (e.kind) {
    case ExpectKind::none:
      return skipped_report("duflo.expected", "duflo-operator-value", "no expected value declared");
    case ExpectKind::scalar:
      r.lhs = est.scalar_value;
      r.rhs = e.value;
      r.abs_err = (est.d - e.value * one).norm_inf();
      r.rel_err = r.abs_err / e.value;
      r.notes = "D = " + to_string(e);
      break;
    case ExpectKind::inverse_scalar:
      r.lhs = trace(est.d_inverse).real() / trace(one).real();
      r.rhs = e.value;
      r.abs_err = (est.d_inverse - e.value * one).norm_inf();
      r.rel_err = r.abs_err / e.value;
      r.notes = "D^-1 = " + to_string(e);
      break;
    case ExpectKind::inverse_frequency: {
      if (!scenario.grid) throw ConfigError("inverse-frequency expectation needs the affine-wavelet action");
      const AlgebraElement m = inverse_frequency_multiplier(*scenario.grid);
      const AlgebraElement ms = power(m, -0.5);
      r.lhs = trace(est.d_inverse);
      r.rhs = trace(m);
      r.abs_err = (est.d_inverse - m).norm_inf();
      r.rel_err = (ms * (est.d_inverse - m) * ms).norm_inf();
      r.notes = "D^-1 against diag(h/|C_j|), relative in the multiplier's own scale";
      break;
    }
  }
  r.status = (r.abs_err <= tol.abs || r.rel_err <= tol.rel) ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckReport suite_semi_invariance(const BuiltScenario& scenario, const DufloEstimate& est, Tolerance tol) {
  if (!scenario.grid) return check_semi_invariance(*scenario.action, est, tol);
  const WaveletGrid& g = *scenario.grid;
  const auto all = dilation_nodes(g);
  std::vector<std::size_t> nodes;
  constexpr int kMargin = 2;
  for (int k = -kMargin; k <= kMargin; ++k) nodes.push_back(all[static_cast<std::size_t>(k + g.cells - 1)]);
  return check_semi_invariance(*scenario.action, est, nodes, tol, std::make_pair(kMargin, g.cells - kMargin));
}

std::vector<CheckReport> run_suite(const BuiltScenario& scenario, const SuiteOptions& options) {
  const Action& action = *scenario.action;
  const bool quad = scenario.spec.is_quadrature();
  const Tolerance tol = effective_tol(scenario, options);
  const Tolerance ineq = inequality_tol(scenario, tol);
  const std::uint64_t seed = seed_of(scenario, options);
  std::vector<CheckReport> out;

  std::mt19937_64 srng(seed);
  out.push_back(check_automorphism(action, srng, kStructuralTol));
  out.push_back(check_homomorphism(action, srng, kStructuralTol));
  out.push_back(is_trace_preserving(action, kStructuralTol));
  out.push_back(check_ergodic(action));
  out.push_back(check_lp_isometry(action, srng));

  DufloEstimate est;
  try {
    est = suite_duflo(scenario, options);
  } catch (const NumericalError& e) {
    CheckReport r = skipped_report("duflo.integrability", "integrability", e.what());
    r.status = CheckStatus::fail;
    out.push_back(r);
    for (auto& rep : out) rep.scenario = scenario.spec.id;
    return out;
  }
  {
    CheckReport r;
    r.name = "duflo.integrability";
    r.anchor = "integrability";
    r.lhs = est.min_eigenvalue;
    r.rhs = 0.0;
    r.status = CheckStatus::pass;
    r.notes = "Haar sum finite, D^-1 positive definite";
    out.push_back(r);
  }
  const Tolerance cross_tol = quad ? tol : Tolerance{1e-8, 0.0};
  out.push_back(defect_report("duflo.cross_check", "duflo-uniqueness", est.cross_check_residual, 1.0, cross_tol,
                              "two independent positive test elements"));
  out.push_back(check_expected_duflo(scenario, est, tol));
  {
    const bool unimodular = action.group().is_unimodular();
    CheckReport r;
    r.name = "duflo.scalar_iff_unimodular";
    r.anchor = "unimodular-iff-scalar";
    r.lhs = est.scalar_residual;
    r.rhs = 0.0;
    r.abs_err = unimodular ? est.scalar_residual : 0.0;
    r.rel_err = r.abs_err;
    r.tol = {1e-9, 0.0};
    // non-unimodular groups need a visibly non-scalar D
    r.status = unimodular ? (est.scalar_residual <= 1e-9 ? CheckStatus::pass : CheckStatus::fail)
                          : (est.scalar_residual > 1e-3 ? CheckStatus::pass : CheckStatus::fail);
    r.notes = unimodular ? "unimodular group: D must be scalar" : "non-unimodular group: D must not be scalar";
    out.push_back(r);
  }

  std::shared_ptr<DufloEstimate> inner_est;
  if (scenario.inner) {
    std::mt19937_64 irng(seed + 3);
    inner_est = std::make_shared<DufloEstimate>(estimate_duflo(*scenario.inner, irng, 1e-8));
  }

  const int trials = options.trials.value_or(scenario.spec.trials);
  const auto young = young_grid(scenario.spec.exponents);
  const auto holder = holder_grid(scenario.spec.exponents);
  std::mt19937_64 trng(seed + 2);
  Worst w;
  for (int t = 0; t < trials; ++t) {
    const ShapePtr& shape = action.shape();
    const AlgebraElement xp = random_positive(shape, trng);
    const AlgebraElement yp = random_positive(shape, trng);
    const AlgebraElement xg = random_element(shape, trng);
    const AlgebraElement yg = random_element(shape, trng);
    const double scale = p_norm(xp, 1.0) * p_norm(yp, 1.0);
    // Young needs y commuting with D; only drawn when D is not scalar
    const AlgebraElement yc = est.scalar ? yg : commuting_element(est.d, trng);

    if (quad) {
      w.add(skipped_report("bracket.symmetry", "bracket-symmetry", "quadrature node set is not inverse-closed"));
    } else {
      w.add(defect_report("bracket.symmetry", "bracket-symmetry", bracket_symmetry_defect(xp, yp, action), scale,
                          {1e-10, 0.0}));
    }
    w.add(defect_report("bracket.path_pair", "bracket-two-paths", bracket_path_pair_defect(xp, yp, action), scale,
                        {1e-11, 0.0}));
    {
      const auto v = bracket(xp, yp, action).values;
      double neg = 0.0;
      for (auto z : v) neg = std::max(neg, -z.real());
      w.add(defect_report("bracket.positivity", "bracket-positivity", neg, std::max(scale, max_abs(v)),
                          {1e-10, 0.0}));
    }
    w.add(check_orthogonality(action, est, xp, yp, tol, "orthogonality.positive"));
    w.add(check_orthogonality(action, est, xg, yg, tol, "orthogonality.general"));
    if (t == 0) w.add(suite_semi_invariance(scenario, est, quad ? tol : Tolerance{1e-9, 0.0}));
    w.add(check_admissibility(yp, est, {1e-11, 0.0}).report);
    {
      auto [a, b] = check_l1(action, est, xg, yg, ineq);
      w.add(a);
      b.tol = tol;
      b.status = (b.abs_err <= tol.abs || b.rel_err <= tol.rel) ? CheckStatus::pass : CheckStatus::fail;
      w.add(b);
    }
    for (const auto& [p, q, r] : young) {
      w.add(check_young(action, est, xg, est.scalar ? yg : yc, p, q, r, ineq));
    }
    for (double p : scenario.spec.exponents) w.add(check_interpolation(action, est, xg, yg, p, ineq));
    w.add(check_interpolation_endpoint(action, xg, yg, ineq));
    for (const auto& [p, q] : holder) w.add(check_holder(xg, yg, p, q, {1e-9, 0.0}));
    for (int r = 1; r <= 4; ++r) w.add(check_araki_lieb_thirring(xp, yp, r, {1e-9, 0.0}));
    if (scenario.twisted) w.add(check_fourier_inversion(*scenario.twisted, est, trng, tol));
    if (inner_est) w.add(check_induced_identity(est, *inner_est, yp, tol));
  }
  auto trial_reports = w.take();
  out.insert(out.end(), trial_reports.begin(), trial_reports.end());
  for (auto& r : out) r.scenario = scenario.spec.id;
  return out;
}

}  // namespace qha
