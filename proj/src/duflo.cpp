#include "qha/duflo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qha/kernels.hpp"

namespace qha {

namespace {

std::string fmt_exp(double p) {
  if (p == kInfinity) return "inf";
  std::ostringstream os;
  os.precision(4);
  os << p;
  return os.str();
}

double inv_or_zero(double p) { return p == kInfinity ? 0.0 : 1.0 / p; }

AlgebraElement integer_power(const AlgebraElement& x, int r) {
  AlgebraElement out = x;
  for (int i = 1; i < r; ++i) out = out * x;
  return out;
}

void require_positive(const AlgebraElement& y, const char* what) {
  if (!y.is_hermitian(1e-9 * std::max(1.0, y.norm_inf())) ||
      min_eigenvalue(y) < -kEpsPsd * std::max(1.0, y.norm_inf()))
    throw NotPositiveError(std::string(what) + " must be positive");
}

}  // namespace

AlgebraElement duflo_inverse_from(const Action& action, const AlgebraElement& x_test) {
  require_positive(x_test, "Duflo test element");
  const double t = trace(x_test).real();
  if (!(t > 0.0)) throw NotPositiveError("Duflo test element must have positive trace");
  const GroupModel& g = action.group();
  std::vector<cplx> coeffs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) coeffs[i] = g.weight(i) / g.modular(i);
  AlgebraElement d = haar_sum_parallel(action, coeffs, x_test * cplx(1.0 / t));
  return 0.5 * (d + d.adjoint());
}

DufloEstimate estimate_duflo(const Action& action, const AlgebraElement& x_test, const AlgebraElement& x_cross,
                             double cross_tol, double scalar_tol) {
  DufloEstimate e;
  e.d_inverse = duflo_inverse_from(action, x_test);
  const double scale = e.d_inverse.norm_inf();
  e.min_eigenvalue = min_eigenvalue(e.d_inverse);
  if (!(e.min_eigenvalue > 1e-12 * scale))
    throw NumericalError("D^{-1} is not positive definite: the action is not ergodic or not integrable");
  e.d = power(e.d_inverse, -1.0);
  const AlgebraElement other = duflo_inverse_from(action, x_cross);
  e.cross_check_residual = (e.d_inverse - other).norm_inf() / scale;
  const AlgebraElement one = AlgebraElement::identity(e.d.shape());
  e.scalar_value = trace(e.d).real() / trace(one).real();
  e.scalar_residual = (e.d - e.scalar_value * one).norm_inf() / e.d.norm_inf();
  e.scalar = e.scalar_residual <= scalar_tol;
  if (e.cross_check_residual > cross_tol) {
    std::ostringstream os;
    os << "Duflo cross-check residual " << e.cross_check_residual << " exceeds " << cross_tol;
    throw NumericalError(os.str());
  }
  return e;
}

DufloEstimate estimate_duflo(const Action& action, std::mt19937_64& rng, double cross_tol, double scalar_tol) {
  const AlgebraElement a = random_positive(action.shape(), rng);
  const AlgebraElement b = random_positive(action.shape(), rng);
  return estimate_duflo(action, a, b, cross_tol, scalar_tol);
}

cplx duflo_weight(const DufloEstimate& est, const AlgebraElement& y) {
  const AlgebraElement s = power(est.d_inverse, 0.5);
  return trace(s * y * s);
}

CheckReport check_orthogonality(const Action& action, const DufloEstimate& est, const AlgebraElement& x,
                                const AlgebraElement& y, Tolerance tol, std::string name) {
  const cplx lhs = integrate_bracket(bracket(x, y, action));
  const AlgebraElement s = power(est.d_inverse, 0.5);
  const AlgebraElement sys = s * y * s;
  const cplx rhs = trace(x) * std::conj(trace(sys));
  return equality_report(std::move(name), "orthogonality-relation", lhs, rhs, tol, {},
                         p_norm(x, 1.0) * p_norm(sys, 1.0));
}

CheckReport check_semi_invariance(const Action& action, const DufloEstimate& est,
                                  const std::vector<std::size_t>& nodes, Tolerance tol,
                                  std::optional<std::pair<int, int>> window) {
  auto restrict = [&](const AlgebraElement& x) -> Matrix {
    if (!window) return x.block(0);
    const auto [lo, hi] = *window;
    return x.block(0).block(lo, lo, hi - lo, hi - lo);
  };
  double worst = 0.0;
  for (std::size_t node : nodes) {
    const AlgebraElement gd = action.apply(node, est.d);
    const AlgebraElement rhs = est.d * cplx(1.0 / action.group().modular(node));
    double defect = 0.0;
    double scale = 0.0;
    if (window) {
      defect = (restrict(gd) - restrict(rhs)).jacobiSvd().singularValues()(0);
      scale = restrict(rhs).jacobiSvd().singularValues()(0);
    } else {
      defect = (gd - rhs).norm_inf();
      scale = rhs.norm_inf();
    }
    worst = std::max(worst, defect / scale);
  }
  std::ostringstream notes;
  notes << nodes.size() << " nodes" << (window ? ", interior window" : "");
  return defect_report("semi_invariance", "duflo-semi-invariance", worst, 1.0, tol, notes.str());
}

CheckReport check_semi_invariance(const Action& action, const DufloEstimate& est, Tolerance tol) {
  std::vector<std::size_t> nodes(action.group().size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
  return check_semi_invariance(action, est, nodes, tol);
}

Admissibility check_admissibility(const AlgebraElement& y, const DufloEstimate& est, Tolerance tol) {
  require_positive(y, "admissibility input");
  const AlgebraElement s = power(est.d_inverse, 0.5);
  const AlgebraElement sys = s * y * s;
  Admissibility a;
  a.value = trace(sys).real();
  const cplx path1 = weight_apply(WeightKernel(est.d_inverse), y);
  const cplx path2 = weight_apply(WeightKernel(est.d), sys);
  const cplx ty = trace(y);
  const double defect = std::max(std::abs(path1 - a.value), std::abs(path2 - ty));
  const double scale = std::max(std::abs(a.value), std::abs(ty));
  a.report = defect_report("admissibility", "admissibility-identities", defect, scale, tol,
                           "every positive element is admissible in finite dimension");
  a.report.lhs = path1;
  a.report.rhs = a.value;
  return a;
}

std::pair<CheckReport, CheckReport> check_l1(const Action& action, const DufloEstimate& est,
                                             const AlgebraElement& x, const AlgebraElement& y, Tolerance tol) {
  const AlgebraElement s = power(est.d, 0.5);
  const BracketFunction bf = bracket(x, s * y * s, action);
  const double bound = p_norm(x, 1.0) * p_norm(y, 1.0);
  CheckReport ineq = inequality_report("l1.inequality", "l1-bracket-bound", function_p_norm(bf, 1.0), bound, tol);
  CheckReport eq = equality_report("l1.equality", "l1-bracket-integral", integrate_bracket(bf),
                                   trace(x) * std::conj(trace(y)), tol, {}, bound);
  return {ineq, eq};
}

CheckReport check_young(const Action& action, const DufloEstimate& est, const AlgebraElement& x,
                        const AlgebraElement& y, double p, double q, double r, Tolerance tol) {
  if (!(p >= 1.0 && q >= 1.0) || !(r < kInfinity) || p > r * (1.0 + 1e-12) || q > r * (1.0 + 1e-12) ||
      std::abs(1.0 / p + 1.0 / q - 1.0 - 1.0 / r) > 1e-12)
    throw ParameterError("Young exponents need 1/p + 1/q = 1 + 1/r and 1 <= p, q <= r < inf");
  const double comm = (y * est.d - est.d * y).norm_inf();
  if (comm > 1e-9 * y.norm_inf() * est.d.norm_inf())
    throw ParameterError("Young inequality requires y to commute with D");
  const AlgebraElement s = power(est.d, 1.0 / (2.0 * r));
  const double lhs = function_p_norm(bracket(x, s * y * s, action), r);
  const double rhs = p_norm(x, p) * p_norm(y, q);
  return inequality_report("young p=" + fmt_exp(p) + " q=" + fmt_exp(q) + " r=" + fmt_exp(r),
                           "young-inequality", lhs, rhs, tol);
}

CheckReport check_interpolation(const Action& action, const DufloEstimate& est, const AlgebraElement& x,
                                const AlgebraElement& y, double p, Tolerance tol) {
  if (!(p >= 1.0) || !(p < kInfinity)) throw ParameterError("interpolation exponent must lie in [1, inf)");
  const double inv_q = 1.0 - 1.0 / p;
  const AlgebraElement s = power(est.d_inverse, 0.5);
  const double lhs = function_p_norm(bracket(x, y, action), p);
  const double rhs = p_norm(x, p) * std::pow(p_norm(y, 1.0), inv_q) * std::pow(p_norm(s * y * s, 1.0), 1.0 / p);
  return inequality_report("interpolation p=" + fmt_exp(p), "interpolation-bound", lhs, rhs, tol);
}

CheckReport check_interpolation_endpoint(const Action& action, const AlgebraElement& x, const AlgebraElement& y,
                                         Tolerance tol) {
  const double lhs = function_p_norm(bracket(x, y, action), kInfinity);
  const double rhs = p_norm(x, kInfinity) * p_norm(y, 1.0);
  return inequality_report("interpolation p=inf", "interpolation-endpoint", lhs, rhs, tol,
                           "endpoint bound, checked separately from the stated range");
}

CheckReport check_holder(const AlgebraElement& x, const AlgebraElement& y, double p, double q, Tolerance tol) {
  const double inv_r = inv_or_zero(p) + inv_or_zero(q);
  if (!(p >= 1.0 && q >= 1.0) || inv_r > 1.0 + 1e-12) throw ParameterError("Holder exponents need 1/p + 1/q <= 1");
  const double r = inv_r == 0.0 ? kInfinity : 1.0 / inv_r;
  return inequality_report("holder p=" + fmt_exp(p) + " q=" + fmt_exp(q), "holder-inequality", p_norm(x * y, r),
                           p_norm(x, p) * p_norm(y, q), tol);
}

CheckReport check_araki_lieb_thirring(const AlgebraElement& a, const AlgebraElement& b, int r, Tolerance tol) {
  if (r < 1) throw ParameterError("Araki-Lieb-Thirring exponent must be a positive integer");
  require_positive(a, "Araki-Lieb-Thirring input a");
  require_positive(b, "Araki-Lieb-Thirring input b");
  const double lhs = trace(integer_power(b * a * b, r)).real();
  const AlgebraElement br = integer_power(b, r);
  const double rhs = trace(br * integer_power(a, r) * br).real();
  return inequality_report("araki_lieb_thirring r=" + std::to_string(r), "araki-lieb-thirring", lhs, rhs, tol);
}

CheckReport check_fourier_inversion(const TwistedAlgebra& alg, const DufloEstimate& est, std::mt19937_64& rng,
                                    Tolerance tol) {
  const FiniteGroup& g = *alg.group;
  const CharacterTable chars = dual_group(g);
  const std::size_t n = g.size();
  const double d = trace(est.d_inverse).real() / trace(AlgebraElement::identity(est.d_inverse.shape())).real();
  std::normal_distribution<double> gauss;
  std::vector<cplx> f(n);
  for (auto& v : f) v = {gauss(rng), gauss(rng)};
  std::vector<cplx> fhat(n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t a = 0; a < n; ++a) fhat[w] += f[a] * std::conj(chars(w, a));
  double defect = 0.0;
  double scale = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    cplx recon = 0.0;
    for (std::size_t w = 0; w < n; ++w) recon += fhat[w] * chars(w, a);
    defect = std::max(defect, std::abs(recon - d * f[a]));
    scale = std::max(scale, std::abs(recon));
  }
  std::ostringstream notes;
  notes.precision(12);
  notes << "d = " << d << " (group order " << n << ")";
  CheckReport r = defect_report("fourier_inversion", "fourier-inversion", defect, scale, tol, notes.str());
  r.lhs = d;
  r.rhs = static_cast<double>(n);
  return r;
}

CheckReport check_induced_identity(const DufloEstimate& outer, const DufloEstimate& inner, const AlgebraElement& y,
                                   Tolerance tol) {
  const ShapePtr& ishape = inner.d_inverse.shape();
  const std::size_t k = ishape->num_blocks();
  if (k == 0 || y.num_blocks() % k != 0) throw StructuralError("element is not a sum of inner-algebra copies");
  const cplx lhs = trace(outer.d_inverse * y);
  cplx rhs = 0.0;
  for (std::size_t n = 0; n < y.num_blocks() / k; ++n) {
    std::vector<Matrix> part(y.blocks().begin() + static_cast<long>(n * k),
                             y.blocks().begin() + static_cast<long>((n + 1) * k));
    rhs += trace(inner.d_inverse * AlgebraElement(ishape, std::move(part)));
  }
  return equality_report("induced_identity", "induced-duflo-identity", lhs, rhs, tol);
}

std::vector<double> default_exponents() { return {1.0, 4.0 / 3.0, 2.0, 4.0}; }

std::vector<std::array<double, 3>> young_grid(const std::vector<double>& exponents) {
  std::vector<std::array<double, 3>> out;
  for (double p : exponents)
    for (double q : exponents) {
      const double inv_r = 1.0 / p + 1.0 / q - 1.0;
      if (inv_r <= 1e-12) continue;
      const double r = 1.0 / inv_r;
      if (p <= r + 1e-12 && q <= r + 1e-12) out.push_back({p, q, r});
    }
  return out;
}

std::vector<std::array<double, 2>> holder_grid(const std::vector<double>& exponents) {
  std::vector<double> e = exponents;
  e.push_back(kInfinity);
  std::vector<std::array<double, 2>> out;
  for (double p : e)
    for (double q : e)
      if (inv_or_zero(p) + inv_or_zero(q) <= 1.0 + 1e-12) out.push_back({p, q});
  return out;
}

}  // namespace qha
