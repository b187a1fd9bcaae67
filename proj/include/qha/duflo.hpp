#pragma once

// Duflo-Moore operator estimation and the certificates built on it.

#include <optional>
#include <random>

#include "qha/bracket.hpp"
#include "qha/report.hpp"
#include "qha/twisted.hpp"

namespace qha {

struct DufloEstimate {
  AlgebraElement d_inverse;
  AlgebraElement d;
  bool scalar = false;
  /// tau(D) / tau(1); the value of D when `scalar` holds.
  double scalar_value = 0.0;
  /// ‖D - scalar_value 1‖_inf / ‖D‖_inf.
  double scalar_residual = 0.0;
  /// ‖D^{-1}(x) - D^{-1}(x')‖_inf / ‖D^{-1}‖_inf for the two test elements.
  double cross_check_residual = 0.0;
  double min_eigenvalue = 0.0;
};

/// sum_i w_i Delta(g_i)^{-1} (g_i . x) for x normalized to tau(x) = 1.
AlgebraElement duflo_inverse_from(const Action& action, const AlgebraElement& x_test);

/// Throws NumericalError when D^{-1} is not positive definite or the
/// cross-check residual exceeds `cross_tol`.
DufloEstimate estimate_duflo(const Action& action, const AlgebraElement& x_test, const AlgebraElement& x_cross,
                             double cross_tol = 1e-8, double scalar_tol = 1e-9);
/// Draws the two positive test elements from `rng`.
DufloEstimate estimate_duflo(const Action& action, std::mt19937_64& rng, double cross_tol = 1e-8,
                             double scalar_tol = 1e-9);

/// tau(D^{-1/2} y D^{-1/2}).
cplx duflo_weight(const DufloEstimate& est, const AlgebraElement& y);

/// lhs = int <x|y>, rhs = tau(x) conj(tau(D^{-1/2} y D^{-1/2})).
CheckReport check_orthogonality(const Action& action, const DufloEstimate& est, const AlgebraElement& x,
                                const AlgebraElement& y, Tolerance tol, std::string name = "orthogonality");
/// max over `nodes` of ‖g.D - Delta(g)^{-1} D‖_inf / ‖D‖_inf, compared on `window` when set.
CheckReport check_semi_invariance(const Action& action, const DufloEstimate& est,
                                  const std::vector<std::size_t>& nodes, Tolerance tol,
                                  std::optional<std::pair<int, int>> window = std::nullopt);
CheckReport check_semi_invariance(const Action& action, const DufloEstimate& est, Tolerance tol);

struct Admissibility {
  bool admissible = true;
  double value = 0.0;
  CheckReport report;
};
/// Value tau(D^{-1/2} y D^{-1/2}) with the identities tau_{D^{-1}}(y) = value and
/// tau_D(D^{-1/2} y D^{-1/2}) = tau(y) certified. Requires y positive.
Admissibility check_admissibility(const AlgebraElement& y, const DufloEstimate& est, Tolerance tol);

/// {inequality, equality} for the bracket against D^{1/2} y D^{1/2}.
std::pair<CheckReport, CheckReport> check_l1(const Action& action, const DufloEstimate& est,
                                             const AlgebraElement& x, const AlgebraElement& y, Tolerance tol);

/// Throws ParameterError on invalid exponents or when y does not commute with D.
CheckReport check_young(const Action& action, const DufloEstimate& est, const AlgebraElement& x,
                        const AlgebraElement& y, double p, double q, double r, Tolerance tol);
/// 1/p + 1/q = 1, p in [1, inf).
CheckReport check_interpolation(const Action& action, const DufloEstimate& est, const AlgebraElement& x,
                                const AlgebraElement& y, double p, Tolerance tol);
/// sup_g |<x|y>(g)| <= ‖x‖_inf ‖y‖_1.
CheckReport check_interpolation_endpoint(const Action& action, const AlgebraElement& x, const AlgebraElement& y,
                                         Tolerance tol);

/// ‖xy‖_r <= ‖x‖_p ‖y‖_q with 1/p + 1/q = 1/r.
CheckReport check_holder(const AlgebraElement& x, const AlgebraElement& y, double p, double q, Tolerance tol);
/// tau((b a b)^r) <= tau(b^r a^r b^r) for positive a, b and integer r >= 1.
CheckReport check_araki_lieb_thirring(const AlgebraElement& a, const AlgebraElement& b, int r, Tolerance tol);

/// Sum over characters of F^(omega) omega(g) against d F(g), d the scalar value of D^{-1}.
CheckReport check_fourier_inversion(const TwistedAlgebra& alg, const DufloEstimate& est, std::mt19937_64& rng,
                                    Tolerance tol);

/// tau(D^{-1} y) against sum_n kappa(C^{-1} y_n), with C the inner estimate and
/// y_n the components of y over the coset representatives.
CheckReport check_induced_identity(const DufloEstimate& outer, const DufloEstimate& inner,
                                   const AlgebraElement& y, Tolerance tol);

/// Exponent triples (p, q, r) from {1, 4/3, 2, 4} with 1/p + 1/q = 1 + 1/r and p, q <= r < inf.
std::vector<std::array<double, 3>> young_grid(const std::vector<double>& exponents);
/// Pairs (p, q) from the grid (plus inf) with 1/p + 1/q <= 1.
std::vector<std::array<double, 2>> holder_grid(const std::vector<double>& exponents);
std::vector<double> default_exponents();

}  // namespace qha
