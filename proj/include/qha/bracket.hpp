#pragma once

// The bracket <x|y>(g) = tau((g.y)^* x) sampled on the group's nodes,
// weight convolution and L^r norms over the group.

#include <span>
#include <string>

#include "qha/actions.hpp"

namespace qha {

struct BracketFunction {
  std::shared_ptr<const GroupModel> group;
  std::vector<cplx> values;
  std::string provenance;
};

BracketFunction bracket(const AlgebraElement& x, const AlgebraElement& y, const Action& action);
cplx integrate_bracket(const BracketFunction& bf);
/// (sum_i w_i |v_i|^r)^{1/r}; r = kInfinity gives max |v_i|.
double function_p_norm(const BracketFunction& bf, double r);

/// max_g |<x|y>(g^{-1}) - <y|x>(g)|. Finite groups only.
double bracket_symmetry_defect(const AlgebraElement& x, const AlgebraElement& y, const Action& action);
/// max_g |tau((g.y)^* x) - tau(x^{1/2} (g.y) x^{1/2})| for positive x, y.
double bracket_path_pair_defect(const AlgebraElement& x, const AlgebraElement& y, const Action& action);

/// Kernel of (f * phi): sum_i w_i f(g_i) (g_i . K).
WeightKernel convolve_weight(std::span<const cplx> f, const WeightKernel& k, const Action& action);

/// Two-column export: node label, real part, imaginary part.
std::string bracket_table(const BracketFunction& bf);

}  // namespace qha
