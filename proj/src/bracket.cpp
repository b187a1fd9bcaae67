#include "qha/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qha/kernels.hpp"

namespace qha {

BracketFunction bracket(const AlgebraElement& x, const AlgebraElement& y, const Action& action) {
  return {action.group_ptr(), bracket_values_parallel(action, x, y), action.kind()};
}

cplx integrate_bracket(const BracketFunction& bf) { return weighted_sum(bf.group->weights(), bf.values); }

double function_p_norm(const BracketFunction& bf, double r) {
  if (!(r >= 1.0)) throw ParameterError("function_p_norm requires r >= 1");
  if (r == kInfinity) {
    double m = 0.0;
    for (auto v : bf.values) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<cplx> powers(bf.values.size());
  std::transform(bf.values.begin(), bf.values.end(), powers.begin(),
                 [r](cplx v) { return cplx(std::pow(std::abs(v), r), 0.0); });
  return std::pow(weighted_sum(bf.group->weights(), powers).real(), 1.0 / r);
}

double bracket_symmetry_defect(const AlgebraElement& x, const AlgebraElement& y, const Action& action) {
  if (!action.group().is_finite())
    throw UnsupportedError("bracket symmetry needs an inverse-closed node set (finite group)");
  const FiniteGroup& g = action.group().finite_group();
  const auto xy = bracket_values_parallel(action, x, y);
  const auto yx = bracket_values_parallel(action, y, x);
  double d = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a) d = std::max(d, std::abs(xy[g.inv(a)] - yx[a]));
  return d;
}

double bracket_path_pair_defect(const AlgebraElement& x, const AlgebraElement& y, const Action& action) {
  const AlgebraElement xs = positive_sqrt(x);
  const auto direct = bracket_values_parallel(action, x, y);
  double d = 0.0;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    const cplx sandwich = trace(xs * action.apply(i, y) * xs);
    d = std::max(d, std::abs(direct[i] - sandwich));
  }
  return d;
}

WeightKernel convolve_weight(std::span<const cplx> f, const WeightKernel& k, const Action& action) {
  const GroupModel& g = action.group();
  if (f.size() != g.size()) throw StructuralError("one function value per group node required");
  std::vector<cplx> coeffs(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) coeffs[i] = g.weight(i) * f[i];
  return WeightKernel(haar_sum_parallel(action, coeffs, k.kernel()));
}

std::string bracket_table(const BracketFunction& bf) {
  std::ostringstream os;
  os.precision(17);
  os << "node\treal\timag\n";
  for (std::size_t i = 0; i < bf.values.size(); ++i)
    os << bf.group->node_label(i) << '\t' << bf.values[i].real() << '\t' << bf.values[i].imag() << '\n';
  return os.str();
}

}  // namespace qha
