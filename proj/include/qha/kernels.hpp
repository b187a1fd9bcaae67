#pragma once

// Node-parallel kernels. Each has a serial reference used by the tests and
// the benchmark; parallel reductions use a fixed chunking so their results
// do not depend on the thread count.

#include <span>
#include <vector>

#include "qha/actions.hpp"

namespace qha {

inline constexpr std::size_t kReductionChunks = 64;

/// values[i] = tau((g_i . y)^* x) for every node g_i.
std::vector<cplx> bracket_values_serial(const Action& action, const AlgebraElement& x, const AlgebraElement& y);
std::vector<cplx> bracket_values_parallel(const Action& action, const AlgebraElement& x, const AlgebraElement& y);

/// sum_i c_i (g_i . x).
AlgebraElement haar_sum_serial(const Action& action, std::span<const cplx> coeffs, const AlgebraElement& x);
AlgebraElement haar_sum_parallel(const Action& action, std::span<const cplx> coeffs, const AlgebraElement& x);

/// sum_i w_i v_i, in fixed chunks reduced in order.
cplx weighted_sum(std::span<const double> w, std::span<const cplx> v);

}  // namespace qha
