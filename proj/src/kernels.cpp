#include "qha/kernels.hpp"

#include <algorithm>

namespace qha {

namespace {

std::size_t chunk_begin(std::size_t c, std::size_t n, std::size_t chunks) { return c * n / chunks; }

void check_coeffs(const Action& action, std::span<const cplx> coeffs) {
  if (coeffs.size() != action.group().size()) throw StructuralError("one coefficient per group node required");
}

}  // namespace

std::vector<cplx> bracket_values_serial(const Action& action, const AlgebraElement& x, const AlgebraElement& y) {
  require_same_shape(x, y);
  std::vector<cplx> v(action.group().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = trace_inner(action.apply(i, y), x);
  return v;
}

std::vector<cplx> bracket_values_parallel(const Action& action, const AlgebraElement& x, const AlgebraElement& y) {
  require_same_shape(x, y);
  const auto n = static_cast<long>(action.group().size());
  std::vector<cplx> v(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    v[k] = trace_inner(action.apply(k, y), x);
  }
  return v;
}

AlgebraElement haar_sum_serial(const Action& action, std::span<const cplx> coeffs, const AlgebraElement& x) {
  check_coeffs(action, coeffs);
  AlgebraElement acc = AlgebraElement::zero(x.shape());
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * action.apply(i, x);
  return acc;
}

AlgebraElement haar_sum_parallel(const Action& action, std::span<const cplx> coeffs, const AlgebraElement& x) {
  check_coeffs(action, coeffs);
  const std::size_t n = coeffs.size();
  const std::size_t chunks = std::min(kReductionChunks, n);
  std::vector<AlgebraElement> partial(chunks, AlgebraElement::zero(x.shape()));
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < static_cast<long>(chunks); ++c) {
    const auto cc = static_cast<std::size_t>(c);
    for (std::size_t i = chunk_begin(cc, n, chunks); i < chunk_begin(cc + 1, n, chunks); ++i)
      partial[cc] += coeffs[i] * action.apply(i, x);
  }
  AlgebraElement acc = AlgebraElement::zero(x.shape());
  for (const auto& p : partial) acc += p;
  return acc;
}

cplx weighted_sum(std::span<const double> w, std::span<const cplx> v) {
  if (w.size() != v.size()) throw StructuralError("weights and values differ in length");
  const std::size_t n = v.size();
  const std::size_t chunks = std::max<std::size_t>(1, std::min(kReductionChunks, n));
  std::vector<cplx> partial(chunks);
  for (std::size_t c = 0; c < chunks; ++c)
    for (std::size_t i = chunk_begin(c, n, chunks); i < chunk_begin(c + 1, n, chunks); ++i) partial[c] += w[i] * v[i];
  cplx s = 0.0;
  for (auto p : partial) s += p;
  return s;
}

}  // namespace qha
