#include "qha/twisted.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace qha {

namespace {

cplx root_of_unity(long k, long n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(((k % n) + n) % n) / static_cast<double>(n));
}

}  // namespace

UnitaryRep twisted_regular_rep(std::shared_ptr<const FiniteGroup> g, std::vector<cplx> sigma) {
  validate_cocycle(*g, sigma);
  const std::size_t n = g->size();
  UnitaryRep r;
  r.group = g;
  for (std::size_t a = 0; a < n; ++a) {
    Matrix u = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
      u(static_cast<Eigen::Index>(g->mul(a, k)), static_cast<Eigen::Index>(k)) = sigma[a * n + k];
    r.u.push_back(std::move(u));
  }
  r.cocycle = std::move(sigma);
  r.validate();
  return r;
}

std::vector<cplx> heisenberg_cocycle(int n, int m) {
  if (n < 1) throw ParameterError("twisted algebra needs n >= 1");
  const auto N = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<cplx> s(N * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      const long a = static_cast<long>(x) / n;
      const long d = static_cast<long>(y) % n;
      s[x * N + y] = root_of_unity(static_cast<long>(m) * a * d, n);
    }
  return s;
}

namespace {

Vector flatten(const AlgebraElement& x) {
  Eigen::Index total = 0;
  for (const auto& b : x.blocks()) total += b.size();
  Vector v(total);
  Eigen::Index off = 0;
  for (const auto& b : x.blocks()) {
    v.segment(off, b.size()) = b.reshaped();
    off += b.size();
  }
  return v;
}

AlgebraElement unflatten(const ShapePtr& shape, const Vector& v) {
  std::vector<Matrix> blocks;
  Eigen::Index off = 0;
  for (int d : shape->block_dims()) {
    blocks.push_back(v.segment(off, static_cast<Eigen::Index>(d) * d).reshaped(d, d));
    off += static_cast<Eigen::Index>(d) * d;
  }
  return AlgebraElement(shape, std::move(blocks));
}

}  // namespace

std::vector<cplx> TwistedAlgebra::symbol(const AlgebraElement& x) const {
  require_same_shape(lambda.front(), x);
  const Vector f = analysis * flatten(x);
  return {f.data(), f.data() + f.size()};
}

AlgebraElement TwistedAlgebra::synthesize(std::span<const cplx> f) const {
  if (f.size() != lambda.size()) throw StructuralError("symbol length differs from group order");
  const Vector v = synthesis * Eigen::Map<const Vector>(f.data(), static_cast<Eigen::Index>(f.size()));
  return unflatten(shape, v);
}

TwistedAlgebra twisted_group_algebra(int n, int m) {
  if (n < 1) throw ParameterError("twisted algebra needs n >= 1");
  TwistedAlgebra t;
  t.n = n;
  t.m = ((m % n) + n) % n;
  t.group = std::make_shared<const FiniteGroup>(product(cyclic(n), cyclic(n)));
  t.cocycle = heisenberg_cocycle(n, t.m);
  validate_cocycle(*t.group, t.cocycle);

  const int g = std::gcd(t.m, n);  // gcd(0, n) = n: the untwisted case, all blocks 1x1
  const int np = n / g;
  const int mp = t.m / g;
  t.shape = std::make_shared<const AlgebraShape>(std::vector<int>(static_cast<std::size_t>(g * g), np),
                                                 std::vector<double>(static_cast<std::size_t>(g * g),
                                                                     1.0 / (static_cast<double>(g) * n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Matrix mt = Matrix::Zero(np, np);  // M_b T_{-m' a} on C^{n'}
      for (int i = 0; i < np; ++i) {
        const int j = (((i - mp * a) % np) + np) % np;
        mt(j, i) = root_of_unity(static_cast<long>(b) * j, np);
      }
      std::vector<Matrix> blocks;
      for (int s = 0; s < g; ++s)
        for (int u = 0; u < g; ++u) blocks.push_back(root_of_unity(static_cast<long>(s) * a + static_cast<long>(u) * b, n) * mt);
      t.lambda.emplace_back(t.shape, std::move(blocks));
    }

  const auto N0 = static_cast<Eigen::Index>(t.lambda.size());
  const Eigen::Index dim = flatten(t.lambda.front()).size();
  t.synthesis.resize(dim, N0);
  for (Eigen::Index g = 0; g < N0; ++g) t.synthesis.col(g) = flatten(t.lambda[static_cast<std::size_t>(g)]);
  // tau(lambda(g)^* x) = sum_k w_k <lambda(g)_k, x_k>_F
  Eigen::VectorXd w(dim);
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < t.shape->num_blocks(); ++k) {
    const Eigen::Index sz = static_cast<Eigen::Index>(t.shape->dim(k)) * t.shape->dim(k);
    w.segment(off, sz).setConstant(t.shape->weight(k));
    off += sz;
  }
  t.analysis = t.synthesis.adjoint() * w.asDiagonal();

  // The lambda(g) must be a tau-orthonormal basis; otherwise symbols do not recover elements.
  const std::size_t N = t.lambda.size();
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t y = 0; y < N; ++y) {
      const cplx ip = trace_inner(t.lambda[x], t.lambda[y]);
      if (std::abs(ip - (x == y ? 1.0 : 0.0)) > 1e-10)
        throw NumericalError("twisted algebra generators are not trace-orthonormal");
      const AlgebraElement prod = t.lambda[x] * t.lambda[y];
      const AlgebraElement rhs = t.cocycle[x * N + y] * t.lambda[t.group->mul(x, y)];
      if ((prod - rhs).norm_inf() > 1e-10) throw NumericalError("block realization violates the twisted product");
    }
  }
  return t;
}

Action dual_action(std::shared_ptr<const TwistedAlgebra> alg) {
  auto dual = std::make_shared<const FiniteGroup>(dual_as_group(*alg->group));
  auto chars = std::make_shared<const CharacterTable>(dual_group(*alg->group));
  auto model = std::make_shared<const GroupModel>(GroupModel::finite(dual, HaarNormalization::counting));
  return Action("twisted-dual", model, alg->shape, [alg, chars](std::size_t w, const AlgebraElement& x) {
    auto f = alg->symbol(x);
    for (std::size_t g = 0; g < f.size(); ++g) f[g] *= (*chars)(w, g);
    return alg->synthesize(f);
  });
}

}  // namespace qha
