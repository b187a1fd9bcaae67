#pragma once

// Twisted group algebras W*(G, sigma) of finite groups and the dual action
// of the character group.

#include <span>

#include "qha/actions.hpp"

namespace qha {

/// lambda_sigma(g) e_k = sigma(g,k) e_{gk} on l^2(G).
UnitaryRep twisted_regular_rep(std::shared_ptr<const FiniteGroup> g, std::vector<cplx> sigma);

/// sigma_m((a,b),(c,d)) = exp(2 pi i m a d / n) on cyclic(n) x cyclic(n).
std::vector<cplx> heisenberg_cocycle(int n, int m);

/// W*(Z_n^2, sigma_m) as a block algebra: with g = gcd(m, n) and n' = n/g,
/// g^2 blocks M_{n'} carrying the inequivalent sigma_m-representations,
/// trace weights 1/(g n) so that tau(lambda(e)) = 1 and tau(lambda(h)) = 0 otherwise.
struct TwistedAlgebra {
  int n = 0;
  int m = 0;
  std::shared_ptr<const FiniteGroup> group;
  std::vector<cplx> cocycle;
  ShapePtr shape;
  std::vector<AlgebraElement> lambda;
  /// Column g is lambda(g) flattened block by block; `analysis` maps a
  /// flattened element to its symbol.
  Matrix synthesis;
  Matrix analysis;

  /// f(g) = tau(lambda(g)^* x).
  std::vector<cplx> symbol(const AlgebraElement& x) const;
  /// sum_g f(g) lambda(g).
  AlgebraElement synthesize(std::span<const cplx> f) const;
};

TwistedAlgebra twisted_group_algebra(int n, int m);

/// The character group of Z_n^2 with counting measure acting by
/// omega.lambda(f) = lambda(omega f).
Action dual_action(std::shared_ptr<const TwistedAlgebra> alg);

}  // namespace qha
