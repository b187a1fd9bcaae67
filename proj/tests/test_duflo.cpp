#include <doctest.h>

#include "helpers.hpp"
#include "qha/bracket.hpp"
#include "qha/scenarios.hpp"
#include "qha/suite.hpp"

using namespace qha;
using qha::test::dist;

namespace {

DufloEstimate est_of(const Action& a, std::uint64_t seed = 21) {
  std::mt19937_64 rng(seed);
  return estimate_duflo(a, rng);
}

bool is_scalar_multiple(const AlgebraElement& d, double v, double tol) {
  return dist(d, v * AlgebraElement::identity(d.shape())) <= tol * v;
}

}  // namespace

TEST_SUITE("duflo") {
  TEST_CASE("irreps with probability Haar give D = d_pi") {
    for (const char* r : {"std", "sign", "trivial"}) {
      const auto rep = irrep("s3", r);
      const auto e = est_of(conjugation_action(rep, HaarNormalization::probability));
      CHECK(e.scalar);
      CHECK(is_scalar_multiple(e.d, rep.dim(), 1e-12));
    }
    for (int k = 0; k < 8; ++k) {
      const auto e = est_of(conjugation_action(irrep("cyclic(8)", std::to_string(k)), HaarNormalization::probability));
      CHECK(is_scalar_multiple(e.d, 1.0, 1e-12));
    }
  }

  TEST_CASE("Weyl-Heisenberg: brute-force coefficient sums") {
    for (int n : {2, 3, 5}) {
      const auto rep = finite_weyl_heisenberg(n);
      std::mt19937_64 rng(22);
      const Vector xi = random_unit_vector(n, rng) * 1.7, eta = random_unit_vector(n, rng) * 0.6;
      double s = 0.0;
      for (const auto& u : rep.u) s += std::norm(xi.dot(u * eta));
      CHECK(s == doctest::Approx(n * xi.squaredNorm() * eta.squaredNorm()).epsilon(1e-12));
      const auto e = est_of(conjugation_action(rep, HaarNormalization::counting));
      CHECK(is_scalar_multiple(e.d, 1.0 / n, 1e-12));
    }
  }

  TEST_CASE("translation action has D = 1") {
    const auto e = est_of(translation_action(std::make_shared<const FiniteGroup>(cyclic(6)), HaarNormalization::counting));
    CHECK(is_scalar_multiple(e.d, 1.0, 1e-12));
  }

  TEST_CASE("estimator is independent of the test element") {
    const Action a = conjugation_action(finite_weyl_heisenberg(4), HaarNormalization::counting);
    std::mt19937_64 rng(23);
    const auto x1 = random_positive(a.shape(), rng), x2 = random_positive(a.shape(), rng);
    CHECK(dist(duflo_inverse_from(a, x1), duflo_inverse_from(a, x2)) < 1e-12);
    CHECK_THROWS_AS(duflo_inverse_from(a, AlgebraElement::zero(a.shape())), NotPositiveError);
  }

  TEST_CASE("non-invariant measure fails the cross-check") {
    auto c2 = std::make_shared<const FiniteGroup>(cyclic(2));
    const Action broken = permutation_action(c2, HaarNormalization::counting, {0, 1, 1, 0}, {1.0, 2.0}, false);
    std::mt19937_64 rng(24);
    CHECK_THROWS_AS(estimate_duflo(broken, rng), NumericalError);
  }

  TEST_CASE("orthogonality") {
    for (int n : {2, 3, 4}) {
      const Action a = conjugation_action(finite_weyl_heisenberg(n), HaarNormalization::counting);
      const auto e = est_of(a);
      const auto one = AlgebraElement::identity(a.shape());
      const auto r = check_orthogonality(a, e, one, one, {1e-12, 0.0});
      CHECK(r.passed());
      CHECK(std::abs(r.lhs - std::pow(n, 3)) < 1e-10);
    }
  }

  TEST_CASE("orthogonality on rank-one elements of the s3 irrep") {
    const auto rep = irrep("s3", "std");
    const Action a = conjugation_action(rep, HaarNormalization::probability);
    std::mt19937_64 rng(25);
    const Vector xi = random_unit_vector(2, rng), xi2 = random_unit_vector(2, rng);
    const Vector eta = random_unit_vector(2, rng), eta2 = random_unit_vector(2, rng);
    cplx lhs = 0.0;
    for (const auto& u : rep.u) lhs += xi.dot(u * eta) * std::conj(xi2.dot(u * eta2)) / 6.0;
    CHECK(std::abs(lhs - xi.dot(xi2) * std::conj(eta.dot(eta2)) / 2.0) < 1e-14);
    const auto e = est_of(a);
    const auto x = qha::test::elem(xi * xi.adjoint()), y = qha::test::elem(eta * eta.adjoint());
    CHECK(check_orthogonality(a, e, x, y, {1e-12, 0.0}).passed());
  }

  TEST_CASE("semi-invariance on finite groups") {
    for (const char* id : {"wh:3", "irrep:s3:std", "cosets:cyclic(6):cyclic(3)", "twisted-dual:4:1"}) {
      const auto s = build_scenario(builtin(id));
      const auto e = suite_duflo(s);
      const auto r = check_semi_invariance(*s.action, e, {1e-9, 0.0});
      CHECK(r.passed());
      CHECK(r.rel_err <= 1e-9);
    }
    const auto e = est_of(translation_action(std::make_shared<const FiniteGroup>(cyclic(1)), HaarNormalization::counting));
    CHECK(e.cross_check_residual == doctest::Approx(0.0));
  }

  TEST_CASE("admissibility identities") {
    const Action a = conjugation_action(finite_weyl_heisenberg(3), HaarNormalization::counting);
    const auto e = est_of(a);
    const auto one = AlgebraElement::identity(a.shape());
    CHECK(check_admissibility(one, e, {1e-12, 0.0}).value == doctest::Approx(trace(e.d_inverse).real()));
    CHECK(check_admissibility(e.d, e, {1e-12, 0.0}).value == doctest::Approx(trace(one).real()));
    std::mt19937_64 rng(26);
    for (int t = 0; t < 10; ++t) CHECK(check_admissibility(random_positive(a.shape(), rng), e, {1e-11, 0.0}).report.passed());
    CHECK_THROWS_AS(check_admissibility(qha::test::elem(qha::test::diag({1.0, -1.0, 1.0})), e, {}), NotPositiveError);
  }

  TEST_CASE("L1 bound and its equality case") {
    const Action a = conjugation_action(finite_weyl_heisenberg(2), HaarNormalization::counting);
    const auto e = est_of(a);
    const auto one = AlgebraElement::identity(a.shape());
    const auto [ineq, eq] = check_l1(a, e, one, one, {1e-12, 0.0});
    CHECK(eq.passed());
    CHECK(std::abs(eq.rhs - 4.0) < 1e-12);
    CHECK(std::abs(eq.lhs - 4.0) < 1e-12);
    CHECK(ineq.passed());

    const Action s3 = conjugation_action(irrep("s3", "std"), HaarNormalization::probability);
    const auto es = est_of(s3);
    std::mt19937_64 rng(27);
    for (int t = 0; t < 20; ++t) {
      const auto x = random_element(s3.shape(), rng), y = random_element(s3.shape(), rng);
      const auto [i2, e2] = check_l1(s3, es, x, y, {1e-9, 0.0});
      CHECK(i2.passed());
      CHECK(e2.passed());
    }
  }

  TEST_CASE("Young on translation reduces to classical Young") {
    auto g = std::make_shared<const FiniteGroup>(cyclic(5));
    const Action a = translation_action(g, HaarNormalization::counting);
    const auto e = est_of(a);
    std::mt19937_64 rng(28);
    const auto x = random_element(a.shape(), rng), y = random_element(a.shape(), rng);
    // <x|y>(g) = sum_t x(t) conj(y(g^{-1} t))
    const auto bf = bracket(x, y, a);
    for (std::size_t s = 0; s < 5; ++s) {
      cplx direct = 0.0;
      for (std::size_t t = 0; t < 5; ++t) direct += x.block(t)(0, 0) * std::conj(y.block(g->mul(g->inv(s), t))(0, 0));
      CHECK(std::abs(bf.values[s] - direct) < 1e-13);
    }
    for (const auto& [p, q, r] : young_grid(default_exponents())) CHECK(check_young(a, e, x, y, p, q, r, {1e-9, 0.0}).passed());
  }

  TEST_CASE("Young on Weyl-Heisenberg n = 4 with p = q = 4/3, r = 2") {
    const Action a = conjugation_action(finite_weyl_heisenberg(4), HaarNormalization::counting);
    const auto e = est_of(a);
    std::mt19937_64 rng(29);
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
      const auto x = random_element(a.shape(), rng), y = random_element(a.shape(), rng);
      violations += !check_young(a, e, x, y, 4.0 / 3.0, 4.0 / 3.0, 2.0, {1e-9, 0.0}).passed();
    }
    CHECK(violations == 0);
  }

  TEST_CASE("Young rejects invalid exponents and non-commuting y") {
    const Action a = conjugation_action(finite_weyl_heisenberg(2), HaarNormalization::counting);
    const auto e = est_of(a);
    const auto one = AlgebraElement::identity(a.shape());
    CHECK_THROWS_AS(check_young(a, e, one, one, 2.0, 2.0, kInfinity, {}), ParameterError);
    CHECK_THROWS_AS(check_young(a, e, one, one, 2.0, 2.0, 2.0, {}), ParameterError);
    const auto s = build_scenario(builtin("affine-wavelet:1"));
    const auto ea = suite_duflo(s);
    std::mt19937_64 rng(30);
    const auto y = random_element(s.action->shape(), rng);
    CHECK_THROWS_AS(check_young(*s.action, ea, y, y, 1.0, 1.0, 1.0, {}), ParameterError);
  }

  TEST_CASE("interpolation bounds") {
    const Action a = conjugation_action(finite_weyl_heisenberg(4), HaarNormalization::counting);
    const auto e = est_of(a);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
      const auto x = random_element(a.shape(), rng), y = random_element(a.shape(), rng);
      CHECK(check_interpolation(a, e, x, y, 2.0, {1e-9, 0.0}).passed());
      CHECK(check_interpolation(a, e, x, y, 1.0, {1e-9, 0.0}).passed());
      CHECK(check_interpolation_endpoint(a, x, y, {1e-9, 0.0}).passed());
    }
    const auto one = AlgebraElement::identity(a.shape());
    CHECK_THROWS_AS(check_interpolation(a, e, one, one, 0.5, {}), ParameterError);
  }

  TEST_CASE("Hoelder and Araki-Lieb-Thirring") {
    std::mt19937_64 rng(32);
    auto shape = std::make_shared<const AlgebraShape>(std::vector<int>{2, 3}, std::vector<double>{0.5, 2.0});
    for (int t = 0; t < 30; ++t) {
      const auto x = random_element(shape, rng), y = random_element(shape, rng);
      for (const auto& [p, q] : holder_grid(default_exponents())) CHECK(check_holder(x, y, p, q, {1e-9, 0.0}).passed());
      const auto a = random_positive(shape, rng), b = random_positive(shape, rng);
      for (int r = 1; r <= 4; ++r) CHECK(check_araki_lieb_thirring(a, b, r, {1e-9, 0.0}).passed());
    }
    const auto one = AlgebraElement::identity(shape);
    CHECK_THROWS_AS(check_holder(one, one, 2.0, 1.5, {}), ParameterError);
    CHECK_THROWS_AS(check_araki_lieb_thirring(one, one, 0, {}), ParameterError);
  }

  TEST_CASE("exponent grids") {
    const auto y = young_grid(default_exponents());
    CHECK(y.size() == 10);
    for (const auto& [p, q, r] : y) CHECK(std::abs(1.0 / p + 1.0 / q - 1.0 - 1.0 / r) < 1e-12);
    for (const auto& [p, q] : holder_grid(default_exponents())) CHECK(1.0 / p + 1.0 / q <= 1.0 + 1e-12);
  }

  TEST_CASE("Fourier inversion on twisted-dual:8:0") {
    const auto s = build_scenario(builtin("twisted-dual:8:0"));
    const auto e = suite_duflo(s);
    CHECK(e.d_inverse.norm_inf() == doctest::Approx(64.0));
    std::mt19937_64 rng(33);
    const auto r = check_fourier_inversion(*s.twisted, e, rng, {1e-9, 0.0});
    CHECK(r.passed());
    CHECK(r.lhs.real() == doctest::Approx(64.0));
  }

  TEST_CASE("induced identity") {
    const auto s = build_scenario(builtin("induced:cyclic(2)xcyclic(4):cyclic(2)xcyclic(2):pauli"));
    const auto e = suite_duflo(s);
    const auto inner = est_of(*s.inner);
    std::mt19937_64 rng(34);
    for (int t = 0; t < 20; ++t) CHECK(check_induced_identity(e, inner, random_positive(s.action->shape(), rng), {1e-9, 0.0}).passed());
  }
}
