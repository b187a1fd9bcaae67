#include <doctest.h>

#include "helpers.hpp"
#include "qha/bracket.hpp"
#include "qha/kernels.hpp"
#include "qha/scenarios.hpp"

using namespace qha;
using qha::test::dist;

namespace {

std::shared_ptr<const FiniteGroup> grp(int n) { return std::make_shared<const FiniteGroup>(cyclic(n)); }

AlgebraElement indicator(const ShapePtr& shape, std::size_t t) { return AlgebraElement::unit(shape, t, 0, 0); }

}  // namespace

TEST_SUITE("bracket") {
  TEST_CASE("identity elements give the constant trace") {
    const Action a = conjugation_action(finite_weyl_heisenberg(2), HaarNormalization::counting);
    const auto one = AlgebraElement::identity(a.shape());
    for (cplx v : bracket(one, one, a).values) CHECK(std::abs(v - 2.0) < 1e-14);
  }

  TEST_CASE("translation on cyclic(2)") {
    const Action a = translation_action(grp(2), HaarNormalization::counting);
    const auto d = indicator(a.shape(), 0);
    const auto bf = bracket(d, d, a);
    REQUIRE(bf.values.size() == 2);
    CHECK(std::abs(bf.values[0] - 1.0) < 1e-15);
    CHECK(std::abs(bf.values[1]) < 1e-15);
    CHECK(std::abs(integrate_bracket(bf) - 1.0) < 1e-15);
    CHECK(function_p_norm(bf, 2.0) == doctest::Approx(1.0));
    CHECK(bracket_symmetry_defect(d, d, a) < 1e-12);
  }

  TEST_CASE("function norms of a constant under probability Haar") {
    const Action a = translation_action(grp(5), HaarNormalization::probability);
    const auto one = AlgebraElement::identity(a.shape());
    const auto bf = bracket(one, one, a);  // constant tau(1) = 5
    for (double r : {1.0, 2.0, 3.5, kInfinity}) CHECK(function_p_norm(bf, r) == doctest::Approx(5.0));
    CHECK_THROWS_AS(function_p_norm(bf, 0.5), ParameterError);
  }

  TEST_CASE("rank-one brackets are squared matrix coefficients") {
    const auto rep = irrep("s3", "std");
    const Action a = conjugation_action(rep, HaarNormalization::probability);
    std::mt19937_64 rng(12);
    const Vector xi = random_unit_vector(2, rng), eta = random_unit_vector(2, rng);
    const auto x = qha::test::elem(xi * xi.adjoint());
    const auto y = qha::test::elem(eta * eta.adjoint());
    const auto bf = bracket(x, y, a);
    for (std::size_t g = 0; g < 6; ++g) CHECK(std::abs(bf.values[g] - std::norm(xi.dot(rep.u[g] * eta))) < 1e-14);
  }

  TEST_CASE("Weyl-Heisenberg rank-one integral") {
    const Action a = conjugation_action(finite_weyl_heisenberg(4), HaarNormalization::counting);
    std::mt19937_64 rng(13);
    const Vector xi = random_unit_vector(4, rng);
    const auto x = qha::test::elem(xi * xi.adjoint());
    CHECK(std::abs(integrate_bracket(bracket(x, x, a)) - 4.0) < 1e-13);
  }

  TEST_CASE("traceless x integrates to zero") {
    const Action a = conjugation_action(finite_weyl_heisenberg(3), HaarNormalization::counting);
    std::mt19937_64 rng(14);
    auto x = random_element(a.shape(), rng);
    x -= (trace(x) / 3.0) * AlgebraElement::identity(a.shape());
    const auto y = random_positive(a.shape(), rng);
    CHECK(std::abs(integrate_bracket(bracket(x, y, a))) < 1e-12 * p_norm(x, 1.0) * p_norm(y, 1.0));
  }

  TEST_CASE("symmetry and two evaluation paths") {
    const Action a = conjugation_action(irrep("s3", "std"), HaarNormalization::probability);
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
      const auto x = random_positive(a.shape(), rng);
      const auto y = random_positive(a.shape(), rng);
      const double s = p_norm(x, 1.0) * p_norm(y, 1.0);
      CHECK(bracket_symmetry_defect(x, x, a) <= 1e-10 * s);
      CHECK(bracket_symmetry_defect(x, y, a) <= 1e-10 * s);
      CHECK(bracket_path_pair_defect(x, y, a) <= 1e-11 * s);
    }
    const Action t = translation_action(grp(1), HaarNormalization::counting);
    const auto one = AlgebraElement::identity(t.shape());
    CHECK(bracket_symmetry_defect(one, one, t) == 0.0);
  }

  TEST_CASE("symmetry is unsupported on quadrature groups") {
    const Action a = affine_wavelet_action(WaveletGrid{});
    const auto one = AlgebraElement::identity(a.shape());
    CHECK_THROWS_AS(bracket_symmetry_defect(one, one, a), UnsupportedError);
  }

  TEST_CASE("weight convolution") {
    const Action a = conjugation_action(finite_weyl_heisenberg(3), HaarNormalization::counting);
    std::mt19937_64 rng(16);
    const WeightKernel k(random_positive(a.shape(), rng));
    std::vector<cplx> delta(9, 0.0);
    delta[0] = 1.0;
    CHECK(dist(convolve_weight(delta, k, a).kernel(), k.kernel()) < 1e-14);
    // sum_g g.K = n tau(K) 1, i.e. tau_{D^{-1}}(K) 1 with D^{-1} = n
    const std::vector<cplx> ones(9, 1.0);
    const auto c = convolve_weight(ones, k, a).kernel();
    CHECK(dist(c, (3.0 * trace(k.kernel())) * AlgebraElement::identity(a.shape())) < 1e-12 * c.norm_inf());
  }

  TEST_CASE("bracket table export") {
    const Action a = translation_action(grp(2), HaarNormalization::counting);
    const auto d = indicator(a.shape(), 0);
    const std::string t = bracket_table(bracket(d, d, a));
    CHECK(t.find('\t') != std::string::npos);
    CHECK(std::count(t.begin(), t.end(), '\n') >= 2);
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("parallel kernels match the serial reference") {
    for (const char* id : {"wh:5", "twisted-dual:4:1", "affine-wavelet:1"}) {
      const auto s = build_scenario(builtin(id));
      const Action& a = *s.action;
      std::mt19937_64 rng(17);
      const auto x = random_element(a.shape(), rng);
      const auto y = random_element(a.shape(), rng);
      const auto vs = bracket_values_serial(a, x, y);
      const auto vp = bracket_values_parallel(a, x, y);
      REQUIRE(vs.size() == vp.size());
      for (std::size_t i = 0; i < vs.size(); ++i) CHECK(vs[i] == vp[i]);
      const std::vector<cplx> w(a.group().weights().begin(), a.group().weights().end());
      const auto hs = haar_sum_serial(a, w, x);
      const auto hp = haar_sum_parallel(a, w, x);
      CHECK(dist(hs, hp) <= 1e-12 * hs.norm_inf());
    }
  }

  TEST_CASE("parallel reductions are reproducible") {
    const auto s = build_scenario(builtin("affine-wavelet:1"));
    std::mt19937_64 rng(18);
    const auto x = random_positive(s.action->shape(), rng);
    const std::vector<cplx> w(s.action->group().weights().begin(), s.action->group().weights().end());
    CHECK(dist(haar_sum_parallel(*s.action, w, x), haar_sum_parallel(*s.action, w, x)) == 0.0);
    const std::vector<double> ws(1000, 0.5);
    std::vector<cplx> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(static_cast<double>(i), 1.0);
    CHECK(weighted_sum(ws, v) == cplx(0.5 * 999.0 * 1000.0 / 2.0, 500.0));
  }

  TEST_CASE("coefficient length is checked") {
    const auto s = build_scenario(builtin("wh:2"));
    const std::vector<cplx> w(3, 1.0);
    CHECK_THROWS_AS(haar_sum_parallel(*s.action, w, AlgebraElement::identity(s.action->shape())), StructuralError);
  }
}
