#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qha/groups.hpp"

using namespace qha;

TEST_SUITE("groups") {
  TEST_CASE("cyclic and product") {
    const auto c1 = cyclic(1);
    CHECK(c1.size() == 1);
    const auto c4 = cyclic(4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(c4.mul(1, k) == (k + 1) % 4);
    const auto v4 = product(cyclic(2), cyclic(2));
    int order_two = 0;
    for (std::size_t a = 0; a < v4.size(); ++a) order_two += v4.order_of(a) == 2;
    CHECK(order_two == 3);
    CHECK(v4.is_abelian());
    CHECK_THROWS_AS(cyclic(0), ParameterError);
  }

  TEST_CASE("s3 is a non-abelian group of order 6") {
    const auto s3 = symmetric3();
    CHECK(s3.size() == 6);
    CHECK_FALSE(s3.is_abelian());
    for (std::size_t a = 0; a < 6; ++a) CHECK(s3.mul(a, s3.inv(a)) == s3.identity());
  }

  TEST_CASE("group names") {
    CHECK(parse_group("cyclic(2)xcyclic(4)").size() == 8);
    CHECK(parse_group("s3").size() == 6);
    try {
      (void)parse_group("dihedral(4)");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("cyclic(<n>)") != std::string::npos);
    }
  }

  TEST_CASE("dual group") {
    const auto d2 = dual_group(cyclic(2));
    CHECK(std::abs(d2(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(d2(1, 1) + 1.0) < 1e-15);
    const auto d4 = dual_group(cyclic(4));
    CHECK(std::abs(d4(1, 1) - cplx(0.0, 1.0)) < 1e-15);

    const auto g = product(cyclic(2), cyclic(3));
    const auto t = dual_group(g);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) {
        cplx s = 0.0;
        for (std::size_t x = 0; x < g.size(); ++x) s += t(a, x) * std::conj(t(b, x));
        CHECK(std::abs(s - (a == b ? 6.0 : 0.0)) < 1e-12);
      }
    CHECK(dual_as_group(g).size() == 6);
  }

  TEST_CASE("haar integrals on finite groups") {
    auto g = std::make_shared<const FiniteGroup>(cyclic(4));
    const std::vector<cplx> one(4, 1.0);
    CHECK(integrate(GroupModel::finite(g, HaarNormalization::probability), one).real() == doctest::Approx(1.0));
    CHECK(integrate(GroupModel::finite(g, HaarNormalization::counting), one).real() == doctest::Approx(4.0));
    CHECK_THROWS_AS(GroupModel::finite(g, HaarNormalization::quadrature), ConfigError);
  }

  TEST_CASE("affine group law") {
    const auto q = affine_group(0.5, 2.0, 3, -1.0, 1.0, 3);
    CHECK(q.compose({2.0, 0.0}, {1.0, 3.0}) == Params{2.0, 6.0});
    CHECK(q.inverse({2.0, 6.0}) == Params{0.5, -3.0});
    const Params p{2.0, 1.0}, r{0.25, -3.0};
    CHECK(q.modular(q.compose(p, r)) == q.modular(p) * q.modular(r));
  }

  TEST_CASE("affine quadrature of a Gaussian bump converges") {
    // int exp(-(ln a)^2 - b^2) a da db / a^2 = pi
    auto integral = [](std::size_t na, std::size_t nb) {
      auto q = std::make_shared<const QuadratureGroup>(affine_group(std::exp(-5.0), std::exp(5.0), na, -6.0, 6.0, nb));
      const auto model = GroupModel::quadrature(q);
      return integrate(model, [&](std::size_t i) {
               const auto& p = q->nodes[i];
               return cplx(std::exp(-std::log(p[0]) * std::log(p[0]) - p[1] * p[1]) * p[0]);
             })
          .real();
    };
    const double coarse = integral(11, 13);
    const double fine = integral(41, 49);
    CHECK(std::abs(coarse - std::numbers::pi) / std::numbers::pi < 1e-2);
    CHECK(std::abs(fine - std::numbers::pi) <= std::abs(coarse - std::numbers::pi));
    CHECK_FALSE(GroupModel::quadrature(std::make_shared<const QuadratureGroup>(
                                           affine_group(0.5, 2.0, 3, -1.0, 1.0, 3)))
                    .is_unimodular());
  }

  TEST_CASE("cosets") {
    const auto c4 = cyclic(4);
    const auto h = make_subgroup(c4, {0, 2}, "cyclic(2)");
    CHECK(coset_representatives(c4, h) == std::vector<std::size_t>{0, 1});
    const auto whole = subgroup_by_name(c4, "cyclic(4)");
    CHECK(coset_representatives(c4, whole) == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(make_subgroup(c4, {0, 1}, "bad"), StructuralError);
  }

  TEST_CASE("quotient integral formula on cyclic(6) / cyclic(3)") {
    const auto g = cyclic(6);
    const auto h = subgroup_by_name(g, "cyclic(3)");
    const auto reps = coset_representatives(g, h);
    REQUIRE(reps.size() == 2);
    std::vector<double> f(6);
    for (std::size_t i = 0; i < 6; ++i) f[i] = std::sin(1.0 + 0.7 * static_cast<double>(i * i));
    double whole = 0.0, split = 0.0;
    for (double v : f) whole += v;
    for (std::size_t n : reps)
      for (std::size_t k : h.embedding) split += f[g.mul(n, k)];
    CHECK(std::abs(whole - split) < 1e-14);
  }
}
