#include "doctest.h"
#include "kgf/special_fns.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace kgf;
using doctest::Approx;

TEST_CASE("bessel_clifford at zero is one for every order") {
  for (double nu : {-0.9, -0.5, 0.0, 0.3, 4.0}) CHECK(bessel_clifford<double>(nu, 0.0) == 1.0);
}

TEST_CASE("bessel_clifford closed forms at pi") {
  CHECK(bessel_clifford<double>(-0.5, std::numbers::pi) == Approx(-1.0).epsilon(1e-14));
  CHECK(std::fabs(bessel_clifford<double>(0.5, std::numbers::pi)) < 1e-14);
}

TEST_CASE("bessel_clifford frozen reference values") {
  // Boost cyl_bessel_j in long double
  struct Row { double nu, z, v; };
  for (auto r : {Row{0.7, 5.3, -0.152592724564914349}, Row{2.0, 12.0, -0.004718360826589155855},
                 Row{-0.4, 19.5, 0.5899788074440355487}, Row{0.0, 1.0, 0.7651976865579665515}}) {
    CAPTURE(r.nu);
    CAPTURE(r.z);
    CHECK(std::fabs(bessel_clifford<double>(r.nu, r.z) - r.v) < 1e-13);
    CHECK(double(std::fabs(double(bessel_clifford<quad>(r.nu, r.z)) - r.v)) < 1e-15);
  }
}

TEST_CASE("bessel_clifford against the Boost oracle on a grid") {
  double worst = 0;
  for (double nu : {-0.7, -0.3, 0.0, 0.25, 1.0, 1.5, 3.0})
    for (double z = 0.05; z <= 20.0; z += 0.37) {
      const double ref = double(oracle::bessel_clifford(nu, z));
      worst = std::max(worst, std::fabs(bessel_clifford<double>(nu, z) - ref));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("bessel_clifford rejects orders at or below -1") {
  CHECK_THROWS_AS(bessel_clifford<double>(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_clifford<double>(-2.5, 1.0), DomainError);
}

TEST_CASE("bessel_clifford params overload") {
  BesselCliffordParams p;
  p.order = -0.5;
  CHECK(bessel_clifford(p, 2.0) == Approx(std::cos(2.0)).epsilon(1e-14));
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer<double>(7.3, 0) == 1.0);
  CHECK(pochhammer<double>(0.5, 2) == 0.75);
  CHECK(pochhammer<double>(1.0, 5) == 120.0);
  CHECK_THROWS_AS(pochhammer<double>(1.0, -1), DomainError);
}

TEST_CASE("odd double factorial") {
  CHECK(double_factorial_odd(0) == 1);
  CHECK(double_factorial_odd(1) == 1);
  CHECK(double_factorial_odd(3) == 15);
  CHECK(double_factorial_odd(5) == 945);
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("sphere area constant") {
  CHECK(sphere_area_const<double>(1) == Approx(2.0).epsilon(1e-15));
  CHECK(sphere_area_const<double>(2) == Approx(2 * std::numbers::pi).epsilon(1e-15));
  CHECK(sphere_area_const<double>(3) == Approx(4 * std::numbers::pi).epsilon(1e-15));
  for (int n = 1; n <= 9; ++n) CHECK(sphere_area_const<double>(n) == Approx(double(oracle::sphere_area(n))).epsilon(1e-14));
  CHECK_THROWS_AS(sphere_area_const<double>(0), DomainError);
}

TEST_CASE("printed solution constants") {
  const double pi = std::numbers::pi;
  auto c3 = solution_consts(3, 1.0);
  CHECK(c3.gamma_n == Approx(1 / (4 * pi)).epsilon(1e-15));
  CHECK(c3.gamma_bar_n == Approx(1 / (4 * pi)).epsilon(1e-15));
  CHECK(solution_consts(2, 0.7).gamma_tilde_n == Approx(1 / (4 * pi)).epsilon(1e-15));
  const double w5 = sphere_area_const<double>(5);
  CHECK(solution_consts(5, 0.5).gamma_bar_n == Approx(1 / (3 * w5 * std::sqrt(pi))).epsilon(1e-14));
  CHECK_THROWS_AS(solution_consts(1, 1.0), DomainError);
  CHECK_THROWS_AS(solution_consts(3, 0.0), DomainError);
}

TEST_CASE("gamma helpers") {
  CHECK(gamma_fn<double>(5.0) == Approx(24.0).epsilon(1e-14));
  CHECK(gamma_ratio<double>(150.5, 150.0) == Approx(std::exp(std::lgamma(150.5) - std::lgamma(150.0))).epsilon(1e-12));
  CHECK(double(gamma_fn<quad>(0.5)) == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
}
