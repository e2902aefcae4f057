#include "doctest.h"
#include "kgf/quadrature.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace kgf;
using doctest::Approx;

namespace {
double integrate(const RadialRule<double>& r, auto&& f) {
  double s = 0;
  for (int i = 0; i < r.order; ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}
}  // namespace

TEST_CASE("radial rule mass matches the Beta integral") {
  // weight (1-s^2)^beta s^c on (0,1)
  auto& r = radial_rule<double>(-0.3, 24, 1.0);
  CHECK(integrate(r, [](double) { return 1.0; }) == Approx(1 / 1.4).epsilon(1e-14));
  CHECK(radial_weight_mass(-0.3, 1.0) == Approx(1 / 1.4).epsilon(1e-14));
}

TEST_CASE("radial rule with beta = 0, c = 0 is Gauss-Legendre on (0,1)") {
  auto r = make_radial_rule<double>(0.0, 10, 0.0);
  CHECK(integrate(r, [](double s) { return std::exp(s); }) == Approx(std::exp(1.0) - 1).epsilon(1e-14));
}

TEST_CASE("radial rule is exact for polynomials of degree 2*order-1") {
  const int order = 8;
  auto r = make_radial_rule<double>(0.4, order, 2.0);
  for (int d : {0, 3, 7, 2 * order - 1}) {
    CAPTURE(d);
    const double ref = double(oracle::radial_moment(1.4L, 0.5L, [d](oracle::Ld s) { return std::pow(s, d); }));
    CHECK(integrate(r, [d](double s) { return std::pow(s, d); }) == Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("radial rule nodes are interior and weights positive") {
  for (double beta : {-0.5, -0.25, 0.0, 1.5})
    for (double c : {0.0, 1.0, 2.0}) {
      auto& r = radial_rule<quad>(beta, 32, c);
      for (int i = 0; i < r.order; ++i) {
        CHECK(r.nodes[i] > 0);
        CHECK(r.nodes[i] < 1);
        CHECK(r.weights[i] > 0);
      }
    }
}

TEST_CASE("radial rule in quad integrates a smooth function to quad accuracy") {
  auto& r = radial_rule<quad>(-0.5, 40, 0.0);
  quad s = 0;
  for (int i = 0; i < r.order; ++i) s += r.weights[i] * cosq(r.nodes[i]);
  // int_0^1 cos(s)/sqrt(1-s^2) ds = (pi/2) J_0(1)
  const long double ref = oracle::pi() / 2 * boost::math::cyl_bessel_j(0, 1.0L);
  CHECK(std::fabs(double(s - ref)) < 1e-17);
}

TEST_CASE("radial rule cache returns the same object") {
  auto& a = radial_rule<double>(0.25, 16, 2.0);
  auto& b = radial_rule<double>(0.25, 16, 2.0);
  CHECK(&a == &b);
}

TEST_CASE("bad rule requests") {
  CHECK_THROWS_AS(make_radial_rule<double>(-1.0, 8, 0.0), DomainError);
  CHECK_THROWS_AS(make_radial_rule<double>(0.0, 0, 0.0), DomainError);
  CHECK_THROWS_AS(make_sphere_rule<double>(4, 8), DomainError);
}

TEST_CASE("sphere rule in one dimension") {
  auto r = make_sphere_rule<double>(1, 5);
  REQUIRE(r.size() == 2);
  CHECK(r.weights[0] + r.weights[1] == 2.0);
  CHECK(r.dirs[0] == -1.0);
  CHECK(r.dirs[1] == 1.0);
}

TEST_CASE("sphere rule moments") {
  auto r3 = make_sphere_rule<double>(3, 4);
  double s = 0, one = 0;
  for (std::size_t i = 0; i < r3.size(); ++i) {
    s += r3.weights[i] * r3.direction(i)[0] * r3.direction(i)[0];
    one += r3.weights[i];
  }
  CHECK(s == Approx(4 * std::numbers::pi / 3).epsilon(1e-14));
  auto r2 = make_sphere_rule<double>(2, 3);
  double t = 0;
  for (std::size_t i = 0; i < r2.size(); ++i) t += r2.weights[i];
  CHECK(t == Approx(2 * std::numbers::pi).epsilon(1e-15));
  CHECK(one == Approx(4 * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("sphere mean of constant and linear fields") {
  auto c = FieldCombination::single(SmoothField(Polynomial{3, {{2.5, {0, 0, 0}}}}));
  auto lin = FieldCombination::single(SmoothField(Polynomial{3, {{1.0, {1, 0, 0}}}}));
  const std::vector<double> x{0.3, -1.1, 2.0};
  auto& rule = sphere_rule<double>(3, 8);
  CHECK(sphere_mean<double>(c, x, 0.9, rule) == Approx(2.5).epsilon(1e-14));
  CHECK(sphere_mean<double>(lin, x, 0.9, rule) == Approx(0.3).epsilon(1e-14));
  CHECK_THROWS_AS(sphere_mean<double>(c, x, -0.1, rule), DomainError);
}

TEST_CASE("sphere mean of a plane wave matches adaptive integration") {
  auto f = FieldCombination::single(SmoothField(PlaneWave{{1.0, 2.0, 0.5}, 1.0, 0.0}));
  const std::vector<double> x{0.2, -0.1, 0.4};
  const double frozen = 0.6107167915453732544;  // nested Gauss-Kronrod in long double
  CHECK(sphere_mean<double>(f, x, 0.7, sphere_rule<double>(3, 32)) == Approx(frozen).epsilon(1e-13));
  SphereMeans<double> an(3, SphereMode::analytic);
  CHECK(an(f, std::span<const double>(x), 0.7) == Approx(frozen).epsilon(1e-14));
  // at the origin the mean is sin(|k| r)/(|k| r)
  const std::vector<double> o{0, 0, 0};
  const double kr = std::sqrt(5.25) * 0.7;
  CHECK(sphere_mean<double>(f, o, 0.7, sphere_rule<double>(3, 32)) == Approx(std::sin(kr) / kr).epsilon(1e-13));
}

TEST_CASE("sphere quadrature of a gaussian against the oracle") {
  auto f = FieldCombination::single(SmoothField(Gaussian{{0.1, 0.0, -0.2}, 0.8, 1.0}));
  const oracle::Ld x[3] = {0.3L, 0.2L, 0.1L};
  const double ref = double(oracle::sphere_mean3(
      [](oracle::Ld a, oracle::Ld b, oracle::Ld c) {
        return std::exp(-((a - 0.1L) * (a - 0.1L) + b * b + (c + 0.2L) * (c + 0.2L)) / 0.64L);
      },
      x, 0.6L));
  const std::vector<double> xd{0.3, 0.2, 0.1};
  CHECK(sphere_mean<double>(f, xd, 0.6, sphere_rule<double>(3, 32)) == Approx(ref).epsilon(1e-12));
}

TEST_CASE("ball kernel integral of one") {
  // f = 1, lambda = 0, beta = alpha - 1, n = 3: omega_3 t^(2 alpha + 1) B(alpha, 3/2) / 2
  const double alpha = 0.8, t = 1.3;
  auto one = FieldCombination::single(SmoothField(Polynomial{3, {{1.0, {0, 0, 0}}}}));
  const std::vector<double> x{0.0, 0.5, 1.0};
  const double beta = alpha - 1;
  const double got = ball_kernel_integral<double>(one, x, t, beta, 0.0, 0.0, radial_rule<double>(beta, 32, 2.0),
                                                  sphere_rule<double>(3, 8));
  const double ref = 4 * std::numbers::pi * std::pow(t, 2 * alpha + 1) *
                     double(boost::math::beta(oracle::Ld(alpha), oracle::Ld(1.5))) / 2;
  CHECK(got == Approx(ref).epsilon(1e-13));
}

TEST_CASE("ball kernel integral of an odd field vanishes") {
  const std::vector<double> x{0.4, -0.3, 0.2};
  auto f = FieldCombination::single(SmoothField(Polynomial{3, {{1.0, {1, 0, 0}}, {-0.4, {0, 0, 0}}}}));
  const double v = ball_kernel_integral<double>(f, x, 0.9, 0.5, 1.5, 0.7, radial_rule<double>(0.5, 24, 2.0),
                                                sphere_rule<double>(3, 8));
  CHECK(std::fabs(v) < 1e-14);
}

TEST_CASE("ball kernel integral: radial order doubling converges") {
  const std::vector<double> x{0.1, 0.2, 0.3};
  auto f = FieldCombination::single(SmoothField(PlaneWave{{0.6, 0.8, 0.0}, 1.0, 0.2}));
  SphereMeans<double> an(3, SphereMode::analytic);
  const double a = ball_kernel_integral<double>(f, x, 2.0, -0.25, 0.75, 1.0, radial_rule<double>(-0.25, 32, 2.0), an);
  const double b = ball_kernel_integral<double>(f, x, 2.0, -0.25, 0.75, 1.0, radial_rule<double>(-0.25, 64, 2.0), an);
  CHECK(std::fabs(a - b) <= 1e-10 * std::fabs(b));
}

TEST_CASE("ball kernel integral contract checks") {
  const std::vector<double> x{0, 0, 0};
  auto f = FieldCombination::single(SmoothField(PlaneWave{{1, 0, 0}, 1, 0}));
  auto& s = sphere_rule<double>(3, 8);
  CHECK_THROWS_AS(ball_kernel_integral<double>(f, x, 1.0, 0.5, 0.0, 0.0, radial_rule<double>(0.25, 8, 2.0), s),
                  ContractError);
  CHECK_THROWS_AS(ball_kernel_integral<double>(f, x, 0.0, 0.5, 0.0, 0.0, radial_rule<double>(0.5, 8, 2.0), s),
                  DomainError);
}

TEST_CASE("gauss legendre") {
  auto& g = gauss_legendre<double>(12);
  double s = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 22);
  CHECK(s == Approx(2.0 / 23).epsilon(1e-13));
}
