#include "doctest.h"
#include "kgf/kgf_solver.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace kgf;
using doctest::Approx;

namespace {

FieldCombination wave(std::vector<double> k, double amp = 1.0, double phase = 0.0) {
  return FieldCombination::single(SmoothField(PlaneWave{std::move(k), amp, phase}));
}

ProblemSpec phi_spec(int n, int m, double gamma, double lambda, std::vector<FieldCombination> phi) {
  ProblemSpec s;
  s.n = n;
  s.m = m;
  s.gamma = gamma;
  s.lambda = lambda;
  s.phi = std::move(phi);
  return s;
}

double dotp(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("separable solution, odd and even dimension") {
  for (int n : {3, 2}) {
    CAPTURE(n);
    std::vector<double> k = n == 3 ? std::vector<double>{0.6, 0.8, 0.0} : std::vector<double>{0.6, 0.8};
    std::vector<double> x = n == 3 ? std::vector<double>{0.3, -0.2, 0.5} : std::vector<double>{0.3, -0.2};
    auto spec = phi_spec(n, 1, 0.5, 1.0, {wave(k)});
    SolutionEvaluator<double> u(spec);
    for (double t : {0.1, 0.9, 1.7, 3.0}) {
      const double ref = double(oracle::bessel_clifford(0.5L, std::sqrt(2.0L) * t)) * std::cos(dotp(k, x));
      CHECK(u(x, t) == Approx(ref).epsilon(n == 3 ? 1e-9 : 1e-8));
    }
    CHECK_THROWS_AS(n == 3 ? solve_point_even<double>(spec, x, 1.0) : solve_point_odd<double>(spec, x, 1.0),
                    ContractError);
  }
}

TEST_CASE("frozen separable value") {
  // bar J_{1/2}(sqrt(2) * 1.7) from the Boost oracle
  auto spec = phi_spec(3, 1, 0.5, 1.0, {wave({0.0, 0.0, 1.0})});
  const std::vector<double> x{0, 0, 0};
  CHECK(solve_point_odd<double>(spec, std::span<const double>(x), 1.7) == Approx(0.2796763402315075116).epsilon(1e-10));
}

TEST_CASE("two iterations with plane-wave data against the series oracle") {
  const std::vector<double> k{1.0, 0.0, 0.5};
  auto spec = phi_spec(3, 2, 0.25, 0.5, {wave(k), wave(k, 0.3)});
  const std::vector<double> x{0.1, 0.2, 0.3};
  SolutionEvaluator<double> u(spec);
  // frozen: y(1.1) with y(0) = 1, y''(0) = 0.3, mu^2 = 1.25 + 0.25
  const double mu2 = 1.25 + 0.25;
  for (double t : {0.4, 1.1, 2.2}) {
    const double ref = double(oracle::phi_profile(0.25L, mu2, 2, 1.0L, 0.3L, t)) * std::cos(dotp(k, x));
    CHECK(u(x, t) == Approx(ref).epsilon(1e-8));
  }
  CHECK(double(oracle::phi_profile(0.25L, 1.25L, 2, 1.0L, 0.3L, 1.1L)) == Approx(1.129209251221783156).epsilon(1e-15));
}

TEST_CASE("second-kind data against the series oracle") {
  const std::vector<double> k{0.0, 0.6, 0.8};
  ProblemSpec spec;
  spec.n = 3;
  spec.m = 1;
  spec.gamma = -0.3;
  spec.lambda = 0.5;
  spec.family = DataFamily::psi;
  spec.psi = {wave(k)};
  const std::vector<double> x{0.5, 0.5, -0.5};
  for (Method m : {Method::direct, Method::complement}) {
    SolutionEvaluator<double> u(spec, m);
    for (double t : {0.2, 0.9, 2.0}) {
      const double ref = double(oracle::psi_profile(-0.3L, 1.25L, 1.0L, t)) * std::cos(dotp(k, x));
      CHECK(u(x, t) == Approx(ref).epsilon(1e-8));
    }
  }
  CHECK(double(oracle::psi_profile(-0.3L, 1.25L, 1.0L, 0.9L)) == Approx(1.276269089372583351).epsilon(1e-15));
}

TEST_CASE("second-kind routes agree for two iterations") {
  ProblemSpec spec;
  spec.n = 3;
  spec.m = 2;
  spec.gamma = -0.2;
  spec.lambda = 0.7;
  spec.family = DataFamily::psi;
  spec.psi = {wave({0.6, 0.8, 0}), wave({0, 0, 1}, 0.5, 0.3)};
  const std::vector<double> x{0.1, -0.3, 0.2};
  for (double t : {0.3, 1.4}) {
    const double a = solve_psi_problem<double>(spec, x, t, Method::direct);
    const double b = solve_psi_problem<double>(spec, x, t, Method::complement);
    CHECK(std::fabs(a - b) < 1e-9);
  }
}

TEST_CASE("zero second-kind data gives zero") {
  ProblemSpec spec;
  spec.gamma = -0.25;
  spec.family = DataFamily::psi;
  spec.psi = {parse_field_spec("zero", 3)};
  const std::vector<double> x{0.1, 0.1, 0.1};
  CHECK(solve_psi_problem<double>(spec, x, 0.8) == 0.0);
}

TEST_CASE("lambda = 0: direct formula equals the EK transform of the wave solution") {
  auto spec = phi_spec(3, 1, 0.8, 0.0, {wave({0.5, 0.5, 0.5}, 1, 0.4)});
  const std::vector<double> x{0.2, 0.0, -0.7};
  for (double t : {0.5, 1.5, 2.5})
    CHECK(std::fabs(solve_point_odd<double>(spec, x, t) - solve_point_transmutation<double>(spec, x, t)) < 1e-10);
}

TEST_CASE("two paths agree with lambda > 0 and mixed data") {
  auto phi0 = wave({1, 0, 0});
  phi0.add(FieldCombination::single(SmoothField(SineProduct{{0.5, 0.5, 0.0}, 0.5})));
  auto spec = phi_spec(3, 2, 0.25, 0.5, {phi0, wave({0, 1, 0}, 0.3, 0.2)});
  SolverOptions o;
  o.radial_order = 40;
  o.sphere_order = 16;
  const std::vector<double> x{0.1, 0.2, 0.3};
  CHECK(std::fabs(solve_point_odd<double>(spec, x, 1.0, o) - solve_point_transmutation<double>(spec, x, 1.0, o)) <
        1e-8);
}

TEST_CASE("initial value and argument checks") {
  auto spec = phi_spec(3, 1, 0.5, 1.0, {wave({1, 0, 0}, 2)});
  SolutionEvaluator<double> u(spec);
  const std::vector<double> x{0.3, 0, 0};
  CHECK(u(x, 0.0) == Approx(2 * std::cos(0.3)));
  CHECK_THROWS_AS(u(x, -0.1), DomainError);
  const std::vector<double> bad{0.3, 0};
  CHECK_THROWS_AS(u(bad, 1.0), ContractError);
  CHECK_THROWS_AS(SolutionEvaluator<double>(spec, Method::complement), ContractError);
}

TEST_CASE("constant scale hook is linear") {
  auto spec = phi_spec(3, 1, 0.5, 1.0, {wave({1, 0, 0})});
  SolverOptions o;
  const std::vector<double> x{0.3, 0, 0};
  const double a = solve_point_odd<double>(spec, x, 1.0, o);
  o.constant_scale = 1.5;
  CHECK(solve_point_odd<double>(spec, x, 1.0, o) == Approx(1.5 * a).epsilon(1e-14));
}

TEST_CASE("quad and double agree") {
  auto spec = phi_spec(3, 2, 0.25, 0.5, {wave({1, 0, 0}), wave({0, 1, 0}, 0.3)});
  const std::vector<double> x{0.1, 0.2, 0.3};
  const std::vector<quad> xq{0.1, 0.2, 0.3};
  const double d = solve_point_odd<double>(spec, x, 1.2);
  const double q = double(solve_point_odd<quad>(spec, std::span<const quad>(xq), quad(1.2)));
  CHECK(std::fabs(d - q) < 1e-9);
}

TEST_CASE("problem validation") {
  auto ok = phi_spec(3, 1, 0.5, 1.0, {wave({1, 0, 0})});
  CHECK_NOTHROW(ok.validate());
  auto s = ok;
  s.n = 1;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = ok;
  s.m = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = ok;
  s.gamma = -0.5;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = ok;
  s.lambda = std::nan("");
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = ok;
  s.phi.push_back(wave({0, 1, 0}));
  CHECK_THROWS(s.validate());
  s = ok;
  s.psi = {wave({1, 0, 0})};
  CHECK_THROWS_AS(s.validate(), ContractError);
  s = ok;
  s.phi = {wave({1, 0})};
  CHECK_THROWS(s.validate());

  ProblemSpec p;
  p.family = DataFamily::psi;
  p.gamma = 0.0;  // alpha = 1/2
  p.psi = {wave({1, 0, 0})};
  try {
    p.validate();
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("alpha < 1/2") != std::string::npos);
  }
}

TEST_CASE("method names") {
  CHECK(parse_method("direct") == Method::direct);
  CHECK(parse_method("transmutation") == Method::transmutation);
  CHECK(parse_method("complement") == Method::complement);
  CHECK(to_string(Method::complement) == "complement");
  CHECK(to_string(DataFamily::psi) == "psi");
  CHECK_THROWS_AS(parse_method("kirchhoff"), ParseError);
}
