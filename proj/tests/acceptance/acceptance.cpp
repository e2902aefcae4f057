// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "kgf/kgf.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace kgf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s | %s | %.2fs\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FieldCombination wave(std::vector<double> k, double amp = 1.0, double phase = 0.0) {
  return FieldCombination::single(SmoothField(PlaneWave{std::move(k), amp, phase}));
}

ProblemSpec separable_problem(int n) {
  ProblemSpec s;
  s.n = n;
  s.m = 1;
  s.gamma = 0.5;
  s.lambda = 1.0;
  s.phi = {wave(n == 3 ? std::vector<double>{0.6, 0.8, 0.0} : std::vector<double>{0.6, 0.8})};
  return s;
}

ProblemSpec two_path_problem() {
  ProblemSpec s;
  s.n = 3;
  s.m = 2;
  s.gamma = 0.25;
  s.lambda = 0.5;
  auto phi0 = wave({1.0, 0.0, 0.0});
  phi0.add(FieldCombination::single(SmoothField(SineProduct{{0.5, 0.7, 0.3}, 0.5})));
  s.phi = {phi0, wave({0.0, 0.8, 0.6}, 0.7, 0.3)};
  return s;
}

SolverOptions two_path_options() {
  SolverOptions o;
  o.radial_order = 40;
  o.sphere_order = 16;
  return o;
}

std::vector<double> probe_x(int n, int i) {
  std::vector<double> x(n, 0.0);
  x[0] = 0.37 * std::sin(1.3 * i);
  x[1] = -0.25 + 0.05 * i;
  if (n > 2) x[2] = 0.4 * std::cos(0.7 * i);
  return x;
}

Outcome separable(int n, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = separable_problem(n);
  SolverOptions o;
  o.radial_order = 64;
  o.sphere_order = 32;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const auto x = probe_x(n, i);
    const double t = 0.1 + 2.9 * i / 19.0;
    const double v = n % 2 ? solve_point_odd<double>(s, x, t, o) : solve_point_even<double>(s, x, t, o);
    double kx = 0.6 * x[0] + 0.8 * x[1];
    const double ref = double(oracle::bessel_clifford(0.5L, std::sqrt(2.0L) * t)) * std::cos(kx);
    worst = std::max(worst, std::fabs(v - ref) / std::max(std::fabs(ref), 1e-12));
  }
  const double secs = elapsed_since(t0);
  return {worst <= tol && secs <= 10.0, fmt("max relative error %.3g (tol %.0e), %.2fs of 10s", worst, tol, secs)};
}

}  // namespace

int main() {
  run(1, "separable oracle, n = 3", [] { return separable(3, 1e-6); });
  run(2, "separable oracle, n = 2", [] { return separable(2, 1e-5); });

  run(3, "two-path consistency, n = 3, m = 2", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = two_path_problem();
    const auto o = two_path_options();
    SolutionEvaluator<double> direct(s, Method::direct, o), trans(s, Method::transmutation, o);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const auto x = probe_x(3, i);
      const double t = 0.2 + 0.25 * i;
      worst = std::max(worst, std::fabs(direct(x, t) - trans(x, t)));
    }
    const double secs = elapsed_since(t0);
    return Outcome{worst <= 1e-5 && secs <= 60, fmt("max |odd - transmutation| %.3g (tol 1e-5), %.2fs of 60s", worst, secs)};
  });

  run(4, "residual convergence order", [] {
    std::vector<Probe> probes;
    for (int i = 0; i < 5; ++i) probes.push_back({probe_x(3, i), 0.6 + 0.35 * i});
    const std::vector<double> hs{4e-3, 2e-3, 1e-3};
    std::string detail;
    bool ok = true;
    for (const auto& s : {separable_problem(3), two_path_problem()}) {
      SolverOptions o = s.m == 1 ? SolverOptions{} : two_path_options();
      o.sphere_mode = SphereMode::analytic;
      auto e = std::make_shared<const SolutionEvaluator<quad>>(s, Method::direct, o);
      PointFn<quad> u = [e](std::span<const quad> x, quad t) { return (*e)(x, t); };
      auto r = residual_study<quad>(u, s, probes, hs, 0.3);
      ok = ok && r.passed();
      detail += fmt("m=%g order %.3f; ", s.m, r.estimated_order);
    }
    return Outcome{ok, detail + "expected 2.0 +- 0.3"};
  });

  run(5, "initial conditions, m = 2", [] {
    const auto s = two_path_problem();
    SolverOptions o = two_path_options();
    o.sphere_mode = SphereMode::analytic;
    auto e = std::make_shared<const SolutionEvaluator<quad>>(s, Method::direct, o);
    PointFn<quad> u = [e](std::span<const quad> x, quad t) { return (*e)(x, t); };
    auto r = check_initial_conditions<quad>(u, s, {{0.1, 0.2, 0.3}, {-0.4, 0.5, 0.0}}, 0.05, 1e-4, 3);
    double worst = 0;
    for (const auto& c : r.checks) worst = std::max(worst, c.measured);
    return Outcome{r.passed() && r.checks.size() == 8,
                   fmt("%g checks (u, d2u relative; du, d3u absolute), worst %.3g (tol 1e-4)", double(r.checks.size()), worst)};
  });

  run(6, "exact constant tables", [] {
    const auto t = recurrence_constants(8);
    bool ok = true;
    for (const auto& c : check_recurrence_relations(t)) ok = ok && c.ok;
    for (int m = 0; m < 8; ++m)
      ok = ok && t.A(m + 1, 0) == Rational(double_factorial_odd(m + 1)) / Rational(std::uint64_t(1) << (m + 1));
    for (int p = 1; p <= 4; ++p) ok = ok && lemma1_constants(p).front() == Rational(double_factorial_odd(p));
    return Outcome{ok, "recurrence relations to m = 8, leading a_(m+1)0, A_0^p for p <= 4 (rational equality)"};
  });

  run(7, "operator identity suite", [] {
    bool ok = true;
    int n = 0;
    double worst_unit = 0;
    for (const auto& L : operator_identity_suite(64)) {
      ok = ok && L.pass;
      ++n;
    }
    for (auto [eta, alpha] : {std::pair{-0.5, 0.75}, std::pair{0.0, 1.3}, std::pair{1.0, 0.5}}) {
      auto L = ek_unit_check(eta, alpha, 1.3, 64);
      worst_unit = std::max(worst_unit, L.value);
      ok = ok && L.value <= 1e-10;
    }
    return Outcome{ok, fmt("%g ladders/limits, EK unit worst gap %.3g (tol 1e-10)", n, worst_unit)};
  });

  run(8, "second-kind problem, two routes", [] {
    ProblemSpec s;
    s.n = 3;
    s.m = 1;
    s.gamma = -0.3;
    s.lambda = 0.5;
    s.family = DataFamily::psi;
    s.psi = {wave({0.0, 0.6, 0.8})};
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const auto x = probe_x(3, i);
      const double t = 0.15 + 0.3 * i;
      worst = std::max(worst, std::fabs(solve_psi_problem<double>(s, x, t, Method::direct) -
                                        solve_psi_problem<double>(s, x, t, Method::complement)));
    }
    return Outcome{worst <= 1e-5, fmt("max |direct - t^(1-2a) u1(1-a)| %.3g (tol 1e-5)", worst)};
  });

  run(9, "lambda = 0 reduction", [] {
    ProblemSpec s = separable_problem(3);
    s.lambda = 0.0;
    s.gamma = 0.8;
    s.phi = {wave({0.6, 0.8, 0.0}), };
    s.phi[0].add(FieldCombination::single(SmoothField(SineProduct{{0.3, 0.4, 1.0}, 0.5})));
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const auto x = probe_x(3, i);
      const double t = 0.2 + 0.3 * i;
      worst = std::max(worst, std::fabs(solve_point_odd<double>(s, x, t) - solve_point_transmutation<double>(s, x, t)));
    }
    return Outcome{worst <= 1e-8, fmt("max |odd - EK o poly-wave| %.3g (tol 1e-8)", worst)};
  });

  run(10, "Bessel-Clifford identities and ODE ladder", [] {
    double worst = 0;
    for (int i = 0; i <= 4000; ++i) {
      const double z = -20.0 + 40.0 * i / 4000;
      worst = std::max(worst, std::fabs(bessel_clifford<double>(-0.5, z) - std::cos(z)));
      if (z != 0) worst = std::max(worst, std::fabs(bessel_clifford<double>(0.5, z) - std::sin(z) / z));
    }
    double order_dev = 0;
    for (double nu : {-0.4, 0.0, 0.7, 2.0})
      for (double t : {0.5, 3.0, 9.5, 19.0}) {
        auto y = [nu](oracle::Ld s) { return (oracle::Ld)bessel_clifford<quad>(quad(nu), quad(s)); };
        std::vector<double> hs{1e-2, 5e-3, 2.5e-3}, r;
        for (double h : hs) r.push_back(std::fabs(double(oracle::bessel_ode_residual(y, nu, 1.0, t, h))));
        order_dev = std::max(order_dev, std::fabs(estimate_order(hs, r) - 2.0));
      }
    return Outcome{worst <= 1e-12 && order_dev <= 0.2,
                   fmt("identity gap %.3g (tol 1e-12), max |order - 2| %.3f (tol 0.2)", worst, order_dev)};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
