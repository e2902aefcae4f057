#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "kgf/errors.hpp"
#include "kgf/fd.hpp"
#include "kgf/quadrature.hpp"
#include "kgf/real.hpp"
#include "kgf/special_fns.hpp"

namespace kgf {

using Rational = boost::multiprecision::cpp_rational;

struct EKParams {
  double eta = -0.5;
  double alpha = 1.0;
  double lambda = 0.0;

  void validate() const {
    if (!(alpha > 0)) throw DomainError("EK operator: alpha must be > 0");
    if (!(eta >= -0.5)) throw DomainError("EK operator: eta must be >= -1/2");
  }
};

// J_lambda(eta, alpha) f(x) = 2 x^{-2(alpha+eta)}/Gamma(alpha) int_0^x t^{2eta+1} (x^2-t^2)^{alpha-1}
//   Jbar_{alpha-1}(lambda sqrt(x^2-t^2)) f(t) dt,  evaluated with t = x s
template <Real T, class F>
T lowndes_apply(F&& f, const EKParams& p, T x, const RadialRule<T>& radial) {
  p.validate();
  if (!(x > 0)) throw DomainError("lowndes_apply: x must be > 0");
  if (radial.beta != p.alpha - 1 || radial.c != 2 * p.eta + 1)
    throw ContractError("lowndes_apply: rule must carry (1-s^2)^(alpha-1) s^(2eta+1)");
  const T lam = T(p.lambda), nu = T(p.alpha) - 1;
  T s = 0;
  for (int i = 0; i < radial.order; ++i) {
    T si = radial.nodes[i];
    T kern = p.lambda == 0 ? T(1) : bessel_clifford<T>(nu, lam * x * num::sqrt(1 - si * si));
    s += radial.weights[i] * kern * f(x * si);
  }
  T r = 2 * s / num::tgamma(T(p.alpha));
  if (!num::isfinite(r)) throw AccuracyError("lowndes_apply: non-finite quadrature result");
  return r;
}

template <Real T, class F>
T lowndes_apply(F&& f, const EKParams& p, T x, int order = 64) {
  p.validate();
  return lowndes_apply<T>(f, p, x, radial_rule<T>(p.alpha - 1, order, 2 * p.eta + 1));
}

template <Real T, class F>
T erdelyi_kober_apply(F&& f, double eta, double alpha, T x, const RadialRule<T>& radial) {
  return lowndes_apply<T>(f, EKParams{eta, alpha, 0.0}, x, radial);
}

template <Real T, class F>
T erdelyi_kober_apply(F&& f, double eta, double alpha, T x, int order = 64) {
  return lowndes_apply<T>(f, EKParams{eta, alpha, 0.0}, x, order);
}

// [B_eta]^m f(x) by nested second order central differences (with optional shift B + shift)
template <Real T, class F>
T bessel_op_apply(F&& f, T eta, int m, T x, T h, T shift = T(0)) {
  if (m < 0) throw DomainError("bessel_op_apply: m must be >= 0");
  if (m == 0) return f(x);
  if (!(h > 0) || !(x > T(m) * h)) throw ContractError("bessel_op_apply: need x > m h");
  std::vector<T> g(2 * m + 1);
  for (int i = -m; i <= m; ++i) g[i + m] = f(x + T(i) * h);
  const T drift = 2 * eta + 1;
  for (int level = 1; level <= m; ++level) {
    std::vector<T> ng(g.size(), T(0));
    for (int i = -m + level; i <= m - level; ++i) {
      T xi = x + T(i) * h;
      T d2 = (g[i + m + 1] - 2 * g[i + m] + g[i + m - 1]) / (h * h);
      T d1 = (g[i + m + 1] - g[i + m - 1]) / (2 * h);
      ng[i + m] = d2 + drift / xi * d1 + shift * g[i + m];
    }
    g.swap(ng);
  }
  return g[m];
}

// exact rational constants of the derivative formulas for the Lowndes operator
struct RecurrenceTable {
  int m_max = 0;
  std::vector<std::vector<Rational>> a;  // a[m][j], 0 <= j <= m
  std::vector<std::vector<Rational>> b;

  Rational A(int m, int j) const;
  Rational B(int m, int j) const;
};

RecurrenceTable recurrence_constants(int m_max);

// (1/r d/dr)^{p-1} (r^{2p-1} w) = sum_j A_j^p r^{j+1} w^{(j)}
std::vector<Rational> lemma1_constants(int p);

struct RelationCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

std::vector<RelationCheck> check_recurrence_relations(const RecurrenceTable& t);

// ---- identity checks ----

enum class TestFunctionKind { cosine, cosine_minus_one, gaussian };

// even entire test functions with exact Bessel-operator powers
struct EvenTestFunction {
  TestFunctionKind kind = TestFunctionKind::cosine;
  double a = 1.0;  // frequency, or decay rate for the gaussian

  std::string describe() const;
  quad value(quad t) const;
  quad derivative(quad t) const;
  // [B_eta]^m f(t) from the Taylor series
  quad bessel_power(double eta, int m, quad t) const;
};

struct IdentityLadder {
  std::string name;
  std::vector<double> h;
  std::vector<double> gap;
  double order = 0.0;
  double value = 0.0;  // for limit checks: the measured discrepancy
  double tolerance = 0.0;
  bool pass = false;
};

// slope of log(err) against log(h), least squares
double estimate_order(const std::vector<double>& h, const std::vector<double>& err);
// fills order/value/pass from the recorded (h, gap) pairs
void grade_ladder(IdentityLadder& L, double expected_order = 2.0, double tolerance = 0.3);

IdentityLadder theorem1_ladder(const EvenTestFunction& f, const EKParams& p, int m, double x,
                               const std::vector<double>& hs, int radial_order = 64);
IdentityLadder corollary2_ladder(double a, double alpha, double lambda, double x, const std::vector<double>& hs,
                                 int radial_order = 64);
IdentityLadder theorem6_check(const EvenTestFunction& f, const EKParams& p, double x0, int radial_order = 64);
IdentityLadder ek_unit_check(double eta, double alpha, double x, int radial_order = 64);

// d^{2m(+1)}/dx^{2m(+1)} J f against sum_j a_mj x^2j J(eta, alpha+m+j) (B_eta - lambda^2)^{m+j} f
// (b_mj and the shifted indices for the odd order)
IdentityLadder derivative_formula_ladder(const EvenTestFunction& f, const EKParams& p, int m, bool odd, double x,
                                         const std::vector<double>& hs, const RecurrenceTable& table,
                                         int radial_order = 64);

std::vector<IdentityLadder> operator_identity_suite(int radial_order = 64);

}  // namespace kgf
