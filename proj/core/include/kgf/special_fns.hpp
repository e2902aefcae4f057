#pragma once

#include <cstdint>
#include <string>

#include "kgf/errors.hpp"
#include "kgf/real.hpp"

namespace kgf {

struct BesselCliffordParams {
  double order = 0.0;
  int max_terms = 200;
  double term_tolerance = 0.0;  // 0 selects machine epsilon of the evaluation type
};

inline constexpr double kBesselCliffordMaxArg = 50.0;

namespace detail {

template <Real Acc>
Acc bessel_clifford_series(Acc nu, Acc z, int max_terms, Acc tol) {
  const Acc w = -z * z / 4;
  Acc term = 1, sum = 1;
  for (int k = 0; k < max_terms; ++k) {
    term *= w / ((nu + Acc(k + 1)) * Acc(k + 1));
    sum += term;
    if (term == 0 || num::abs(term) <= tol * num::abs(sum)) return sum;
  }
  throw AccuracyError("bessel_clifford: series did not converge within " + std::to_string(max_terms) +
                      " terms");
}

}  // namespace detail

// normalized Bessel function Gamma(nu+1) (z/2)^-nu J_nu(z) = 0F1(nu+1; -z^2/4)
template <Real T>
T bessel_clifford(T nu, T z, int max_terms = 200, T term_tolerance = T(0)) {
  if (!(nu > T(-1))) throw DomainError("bessel_clifford: order must exceed -1");
  if (z == 0) return T(1);
  if (num::abs(z) > T(kBesselCliffordMaxArg))
    throw AccuracyError("bessel_clifford: |z| above documented range 50");
  if constexpr (std::same_as<T, double>) {
    // large arguments cancel heavily; sum those in quad
    if (std::fabs(z) <= 4.0) {
      T tol = term_tolerance > 0 ? term_tolerance : num::epsilon<double>() / 4;
      return detail::bessel_clifford_series<double>(nu, z, max_terms, tol);
    }
    quad tol = term_tolerance > 0 ? quad(term_tolerance) : quad(num::epsilon<double>()) * quad(1e-3);
    return static_cast<double>(detail::bessel_clifford_series<quad>(nu, z, max_terms, tol));
  } else {
    T tol = term_tolerance > 0 ? term_tolerance : num::epsilon<quad>() / 4;
    return detail::bessel_clifford_series<quad>(nu, z, max_terms, tol);
  }
}

inline double bessel_clifford(const BesselCliffordParams& p, double z) {
  return bessel_clifford<double>(p.order, z, p.max_terms, p.term_tolerance);
}

// rising factorial (x)_k
template <Real T>
T pochhammer(T x, int k) {
  if (k < 0) throw DomainError("pochhammer: negative k");
  T r = 1;
  for (int i = 0; i < k; ++i) r *= x + T(i);
  return r;
}

template <Real T>
T gamma_fn(T x) {
  return num::tgamma(x);
}

// Gamma(a)/Gamma(b), via log-gamma for large positive arguments
template <Real T>
T gamma_ratio(T a, T b) {
  if (a > T(100) && b > T(100)) return num::exp(num::lgamma(a) - num::lgamma(b));
  return num::tgamma(a) / num::tgamma(b);
}

// (2p-1)!!, empty product for p = 0
std::uint64_t double_factorial_odd(int p);

// product of the odd numbers <= q (1 when q < 1)
std::uint64_t odd_product_upto(int q);
// product of the even numbers <= q (1 when q < 2)
std::uint64_t even_product_upto(int q);

std::uint64_t binomial(int n, int k);

// surface area of the unit sphere in R^n
template <Real T>
T sphere_area_const(int n) {
  if (n < 1) throw DomainError("sphere_area_const: n must be >= 1");
  return T(2) * num::pow(num::pi<T>(), T(n) / 2) / num::tgamma(T(n) / 2);
}

struct SolutionConsts {
  double gamma_n;
  double gamma_bar_n;
  double gamma_tilde_n;
};

// the three leading constants as printed for the explicit formulas
SolutionConsts solution_consts(int n, double alpha);

// leading constants actually used by the solvers (see docs/normalization.md)
template <Real T>
T polywave_const_odd(int n) {
  return T(1) / (T(odd_product_upto(n - 2)) * sphere_area_const<T>(n));
}

template <Real T>
T polywave_const_even(int n) {
  return T(2) * num::sqrt(num::pi<T>()) /
         (sphere_area_const<T>(n + 1) * T(odd_product_upto(n - 1)));
}

template <Real T>
T kgf_const_odd(int n, T alpha) {
  return T(2) * polywave_const_odd<T>(n) / num::tgamma(alpha);
}

template <Real T>
T kgf_const_even(int n, T alpha) {
  return polywave_const_even<T>(n) / num::tgamma(alpha + T(0.5));
}

}  // namespace kgf
