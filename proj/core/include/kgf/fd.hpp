#pragma once

#include <vector>

#include "kgf/errors.hpp"
#include "kgf/quadrature.hpp"
#include "kgf/real.hpp"
#include "kgf/special_fns.hpp"

namespace kgf {

struct SolverOptions {
  int radial_order = 64;
  int sphere_order = 32;
  SphereMode sphere_mode = SphereMode::quadrature;
  // relative step of the outer t-derivatives; 0 picks a precision dependent default
  double fd_rel_step = 0.0;
  bool richardson = true;
  // test hook: multiplies the leading constant of the direct formulas
  double constant_scale = 1.0;
};

// d^p G / dtau^p by the central stencil sum_i (-1)^i C(p,i) G(tau + (p/2 - i) h) / h^p
template <Real T, class F>
T central_derivative(F&& G, T tau, int p, T h) {
  if (p == 0) return G(tau);
  T s = 0;
  for (int i = 0; i <= p; ++i) {
    T off = (T(p) / 2 - T(i)) * h;
    T c = T(binomial(p, i));
    s += ((i % 2) ? -c : c) * G(tau + off);
  }
  return s / num::ipow(h, p);
}

// central derivative with one Richardson level (h, h/2)
template <Real T, class F>
T richardson_derivative(F&& G, T tau, int p, T h, bool richardson = true) {
  T d1 = central_derivative<T>(G, tau, p, h);
  if (!richardson || p == 0) return d1;
  T d2 = central_derivative<T>(G, tau, p, h / 2);
  return (4 * d2 - d1) / 3;
}

template <Real T>
T default_fd_rel_step(int p, double requested) {
  if (requested > 0) return T(requested);
  if constexpr (std::same_as<T, double>) {
    if (p <= 1) return T(1e-4);
  }
  return num::pow(num::epsilon<T>(), T(1) / T(p + 4));
}

// [d/dt]^{with_dt} (1/t d/dt)^q inner(t), evaluated in tau = t^2 where 1/t d/dt = 2 d/dtau
template <Real T, class F>
T outer_time_operator(F&& inner, T t, int q, bool with_dt, double rel_step = 0.0, bool richardson = true) {
  if (q == 0 && !with_dt) return inner(t);
  const int p = q + (with_dt ? 1 : 0);
  const T tau = t * t;
  const T h = default_fd_rel_step<T>(p, rel_step) * tau;
  auto G = [&](T s) { return inner(num::sqrt(s)); };
  T d = richardson_derivative<T>(G, tau, p, h, richardson);
  T r = num::ipow(T(2), q) * d;
  return with_dt ? 2 * t * r : r;
}

// polynomial extrapolation to 0 of samples (x_i, y_i) by Neville's scheme
template <Real T>
T neville_at_zero(std::vector<T> x, std::vector<T> y) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) throw ContractError("neville_at_zero: bad sample sizes");
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      y[i] = (x[i] * y[i - 1] - x[i - k] * y[i]) / (x[i] - x[i - k]);
      if (i == k) break;
    }
  return y[n - 1];
}

// rules and step policy shared by the solvers
template <Real T>
class NumericContext {
 public:
  NumericContext(int n, SolverOptions opts)
      : n_(n), opts_(opts), means_(n, opts.sphere_mode, opts.sphere_order) {}

  int dim() const { return n_; }
  const SolverOptions& options() const { return opts_; }
  const SphereMeans<T>& means() const { return means_; }
  // rule for the ball weight (1-s^2)^beta s^(n-1)
  const RadialRule<T>& ball_rule(double beta) const { return radial_rule<T>(beta, opts_.radial_order, n_ - 1); }
  const RadialRule<T>& rule(double beta, double c) const { return radial_rule<T>(beta, opts_.radial_order, c); }

  template <class F>
  T outer(F&& inner, T t, int q, bool with_dt) const {
    return outer_time_operator<T>(inner, t, q, with_dt, opts_.fd_rel_step, opts_.richardson);
  }

  T ball(const FieldCombination& f, std::span<const T> x, T t, double beta, T nu, T lambda) const {
    return ball_kernel_integral<T>(f, x, t, beta, nu, lambda, ball_rule(beta), means_);
  }

 private:
  int n_;
  SolverOptions opts_;
  SphereMeans<T> means_;
};

}  // namespace kgf
