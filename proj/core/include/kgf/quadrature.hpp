#pragma once

#include <span>
#include <vector>

#include "kgf/errors.hpp"
#include "kgf/fields.hpp"
#include "kgf/real.hpp"
#include "kgf/special_fns.hpp"

namespace kgf {

// Gauss rule for int_0^1 g(s) (1-s^2)^beta s^c ds
template <Real T>
struct RadialRule {
  double beta = 0.0;
  double c = 0.0;
  int order = 0;
  std::vector<T> nodes;
  std::vector<T> weights;
};

// Gauss-Legendre on (-1, 1)
template <Real T>
struct GaussRule {
  std::vector<T> nodes;
  std::vector<T> weights;
};

template <Real T>
struct SphereRule {
  int n = 0;
  int order = 0;
  std::vector<T> dirs;  // row-major, size() * n
  std::vector<T> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const T> direction(std::size_t i) const { return {dirs.data() + i * n, std::size_t(n)}; }
};

// fresh construction; see the cached accessors below for repeated use
template <Real T>
RadialRule<T> make_radial_rule(double beta, int order, double c = 0.0);
template <Real T>
GaussRule<T> make_gauss_legendre(int order);
template <Real T>
SphereRule<T> make_sphere_rule(int n, int order);

// immutable process-wide caches, safe to call from several threads
template <Real T>
const RadialRule<T>& radial_rule(double beta, int order, double c = 0.0);
template <Real T>
const GaussRule<T>& gauss_legendre(int order);
template <Real T>
const SphereRule<T>& sphere_rule(int n, int order);

// exact mass of the radial weight, B((c+1)/2, beta+1)/2
double radial_weight_mass(double beta, double c);

enum class SphereMode { quadrature, analytic };

// spherical means of field combinations, by rule or closed form
template <Real T>
class SphereMeans {
 public:
  SphereMeans(int n, SphereMode mode, int order = 16) : n_(n), mode_(mode) {
    if (mode == SphereMode::quadrature) {
      if (n < 1 || n > 3) throw DomainError("sphere quadrature supports n in {1,2,3}; use analytic means");
      rule_ = &sphere_rule<T>(n, order);
    }
  }
  explicit SphereMeans(const SphereRule<T>& rule) : n_(rule.n), mode_(SphereMode::quadrature), rule_(&rule) {}

  int dim() const { return n_; }
  SphereMode mode() const { return mode_; }
  const SphereRule<T>* rule() const { return rule_; }

  // mean of f over the sphere |xi - x| = r
  T operator()(const FieldCombination& f, std::span<const T> x, T r) const {
    if (f.empty()) return T(0);
    if (r == 0) return f.value<T>(x);
    if (mode_ == SphereMode::analytic) return f.analytic_sphere_mean<T>(x, r);
    T buf[3];
    std::span<const T> y(buf, std::size_t(n_));
    T s = 0, wsum = 0;
    for (std::size_t i = 0; i < rule_->size(); ++i) {
      auto d = rule_->direction(i);
      for (int j = 0; j < n_; ++j) buf[j] = x[j] + r * d[j];
      s += rule_->weights[i] * f.value<T>(y);
      wsum += rule_->weights[i];
    }
    return s / wsum;
  }

 private:
  int n_;
  SphereMode mode_;
  const SphereRule<T>* rule_ = nullptr;
};

template <Real T>
T sphere_mean(const FieldCombination& f, std::span<const T> x, T r, const SphereRule<T>& rule) {
  if (r < 0) throw DomainError("sphere_mean: r must be >= 0");
  return SphereMeans<T>(rule)(f, x, r);
}

template <Real T>
T sphere_mean(const SmoothField& f, std::span<const T> x, T r, const SphereRule<T>& rule) {
  return sphere_mean<T>(FieldCombination::single(f), x, r, rule);
}

// int_{|xi-x|<t} (t^2-|xi-x|^2)^beta Jbar_nu(lambda sqrt(t^2-|xi-x|^2)) f(xi) dxi
// with r = t s: t^{n+2beta} omega_n sum_i w_i Jbar_nu(lambda t sqrt(1-s_i^2)) M_f(t s_i)
template <Real T>
T ball_kernel_integral(const FieldCombination& f, std::span<const T> x, T t, double beta, T nu, T lambda,
                       const RadialRule<T>& radial, const SphereMeans<T>& means) {
  const int n = means.dim();
  if (radial.beta != beta || radial.c != double(n - 1))
    throw ContractError("ball_kernel_integral: radial rule does not carry the weight (1-s^2)^beta s^(n-1)");
  if (!(t > 0)) throw DomainError("ball_kernel_integral: t must be > 0");
  if (f.empty()) return T(0);
  T s = 0;
  for (int i = 0; i < radial.order; ++i) {
    T si = radial.nodes[i];
    T kern = lambda == 0 ? T(1) : bessel_clifford<T>(nu, lambda * t * num::sqrt(1 - si * si));
    s += radial.weights[i] * kern * means(f, x, t * si);
  }
  return s * sphere_area_const<T>(n) * num::pow(t, T(n) + 2 * T(beta));
}

template <Real T>
T ball_kernel_integral(const FieldCombination& f, std::span<const T> x, T t, double beta, T nu, T lambda,
                       const RadialRule<T>& radial, const SphereRule<T>& sphere) {
  return ball_kernel_integral<T>(f, x, t, beta, nu, lambda, radial, SphereMeans<T>(sphere));
}

}  // namespace kgf
