#pragma once

#include <span>
#include <vector>

#include "kgf/ek_transmute.hpp"
#include "kgf/errors.hpp"
#include "kgf/fd.hpp"
#include "kgf/fields.hpp"
#include "kgf/quadrature.hpp"
#include "kgf/real.hpp"
#include "kgf/special_fns.hpp"

namespace kgf {

// (d_t^2 - Delta)^m U = 0 with (d_t^2 - Delta)^k U = f_k, d_t (d_t^2 - Delta)^k U = g_k at t = 0
struct PolyWaveProblem {
  int n = 3;
  int m = 1;
  std::vector<FieldCombination> f;
  std::vector<FieldCombination> g;

  static PolyWaveProblem from(const TransformedData& d, int n);
  void validate() const;
};

// sign(r) base(|r|)
template <class F>
struct OddExtension {
  F base;

  template <class T>
  T operator()(T r) const {
    if (r < 0) return -base(-r);
    return base(r);
  }
};

template <class F>
OddExtension(F) -> OddExtension<F>;

template <Real T>
class PolyWaveSolver {
 public:
  PolyWaveSolver(PolyWaveProblem problem, const SolverOptions& opts = {})
      : prob_(std::move(problem)), ctx_(prob_.n, opts) {
    prob_.validate();
    if (opts.sphere_mode == SphereMode::analytic)
      for (int k = 0; k < prob_.m; ++k)
        if (!prob_.f[k].analytic_means() || !prob_.g[k].analytic_means())
          throw CapabilityError("poly-wave data without closed-form sphere means; use quadrature mode");
    if (prob_.n % 2) {
      const auto A = lemma1_constants((prob_.n - 1) / 2);
      for (const auto& a : A) lemma1_.push_back(T(a.convert_to<double>()));
    }
  }

  const PolyWaveProblem& problem() const { return prob_; }
  const NumericContext<T>& context() const { return ctx_; }

  T operator()(std::span<const T> x, T t) const { return prob_.n % 2 ? solve_odd(x, t) : solve_even(x, t); }

  // U(x, t) for odd n >= 3
  T solve_odd(std::span<const T> x, T t) const {
    const int n = prob_.n;
    if (n % 2 == 0 || n < 3) throw ContractError("polywave_solve_odd: n must be odd and >= 3");
    if (t == 0) return prob_.f[0].template value<T>(x);
    if (!(t > 0)) throw DomainError("polywave_solve_odd: t must be >= 0");
    const int q = (n - 3) / 2;
    auto inner = [&](const std::vector<FieldCombination>& data) {
      return [this, x, n, &d = data](T s) {
        T v = sphere_area_const<T>(n) * num::ipow(s, n - 2) * ctx_.means()(d[0], x, s);
        for (int k = 1; k < prob_.m; ++k) {
          if (d[k].empty()) continue;
          T w = T(1) / (num::ipow(T(2), 2 * k - 1) * num::tgamma(T(k)) * num::tgamma(T(k + 1)));
          v += w * ctx_.ball(d[k], x, s, double(k - 1), T(0), T(0));
        }
        return v;
      };
    };
    T u = ctx_.outer(inner(prob_.f), t, q, true);
    if (has_g()) u += ctx_.outer(inner(prob_.g), t, q, false);
    return polywave_const_odd<T>(n) * u;
  }

  // U(x, t) for even n >= 2
  T solve_even(std::span<const T> x, T t) const {
    const int n = prob_.n;
    if (n % 2 || n < 2) throw ContractError("polywave_solve_even: n must be even and >= 2");
    if (t == 0) return prob_.f[0].template value<T>(x);
    if (!(t > 0)) throw DomainError("polywave_solve_even: t must be >= 0");
    const int q = (n - 2) / 2;
    auto inner = [&](const std::vector<FieldCombination>& data) {
      return [this, x, n, &d = data](T s) {
        T v = 0;
        for (int k = 0; k < prob_.m; ++k) {
          if (d[k].empty()) continue;
          T w = T(1) / (num::tgamma(T(k) + T(0.5)) * num::ipow(T(4), k) * num::tgamma(T(k + 1)));
          v += w * ctx_.ball(d[k], x, s, double(k) - 0.5, T(0), T(0));
        }
        return v;
      };
    };
    T u = ctx_.outer(inner(prob_.f), t, q, true);
    if (has_g()) u += ctx_.outer(inner(prob_.g), t, q, false);
    return polywave_const_even<T>(n) * u;
  }

  // 1-D profile (1/r d/dr)^{p-1}(r^{2p-1} F_k) = sum_j A_j r^{j+1} F_k^{(j)}, n = 2p+1; F_k sphere mean of f_k
  // (g_k when psi is set)
  T profile(std::span<const T> x, int k, bool psi, T r) const {
    require_odd("profile");
    const auto& d = psi ? prob_.g[k] : prob_.f[k];
    if (d.empty()) return T(0);
    auto F = [&](T s) { return ctx_.means()(d, x, s); };
    T v = 0;
    for (std::size_t j = 0; j < lemma1_.size(); ++j) {
      T dj = F(r);
      if (j > 0) {
        T h = num::pow(num::epsilon<T>(), T(1) / T(j + 4)) * (num::abs(r) > T(1) ? num::abs(r) : T(1));
        dj = richardson_derivative<T>(F, r, int(j), h);
      }
      v += lemma1_[j] * num::ipow(r, int(j) + 1) * dj;
    }
    return v;
  }

  // W_0(x, t, r) of the reduced 1-D system, from the odd-extended profiles
  T w0(std::span<const T> x, T t, T r) const {
    require_odd("w0_closed_form");
    auto ext = [&](int k, bool psi) {
      return OddExtension{[this, x, k, psi](T s) { return profile(x, k, psi, s); }};
    };
    const auto ph0 = ext(0, false);
    if (t == 0) return ph0(r);
    const auto& gl = gauss_legendre<T>(ctx_.options().radial_order);
    // int_{r-t}^{r+t} [tt^2 - (r-s)^2]^k P(s) ds with s = r + tt sigma
    auto seg = [&](const auto& P, int k, T tt) {
      T s = 0;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        T sg = gl.nodes[i];
        s += gl.weights[i] * num::ipow(1 - sg * sg, k) * P(r + tt * sg);
      }
      return s * num::ipow(tt, 2 * k + 1);
    };
    T v = (ph0(r + t) + ph0(r - t)) / 2;
    if (!prob_.g[0].empty()) v += seg(ext(0, true), 0, t) / 2;
    const T h = default_fd_rel_step<T>(1, ctx_.options().fd_rel_step) * t;
    for (int k = 1; k < prob_.m; ++k) {
      T w = T(1) / (num::ipow(T(2), 2 * k + 1) * num::ipow(num::tgamma(T(k + 1)), 2));
      if (!prob_.f[k].empty()) {
        const auto P = ext(k, false);
        v += w * richardson_derivative<T>([&](T tt) { return seg(P, k, tt); }, t, 1, h);
      }
      if (!prob_.g[k].empty()) v += w * seg(ext(k, true), k, t);
    }
    return v;
  }

  // U = lim_{r->0} W_0 / (A_0 r), extrapolated in r^2 from r0, r0/2, r0/4, r0/8
  T limit_from_w0(std::span<const T> x, T t, T r0) const {
    require_odd("polywave_limit_from_w0");
    std::vector<T> xs, ys;
    T r = r0;
    for (int i = 0; i < 4; ++i, r /= 2) {
      xs.push_back(r * r);
      ys.push_back(w0(x, t, r) / (lemma1_[0] * r));
    }
    return neville_at_zero<T>(xs, ys);
  }

 private:
  bool has_g() const {
    for (const auto& d : prob_.g)
      if (!d.empty()) return true;
    return false;
  }
  void require_odd(const char* what) const {
    if (prob_.n % 2 == 0 || prob_.n < 3) throw ContractError(std::string(what) + ": needs odd n >= 3");
  }

  PolyWaveProblem prob_;
  NumericContext<T> ctx_;
  std::vector<T> lemma1_;
};

template <Real T>
T polywave_solve_odd(const PolyWaveSolver<T>& s, std::span<const T> x, T t) {
  return s.solve_odd(x, t);
}

template <Real T>
T polywave_solve_even(const PolyWaveSolver<T>& s, std::span<const T> x, T t) {
  return s.solve_even(x, t);
}

template <Real T>
T w0_closed_form(const PolyWaveSolver<T>& s, std::span<const T> x, T t, T r) {
  return s.w0(x, t, r);
}

// (d/dr)^2 (1/r d/dr)^{p-1}(r^{2p-1} w) against (1/r d/dr)^p (r^{2p} w') for w = cos, both sides by
// central differences of step h; the left side uses the A_j^p expansion
IdentityLadder lemma1_identity_ladder(int p, double r, const std::vector<double>& hs);

}  // namespace kgf
