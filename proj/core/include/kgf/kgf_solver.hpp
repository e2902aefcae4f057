#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kgf/ek_transmute.hpp"
#include "kgf/errors.hpp"
#include "kgf/fd.hpp"
#include "kgf/fields.hpp"
#include "kgf/quadrature.hpp"
#include "kgf/real.hpp"
#include "kgf/special_fns.hpp"
#include "kgf/wave_core.hpp"

namespace kgf {

enum class DataFamily { phi, psi };

// phi: even t-derivatives prescribed; psi: weighted odd t-derivatives prescribed
struct ProblemSpec {
  int n = 3;
  int m = 1;
  double gamma = 0.5;
  double lambda = 0.0;
  DataFamily family = DataFamily::phi;
  std::vector<FieldCombination> phi;  // phi_0..phi_{m-1}
  std::vector<FieldCombination> psi;  // psi_0..psi_{m-1}, as in t^{2gamma+1} d^{2k+1}u/dt^{2k+1} -> psi_k

  double alpha() const { return gamma + 0.5; }
  // throws DomainError / ContractError
  void validate() const;
  // psi*_k of the equivalent normalized conditions
  std::vector<FieldCombination> psi_star() const;
};

// direct: explicit ball-integral formula; transmutation: Lowndes operator in t applied to the poly-wave
// solution; complement: psi problem as t^{1-2alpha} times the phi solution at the complementary parameter
enum class Method { direct, transmutation, complement };

std::string to_string(Method m);
std::string to_string(DataFamily f);
Method parse_method(const std::string& s);

template <Real T>
class SolutionEvaluator {
 public:
  SolutionEvaluator(ProblemSpec spec, Method method = Method::direct, SolverOptions opts = {})
      : spec_(std::move(spec)), method_(method), opts_(opts), ctx_(spec_.n, opts) {
    spec_.validate();
    const double a = spec_.alpha();
    if (spec_.family == DataFamily::phi) {
      if (method_ == Method::complement) throw ContractError("complement path applies to the psi problem only");
      data_ = build_transformed_data(spec_.phi, {}, spec_.m, spec_.lambda, a);
      if (method_ == Method::transmutation) {
        auto pw = PolyWaveProblem::from(data_, spec_.n);
        for (auto& g : pw.g) g = FieldCombination(spec_.n);
        wave_ = std::make_shared<PolyWaveSolver<T>>(std::move(pw), opts_);
      }
    } else {
      auto star = spec_.psi_star();
      data_ = build_psi_star_data(star, spec_.m, spec_.lambda, a);
      if (method_ != Method::direct) {
        // u_1 at parameter 1 - alpha with phi'_j = (1/2)_j / ((3/2-alpha)_j (1-2alpha)) psi*_j
        ProblemSpec s1;
        s1.n = spec_.n;
        s1.m = spec_.m;
        s1.gamma = 0.5 - a;
        s1.lambda = spec_.lambda;
        s1.family = DataFamily::phi;
        for (int j = 0; j < spec_.m; ++j) {
          quad c = pochhammer<quad>(quad(0.5), j) /
                   (pochhammer<quad>(quad(1.5) - quad(a), j) * (1 - 2 * quad(a)));
          s1.phi.push_back(star[j].scaled(c));
        }
        const Method inner = method_ == Method::complement ? Method::direct : Method::transmutation;
        companion_ = std::make_shared<SolutionEvaluator<T>>(std::move(s1), inner, opts_);
      }
    }
  }

  const ProblemSpec& spec() const { return spec_; }
  Method method() const { return method_; }
  const SolverOptions& options() const { return opts_; }
  const TransformedData& data() const { return data_; }

  T operator()(std::span<const T> x, T t) const {
    if (static_cast<int>(x.size()) != spec_.n) throw ContractError("solution point has wrong dimension");
    if (t == 0 && spec_.family == DataFamily::phi) return spec_.phi.empty() ? T(0) : spec_.phi[0].template value<T>(x);
    if (!(t > 0)) throw DomainError("solution evaluated at t <= 0");
    T r;
    if (spec_.family == DataFamily::phi) {
      r = method_ == Method::direct ? direct(x, t, data_.f, spec_.alpha(), true) : transmute(x, t);
    } else if (method_ == Method::direct) {
      r = direct(x, t, data_.g, 1 - spec_.alpha(), false);
    } else {
      r = num::pow(t, 1 - 2 * T(spec_.alpha())) * (*companion_)(x, t);
    }
    if (!num::isfinite(r)) throw AccuracyError("non-finite solution value");
    return r;
  }
  T operator()(const std::vector<T>& x, T t) const { return (*this)(std::span<const T>(x), t); }

 private:
  // c t^{1-2a} (1/t d/dt)^q int_{ball} sum_k w_k (t^2-|xi-x|^2)^beta_k Jbar_beta_k(lambda sqrt(.)) d_k(xi) dxi
  T direct(std::span<const T> x, T t, const std::vector<FieldCombination>& d, double a, bool tpower) const {
    const int n = spec_.n;
    const bool odd = n % 2;
    const T qa = T(a), lam = T(spec_.lambda);
    const T shift = odd ? T(-1) : T(-0.5);
    const T pa = odd ? qa : qa + T(0.5);
    std::vector<T> w(spec_.m);
    for (int k = 0; k < spec_.m; ++k)
      w[k] = T(1) / (num::ipow(T(4), k) * num::tgamma(T(k + 1)) * pochhammer<T>(pa, k));
    auto inner = [&](T s) {
      T v = 0;
      for (int k = 0; k < spec_.m; ++k) {
        if (d[k].empty()) continue;
        const T beta = qa + T(k) + shift;
        v += w[k] * ctx_.ball(d[k], x, s, static_cast<double>(beta), beta, lam);
      }
      return v;
    };
    const int q = odd ? (n - 1) / 2 : n / 2;
    const T c = T(opts_.constant_scale) * (odd ? kgf_const_odd<T>(n, qa) : kgf_const_even<T>(n, qa));
    T r = c * ctx_.outer(inner, t, q, false);
    return tpower ? num::pow(t, 1 - 2 * qa) * r : r;
  }

  T transmute(std::span<const T> x, T t) const {
    const double a = spec_.alpha();
    const EKParams p{-0.5, a, spec_.lambda};
    const auto& rule = radial_rule<T>(a - 1, opts_.radial_order, 0.0);
    return lowndes_apply<T>([&](T s) { return (*wave_)(x, s); }, p, t, rule);
  }

  ProblemSpec spec_;
  Method method_;
  SolverOptions opts_;
  NumericContext<T> ctx_;
  TransformedData data_;
  std::shared_ptr<const PolyWaveSolver<T>> wave_;
  std::shared_ptr<const SolutionEvaluator<T>> companion_;
};

// point evaluations by the named routes
template <Real T>
T solve_point_odd(const ProblemSpec& spec, std::span<const T> x, T t, const SolverOptions& opts = {}) {
  if (spec.n % 2 == 0) throw ContractError("solve_point_odd: n must be odd");
  return SolutionEvaluator<T>(spec, Method::direct, opts)(x, t);
}

template <Real T>
T solve_point_even(const ProblemSpec& spec, std::span<const T> x, T t, const SolverOptions& opts = {}) {
  if (spec.n % 2) throw ContractError("solve_point_even: n must be even");
  return SolutionEvaluator<T>(spec, Method::direct, opts)(x, t);
}

template <Real T>
T solve_point_transmutation(const ProblemSpec& spec, std::span<const T> x, T t, const SolverOptions& opts = {}) {
  return SolutionEvaluator<T>(spec, Method::transmutation, opts)(x, t);
}

template <Real T>
T solve_psi_problem(const ProblemSpec& spec, std::span<const T> x, T t, Method method = Method::complement,
                    const SolverOptions& opts = {}) {
  if (spec.family != DataFamily::psi) throw ContractError("solve_psi_problem: psi data expected");
  return SolutionEvaluator<T>(spec, method, opts)(x, t);
}

}  // namespace kgf
