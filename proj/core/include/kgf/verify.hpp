#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "kgf/ek_transmute.hpp"
#include "kgf/errors.hpp"
#include "kgf/fd.hpp"
#include "kgf/kgf_solver.hpp"
#include "kgf/real.hpp"

namespace kgf {

struct CheckLine {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<std::pair<double, double>> residual_norms;  // (h, max |L^m u|)
  double estimated_order = std::nan("");
  std::vector<double> ic_errors;
  double two_path_gap = std::nan("");
  std::optional<double> oracle_gap;
  std::vector<CheckLine> checks;

  bool passed() const;
  void add(CheckLine c) { checks.push_back(std::move(c)); }
  void merge(const VerificationReport& other);
  std::string to_text() const;
  std::string to_csv() const;
};

// run fn(i) for i in [0, count) on up to `threads` workers; the first exception is rethrown
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct Probe {
  std::vector<double> x;
  double t = 0.0;
};

template <Real T>
using PointFn = std::function<T(std::span<const T>, T)>;

// (B_gamma^t - Delta + lambda^2)^m u at (x, t) by nested second order stencils of step h
template <Real T>
T residual_iterated_operator(const PointFn<T>& u, const ProblemSpec& spec, std::span<const T> x, T t, int m,
                             T h) {
  const int n = static_cast<int>(x.size());
  if (m < 0) throw DomainError("residual: m must be >= 0");
  if (!(h > 0)) throw DomainError("residual: h must be > 0");
  if (t < T(10 * m) * h) throw ContractError("residual: stencil needs t >= 10 m h");
  const T drift = 2 * T(spec.gamma) + 1, lam2 = T(spec.lambda) * T(spec.lambda);
  std::map<std::vector<int>, T> memo;
  std::vector<T> y(n);
  std::function<T(int, std::vector<int>&)> L = [&](int level, std::vector<int>& off) -> T {
    off.push_back(level);
    auto it = memo.find(off);
    off.pop_back();
    if (it != memo.end()) return it->second;
    T v;
    if (level == 0) {
      for (int i = 0; i < n; ++i) y[i] = x[i] + T(off[i + 1]) * h;
      v = u(std::span<const T>(y), t + T(off[0]) * h);
    } else {
      const T c = L(level - 1, off);
      T acc = lam2 * c;
      for (int d = 0; d <= n; ++d) {
        ++off[d];
        const T p = L(level - 1, off);
        off[d] -= 2;
        const T q = L(level - 1, off);
        ++off[d];
        const T d2 = (p - 2 * c + q) / (h * h);
        if (d == 0)
          acc += d2 + drift / (t + T(off[0]) * h) * (p - q) / (2 * h);
        else
          acc -= d2;
      }
      v = acc;
    }
    off.push_back(level);
    memo.emplace(off, v);
    off.pop_back();
    return v;
  };
  std::vector<int> off(n + 1, 0);
  return L(m, off);
}

// residual ladder over the probes; order from the max norms
template <Real T>
VerificationReport residual_study(const PointFn<T>& u, const ProblemSpec& spec, const std::vector<Probe>& probes,
                                  const std::vector<double>& hs, double order_tol = 0.3, int threads = 1) {
  VerificationReport r;
  std::vector<double> norms(hs.size(), 0.0);
  std::vector<double> vals(hs.size() * probes.size());
  parallel_for(vals.size(), threads, [&](std::size_t idx) {
    const auto& pr = probes[idx % probes.size()];
    std::vector<T> x(pr.x.begin(), pr.x.end());
    vals[idx] = num::to_double(num::abs(residual_iterated_operator<T>(u, spec, std::span<const T>(x), T(pr.t), spec.m,
                                                                 T(hs[idx / probes.size()]))));
  });
  for (std::size_t i = 0; i < vals.size(); ++i) norms[i / probes.size()] = std::max(norms[i / probes.size()], vals[i]);
  for (std::size_t i = 0; i < hs.size(); ++i) r.residual_norms.emplace_back(hs[i], norms[i]);
  r.estimated_order = estimate_order(hs, norms);
  CheckLine c;
  c.name = "residual order m=" + std::to_string(spec.m);
  c.measured = r.estimated_order;
  c.tolerance = order_tol;
  c.pass = std::isfinite(r.estimated_order) && std::fabs(r.estimated_order - 2.0) <= order_tol;
  c.detail = "expected 2";
  r.add(c);
  return r;
}

// limit at t -> 0+ of Q(t) from t0, t0/2, t0/4 by Neville in t^2 (even) or t (odd)
struct LimitEstimate {
  std::vector<double> t;
  std::vector<double> values;
  double limit = 0.0;
};

template <Real T, class Q>
LimitEstimate small_t_limit(Q&& q, double t0, bool even, int levels = 3) {
  LimitEstimate e;
  std::vector<T> xs, ys;
  double t = t0;
  for (int i = 0; i < levels; ++i, t /= 2) {
    T v = q(T(t));
    e.t.push_back(t);
    e.values.push_back(num::to_double(v));
    xs.push_back(even ? T(t) * T(t) : T(t));
    ys.push_back(v);
  }
  e.limit = num::to_double(neville_at_zero<T>(xs, ys));
  return e;
}

// step ratio h/t of the small-t stencils; the psi solution is not smooth at t = 0, so the stencil error
// is scale invariant and only shrinks with this ratio
inline constexpr double kSmallTStepRatio = 1.0 / 256;

namespace detail {

template <Real T>
T t_derivative(const PointFn<T>& u, std::span<const T> x, int j, T t) {
  auto G = [&](T s) { return u(x, s); };
  return richardson_derivative<T>(G, t, j, t * T(kSmallTStepRatio));
}

// [B_eta]^k u, optionally followed by d/dt
template <Real T>
T bessel_power_t(const PointFn<T>& u, std::span<const T> x, T eta, int k, bool dt, T t) {
  auto at = [&](T h) {
    auto Bk = [&](T s) { return bessel_op_apply<T>([&](T r) { return u(x, r); }, eta, k, s, h); };
    return dt ? central_derivative<T>(Bk, t, 1, h) : Bk(t);
  };
  const T h = t * T(kSmallTStepRatio);
  if (k == 0 && !dt) return u(x, t);
  return (4 * at(h / 2) - at(h)) / 3;
}

inline std::string point_str(const std::vector<double>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    char b[32];
    std::snprintf(b, sizeof b, "%s%.4g", i ? "," : "", x[i]);
    s += b;
  }
  return s + ")";
}

inline double rel_err(double v, double ref) { return std::fabs(v - ref) / std::max(std::fabs(ref), 1e-12); }

}  // namespace detail

// initial conditions: phi problem d^{2k}u -> phi_k (relative), d^{2k+1}u -> 0 (absolute);
// psi problem t^{2alpha} d/dt [B_gamma]^k u -> psi*_k (relative)
template <Real T>
VerificationReport check_initial_conditions(const PointFn<T>& u, const ProblemSpec& spec,
                                            const std::vector<std::vector<double>>& xs, double t0 = 0.05,
                                            double tol = 1e-4, int levels = 3) {
  VerificationReport r;
  r.ic_errors.assign(spec.m, 0.0);
  const auto star = spec.family == DataFamily::psi ? spec.psi_star() : std::vector<FieldCombination>{};
  for (const auto& xd : xs) {
    std::vector<T> xv(xd.begin(), xd.end());
    std::span<const T> x(xv);
    for (int k = 0; k < spec.m; ++k) {
      if (spec.family == DataFamily::phi) {
        const double ref = k < int(spec.phi.size()) ? num::to_double(spec.phi[k].template value<T>(x)) : 0.0;
        auto ev = small_t_limit<T>([&](T t) { return detail::t_derivative<T>(u, x, 2 * k, t); }, t0, true, levels);
        auto od = small_t_limit<T>([&](T t) { return detail::t_derivative<T>(u, x, 2 * k + 1, t); }, t0, false, levels);
        const double e = std::fabs(ref) > 1e-8 ? detail::rel_err(ev.limit, ref) : std::fabs(ev.limit - ref);
        r.ic_errors[k] = std::max(r.ic_errors[k], e);
        r.add({"ic d^" + std::to_string(2 * k) + "u/dt^" + std::to_string(2 * k) + " -> phi_" + std::to_string(k) +
                   " at " + detail::point_str(xd),
               e, tol, e <= tol,
               "limit=" + std::to_string(ev.limit) + " expected=" + std::to_string(ref)});
        const double o = std::fabs(od.limit);
        r.add({"ic d^" + std::to_string(2 * k + 1) + "u/dt^" + std::to_string(2 * k + 1) + " -> 0 at " +
                   detail::point_str(xd),
               o, tol, o <= tol, "limit=" + std::to_string(od.limit)});
      } else {
        const double ref = k < int(star.size()) ? num::to_double(star[k].template value<T>(x)) : 0.0;
        const T a2 = 2 * T(spec.alpha());
        auto lim = small_t_limit<T>(
            [&](T t) { return num::pow(t, a2) * detail::bessel_power_t<T>(u, x, T(spec.gamma), k, true, t); }, t0,
            true, levels);
        const double e = std::fabs(ref) > 1e-8 ? detail::rel_err(lim.limit, ref) : std::fabs(lim.limit - ref);
        r.ic_errors[k] = std::max(r.ic_errors[k], e);
        r.add({"ic t^(2gamma+1) d/dt B^" + std::to_string(k) + " u -> psi*_" + std::to_string(k) + " at " +
                   detail::point_str(xd),
               e, tol, e <= tol, "limit=" + std::to_string(lim.limit) + " expected=" + std::to_string(ref)});
      }
    }
  }
  return r;
}

// [B^t_{alpha-1/2}]^k u -> (alpha+1/2)_k/(1/2)_k phi_k and d/dt [B]^k u -> 0
template <Real T>
VerificationReport check_lemma2_conditions(const PointFn<T>& u, const ProblemSpec& spec,
                                           const std::vector<std::vector<double>>& xs, double t0 = 0.05,
                                           double tol = 1e-4, int levels = 3) {
  if (spec.family != DataFamily::phi) throw ContractError("Bessel-power initial conditions concern the phi problem");
  VerificationReport r;
  const double a = spec.alpha();
  for (const auto& xd : xs) {
    std::vector<T> xv(xd.begin(), xd.end());
    std::span<const T> x(xv);
    for (int k = 0; k < spec.m; ++k) {
      const double factor = num::to_double(pochhammer<T>(T(a) + T(0.5), k) / pochhammer<T>(T(0.5), k));
      const double ref = k < int(spec.phi.size()) ? factor * num::to_double(spec.phi[k].template value<T>(x)) : 0.0;
      auto ev = small_t_limit<T>([&](T t) { return detail::bessel_power_t<T>(u, x, T(spec.gamma), k, false, t); },
                                 t0, true, levels);
      auto od = small_t_limit<T>([&](T t) { return detail::bessel_power_t<T>(u, x, T(spec.gamma), k, true, t); },
                                 t0, false, levels);
      const double e = std::fabs(ref) > 1e-8 ? detail::rel_err(ev.limit, ref) : std::fabs(ev.limit - ref);
      r.add({"B^" + std::to_string(k) + " u -> phi*_" + std::to_string(k) + " at " + detail::point_str(xd), e, tol,
             e <= tol, "limit=" + std::to_string(ev.limit) + " expected=" + std::to_string(ref)});
      r.add({"d/dt B^" + std::to_string(k) + " u -> 0 at " + detail::point_str(xd), std::fabs(od.limit), tol,
             std::fabs(od.limit) <= tol, "limit=" + std::to_string(od.limit)});
    }
  }
  return r;
}

// ---- separable oracle for eigen data ----

// y(t) = sum_i e_i t^{2i} with (B_gamma + s)^m y = 0 and [B_gamma]^j y(0) = b_j, j < m
std::vector<quad> separable_series(double gamma, quad s, int m, const std::vector<quad>& b, int terms = 160);
quad eval_even_series(const std::vector<quad>& e, quad t);

// exact solution for data made of plane waves and sine products only; CapabilityError otherwise
template <Real T>
T separable_oracle(const ProblemSpec& spec, std::span<const T> x, T t) {
  const bool psi = spec.family == DataFamily::psi;
  const auto data = psi ? spec.psi_star() : spec.phi;
  const double g = psi ? 0.5 - spec.alpha() : spec.gamma;
  const quad lam2 = quad(spec.lambda) * quad(spec.lambda);
  quad total = 0;
  for (int j = 0; j < int(data.size()); ++j) {
    for (const auto& atom : data[j].atoms()) {
      if (atom.kind != Atom::Kind::plane && atom.kind != Atom::Kind::sine)
        throw CapabilityError("separable oracle needs plane-wave or sine-product data");
      // phi: d^{2j} y(0) = 1, i.e. e_j = 1/(2j)!; psi: [B]^j Y(0) = 1/(1-2alpha)
      std::vector<quad> b(spec.m, 0);
      if (psi) {
        b[j] = 1 / (1 - 2 * quad(spec.alpha()));
      } else {
        // convert e_j = 1/(2j)! into [B]^j y(0) = 4^j j! (1+gamma)_j e_j
        b[j] = num::ipow(quad(4), j) * num::tgamma(quad(j + 1)) * pochhammer<quad>(1 + quad(g), j) /
               num::tgamma(quad(2 * j + 1));
      }
      auto e = separable_series(g, quad(atom.k2) + lam2, spec.m, b);
      std::vector<quad> xq(x.begin(), x.end());
      quad v = atom.value<quad>(std::span<const quad>(xq)) * eval_even_series(e, quad(t));
      if (psi) v *= num::pow(quad(t), 1 - 2 * quad(spec.alpha()));
      total += v;
    }
  }
  return T(total);
}

// max relative gap of u against the separable oracle
template <Real T>
CheckLine oracle_check(const PointFn<T>& u, const ProblemSpec& spec, const std::vector<Probe>& probes, double tol,
                       int threads = 1) {
  std::vector<double> gaps(probes.size());
  parallel_for(probes.size(), threads, [&](std::size_t i) {
    std::vector<T> x(probes[i].x.begin(), probes[i].x.end());
    const double v = num::to_double(u(std::span<const T>(x), T(probes[i].t)));
    const double e = num::to_double(separable_oracle<T>(spec, std::span<const T>(x), T(probes[i].t)));
    gaps[i] = detail::rel_err(v, e);
  });
  const double g = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
  return {"separable oracle (max relative error, " + std::to_string(probes.size()) + " probes)", g, tol, g <= tol, ""};
}

// max absolute gap between two evaluation routes
template <Real T>
CheckLine two_path_check(const PointFn<T>& a, const PointFn<T>& b, const std::vector<Probe>& probes, double tol,
                         const std::string& label, int threads = 1) {
  std::vector<double> gaps(probes.size());
  parallel_for(probes.size(), threads, [&](std::size_t i) {
    std::vector<T> x(probes[i].x.begin(), probes[i].x.end());
    gaps[i] = num::to_double(num::abs(a(std::span<const T>(x), T(probes[i].t)) - b(std::span<const T>(x), T(probes[i].t))));
  });
  const double g = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
  return {"two-path " + label + " (max absolute gap, " + std::to_string(probes.size()) + " probes)", g, tol,
          g <= tol, ""};
}

// values at the probes for each quadrature order; reports the change between the last two orders
template <Real T>
VerificationReport convergence_study(const std::function<PointFn<T>(int)>& factory, const std::vector<int>& orders,
                                     const std::vector<Probe>& probes, double tol = 1e-10, int threads = 1) {
  if (orders.size() < 3) throw DomainError("convergence_study: need at least 3 orders");
  VerificationReport r;
  std::vector<std::vector<double>> vals(orders.size(), std::vector<double>(probes.size()));
  for (std::size_t o = 0; o < orders.size(); ++o) {
    auto u = factory(orders[o]);
    parallel_for(probes.size(), threads, [&](std::size_t i) {
      std::vector<T> x(probes[i].x.begin(), probes[i].x.end());
      vals[o][i] = num::to_double(u(std::span<const T>(x), T(probes[i].t)));
    });
  }
  for (std::size_t o = 1; o < orders.size(); ++o) {
    double d = 0, scale = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      d = std::max(d, std::fabs(vals[o][i] - vals[o - 1][i]));
      scale = std::max(scale, std::fabs(vals[o][i]));
    }
    const double rel = d / std::max(scale, 1e-300);
    const bool last = o + 1 == orders.size();
    r.add({"order " + std::to_string(orders[o - 1]) + " -> " + std::to_string(orders[o]) + " relative change", rel,
           last ? tol : std::nan(""), !last || rel <= tol, last ? "" : "info"});
  }
  return r;
}

// settings of the complete verification run
struct VerifySettings {
  std::vector<Probe> probes;                         // oracle / two-path points
  std::vector<Probe> residual_probes;                // interior points for the residual ladder
  std::vector<double> residual_steps{4e-3, 2e-3, 1e-3};
  std::vector<std::vector<double>> ic_points;        // x samples for the t -> 0 checks
  double ic_t0 = 0.05;
  int ic_levels = 3;  // t0, t0/2, ...
  double oracle_tol = 1e-6;
  double two_path_tol = 1e-5;
  double ic_tol = 1e-4;
  double order_tol = 0.3;
  Method method = Method::direct;
  SolverOptions options;  // for the double-precision two-path and oracle evaluations
  int threads = 1;
  bool residual = true;
  bool initial_conditions = true;
  bool two_path = true;
  bool oracle = true;
};

// residual, initial conditions, two-path and (for eigen data) oracle checks
VerificationReport run_verification(const ProblemSpec& spec, const VerifySettings& s);

}  // namespace kgf
