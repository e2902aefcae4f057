#include "kgf/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace kgf {

namespace {

// three-term recurrence of a measure: monic alpha_k, beta_k (beta_0 = total mass)
struct Recurrence {
  std::vector<quad> a;
  std::vector<quad> b;
};

std::vector<double> tridiagonal_eigenvalues(const std::vector<quad>& diag, const std::vector<quad>& off) {
  const int n = int(diag.size());
  Eigen::VectorXd d(n), e(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) d[i] = static_cast<double>(diag[i]);
  for (int i = 0; i + 1 < n; ++i) e[i] = static_cast<double>(off[i]);
  if (n == 1) return {d[0]};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw AccuracyError("tridiagonal eigensolver failed");
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(v.begin(), v.end());
  return v;
}

// orthonormal polynomials up to degree N at x; returns p_N and p_N', sum_{j<N} p_j^2
struct PolyEval {
  quad p, dp, sumsq;
};

PolyEval eval_orthonormal(const Recurrence& r, int N, quad x) {
  quad pm1 = 0, dpm1 = 0;
  quad p = 1 / sqrtq(r.b[0]), dp = 0;
  quad sumsq = 0;
  for (int k = 0; k < N; ++k) {
    sumsq += p * p;
    quad sb1 = sqrtq(r.b[k + 1]);
    quad sbk = k ? sqrtq(r.b[k]) : quad(0);
    quad pn = ((x - r.a[k]) * p - sbk * pm1) / sb1;
    quad dpn = (p + (x - r.a[k]) * dp - sbk * dpm1) / sb1;
    pm1 = p;
    dpm1 = dp;
    p = pn;
    dp = dpn;
  }
  return {p, dp, sumsq};
}

// Golub-Welsch start in double, Newton polish and Christoffel weights in quad
void gauss_from_recurrence(const Recurrence& r, int N, std::vector<quad>& nodes, std::vector<quad>& weights) {
  std::vector<quad> diag(r.a.begin(), r.a.begin() + N), off;
  for (int k = 1; k < N; ++k) off.push_back(sqrtq(r.b[k]));
  auto x0 = tridiagonal_eigenvalues(diag, off);
  nodes.resize(N);
  weights.resize(N);
  for (int i = 0; i < N; ++i) {
    quad x = x0[i];
    for (int it = 0; it < 10; ++it) {
      auto e = eval_orthonormal(r, N, x);
      if (e.dp == 0) break;
      quad dx = e.p / e.dp;
      x -= dx;
      if (fabsq(dx) <= 4 * FLT128_EPSILON * std::max(fabsq(x), quad(1e-30))) break;
    }
    nodes[i] = x;
    weights[i] = 1 / eval_orthonormal(r, N, x).sumsq;
  }
}

// Jacobi weight (1-y)^a (1+y)^b on (-1,1), recurrence up to index K
Recurrence jacobi_recurrence(quad a, quad b, int K) {
  Recurrence r;
  r.a.resize(K + 1);
  r.b.resize(K + 1);
  const quad ab = a + b;
  r.b[0] = powq(2, ab + 1) * tgammaq(a + 1) * tgammaq(b + 1) / tgammaq(ab + 2);
  for (int k = 0; k <= K; ++k) {
    if (k == 0)
      r.a[0] = (b - a) / (ab + 2);
    else
      r.a[k] = (b * b - a * a) / ((2 * k + ab) * (2 * k + ab + 2));
    if (k == 1)
      r.b[1] = 4 * (1 + a) * (1 + b) / ((2 + ab) * (2 + ab) * (3 + ab));
    else if (k >= 2)
      r.b[k] = 4 * quad(k) * (k + a) * (k + b) * (k + ab) /
               ((2 * k + ab) * (2 * k + ab) * (2 * k + ab + 1) * (2 * k + ab - 1));
  }
  return r;
}

// same measure pushed to (0,1) by s = (1+y)/2, rescaled to unit Jacobian
Recurrence shift_to_unit(const Recurrence& r, quad a, quad b) {
  Recurrence s = r;
  for (auto& v : s.a) v = (1 + v) / 2;
  for (std::size_t k = 1; k < s.b.size(); ++k) s.b[k] = r.b[k] / 4;
  s.b[0] = r.b[0] / powq(2, a + b + 1);
  return s;
}

// Stieltjes procedure on a discrete measure, orthonormal variant
Recurrence stieltjes(const std::vector<quad>& x, const std::vector<quad>& v, int K) {
  const std::size_t M = x.size();
  Recurrence r;
  r.a.resize(K + 1);
  r.b.resize(K + 1);
  quad mass = 0;
  for (auto w : v) mass += w;
  r.b[0] = mass;
  std::vector<quad> qm1(M, 0), q(M, 1 / sqrtq(mass)), nx(M);
  for (int k = 0; k <= K; ++k) {
    quad ak = 0;
    for (std::size_t i = 0; i < M; ++i) ak += v[i] * x[i] * q[i] * q[i];
    r.a[k] = ak;
    if (k == K) break;
    quad sb = k ? sqrtq(r.b[k]) : quad(0);
    quad nrm = 0;
    for (std::size_t i = 0; i < M; ++i) {
      nx[i] = (x[i] - ak) * q[i] - sb * qm1[i];
      nrm += v[i] * nx[i] * nx[i];
    }
    r.b[k + 1] = nrm;
    quad inv = 1 / sqrtq(nrm);
    for (std::size_t i = 0; i < M; ++i) {
      qm1[i] = q[i];
      q[i] = nx[i] * inv;
    }
  }
  return r;
}

RadialRule<quad> build_radial_quad(double beta, int order, double c) {
  if (!(beta > -1)) throw DomainError("make_radial_rule: beta must be > -1");
  if (!(c > -1)) throw DomainError("make_radial_rule: s exponent must be > -1");
  if (order < 1) throw DomainError("make_radial_rule: order must be >= 1");
  const quad qb = beta, qc = c;
  // (1-s^2)^beta s^c = [(1-s)^beta s^c] (1+s)^beta; the bracket is a shifted Jacobi weight
  Recurrence r;
  if (beta == 0.0) {
    r = shift_to_unit(jacobi_recurrence(qb, qc, order + 1), qb, qc);
  } else {
    // the factor (1+s)^beta is analytic on [0,1]; 40 extra nodes resolve it far below quad eps
    const int M = order + 40;
    auto base = shift_to_unit(jacobi_recurrence(qb, qc, M + 1), qb, qc);
    std::vector<quad> x, w;
    gauss_from_recurrence(base, M, x, w);
    for (int i = 0; i < M; ++i) w[i] *= powq(1 + x[i], qb);
    r = stieltjes(x, w, order + 1);
  }
  RadialRule<quad> out;
  out.beta = beta;
  out.c = c;
  out.order = order;
  gauss_from_recurrence(r, order, out.nodes, out.weights);
  return out;
}

template <Real T>
std::vector<T> cast_vec(const std::vector<quad>& v) {
  return std::vector<T>(v.begin(), v.end());
}

GaussRule<quad> build_gl_quad(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  auto r = jacobi_recurrence(0, 0, order + 1);
  GaussRule<quad> g;
  gauss_from_recurrence(r, order, g.nodes, g.weights);
  return g;
}

template <class K, class V>
struct Cache {
  std::mutex mu;
  std::map<K, std::unique_ptr<V>> map;

  template <class F>
  const V& get(const K& key, F&& build) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = map.find(key);
    if (it == map.end()) it = map.emplace(key, std::make_unique<V>(build())).first;
    return *it->second;
  }
};

}  // namespace

double radial_weight_mass(double beta, double c) {
  return std::exp(std::lgamma((c + 1) / 2) + std::lgamma(beta + 1) - std::lgamma((c + 1) / 2 + beta + 1)) / 2;
}

template <Real T>
RadialRule<T> make_radial_rule(double beta, int order, double c) {
  auto q = build_radial_quad(beta, order, c);
  return RadialRule<T>{q.beta, q.c, q.order, cast_vec<T>(q.nodes), cast_vec<T>(q.weights)};
}

template <Real T>
GaussRule<T> make_gauss_legendre(int order) {
  auto q = build_gl_quad(order);
  return GaussRule<T>{cast_vec<T>(q.nodes), cast_vec<T>(q.weights)};
}

template <Real T>
SphereRule<T> make_sphere_rule(int n, int order) {
  if (order < 1) throw DomainError("make_sphere_rule: order must be >= 1");
  SphereRule<T> s;
  s.n = n;
  s.order = order;
  const quad tau = 2 * M_PIq;
  if (n == 1) {
    s.dirs = {T(-1), T(1)};
    s.weights = {T(1), T(1)};
  } else if (n == 2) {
    const int N = 2 * order;
    for (int j = 0; j < N; ++j) {
      quad phi = tau * j / N;
      s.dirs.push_back(T(cosq(phi)));
      s.dirs.push_back(T(sinq(phi)));
      s.weights.push_back(T(tau / N));
    }
  } else if (n == 3) {
    auto gl = build_gl_quad(order);
    const int N = 2 * order;
    for (int i = 0; i < order; ++i) {
      quad z = gl.nodes[i], rho = sqrtq(1 - z * z);
      for (int j = 0; j < N; ++j) {
        quad phi = tau * j / N;
        s.dirs.push_back(T(rho * cosq(phi)));
        s.dirs.push_back(T(rho * sinq(phi)));
        s.dirs.push_back(T(z));
        s.weights.push_back(T(gl.weights[i] * tau / N));
      }
    }
  } else {
    throw DomainError("make_sphere_rule: n must be 1, 2 or 3");
  }
  return s;
}

template <Real T>
const RadialRule<T>& radial_rule(double beta, int order, double c) {
  static Cache<std::tuple<double, double, int>, RadialRule<T>> cache;
  return cache.get({beta, c, order}, [&] { return make_radial_rule<T>(beta, order, c); });
}

template <Real T>
const GaussRule<T>& gauss_legendre(int order) {
  static Cache<int, GaussRule<T>> cache;
  return cache.get(order, [&] { return make_gauss_legendre<T>(order); });
}

template <Real T>
const SphereRule<T>& sphere_rule(int n, int order) {
  static Cache<std::pair<int, int>, SphereRule<T>> cache;
  return cache.get({n, order}, [&] { return make_sphere_rule<T>(n, order); });
}

#define KGF_INSTANTIATE(T)                                                  \
  template RadialRule<T> make_radial_rule<T>(double, int, double);          \
  template GaussRule<T> make_gauss_legendre<T>(int);                        \
  template SphereRule<T> make_sphere_rule<T>(int, int);                     \
  template const RadialRule<T>& radial_rule<T>(double, int, double);        \
  template const GaussRule<T>& gauss_legendre<T>(int);                      \
  template const SphereRule<T>& sphere_rule<T>(int, int);

KGF_INSTANTIATE(double)
KGF_INSTANTIATE(quad)

}  // namespace kgf
