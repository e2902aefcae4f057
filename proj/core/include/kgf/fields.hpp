#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kgf/errors.hpp"
#include "kgf/real.hpp"
#include "kgf/special_fns.hpp"

namespace kgf {

// amp * cos(k.x + phase)
struct PlaneWave {
  std::vector<double> k;
  double amp = 1.0;
  double phase = 0.0;
};

// amp * prod_i sin(k_i x_i)
struct SineProduct {
  std::vector<double> k;
  double amp = 1.0;
};

struct Monomial {
  double coef = 0.0;
  std::vector<int> exps;
};

struct Polynomial {
  int dim = 0;
  std::vector<Monomial> terms;
};

// amp * exp(-|x - center|^2 / width^2)
struct Gaussian {
  std::vector<double> center;
  double width = 1.0;
  double amp = 1.0;
};

inline constexpr int kGaussianMaxLaplacian = 3;

class SmoothField {
 public:
  using Variant = std::variant<PlaneWave, SineProduct, Polynomial, Gaussian>;

  SmoothField(PlaneWave f);
  SmoothField(SineProduct f);
  SmoothField(Polynomial f);
  SmoothField(Gaussian f);

  const Variant& variant() const { return v_; }
  int dim() const;
  bool is_eigen() const;
  // |k|^2 for the eigen families, Delta f = -|k|^2 f
  double eigen_k2() const;
  // highest supported Laplacian power, -1 when unbounded
  int max_laplacian_order() const;
  std::string describe() const;

  template <Real T>
  T value(std::span<const T> x) const;
  template <Real T>
  T iterated_laplacian(std::span<const T> x, int j) const;

 private:
  Variant v_;
};

// ---- compiled representation used by the hot loops ----

struct QMonomial {
  quad coef;
  std::vector<int> exps;
};

struct Atom {
  enum class Kind { plane, sine, poly, gauss };
  Kind kind = Kind::plane;
  quad coeff = 1;
  // eigen families
  std::vector<double> k;
  double phase = 0.0;
  double k2 = 0.0;
  // polynomial: lap_chain[j] = Delta^j of the polynomial, trailing zero chains dropped
  std::vector<std::vector<QMonomial>> lap_chain;
  // gaussian: coeff * P(rho) exp(-rho/width^2), rho = |x-center|^2
  std::vector<double> center;
  double width = 1.0;
  std::vector<quad> radial_poly;

  template <Real T>
  T value(std::span<const T> x) const;
  template <Real T>
  T analytic_sphere_mean(std::span<const T> x, T r, int n) const;
};

struct FieldTerm {
  quad coeff = 1;
  SmoothField field;
  int lap = 0;
};

// finite linear combination sum c_i Delta^{l_i} f_i with exact bookkeeping
class FieldCombination {
 public:
  FieldCombination() = default;
  explicit FieldCombination(int dim) : dim_(dim) {}

  static FieldCombination single(const SmoothField& f, quad coeff = 1, int lap = 0);

  int dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  const std::vector<FieldTerm>& terms() const { return terms_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  FieldCombination& add(const FieldCombination& other, quad scale = 1, int extra_lap = 0);
  FieldCombination laplacian(int j) const;
  FieldCombination scaled(quad s) const;

  // true when every atom has a closed-form sphere mean
  bool analytic_means() const;
  int max_laplacian_order() const;
  std::string describe() const;

  template <Real T>
  T value(std::span<const T> x) const {
    T s = 0;
    for (const auto& a : atoms_) s += a.value<T>(x);
    return s;
  }
  template <Real T>
  T value(const std::vector<T>& x) const {
    return value<T>(std::span<const T>(x));
  }
  template <Real T>
  T iterated_laplacian(std::span<const T> x, int j) const {
    return laplacian(j).value<T>(x);
  }
  template <Real T>
  T analytic_sphere_mean(std::span<const T> x, T r) const {
    T s = 0;
    for (const auto& a : atoms_) s += a.analytic_sphere_mean<T>(x, r, dim_);
    return s;
  }

 private:
  void rebuild();
  int dim_ = 0;
  std::vector<FieldTerm> terms_;
  std::vector<Atom> atoms_;
};

template <Real T>
T iterated_laplacian(const SmoothField& f, std::span<const T> x, int j) {
  return f.iterated_laplacian<T>(x, j);
}

// data after the transforms feeding the poly-wave problem
struct TransformedData {
  int m = 0;
  double alpha = 0.0;
  double lambda = 0.0;
  std::vector<FieldCombination> capital_phi;
  std::vector<FieldCombination> capital_psi;
  std::vector<FieldCombination> f;
  std::vector<FieldCombination> g;
  std::vector<quad> a;
  std::vector<std::string> warnings;
};

quad coefficient_a_q(int j, quad alpha);
double coefficient_a(int j, double alpha);

// Phi_k = sum_j a_j C(k,j) lambda^{2(k-j)} phi_j,  f_k = sum_j C(k,j) (-Delta)^{k-j} Phi_j
// (psi side identical with Psi, g)
TransformedData build_transformed_data(const std::vector<FieldCombination>& phi,
                                       const std::vector<FieldCombination>& psi, int m, double lambda,
                                       double alpha);

// data of the second-kind problem: Psi*_k and g*_k in capital_psi / g
TransformedData build_psi_star_data(const std::vector<FieldCombination>& psi_star, int m, double lambda,
                                    double alpha);

// psi_k = prod_{j=1..k} (1 - alpha/j) psi*_k and its inverse
quad psi_condition_factor(int k, quad alpha);
std::vector<FieldCombination> psi_star_from_psi(const std::vector<FieldCombination>& psi, double alpha);

// "planewave:k=[1 0 0],amp=1,phase=0 + sineprod:k=[1 1 0]"; families planewave, sineprod, poly,
// gaussian, zero
FieldCombination parse_field_spec(const std::string& text, int dim);

// ---------------- template bodies ----------------

template <Real T>
T SmoothField::value(std::span<const T> x) const {
  return FieldCombination::single(*this).value<T>(x);
}

template <Real T>
T SmoothField::iterated_laplacian(std::span<const T> x, int j) const {
  if (j < 0) throw DomainError("iterated_laplacian: negative order");
  return FieldCombination::single(*this, 1, j).value<T>(x);
}

namespace detail {

template <Real T>
T poly_eval(const std::vector<QMonomial>& p, std::span<const T> x) {
  T s = 0;
  for (const auto& m : p) {
    T v = T(m.coef);
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i]) v *= num::ipow(x[i], m.exps[i]);
    s += v;
  }
  return s;
}

}  // namespace detail

template <Real T>
T Atom::value(std::span<const T> x) const {
  switch (kind) {
    case Kind::plane: {
      T d = T(phase);
      for (std::size_t i = 0; i < k.size(); ++i) d += T(k[i]) * x[i];
      return T(coeff) * num::cos(d);
    }
    case Kind::sine: {
      T p = T(coeff);
      for (std::size_t i = 0; i < k.size(); ++i) p *= num::sin(T(k[i]) * x[i]);
      return p;
    }
    case Kind::poly:
      return lap_chain.empty() ? T(0) : T(coeff) * detail::poly_eval<T>(lap_chain[0], x);
    case Kind::gauss: {
      T rho = 0;
      for (std::size_t i = 0; i < center.size(); ++i) {
        T d = x[i] - T(center[i]);
        rho += d * d;
      }
      T p = 0;
      for (std::size_t i = radial_poly.size(); i-- > 0;) p = p * rho + T(radial_poly[i]);
      return T(coeff) * p * num::exp(-rho / (T(width) * T(width)));
    }
  }
  return T(0);
}

template <Real T>
T Atom::analytic_sphere_mean(std::span<const T> x, T r, int n) const {
  switch (kind) {
    case Kind::plane:
    case Kind::sine: {
      T kk = num::sqrt(T(k2));
      return value<T>(x) * bessel_clifford<T>(T(n) / 2 - 1, kk * r);
    }
    case Kind::poly: {
      // Pizzetti expansion, finite for polynomials
      T s = 0, r2j = 1, denom = 1;
      for (std::size_t j = 0; j < lap_chain.size(); ++j) {
        if (j > 0) {
          r2j *= r * r;
          denom *= T(2 * j) * T(n + 2 * (int(j) - 1));
        }
        s += r2j * detail::poly_eval<T>(lap_chain[j], x) / denom;
      }
      return T(coeff) * s;
    }
    case Kind::gauss:
      throw CapabilityError("sphere mean of a gaussian field has no closed form; use quadrature mode");
  }
  return T(0);
}

}  // namespace kgf
