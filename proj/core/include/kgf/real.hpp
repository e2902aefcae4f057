#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <quadmath.h>

namespace kgf {

using quad = __float128;

template <class T>
concept Real = std::same_as<T, double> || std::same_as<T, quad>;

namespace num {

inline double sqrt(double x) { return std::sqrt(x); }
inline double cbrt(double x) { return std::cbrt(x); }
inline double cos(double x) { return std::cos(x); }
inline double sin(double x) { return std::sin(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double abs(double x) { return std::fabs(x); }
inline double tgamma(double x) { return std::tgamma(x); }
inline double lgamma(double x) { return std::lgamma(x); }
inline bool isfinite(double x) { return std::isfinite(x); }

inline quad sqrt(quad x) { return sqrtq(x); }
inline quad cbrt(quad x) { return cbrtq(x); }
inline quad cos(quad x) { return cosq(x); }
inline quad sin(quad x) { return sinq(x); }
inline quad exp(quad x) { return expq(x); }
inline quad log(quad x) { return logq(x); }
inline quad pow(quad x, quad y) { return powq(x, y); }
inline quad abs(quad x) { return fabsq(x); }
inline quad tgamma(quad x) { return tgammaq(x); }
inline quad lgamma(quad x) { return lgammaq(x); }
inline bool isfinite(quad x) { return finiteq(x) != 0; }

template <Real T>
inline T pi() {
  if constexpr (std::same_as<T, quad>) return M_PIq;
  else return 3.14159265358979323846;
}

template <Real T>
inline T epsilon() {
  if constexpr (std::same_as<T, quad>) return FLT128_EPSILON;
  else return std::numeric_limits<double>::epsilon();
}

// integer power by squaring
template <Real T>
inline T ipow(T x, int k) {
  T r = 1;
  bool neg = k < 0;
  unsigned e = neg ? unsigned(-k) : unsigned(k);
  while (e) {
    if (e & 1u) r *= x;
    x *= x;
    e >>= 1;
  }
  return neg ? T(1) / r : r;
}

template <Real T>
inline double to_double(T x) { return static_cast<double>(x); }

}  // namespace num
}  // namespace kgf
