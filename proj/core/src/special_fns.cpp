#include "kgf/special_fns.hpp"

namespace kgf {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError(std::string(what) + ": overflow");
  return r;
}

}  // namespace

std::uint64_t double_factorial_odd(int p) {
  if (p < 0) throw DomainError("double_factorial_odd: p must be >= 0");
  std::uint64_t r = 1;
  for (int i = 1; i <= p; ++i) r = checked_mul(r, std::uint64_t(2 * i - 1), "double_factorial_odd");
  return r;
}

std::uint64_t odd_product_upto(int q) {
  std::uint64_t r = 1;
  for (int i = 3; i <= q; i += 2) r = checked_mul(r, std::uint64_t(i), "odd_product_upto");
  return r;
}

std::uint64_t even_product_upto(int q) {
  std::uint64_t r = 1;
  for (int i = 2; i <= q; i += 2) r = checked_mul(r, std::uint64_t(i), "even_product_upto");
  return r;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) is divisible by i at every step
    r = checked_mul(r, std::uint64_t(n - k + i), "binomial") / std::uint64_t(i);
  }
  return r;
}

SolutionConsts solution_consts(int n, double alpha) {
  if (n < 2) throw DomainError("solution_consts: n must be >= 2");
  if (!(alpha > 0)) throw DomainError("solution_consts: alpha must be > 0");
  const double wn = sphere_area_const<double>(n);
  const double g = 1.0 / (double(odd_product_upto(n - 2)) * wn);
  const double gb = g / std::tgamma(alpha);
  const double gt = 1.0 / (sphere_area_const<double>(n + 1) * double(even_product_upto(n - 1)));
  return {g, gb, gt};
}

}  // namespace kgf
