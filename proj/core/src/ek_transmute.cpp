#include "kgf/ek_transmute.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace kgf {

Rational RecurrenceTable::A(int m, int j) const {
  if (m < 0 || m > m_max || j < 0 || j > m) return Rational(0);
  return a[m][j];
}

Rational RecurrenceTable::B(int m, int j) const {
  if (m < 0 || m > m_max || j < 0 || j > m) return Rational(0);
  return b[m][j];
}

RecurrenceTable recurrence_constants(int m_max) {
  if (m_max < 0) throw DomainError("recurrence_constants: m_max must be >= 0");
  RecurrenceTable t;
  t.m_max = m_max;
  t.a.assign(m_max + 1, {});
  t.b.assign(m_max + 1, {});
  t.a[0] = {Rational(1)};
  const Rational half(1, 2);
  for (int m = 0; m <= m_max; ++m) {
    t.b[m].resize(m + 1);
    for (int j = 0; j <= m; ++j) t.b[m][j] = half * t.a[m][j] + Rational(2 * (j + 1)) * t.A(m, j + 1);
    if (m == m_max) break;
    // j runs to m+1; the top entry is the same relation with b_{m,m+1} = 0
    t.a[m + 1].resize(m + 2);
    for (int j = 0; j <= m + 1; ++j) t.a[m + 1][j] = half * t.B(m, j - 1) + Rational(2 * j + 1) * t.B(m, j);
  }
  return t;
}

std::vector<Rational> lemma1_constants(int p) {
  if (p < 1) throw DomainError("lemma1_constants: p must be >= 1");
  // terms c r^e w^(j), keyed by (e, j)
  std::map<std::pair<int, int>, Rational> terms{{{2 * p - 1, 0}, Rational(1)}};
  for (int step = 0; step < p - 1; ++step) {
    std::map<std::pair<int, int>, Rational> next;
    for (const auto& [key, c] : terms) {
      auto [e, j] = key;
      if (e != 0) next[{e - 2, j}] += c * e;
      next[{e - 1, j + 1}] += c;
    }
    terms.swap(next);
  }
  std::vector<Rational> A(p, Rational(0));
  for (const auto& [key, c] : terms) {
    auto [e, j] = key;
    if (c == 0) continue;
    if (e != j + 1 || j >= p) throw AccuracyError("lemma1_constants: unexpected term in expansion");
    A[j] += c;
  }
  return A;
}

std::vector<RelationCheck> check_recurrence_relations(const RecurrenceTable& t) {
  std::vector<RelationCheck> out;
  const Rational half(1, 2);
  {
    bool ok = t.A(0, 0) == 1 && t.B(0, 0) == half;
    out.push_back({"a00 = 1, b00 = 1/2", ok, "a00=" + t.A(0, 0).str() + " b00=" + t.B(0, 0).str()});
  }
  {
    bool ok = true;
    std::string bad;
    for (int m = 0; m <= t.m_max; ++m)
      for (int j = 0; j <= m; ++j)
        if (t.B(m, j) != half * t.A(m, j) + Rational(2 * (j + 1)) * t.A(m, j + 1)) {
          ok = false;
          bad = "m=" + std::to_string(m) + " j=" + std::to_string(j);
        }
    out.push_back({"b_mj = a_mj/2 + 2(j+1) a_m(j+1)", ok, bad});
  }
  {
    bool ok = true;
    std::string bad;
    for (int m = 0; m < t.m_max; ++m)
      for (int j = 1; j <= m + 1; ++j)
        if (t.A(m + 1, j) != half * t.B(m, j - 1) + Rational(2 * j + 1) * t.B(m, j)) {
          ok = false;
          bad = "m=" + std::to_string(m) + " j=" + std::to_string(j);
        }
    out.push_back({"a_(m+1)j = b_m(j-1)/2 + (2j+1) b_mj", ok, bad});
  }
  {
    bool ok = true;
    std::string bad;
    for (int m = 0; m < t.m_max; ++m) {
      Rational closed = Rational(double_factorial_odd(m + 1)) / Rational(boost::multiprecision::cpp_int(1) << (m + 1));
      if (t.A(m + 1, 0) != t.B(m, 0) || t.B(m, 0) != closed) {
        ok = false;
        bad = "m=" + std::to_string(m);
      }
    }
    out.push_back({"a_(m+1)0 = b_m0 = 2^-(m+1) (2m+1)!!", ok, bad});
  }
  {
    bool ok = true;
    for (int m = 0; m <= t.m_max; ++m)
      if (t.A(m, m + 1) != 0 || t.B(m, m + 1) != 0) ok = false;
    out.push_back({"a_mj = b_mj = 0 for j > m", ok, ""});
  }
  return out;
}

// ---------------- test functions ----------------

std::string EvenTestFunction::describe() const {
  std::ostringstream os;
  switch (kind) {
    case TestFunctionKind::cosine: os << "cos(" << a << " t)"; break;
    case TestFunctionKind::cosine_minus_one: os << "cos(" << a << " t)-1"; break;
    case TestFunctionKind::gaussian: os << "exp(-" << a << " t^2)"; break;
  }
  return os.str();
}

quad EvenTestFunction::value(quad t) const {
  switch (kind) {
    case TestFunctionKind::cosine: return cosq(quad(a) * t);
    case TestFunctionKind::cosine_minus_one: return cosq(quad(a) * t) - 1;
    case TestFunctionKind::gaussian: return expq(-quad(a) * t * t);
  }
  return 0;
}

quad EvenTestFunction::derivative(quad t) const {
  switch (kind) {
    case TestFunctionKind::cosine:
    case TestFunctionKind::cosine_minus_one: return -quad(a) * sinq(quad(a) * t);
    case TestFunctionKind::gaussian: return -2 * quad(a) * t * expq(-quad(a) * t * t);
  }
  return 0;
}

quad EvenTestFunction::bessel_power(double eta, int m, quad t) const {
  // f = sum c_i t^{2i};  B_eta t^{2i} = 4 i (i + eta) t^{2i-2}
  const quad qa = a, qe = eta, t2 = t * t;
  quad c = 1, sum = 0;
  for (int i = 0; i < 400; ++i) {
    if (i > 0) {
      if (kind == TestFunctionKind::gaussian) c *= -qa / i;
      else c *= -qa * qa / (quad(2 * i - 1) * quad(2 * i));
    }
    if (i < m) continue;
    if (i == 0 && kind == TestFunctionKind::cosine_minus_one) continue;
    quad factor = 1;
    for (int l = 0; l < m; ++l) factor *= 4 * quad(i - l) * (quad(i - l) + qe);
    quad term = c * factor * powq(t2, i - m);
    sum += term;
    if (i > m + 8 && fabsq(term) <= quad(1e-40) * (fabsq(sum) + 1)) break;
  }
  return sum;
}

double estimate_order(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(err[i] > 0) || !(h[i] > 0)) return std::nan("");
    double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::string fmtp(const EKParams& p) {
  std::ostringstream os;
  os << "eta=" << p.eta << " alpha=" << p.alpha << " lambda=" << p.lambda;
  return os.str();
}

}  // namespace

void grade_ladder(IdentityLadder& L, double expected_order, double tolerance) {
  L.order = estimate_order(L.h, L.gap);
  L.tolerance = tolerance;
  L.value = L.gap.empty() ? 0.0 : L.gap.back();
  L.pass = std::isfinite(L.order) && std::fabs(L.order - expected_order) <= L.tolerance;
}

IdentityLadder theorem1_ladder(const EvenTestFunction& f, const EKParams& p, int m, double x,
                               const std::vector<double>& hs, int radial_order) {
  const auto& rule = radial_rule<quad>(p.alpha - 1, radial_order, 2 * p.eta + 1);
  auto Jf = [&](quad y) { return lowndes_apply<quad>([&](quad t) { return f.value(t); }, p, y, rule); };
  const quad rhs = lowndes_apply<quad>([&](quad t) { return f.bessel_power(p.eta, m, t); }, p, quad(x), rule);
  IdentityLadder L;
  std::ostringstream os;
  os << "commutation m=" << m << " f=" << f.describe() << " " << fmtp(p) << " x=" << x;
  L.name = os.str();
  const quad lam2 = quad(p.lambda) * quad(p.lambda);
  for (double h : hs) {
    quad lhs = bessel_op_apply<quad>(Jf, quad(p.eta + p.alpha), m, quad(x), quad(h), lam2);
    L.h.push_back(h);
    L.gap.push_back(double(fabsq(lhs - rhs)));
  }
  grade_ladder(L);
  return L;
}

IdentityLadder corollary2_ladder(double a, double alpha, double lambda, double x, const std::vector<double>& hs,
                                 int radial_order) {
  if (!(alpha > 0)) throw DomainError("corollary2_ladder: alpha must be > 0");
  const auto& rule = radial_rule<quad>(alpha - 1, radial_order, 1.0);
  EvenTestFunction f{TestFunctionKind::cosine_minus_one, a};
  const quad nu = quad(alpha) - 1, lam = lambda;
  // K(y) = int_0^y (y^2-t^2)^{alpha-1} Jbar(lambda sqrt(y^2-t^2)) g(t) t dt
  auto K = [&](quad y, auto&& g) {
    quad s = 0;
    for (int i = 0; i < rule.order; ++i) {
      quad si = rule.nodes[i];
      quad kern = lambda == 0 ? quad(1) : bessel_clifford<quad>(nu, lam * y * sqrtq(1 - si * si));
      s += rule.weights[i] * kern * g(y * si);
    }
    return s * powq(y, 2 * quad(alpha));
  };
  auto fv = [&](quad t) { return f.value(t); };
  auto dfv = [&](quad t) { return f.derivative(t) / t; };
  const quad rhs = K(quad(x), dfv);
  IdentityLadder L;
  std::ostringstream os;
  os << "radial commutation f=" << f.describe() << " alpha=" << alpha << " lambda=" << lambda << " x=" << x;
  L.name = os.str();
  for (double h : hs) {
    quad qh = h;
    quad lhs = (K(quad(x) + qh, fv) - K(quad(x) - qh, fv)) / (2 * qh * quad(x));
    L.h.push_back(h);
    L.gap.push_back(double(fabsq(lhs - rhs)));
  }
  grade_ladder(L);
  return L;
}

IdentityLadder theorem6_check(const EvenTestFunction& f, const EKParams& p, double x0, int radial_order) {
  const auto& rule = radial_rule<quad>(p.alpha - 1, radial_order, 2 * p.eta + 1);
  auto Jf = [&](quad y) { return lowndes_apply<quad>([&](quad t) { return f.value(t); }, p, y, rule); };
  std::vector<quad> xs2, A, D;
  IdentityLadder L;
  for (int lvl = 0; lvl < 3; ++lvl) {
    quad x = quad(x0) / quad(1 << lvl), h = x / 8;
    A.push_back(bessel_op_apply<quad>(Jf, quad(p.eta + p.alpha), 1, x, h));
    D.push_back(central_derivative<quad>(Jf, x, 2, h));
    xs2.push_back(x * x);
    L.h.push_back(double(x));
  }
  quad A0 = neville_at_zero<quad>(xs2, A), D0 = neville_at_zero<quad>(xs2, D);
  quad ratio = (quad(p.alpha + p.eta + 1)) / quad(0.5);
  quad gap = fabsq(A0 - ratio * D0);
  std::ostringstream os;
  os << "origin limit m=1 f=" << f.describe() << " " << fmtp(p);
  L.name = os.str();
  L.value = double(gap);
  L.tolerance = 1e-6 * std::max(1.0, double(fabsq(A0)));
  L.gap = {L.value};
  L.order = std::nan("");
  L.pass = L.value <= L.tolerance;
  return L;
}

IdentityLadder ek_unit_check(double eta, double alpha, double x, int radial_order) {
  const auto& rule = radial_rule<double>(alpha - 1, radial_order, 2 * eta + 1);
  double v = erdelyi_kober_apply<double>([](double) { return 1.0; }, eta, alpha, x, rule);
  double ex = std::tgamma(eta + 1) / std::tgamma(alpha + eta + 1);
  IdentityLadder L;
  std::ostringstream os;
  os << "EK unit: eta=" << eta << " alpha=" << alpha << " x=" << x;
  L.name = os.str();
  L.value = std::fabs(v - ex);
  L.gap = {L.value};
  L.tolerance = 1e-10;
  L.order = std::nan("");
  L.pass = L.value <= L.tolerance;
  return L;
}


IdentityLadder derivative_formula_ladder(const EvenTestFunction& f, const EKParams& p, int m, bool odd, double x,
                                         const std::vector<double>& hs, const RecurrenceTable& table,
                                         int radial_order) {
  if (m > table.m_max) throw ContractError("derivative_formula_ladder: table too small");
  const auto& rule = radial_rule<quad>(p.alpha - 1, radial_order, 2 * p.eta + 1);
  auto Jf = [&](quad y) { return lowndes_apply<quad>([&](quad t) { return f.value(t); }, p, y, rule); };
  const int sh = odd ? 1 : 0;
  const quad lam2 = quad(p.lambda) * quad(p.lambda), qx = x;
  quad rhs = 0;
  for (int j = 0; j <= m; ++j) {
    Rational c = odd ? table.B(m, j) : table.A(m, j);
    if (c == 0) continue;
    const int K = m + j + sh;
    // (B - lambda^2)^K f = sum_i C(K,i) (-lambda^2)^{K-i} B^i f
    auto g = [&](quad t) {
      quad s = 0;
      for (int i = 0; i <= K; ++i)
        s += quad(binomial(K, i)) * powq(-lam2, K - i) * f.bessel_power(p.eta, i, t);
      return s;
    };
    EKParams q{p.eta, p.alpha + m + j + sh, p.lambda};
    const auto& r2 = radial_rule<quad>(q.alpha - 1, radial_order, 2 * q.eta + 1);
    quad cq = quad(static_cast<double>(numerator(c))) / quad(static_cast<double>(denominator(c)));
    rhs += cq * powq(qx, 2 * j + sh) * lowndes_apply<quad>(g, q, qx, r2);
  }
  IdentityLadder L;
  std::ostringstream os;
  os << "derivative formula order " << (2 * m + sh) << " f=" << f.describe() << " " << fmtp(p) << " x=" << x;
  L.name = os.str();
  for (double h : hs) {
    quad lhs = central_derivative<quad>(Jf, qx, 2 * m + sh, quad(h));
    L.h.push_back(h);
    L.gap.push_back(double(fabsq(lhs - rhs)));
  }
  grade_ladder(L);
  return L;
}

std::vector<IdentityLadder> operator_identity_suite(int radial_order) {
  std::vector<IdentityLadder> out;
  for (auto [eta, alpha] : {std::pair{-0.5, 0.75}, std::pair{0.0, 1.3}, std::pair{1.0, 0.5}})
    out.push_back(ek_unit_check(eta, alpha, 1.3, radial_order));

  const std::vector<double> hs{0.04, 0.02, 0.01};
  const std::vector<EKParams> params{{-0.5, 0.75, 1.0}, {0.0, 1.3, 0.5}};
  const std::vector<EvenTestFunction> fns{{TestFunctionKind::cosine, 1.3}, {TestFunctionKind::gaussian, 1.0}};
  for (const auto& p : params)
    for (int m : {1, 2})
      for (const auto& f : fns)
        for (double x : {0.5, 1.75, 3.0}) out.push_back(theorem1_ladder(f, p, m, x, hs, radial_order));

  for (auto [alpha, lambda] : {std::pair{0.75, 1.0}, std::pair{1.3, 0.5}})
    for (double x : {0.5, 1.75, 3.0}) out.push_back(corollary2_ladder(1.3, alpha, lambda, x, hs, radial_order));

  for (const auto& p : params)
    for (const auto& f : fns) out.push_back(theorem6_check(f, p, 0.1, radial_order));

  const auto table = recurrence_constants(3);
  for (const auto& p : params)
    for (int m : {0, 1, 2})
      for (bool odd : {false, true}) {
        if (m == 0 && !odd) continue;
        out.push_back(derivative_formula_ladder(fns[0], p, m, odd, 1.2, hs, table, radial_order));
      }
  return out;
}

}  // namespace kgf
