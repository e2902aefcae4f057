#include "kgf/fields.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

namespace kgf {

SmoothField::SmoothField(PlaneWave f) : v_(std::move(f)) {}
SmoothField::SmoothField(SineProduct f) : v_(std::move(f)) {}
SmoothField::SmoothField(Polynomial f) : v_(std::move(f)) {}
SmoothField::SmoothField(Gaussian f) : v_(std::move(f)) {
  if (!(std::get<Gaussian>(v_).width > 0)) throw DomainError("gaussian width must be > 0");
}

int SmoothField::dim() const {
  return std::visit(
      [](const auto& f) -> int {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PlaneWave> || std::is_same_v<F, SineProduct>) return int(f.k.size());
        else if constexpr (std::is_same_v<F, Polynomial>) return f.dim;
        else return int(f.center.size());
      },
      v_);
}

bool SmoothField::is_eigen() const {
  return std::holds_alternative<PlaneWave>(v_) || std::holds_alternative<SineProduct>(v_);
}

namespace {

double norm2(const std::vector<double>& k) {
  double s = 0;
  for (double v : k) s += v * v;
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt_vec(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
  return s + "]";
}

}  // namespace

double SmoothField::eigen_k2() const {
  if (auto* p = std::get_if<PlaneWave>(&v_)) return norm2(p->k);
  if (auto* s = std::get_if<SineProduct>(&v_)) return norm2(s->k);
  throw CapabilityError("eigen_k2: field is not a Laplacian eigenfunction");
}

int SmoothField::max_laplacian_order() const {
  return std::holds_alternative<Gaussian>(v_) ? kGaussianMaxLaplacian : -1;
}

std::string SmoothField::describe() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PlaneWave>)
          return "planewave:k=" + fmt_vec(f.k) + ",amp=" + fmt(f.amp) + ",phase=" + fmt(f.phase);
        else if constexpr (std::is_same_v<F, SineProduct>)
          return "sineprod:k=" + fmt_vec(f.k) + ",amp=" + fmt(f.amp);
        else if constexpr (std::is_same_v<F, Polynomial>) {
          std::string s = "poly:terms=[";
          for (std::size_t i = 0; i < f.terms.size(); ++i) {
            if (i) s += "; ";
            s += fmt(f.terms[i].coef);
            for (int e : f.terms[i].exps) s += " " + std::to_string(e);
          }
          return s + "]";
        } else
          return "gaussian:center=" + fmt_vec(f.center) + ",width=" + fmt(f.width) + ",amp=" + fmt(f.amp);
      },
      v_);
}

// ---------------- FieldCombination ----------------

namespace {

using PolyMap = std::map<std::vector<int>, quad>;

PolyMap poly_laplacian(const PolyMap& p) {
  PolyMap out;
  for (const auto& [e, c] : p) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 2) continue;
      auto e2 = e;
      e2[i] -= 2;
      out[e2] += c * quad(e[i]) * quad(e[i] - 1);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

std::vector<QMonomial> to_monomials(const PolyMap& p) {
  std::vector<QMonomial> v;
  for (const auto& [e, c] : p) v.push_back({c, e});
  return v;
}

// Delta acting on P(rho) exp(-rho/a^2), rho = |x-c|^2, returns the new P
std::vector<quad> gauss_laplacian(const std::vector<quad>& P, quad a, int n) {
  const quad ia2 = 1 / (a * a);
  std::size_t deg = P.size();
  std::vector<quad> d1(deg, 0), d2(deg, 0);
  for (std::size_t i = 1; i < deg; ++i) d1[i - 1] = P[i] * quad(i);
  for (std::size_t i = 2; i < deg; ++i) d2[i - 2] = P[i] * quad(i) * quad(i - 1);
  std::vector<quad> out(deg + 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    quad inner = d2[i] - 2 * d1[i] * ia2 + P[i] * ia2 * ia2;  // coefficient of rho^i
    out[i + 1] += 4 * inner;
    out[i] += quad(2 * n) * (d1[i] - P[i] * ia2);
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

quad ipow_q(quad x, int k) {
  quad r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

FieldCombination FieldCombination::single(const SmoothField& f, quad coeff, int lap) {
  FieldCombination c(f.dim());
  c.terms_.push_back({coeff, f, lap});
  c.rebuild();
  return c;
}

FieldCombination& FieldCombination::add(const FieldCombination& other, quad scale, int extra_lap) {
  if (other.empty()) return *this;
  if (dim_ == 0) dim_ = other.dim_;
  if (other.dim_ != dim_) throw ContractError("FieldCombination::add: dimension mismatch");
  for (const auto& t : other.terms_) terms_.push_back({t.coeff * scale, t.field, t.lap + extra_lap});
  rebuild();
  return *this;
}

FieldCombination FieldCombination::laplacian(int j) const {
  FieldCombination c(dim_);
  for (const auto& t : terms_) c.terms_.push_back({t.coeff, t.field, t.lap + j});
  c.rebuild();
  return c;
}

FieldCombination FieldCombination::scaled(quad s) const {
  FieldCombination c(dim_);
  for (const auto& t : terms_) c.terms_.push_back({t.coeff * s, t.field, t.lap});
  c.rebuild();
  return c;
}

bool FieldCombination::analytic_means() const {
  return std::none_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.kind == Atom::Kind::gauss; });
}

int FieldCombination::max_laplacian_order() const {
  int r = -1;
  for (const auto& t : terms_) {
    int m = t.field.max_laplacian_order();
    if (m >= 0) r = (r < 0) ? m - t.lap : std::min(r, m - t.lap);
  }
  return r;
}

std::string FieldCombination::describe() const {
  if (terms_.empty()) return "zero";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << static_cast<double>(terms_[i].coeff) << "*";
    if (terms_[i].lap) os << "Lap^" << terms_[i].lap << " ";
    os << terms_[i].field.describe();
  }
  return os.str();
}

void FieldCombination::rebuild() {
  atoms_.clear();
  PolyMap poly;
  bool have_poly = false;
  for (const auto& t : terms_) {
    if (t.lap < 0) throw DomainError("negative Laplacian power");
    if (t.field.dim() != dim_) throw ContractError("field dimension does not match combination");
    const auto& v = t.field.variant();
    if (auto* p = std::get_if<PlaneWave>(&v)) {
      double k2 = norm2(p->k);
      quad c = t.coeff * quad(p->amp) * ipow_q(-quad(k2), t.lap);
      if (c == 0) continue;
      auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& a) {
        return a.kind == Atom::Kind::plane && a.k == p->k && a.phase == p->phase;
      });
      if (it != atoms_.end()) {
        it->coeff += c;
      } else {
        Atom a;
        a.kind = Atom::Kind::plane;
        a.coeff = c;
        a.k = p->k;
        a.phase = p->phase;
        a.k2 = k2;
        atoms_.push_back(std::move(a));
      }
    } else if (auto* s = std::get_if<SineProduct>(&v)) {
      double k2 = norm2(s->k);
      quad c = t.coeff * quad(s->amp) * ipow_q(-quad(k2), t.lap);
      if (c == 0) continue;
      auto it = std::find_if(atoms_.begin(), atoms_.end(),
                             [&](const Atom& a) { return a.kind == Atom::Kind::sine && a.k == s->k; });
      if (it != atoms_.end()) {
        it->coeff += c;
      } else {
        Atom a;
        a.kind = Atom::Kind::sine;
        a.coeff = c;
        a.k = s->k;
        a.k2 = k2;
        atoms_.push_back(std::move(a));
      }
    } else if (auto* q = std::get_if<Polynomial>(&v)) {
      PolyMap p;
      for (const auto& m : q->terms) {
        if (int(m.exps.size()) != dim_) throw ContractError("polynomial exponent count does not match dimension");
        p[m.exps] += quad(m.coef);
      }
      for (int j = 0; j < t.lap; ++j) p = poly_laplacian(p);
      for (const auto& [e, c] : p) poly[e] += c * t.coeff;
      have_poly = true;
    } else {
      const auto& g = std::get<Gaussian>(v);
      if (t.lap > kGaussianMaxLaplacian)
        throw CapabilityError("gaussian field supports iterated Laplacians up to order " +
                              std::to_string(kGaussianMaxLaplacian));
      std::vector<quad> P{quad(g.amp)};
      for (int j = 0; j < t.lap; ++j) P = gauss_laplacian(P, quad(g.width), dim_);
      auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& a) {
        return a.kind == Atom::Kind::gauss && a.center == g.center && a.width == g.width;
      });
      if (it == atoms_.end()) {
        Atom a;
        a.kind = Atom::Kind::gauss;
        a.coeff = 1;
        a.center = g.center;
        a.width = g.width;
        atoms_.push_back(std::move(a));
        it = atoms_.end() - 1;
      }
      if (it->radial_poly.size() < P.size()) it->radial_poly.resize(P.size(), 0);
      for (std::size_t i = 0; i < P.size(); ++i) it->radial_poly[i] += t.coeff * P[i];
    }
  }
  if (have_poly) {
    for (auto it = poly.begin(); it != poly.end();) it = (it->second == 0) ? poly.erase(it) : std::next(it);
    if (!poly.empty()) {
      Atom a;
      a.kind = Atom::Kind::poly;
      a.coeff = 1;
      while (!poly.empty()) {
        a.lap_chain.push_back(to_monomials(poly));
        poly = poly_laplacian(poly);
      }
      atoms_.push_back(std::move(a));
    }
  }
}

// ---------------- data transforms ----------------

quad coefficient_a_q(int j, quad alpha) {
  if (j < 0) throw DomainError("coefficient_a: j must be >= 0");
  return gamma_ratio<quad>(quad(j) + quad(0.5) + alpha, quad(j) + quad(0.5));
}

double coefficient_a(int j, double alpha) { return static_cast<double>(coefficient_a_q(j, quad(alpha))); }

namespace {

int infer_dim(const std::vector<FieldCombination>& a, const std::vector<FieldCombination>& b) {
  for (const auto& c : a)
    if (c.dim()) return c.dim();
  for (const auto& c : b)
    if (c.dim()) return c.dim();
  return 0;
}

std::vector<FieldCombination> pad(const std::vector<FieldCombination>& v, int m, int dim, const char* what) {
  if (int(v.size()) > m)
    throw DomainError(std::string(what) + ": more data functions than the iteration order m");
  std::vector<FieldCombination> out(v.begin(), v.end());
  while (int(out.size()) < m) out.emplace_back(dim);
  for (auto& c : out)
    if (c.dim() == 0) c = FieldCombination(dim);
  return out;
}

// F_k = sum_j coef_j C(k,j) lambda^{2(k-j)} src_j
std::vector<FieldCombination> lambda_mix(const std::vector<FieldCombination>& src, const std::vector<quad>& coef,
                                         quad lambda, int dim) {
  int m = int(src.size());
  std::vector<FieldCombination> out;
  const quad l2 = lambda * lambda;
  for (int k = 0; k < m; ++k) {
    FieldCombination c(dim);
    for (int j = 0; j <= k; ++j) {
      quad w = coef[j] * quad(binomial(k, j)) * ipow_q(l2, k - j);
      if (w != 0) c.add(src[j], w);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// f_k = sum_j C(k,j) (-1)^{k-j} Delta^{k-j} F_j
std::vector<FieldCombination> wave_mix(const std::vector<FieldCombination>& F, int dim) {
  int m = int(F.size());
  std::vector<FieldCombination> out;
  for (int k = 0; k < m; ++k) {
    FieldCombination c(dim);
    for (int j = 0; j <= k; ++j) {
      quad s = ((k - j) % 2) ? quad(-1) : quad(1);
      c.add(F[j], s * quad(binomial(k, j)), k - j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

TransformedData build_transformed_data(const std::vector<FieldCombination>& phi,
                                       const std::vector<FieldCombination>& psi, int m, double lambda,
                                       double alpha) {
  if (m < 1) throw DomainError("build_transformed_data: m must be >= 1");
  int dim = infer_dim(phi, psi);
  TransformedData d;
  d.m = m;
  d.alpha = alpha;
  d.lambda = lambda;
  auto ph = pad(phi, m, dim, "phi");
  auto ps = pad(psi, m, dim, "psi");
  for (int j = 0; j < m; ++j) d.a.push_back(coefficient_a_q(j, quad(alpha)));
  d.capital_phi = lambda_mix(ph, d.a, quad(lambda), dim);
  d.capital_psi = lambda_mix(ps, d.a, quad(lambda), dim);
  d.f = wave_mix(d.capital_phi, dim);
  d.g = wave_mix(d.capital_psi, dim);
  return d;
}

TransformedData build_psi_star_data(const std::vector<FieldCombination>& psi_star, int m, double lambda,
                                    double alpha) {
  if (m < 1) throw DomainError("build_psi_star_data: m must be >= 1");
  int dim = infer_dim(psi_star, {});
  TransformedData d;
  d.m = m;
  d.alpha = alpha;
  d.lambda = lambda;
  if (!(alpha > 0 && alpha < 0.5))
    d.warnings.push_back("alpha = " + fmt(alpha) +
                         " outside (0, 1/2): the second-kind problem is only covered for 0 < alpha < 1/2");
  auto ps = pad(psi_star, m, dim, "psi");
  // a_j(1-alpha) (1/2)_j / ((3/2-alpha)_j (1-2alpha)) collapses to this j-independent constant
  const quad kappa = num::tgamma(quad(0.5) - quad(alpha)) / (2 * num::sqrt(num::pi<quad>()));
  d.a.assign(m, kappa);
  d.capital_psi = lambda_mix(ps, d.a, quad(lambda), dim);
  d.g = wave_mix(d.capital_psi, dim);
  for (int k = 0; k < m; ++k) {
    d.capital_phi.emplace_back(dim);
    d.f.emplace_back(dim);
  }
  return d;
}

quad psi_condition_factor(int k, quad alpha) {
  quad r = 1;
  for (int j = 1; j <= k; ++j) r *= 1 - alpha / quad(j);
  return r;
}

std::vector<FieldCombination> psi_star_from_psi(const std::vector<FieldCombination>& psi, double alpha) {
  std::vector<FieldCombination> out;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    quad f = psi_condition_factor(int(k), quad(alpha));
    if (f == 0) throw DomainError("psi_star_from_psi: condition factor vanishes");
    out.push_back(psi[k].scaled(1 / f));
  }
  return out;
}

// ---------------- field spec grammar ----------------

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// '+' separates fields unless it is a sign inside a number or value
std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == '+' && depth == 0) {
      std::string t = trim(cur);
      char prev = t.empty() ? '\0' : t.back();
      if (prev != '\0' && prev != 'e' && prev != 'E' && prev != '=' && prev != ',') {
        out.push_back(t);
        cur.clear();
        continue;
      }
    }
    cur += ch;
  }
  out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& s, const std::string& ctx) {
  std::string t = trim(s);
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) throw ParseError("field spec: bad number '" + t + "' in " + ctx);
  return v;
}

std::vector<double> parse_vector(const std::string& s, const std::string& ctx) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw ParseError("field spec: expected [..] for " + ctx);
  t = t.substr(1, t.size() - 2);
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream is(t);
  std::vector<double> v;
  std::string tok;
  while (is >> tok) v.push_back(parse_number(tok, ctx));
  return v;
}

SmoothField parse_one(const std::string& text, int dim, bool& is_zero) {
  is_zero = false;
  std::string s = trim(text);
  auto colon = s.find(':');
  std::string fam = trim(s.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& part : split_top(s.substr(colon + 1), ',')) {
      std::string p = trim(part);
      if (p.empty()) continue;
      auto eq = p.find('=');
      if (eq == std::string::npos) throw ParseError("field spec: expected key=value, got '" + p + "'");
      std::string key = trim(p.substr(0, eq));
      if (kv.count(key)) throw ParseError("field spec: duplicate parameter '" + key + "'");
      kv[key] = trim(p.substr(eq + 1));
    }
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&](const std::string& f) {
    if (!kv.empty()) throw ParseError("field spec: unknown parameter '" + kv.begin()->first + "' for " + f);
  };
  auto check_dim = [&](const std::vector<double>& v, const std::string& what) {
    if (int(v.size()) != dim)
      throw ParseError("field spec: " + what + " has " + std::to_string(v.size()) + " components, expected " +
                       std::to_string(dim));
  };

  if (fam == "zero") {
    finish(fam);
    is_zero = true;
    return SmoothField(Polynomial{dim, {}});
  }
  if (fam == "planewave") {
    PlaneWave p;
    auto k = take("k");
    if (!k) throw ParseError("field spec: planewave needs k=[..]");
    p.k = parse_vector(*k, "k");
    check_dim(p.k, "k");
    if (auto a = take("amp")) p.amp = parse_number(*a, "amp");
    if (auto a = take("phase")) p.phase = parse_number(*a, "phase");
    finish(fam);
    return SmoothField(p);
  }
  if (fam == "sineprod") {
    SineProduct p;
    auto k = take("k");
    if (!k) throw ParseError("field spec: sineprod needs k=[..]");
    p.k = parse_vector(*k, "k");
    check_dim(p.k, "k");
    if (auto a = take("amp")) p.amp = parse_number(*a, "amp");
    finish(fam);
    return SmoothField(p);
  }
  if (fam == "gaussian") {
    Gaussian g;
    g.center.assign(dim, 0.0);
    if (auto c = take("center")) {
      g.center = parse_vector(*c, "center");
      check_dim(g.center, "center");
    }
    if (auto w = take("width")) g.width = parse_number(*w, "width");
    if (auto a = take("amp")) g.amp = parse_number(*a, "amp");
    finish(fam);
    if (!(g.width > 0)) throw ParseError("field spec: gaussian width must be > 0");
    return SmoothField(g);
  }
  if (fam == "poly") {
    Polynomial p;
    p.dim = dim;
    auto t = take("terms");
    if (!t) throw ParseError("field spec: poly needs terms=[c e1 .. en; ...]");
    std::string body = trim(*t);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw ParseError("field spec: poly terms must be bracketed");
    for (const auto& row : split_top(body.substr(1, body.size() - 2), ';')) {
      if (trim(row).empty()) continue;
      auto v = parse_vector("[" + row + "]", "poly term");
      if (int(v.size()) != dim + 1)
        throw ParseError("field spec: poly term needs a coefficient and " + std::to_string(dim) + " exponents");
      Monomial m;
      m.coef = v[0];
      for (int i = 0; i < dim; ++i) {
        double e = v[i + 1];
        if (e < 0 || e != double(int(e))) throw ParseError("field spec: poly exponents must be non-negative integers");
        m.exps.push_back(int(e));
      }
      p.terms.push_back(std::move(m));
    }
    finish(fam);
    return SmoothField(p);
  }
  throw ParseError("field spec: unknown family '" + fam + "'");
}

}  // namespace

FieldCombination parse_field_spec(const std::string& text, int dim) {
  if (dim < 1) throw ParseError("field spec: dimension must be >= 1");
  FieldCombination c(dim);
  if (trim(text).empty()) throw ParseError("field spec: empty");
  for (const auto& part : split_fields(text)) {
    if (part.empty()) throw ParseError("field spec: empty term in '" + text + "'");
    bool zero = false;
    SmoothField f = parse_one(part, dim, zero);
    if (!zero) c.add(FieldCombination::single(f));
  }
  return c;
}

}  // namespace kgf
