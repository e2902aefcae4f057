#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace kgf::cli {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Table {
 public:
  Table(std::map<std::string, Entry> e, std::string origin) : e_(std::move(e)), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    auto it = e_.find(key);
    std::ostringstream os;
    os << origin_;
    if (it != e_.end()) os << ":" << it->second.line;
    os << ": " << key << ": " << msg;
    throw ConfigError(os.str());
  }

  const std::string* get(const std::string& key) {
    auto it = e_.find(key);
    if (it == e_.end()) return nullptr;
    it->second.used = true;
    return &it->second.value;
  }

  double number(const std::string& key, double def) {
    const auto* v = get(key);
    return v ? parse_double(key, *v) : def;
  }

  int integer(const std::string& key, int def) {
    const auto* v = get(key);
    if (!v) return def;
    double d = parse_double(key, *v);
    if (d != std::floor(d) || std::fabs(d) > 1e9) fail(key, "expected an integer, got '" + *v + "'");
    return static_cast<int>(d);
  }

  bool boolean(const std::string& key, bool def) {
    const auto* v = get(key);
    if (!v) return def;
    if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") return true;
    if (*v == "false" || *v == "no" || *v == "0" || *v == "off") return false;
    fail(key, "expected a boolean, got '" + *v + "'");
  }

  std::string text(const std::string& key, const std::string& def) {
    const auto* v = get(key);
    return v ? *v : def;
  }

  // "a b c", "a, b, c" or "start:stop:count"
  std::vector<double> list(const std::string& key, const std::string& v) {
    std::string s = trim(v);
    if (s.empty()) return {};
    if (s.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(s);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      if (parts.size() != 3) fail(key, "range must be start:stop:count");
      double a = parse_double(key, parts[0]), b = parse_double(key, parts[1]);
      double c = parse_double(key, parts[2]);
      if (c < 1 || c != std::floor(c)) fail(key, "range count must be a positive integer");
      const int n = static_cast<int>(c);
      std::vector<double> out;
      for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
      return out;
    }
    for (char& ch : s)
      if (ch == ',') ch = ' ';
    std::istringstream is(s);
    std::vector<double> out;
    for (std::string tok; is >> tok;) out.push_back(parse_double(key, tok));
    return out;
  }

  double parse_double(const std::string& key, const std::string& raw) const {
    std::string s = trim(raw);
    char* end = nullptr;
    errno = 0;
    double d = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(d))
      fail(key, "expected a number, got '" + raw + "'");
    return d;
  }

  void reject_unused() const {
    for (const auto& [k, e] : e_)
      if (!e.used) {
        std::ostringstream os;
        os << origin_ << ":" << e.line << ": unknown key '" << k << "'";
        throw ConfigError(os.str());
      }
  }

  std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, e] : e_)
      if (k.rfind(prefix, 0) == 0) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, Entry> e_;
  std::string origin_;
};

std::map<std::string, Entry> tokenize(const std::string& text, const std::string& origin) {
  std::map<std::string, Entry> out;
  std::istringstream is(text);
  static const std::regex key_re(R"([a-z_]+(\.[a-z0-9_]+)+)");
  int lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!std::regex_match(key, key_re))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed key '" + key + "'");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (out.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key '" + key + "' repeated (first on line " +
                        std::to_string(out[key].line) + ")");
    out[key] = Entry{value, lineno, false};
  }
  return out;
}

// index K of "prefix.K"
int suffix_index(Table& t, const std::string& key, const std::string& prefix) {
  std::string rest = key.substr(prefix.size());
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    t.fail(key, "expected " + prefix + "<integer>");
  return std::stoi(rest);
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  Table t(tokenize(text, origin), origin);
  RunConfig c;
  c.origin = origin;
  auto& p = c.problem;

  if (!t.get("problem.n")) t.fail("problem.n", "required");
  p.n = t.integer("problem.n", 3);
  p.m = t.integer("problem.m", 1);
  p.gamma = t.number("problem.gamma", 0.5);
  p.lambda = t.number("problem.lambda", 0.0);
  const std::string fam = t.text("problem.family", "phi");
  if (fam == "phi")
    p.family = DataFamily::phi;
  else if (fam == "psi")
    p.family = DataFamily::psi;
  else
    t.fail("problem.family", "expected phi or psi, got '" + fam + "'");
  if (p.n < 2) t.fail("problem.n", "must be >= 2");
  if (p.m < 1) t.fail("problem.m", "must be >= 1");

  for (const char* which : {"phi", "psi"}) {
    const std::string prefix = std::string("data.") + which + ".";
    auto& dst = std::string(which) == "phi" ? p.phi : p.psi;
    for (const auto& key : t.keys_with_prefix(prefix)) {
      const int k = suffix_index(t, key, prefix);
      if (k >= p.m) t.fail(key, "index exceeds m-1 = " + std::to_string(p.m - 1));
      if (int(dst.size()) <= k) dst.resize(k + 1, FieldCombination(p.n));
      try {
        dst[k] = parse_field_spec(*t.get(key), p.n);
      } catch (const ParseError& e) {
        t.fail(key, e.what());
      }
    }
  }

  // grid
  if (const auto* v = t.get("grid.points")) {
    std::stringstream ss(*v);
    for (std::string row; std::getline(ss, row, ';');) {
      if (trim(row).empty()) continue;
      auto pt = t.list("grid.points", row);
      if (int(pt.size()) != p.n) t.fail("grid.points", "each point needs " + std::to_string(p.n) + " coordinates");
      c.points.push_back(pt);
    }
  }
  const auto axes = t.keys_with_prefix("grid.axis.");
  if (!axes.empty()) {
    if (!c.points.empty()) t.fail(axes.front(), "grid.points and grid.axis.* are exclusive");
    std::vector<std::vector<double>> ax(p.n);
    std::vector<bool> seen(p.n, false);
    for (const auto& key : axes) {
      const int i = suffix_index(t, key, "grid.axis.");
      if (i < 1 || i > p.n) t.fail(key, "axis index must be in 1.." + std::to_string(p.n));
      ax[i - 1] = t.list(key, *t.get(key));
      if (ax[i - 1].empty()) t.fail(key, "empty axis");
      seen[i - 1] = true;
    }
    for (int i = 0; i < p.n; ++i)
      if (!seen[i]) ax[i] = {0.0};
    std::vector<double> cur(p.n);
    std::function<void(int)> rec = [&](int d) {
      if (d == p.n) {
        c.points.push_back(cur);
        return;
      }
      for (double v : ax[d]) {
        cur[d] = v;
        rec(d + 1);
      }
    };
    rec(0);
  }
  if (c.points.empty()) c.points.push_back(std::vector<double>(p.n, 0.0));
  std::sort(c.points.begin(), c.points.end());
  c.points.erase(std::unique(c.points.begin(), c.points.end()), c.points.end());
  if (const auto* v = t.get("grid.t")) c.times = t.list("grid.t", *v);
  for (double tv : c.times)
    if (!(tv >= 0)) t.fail("grid.t", "times must be >= 0");
  std::sort(c.times.begin(), c.times.end());

  // quadrature and solver
  c.options.radial_order = t.integer("quadrature.radial_order", 64);
  c.options.sphere_order = t.integer("quadrature.sphere_order", 32);
  if (c.options.radial_order < 1 || c.options.radial_order > 400)
    t.fail("quadrature.radial_order", "must be in 1..400");
  if (c.options.sphere_order < 1 || c.options.sphere_order > 400)
    t.fail("quadrature.sphere_order", "must be in 1..400");
  const std::string mode = t.text("quadrature.sphere_mode", p.n <= 3 ? "quadrature" : "analytic");
  if (mode == "quadrature")
    c.options.sphere_mode = SphereMode::quadrature;
  else if (mode == "analytic")
    c.options.sphere_mode = SphereMode::analytic;
  else
    t.fail("quadrature.sphere_mode", "expected quadrature or analytic");
  if (c.options.sphere_mode == SphereMode::quadrature && p.n > 3)
    t.fail("quadrature.sphere_mode", "sphere quadrature supports n <= 3; use analytic with eigen/polynomial data");

  const std::string method = t.text("solver.method", p.family == DataFamily::psi ? "complement" : "direct");
  try {
    c.method = parse_method(method);
  } catch (const ParseError& e) {
    t.fail("solver.method", e.what());
  }
  const std::string prec = t.text("solver.precision", "double");
  if (prec == "double")
    c.quad_precision = false;
  else if (prec == "quad")
    c.quad_precision = true;
  else
    t.fail("solver.precision", "expected double or quad");
  c.options.constant_scale = t.number("solver.constant_scale", 1.0);
  c.options.fd_rel_step = t.number("solver.fd_rel_step", 0.0);
  c.options.richardson = t.boolean("solver.richardson", true);
  if (c.options.fd_rel_step < 0) t.fail("solver.fd_rel_step", "must be >= 0 (0 selects the default)");

  // verify
  auto& v = c.verify;
  v.fd_step = t.number("verify.fd_step", v.fd_step);
  v.richardson_levels = t.integer("verify.richardson_levels", v.richardson_levels);
  v.probes = t.integer("verify.probes", v.probes);
  v.residual_probes = t.integer("verify.residual_probes", v.residual_probes);
  v.ic_points = t.integer("verify.ic_points", v.ic_points);
  v.t0 = t.number("verify.t0", v.t0);
  v.oracle_tol = t.number("verify.oracle_tolerance", v.oracle_tol);
  v.two_path_tol = t.number("verify.two_path_tolerance", v.two_path_tol);
  v.ic_tol = t.number("verify.ic_tolerance", v.ic_tol);
  v.order_tol = t.number("verify.order_tolerance", v.order_tol);
  v.residual = t.boolean("verify.residual", v.residual);
  v.initial_conditions = t.boolean("verify.initial_conditions", v.initial_conditions);
  v.two_path = t.boolean("verify.two_path", v.two_path);
  v.oracle = t.boolean("verify.oracle", v.oracle);
  if (!(v.fd_step > 0)) t.fail("verify.fd_step", "must be > 0");
  if (v.richardson_levels < 3) t.fail("verify.richardson_levels", "need at least 3 levels");
  if (v.probes < 0 || v.residual_probes < 0 || v.ic_points < 0) t.fail("verify.probes", "counts must be >= 0");
  if (!(v.t0 > 0)) t.fail("verify.t0", "must be > 0");

  // output, operators, convergence
  c.csv_path = t.text("output.csv", "");
  c.precision = t.integer("output.precision", 17);
  if (c.precision < 1 || c.precision > 40) t.fail("output.precision", "must be in 1..40");
  c.m_max = t.integer("operators.m_max", 3);
  c.p_max = t.integer("operators.p_max", 4);
  c.operators_radial_order = t.integer("operators.radial_order", 64);
  if (c.m_max < 0 || c.m_max > 40) t.fail("operators.m_max", "must be in 0..40");
  if (c.p_max < 1 || c.p_max > 20) t.fail("operators.p_max", "must be in 1..20");
  if (const auto* o = t.get("convergence.orders")) {
    c.convergence_orders.clear();
    for (double d : t.list("convergence.orders", *o)) {
      if (d < 1 || d != std::floor(d)) t.fail("convergence.orders", "orders must be positive integers");
      c.convergence_orders.push_back(static_cast<int>(d));
    }
    if (c.convergence_orders.size() < 3) t.fail("convergence.orders", "need at least 3 orders");
  }
  c.convergence_tol = t.number("convergence.tolerance", c.convergence_tol);

  t.reject_unused();

  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace kgf::cli
