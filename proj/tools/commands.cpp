#include "commands.hpp"

#include <quadmath.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace kgf::cli {

namespace {

std::string fmt_num(double v, int prec) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*g", prec, v);
  return b;
}

std::string fmt_num(quad v, int prec) {
  char b[96];
  quadmath_snprintf(b, sizeof b, "%.*Qg", prec, v);
  return b;
}

std::string point_str(const std::vector<double>& x, double t) {
  std::ostringstream os;
  os << "x=(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << fmt_num(x[i], 10);
  os << ") t=" << fmt_num(t, 10);
  return os.str();
}

// writes to --out, else output.csv, else stdout
void emit(const RunConfig& cfg, const CommandOptions& opt, const std::string& text, std::ostream& log,
          bool use_config_path) {
  std::string path = !opt.out.empty() ? opt.out : (use_config_path ? cfg.csv_path : "");
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
  log << "wrote " << path << "\n";
}

template <Real T>
std::string solve_csv(const RunConfig& cfg, const CommandOptions& opt) {
  const auto& p = cfg.problem;
  SolutionEvaluator<T> u(p, cfg.method, cfg.options);
  const std::size_t np = cfg.points.size(), nt = cfg.times.size();
  std::vector<T> vals(np * nt);
  parallel_for(vals.size(), opt.threads, [&](std::size_t i) {
    const auto& xd = cfg.points[i % np];
    const double t = cfg.times[i / np];
    std::vector<T> x(xd.begin(), xd.end());
    try {
      vals[i] = u(x, T(t));
    } catch (const AccuracyError& e) {
      throw AccuracyError(std::string(e.what()) + " at " + point_str(xd, t));
    }
  });
  std::ostringstream os;
  for (int i = 1; i <= p.n; ++i) os << "x" << i << ",";
  os << "t,u\n";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (double c : cfg.points[i % np]) os << fmt_num(c, cfg.precision) << ",";
    os << fmt_num(cfg.times[i / np], cfg.precision) << "," << fmt_num(vals[i], cfg.precision) << "\n";
  }
  return os.str();
}

std::vector<std::size_t> spread(std::size_t n, int k) {
  std::vector<std::size_t> idx;
  if (n == 0 || k <= 0) return idx;
  if (std::size_t(k) >= n) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    return idx;
  }
  for (int i = 0; i < k; ++i) idx.push_back(k == 1 ? 0 : (i * (n - 1) + (k - 1) / 2) / (k - 1));
  return idx;
}

}  // namespace

std::vector<Probe> select_probes(const RunConfig& cfg, int count, double min_t) {
  std::vector<double> times = cfg.times;
  if (times.empty())
    for (int i = 0; i < 10; ++i) times.push_back(0.25 + 0.25 * i);
  std::vector<Probe> all;
  for (double t : times)
    if (t > 0 && t >= min_t)
      for (const auto& x : cfg.points) all.push_back({x, t});
  std::vector<Probe> out;
  for (auto i : spread(all.size(), count)) out.push_back(all[i]);
  return out;
}

int cmd_solve(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  const std::string csv = cfg.quad_precision ? solve_csv<quad>(cfg, opt) : solve_csv<double>(cfg, opt);
  emit(cfg, opt, csv, log, true);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  const auto& v = cfg.verify;
  VerifySettings s;
  s.probes = select_probes(cfg, v.probes, 0.0);
  s.residual_steps = {4 * v.fd_step, 2 * v.fd_step, v.fd_step};
  s.residual_probes = select_probes(cfg, v.residual_probes, 10.0 * cfg.problem.m * 4 * v.fd_step);
  for (auto i : spread(cfg.points.size(), v.ic_points)) s.ic_points.push_back(cfg.points[i]);
  s.ic_t0 = v.t0;
  s.ic_levels = v.richardson_levels;
  s.oracle_tol = opt.tolerance.value_or(v.oracle_tol);
  s.two_path_tol = opt.tolerance.value_or(v.two_path_tol);
  s.ic_tol = v.ic_tol;
  s.order_tol = v.order_tol;
  s.method = cfg.method;
  s.options = cfg.options;
  s.threads = opt.threads;
  s.residual = v.residual;
  s.initial_conditions = v.initial_conditions;
  s.two_path = v.two_path;
  s.oracle = v.oracle;
  if (s.residual && s.residual_probes.empty())
    log << "note: no probe with t >= " << 40 * cfg.problem.m * v.fd_step << "; residual ladder skipped\n";
  const auto rep = run_verification(cfg.problem, s);
  const bool csv = opt.out.size() > 4 && opt.out.substr(opt.out.size() - 4) == ".csv";
  emit(cfg, opt, csv ? rep.to_csv() : rep.to_text(), log, false);
  if (!opt.out.empty()) log << (rep.passed() ? "verification passed\n" : "verification FAILED\n");
  return rep.passed() ? kOk : kVerification;
}

int cmd_operators(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  std::ostringstream os;
  bool ok = true;
  const auto table = recurrence_constants(cfg.m_max);
  os << "# derivative formula constants a_mj, b_mj\n";
  for (int m = 0; m <= cfg.m_max; ++m) {
    os << "m=" << m << " a:";
    for (int j = 0; j <= m; ++j) os << " " << table.A(m, j).str();
    os << " | b:";
    for (int j = 0; j <= m; ++j) os << " " << table.B(m, j).str();
    os << "\n";
  }
  for (const auto& c : check_recurrence_relations(table)) {
    os << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " " + c.detail) << "\n";
    ok = ok && c.ok;
  }
  os << "# radial reduction constants A_j^p\n";
  for (int p = 1; p <= cfg.p_max; ++p) {
    const auto A = lemma1_constants(p);
    os << "p=" << p << ":";
    for (const auto& a : A) os << " " << a.str();
    const bool lead = A.front() == Rational(double_factorial_odd(p));
    ok = ok && lead;
    os << (lead ? "  PASS" : "  FAIL") << " A_0 = (2p-1)!!\n";
  }
  os << "# identity ladders (gap per step h, expected order 2)\n";
  for (const auto& L : operator_identity_suite(cfg.operators_radial_order)) {
    os << (L.pass ? "PASS " : "FAIL ") << L.name;
    if (L.h.size() > 1) {
      os << " order=" << fmt_num(L.order, 4) << " gaps:";
      for (double g : L.gap) os << " " << fmt_num(g, 3);
    } else {
      os << " gap=" << fmt_num(L.value, 3);
    }
    os << "\n";
    ok = ok && L.pass;
  }
  for (int p : {2, 3}) {
    auto L = lemma1_identity_ladder(p, 0.8, {1e-2, 5e-3, 2.5e-3});
    os << (L.pass ? "PASS " : "FAIL ") << L.name << " order=" << fmt_num(L.order, 4) << "\n";
    ok = ok && L.pass;
  }
  os << (ok ? "RESULT PASS\n" : "RESULT FAIL\n");
  emit(cfg, opt, os.str(), log, false);
  (void)opt;
  return ok ? kOk : kVerification;
}

int cmd_convergence(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  const auto probes = select_probes(cfg, cfg.verify.probes, 0.0);
  const double tol = opt.tolerance.value_or(cfg.convergence_tol);
  VerificationReport rep;
  auto run = [&]<Real T>() {
    std::function<PointFn<T>(int)> factory = [&](int order) -> PointFn<T> {
      SolverOptions o = cfg.options;
      o.radial_order = order;
      auto e = std::make_shared<const SolutionEvaluator<T>>(cfg.problem, cfg.method, o);
      return [e](std::span<const T> x, T t) { return (*e)(x, t); };
    };
    rep = convergence_study<T>(factory, cfg.convergence_orders, probes, tol, opt.threads);
  };
  if (cfg.quad_precision)
    run.template operator()<quad>();
  else
    run.template operator()<double>();
  emit(cfg, opt, rep.to_text(), log, false);
  return rep.passed() ? kOk : kVerification;
}

}  // namespace kgf::cli
