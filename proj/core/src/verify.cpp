#include "kgf/verify.hpp"

#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>

namespace kgf {

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::merge(const VerificationReport& o) {
  residual_norms.insert(residual_norms.end(), o.residual_norms.begin(), o.residual_norms.end());
  if (std::isfinite(o.estimated_order)) estimated_order = o.estimated_order;
  if (ic_errors.size() < o.ic_errors.size()) ic_errors.resize(o.ic_errors.size(), 0.0);
  for (std::size_t i = 0; i < o.ic_errors.size(); ++i) ic_errors[i] = std::max(ic_errors[i], o.ic_errors[i]);
  if (std::isfinite(o.two_path_gap)) two_path_gap = o.two_path_gap;
  if (o.oracle_gap) oracle_gap = o.oracle_gap;
  checks.insert(checks.end(), o.checks.begin(), o.checks.end());
}

namespace {

std::string g(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& [h, r] : residual_norms) os << "residual h=" << g(h) << " max|L^m u|=" << g(r) << "\n";
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " measured=" << g(c.measured);
    if (std::isfinite(c.tolerance)) os << " tolerance=" << g(c.tolerance);
    if (!c.detail.empty()) os << " " << c.detail;
    os << "\n";
  }
  os << (passed() ? "RESULT PASS" : "RESULT FAIL") << "\n";
  return os.str();
}

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os << "check,measured,tolerance,pass,detail\n";
  for (const auto& [h, r] : residual_norms)
    os << csv_field("residual h=" + g(h)) << "," << g(r) << ",,,\n";
  for (const auto& c : checks)
    os << csv_field(c.name) << "," << g(c.measured) << "," << (std::isfinite(c.tolerance) ? g(c.tolerance) : "")
       << "," << (c.pass ? "1" : "0") << "," << csv_field(c.detail) << "\n";
  return os.str();
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lk(mu);
          if (!err) err = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::vector<quad> separable_series(double gamma, quad s, int m, const std::vector<quad>& b, int terms) {
  if (m < 1) throw DomainError("separable_series: m must be >= 1");
  const quad gq = gamma;
  // e0[l] = (B + s)^l y at t = 0
  std::vector<quad> e0(m, 0);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i <= l && i < int(b.size()); ++i) e0[l] += quad(binomial(l, i)) * num::ipow(s, l - i) * b[i];
  std::vector<quad> next(terms, 0), cur(terms);
  for (int l = m - 1; l >= 0; --l) {
    cur[0] = e0[l];
    for (int i = 0; i + 1 < terms; ++i)
      cur[i + 1] = (next[i] - s * cur[i]) / (4 * quad(i + 1) * (quad(i + 1) + gq));
    next = cur;
  }
  return next;
}

quad eval_even_series(const std::vector<quad>& e, quad t) {
  const quad t2 = t * t;
  quad s = 0;
  for (std::size_t i = e.size(); i-- > 0;) s = s * t2 + e[i];
  return s;
}

namespace {

bool eigen_only(const ProblemSpec& spec) {
  for (const auto* list : {&spec.phi, &spec.psi})
    for (const auto& c : *list)
      for (const auto& a : c.atoms())
        if (a.kind != Atom::Kind::plane && a.kind != Atom::Kind::sine) return false;
  return true;
}

bool analytic_only(const ProblemSpec& spec) {
  for (const auto* list : {&spec.phi, &spec.psi})
    for (const auto& c : *list)
      if (!c.analytic_means()) return false;
  return true;
}

template <Real T>
PointFn<T> as_fn(std::shared_ptr<const SolutionEvaluator<T>> e) {
  return [e](std::span<const T> x, T t) { return (*e)(x, t); };
}

}  // namespace

VerificationReport run_verification(const ProblemSpec& spec, const VerifySettings& s) {
  spec.validate();
  VerificationReport rep;
  const bool psi = spec.family == DataFamily::psi;
  Method main = s.method;
  if (psi && main == Method::transmutation) main = Method::complement;
  if (!psi && main == Method::complement) main = Method::direct;
  auto ud = std::make_shared<const SolutionEvaluator<double>>(spec, main, s.options);

  if (s.oracle && eigen_only(spec) && !s.probes.empty()) {
    auto c = oracle_check<double>(as_fn(ud), spec, s.probes, s.oracle_tol, s.threads);
    rep.oracle_gap = c.measured;
    rep.add(c);
  }
  if (s.two_path && !s.probes.empty()) {
    const Method a = Method::direct, b = psi ? Method::complement : Method::transmutation;
    auto ea = std::make_shared<const SolutionEvaluator<double>>(spec, a, s.options);
    auto eb = std::make_shared<const SolutionEvaluator<double>>(spec, b, s.options);
    auto c = two_path_check<double>(as_fn(ea), as_fn(eb), s.probes, s.two_path_tol,
                                    to_string(a) + " vs " + to_string(b), s.threads);
    rep.two_path_gap = c.measured;
    rep.add(c);
  }
  if (s.residual || s.initial_conditions) {
    SolverOptions qo = s.options;
    if (analytic_only(spec)) qo.sphere_mode = SphereMode::analytic;
    auto uq = as_fn(std::make_shared<const SolutionEvaluator<quad>>(spec, main, qo));
    if (s.residual && !s.residual_probes.empty())
      rep.merge(residual_study<quad>(uq, spec, s.residual_probes, s.residual_steps, s.order_tol, s.threads));
    if (s.initial_conditions && !s.ic_points.empty()) {
      rep.merge(check_initial_conditions<quad>(uq, spec, s.ic_points, s.ic_t0, s.ic_tol, s.ic_levels));
      if (!psi) rep.merge(check_lemma2_conditions<quad>(uq, spec, s.ic_points, s.ic_t0, s.ic_tol, s.ic_levels));
    }
  }
  return rep;
}

}  // namespace kgf
