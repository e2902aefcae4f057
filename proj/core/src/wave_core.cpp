#include "kgf/wave_core.hpp"

#include <functional>
#include <sstream>

namespace kgf {

PolyWaveProblem PolyWaveProblem::from(const TransformedData& d, int n) {
  PolyWaveProblem p;
  p.n = n;
  p.m = d.m;
  p.f = d.f;
  p.g = d.g;
  p.validate();
  return p;
}

void PolyWaveProblem::validate() const {
  if (n < 2) throw DomainError("poly-wave problem: n must be >= 2");
  if (m < 1) throw DomainError("poly-wave problem: m must be >= 1");
  if (int(f.size()) != m || int(g.size()) != m) throw ContractError("poly-wave problem: need m data fields f_k and g_k");
  for (const auto* list : {&f, &g})
    for (const auto& c : *list)
      if (!c.empty() && c.dim() != n) throw ContractError("poly-wave problem: field dimension differs from n");
}

IdentityLadder lemma1_identity_ladder(int p, double r, const std::vector<double>& hs) {
  if (p < 1) throw DomainError("lemma1_identity_ladder: p must be >= 1");
  const auto A = lemma1_constants(p);
  const quad qr = r;
  // j-th derivative of cos
  auto dcos = [](int j, quad s) {
    switch (j % 4) {
      case 0: return cosq(s);
      case 1: return -sinq(s);
      case 2: return -cosq(s);
      default: return sinq(s);
    }
  };
  auto expansion = [&](quad s) {
    quad v = 0;
    for (std::size_t j = 0; j < A.size(); ++j)
      v += quad(A[j].convert_to<double>()) * powq(s, int(j) + 1) * dcos(int(j), s);
    return v;
  };
  IdentityLadder L;
  std::ostringstream os;
  os << "radial reduction identity p=" << p << " w=cos r=" << r;
  L.name = os.str();
  for (double hd : hs) {
    const quad h = hd;
    quad lhs = central_derivative<quad>(expansion, qr, 2, h);
    std::function<quad(int, quad)> rhs = [&](int level, quad s) -> quad {
      if (level == 0) return powq(s, 2 * p) * dcos(1, s);
      return (rhs(level - 1, s + h) - rhs(level - 1, s - h)) / (2 * h * s);
    };
    L.h.push_back(hd);
    L.gap.push_back(double(fabsq(lhs - rhs(p, qr))));
  }
  grade_ladder(L);
  return L;
}

}  // namespace kgf
