#include "kgf/kgf_solver.hpp"

#include <sstream>

namespace kgf {

void ProblemSpec::validate() const {
  if (n < 2) throw DomainError("problem: n must be >= 2");
  if (m < 1) throw DomainError("problem: m must be >= 1");
  if (!(gamma > -0.5)) throw DomainError("problem: gamma must exceed -1/2 (alpha = gamma + 1/2 > 0)");
  if (!std::isfinite(lambda)) throw DomainError("problem: lambda must be finite");
  const auto& data = family == DataFamily::phi ? phi : psi;
  const auto& other = family == DataFamily::phi ? psi : phi;
  if (int(data.size()) > m) throw DomainError("problem: more data functions than m");
  for (const auto& c : other)
    if (!c.empty()) throw ContractError("problem: mixed phi/psi data; solve the two problems separately");
  for (const auto& c : data)
    if (!c.empty() && c.dim() != n) throw ContractError("problem: data field dimension differs from n");
  if (family == DataFamily::psi && !(alpha() > 0 && alpha() < 0.5)) {
    std::ostringstream os;
    os << "problem: the psi problem requires 0 < alpha < 1/2, i.e. -1/2 < gamma < 0 (got alpha = " << alpha()
       << ")";
    throw DomainError(os.str());
  }
}

std::vector<FieldCombination> ProblemSpec::psi_star() const { return psi_star_from_psi(psi, alpha()); }

std::string to_string(Method m) {
  switch (m) {
    case Method::direct:
      return "direct";
    case Method::transmutation:
      return "transmutation";
    case Method::complement:
      return "complement";
  }
  return "?";
}

std::string to_string(DataFamily f) { return f == DataFamily::phi ? "phi" : "psi"; }

Method parse_method(const std::string& s) {
  if (s == "direct") return Method::direct;
  if (s == "transmutation") return Method::transmutation;
  if (s == "complement") return Method::complement;
  throw ParseError("unknown solver method '" + s + "' (direct, transmutation, complement)");
}

}  // namespace kgf
