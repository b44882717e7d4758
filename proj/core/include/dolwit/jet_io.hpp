#pragma once

#include <nlohmann/json.hpp>

#include "dolwit/jet_polynomial.hpp"

namespace dolwit::jet {

/// JSON forms used by the CLI reports.  Monomials serialize as
///   { "factors": [ {"kind","U","V","p","q"} ... ],
///     "xiHolo": [...], "xiAntiholo": [...] }
/// and coefficients as exact strings "a/b" or "a/b+c/d i".
nlohmann::json toJson(const JetVariable& v);
nlohmann::json toJson(const Monomial& A);
nlohmann::json toJson(const Polynomial& P);
nlohmann::json basisToJson(const std::vector<Polynomial>& basis, int m, int weight, int dimE);

JetVariable variableFromJson(const nlohmann::json& j);
Monomial monomialFromJson(const nlohmann::json& j);
Polynomial polynomialFromJson(const nlohmann::json& j);

GaussQ parseGaussQ(const std::string& s);

}  // namespace dolwit::jet
