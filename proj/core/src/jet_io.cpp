#include "dolwit/jet_io.hpp"

namespace dolwit::jet {

using nlohmann::json;

json toJson(const JetVariable& v) {
  json j;
  j["kind"] = kindName(v.kind);
  j["U"] = v.U;
  j["V"] = v.V;
  if (v.kind == JetKind::Bundle) {
    j["p"] = v.p;
    j["q"] = v.q;
  }
  return j;
}

json toJson(const Monomial& A) {
  json j;
  j["factors"] = json::array();
  for (const auto& f : A.factors) j["factors"].push_back(toJson(f));
  j["xiHolo"] = A.xiHolo;
  j["xiAntiholo"] = A.xiAntiholo;
  return j;
}

json toJson(const Polynomial& P) {
  json terms = json::array();
  for (const auto& [A, c] : P.terms()) {
    json t;
    t["coeff"] = c.str();
    t["monomial"] = toJson(A);
    terms.push_back(std::move(t));
  }
  return json{{"terms", std::move(terms)}};
}

json basisToJson(const std::vector<Polynomial>& basis, int m, int weight, int dimE) {
  json j;
  j["schema_version"] = 1;
  j["m"] = m;
  j["weight"] = weight;
  j["dimE"] = dimE;
  j["dimension"] = basis.size();
  j["basis"] = json::array();
  for (const auto& P : basis) j["basis"].push_back(toJson(P));
  return j;
}

JetVariable variableFromJson(const json& j) {
  std::string k = j.at("kind");
  JetKind kind;
  if (k == "g") kind = JetKind::Metric;
  else if (k == "h") kind = JetKind::Bundle;
  else if (k == "w") kind = JetKind::Holo;
  else if (k == "wbar") kind = JetKind::AntiHolo;
  else throw std::invalid_argument("variableFromJson: unknown kind " + k);
  return makeVariable(kind, j.at("U").get<IndexList>(), j.at("V").get<IndexList>(),
                      j.value("p", 0), j.value("q", 0));
}

Monomial monomialFromJson(const json& j) {
  std::vector<RawVariable> raw;
  for (const auto& f : j.at("factors")) {
    JetVariable v = variableFromJson(f);
    raw.push_back({v.kind, v.U, v.V, v.p, v.q});
  }
  return canonicalize(raw, j.value("xiHolo", IndexList{}), j.value("xiAntiholo", IndexList{}));
}

Polynomial polynomialFromJson(const json& j) {
  Polynomial P;
  for (const auto& t : j.at("terms"))
    P.add(monomialFromJson(t.at("monomial")), parseGaussQ(t.at("coeff").get<std::string>()));
  return P;
}

GaussQ parseGaussQ(const std::string& s) {
  // "a/b" or "a/b+c/d i" / "a/b-c/d i"
  auto ipos = s.find(" i");
  if (ipos == std::string::npos) return GaussQ(mpq_class(s));
  // split at the sign separating the two parts (skip a leading sign)
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < ipos; ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-') {
      split = k;  // keep scanning: the last sign before " i" starts the imaginary part
    }
  if (split == std::string::npos) throw std::invalid_argument("parseGaussQ: bad literal " + s);
  mpq_class re(s.substr(0, split));
  std::string imS = s.substr(split, ipos - split);
  if (imS[0] == '+') imS = imS.substr(1);
  mpq_class im(imS);
  re.canonicalize();
  im.canonicalize();
  return GaussQ(re, im);
}

}  // namespace dolwit::jet
