#include "dolwit/jet_monomial.hpp"
#include "dolwit/jet_polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace dolwit::jet {

JetVariable::JetVariable(JetKind k, IndexList u, IndexList v, int p_, int q_)
    : kind(k), U(std::move(u)), V(std::move(v)), p(p_), q(q_) {}

int JetVariable::degreeHolo(int idx) const {
  return static_cast<int>(std::count(U.begin(), U.end(), idx));
}

int JetVariable::degreeAnti(int idx) const {
  return static_cast<int>(std::count(V.begin(), V.end(), idx));
}

std::string JetVariable::str() const {
  std::ostringstream os;
  os << kindName(kind) << "(";
  if (kind == JetKind::Bundle) os << p << "|" << q << ";";
  for (int a : U) os << a;
  os << ";";
  for (int b : V) os << b << "~";
  os << ")";
  return os.str();
}

JetVariable makeVariable(JetKind kind, IndexList U, IndexList V, int p, int q) {
  std::sort(U.begin(), U.end());
  std::sort(V.begin(), V.end());
  for (int a : U)
    if (a < 1) throw MalformedVariable("holomorphic index out of range");
  for (int b : V)
    if (b < 1) throw MalformedVariable("antiholomorphic index out of range");
  switch (kind) {
    case JetKind::Metric:
      // the normalization relations kill every g with |U|<2 or |V|<2
      if (U.size() < 2 || V.size() < 2)
        throw MalformedVariable("g variable needs >=2 holomorphic and >=2 antiholomorphic indices");
      break;
    case JetKind::Bundle:
      if (U.size() < 1 || V.size() < 1)
        throw MalformedVariable("h variable needs >=1 derivative index on each side");
      if (p < 1 || q < 1) throw MalformedVariable("h variable needs bundle indices");
      break;
    case JetKind::Holo:
      if (U.size() < 1) throw MalformedVariable("w variable needs its base holomorphic index");
      break;
    case JetKind::AntiHolo:
      if (V.size() < 1) throw MalformedVariable("wbar variable needs its base antiholomorphic index");
      break;
  }
  JetVariable v(kind, std::move(U), std::move(V), kind == JetKind::Bundle ? p : 0,
                kind == JetKind::Bundle ? q : 0);
  if (v.weight() < 1) throw MalformedVariable("jet variable of weight < 1");
  return v;
}

int Monomial::weight() const {
  int w = static_cast<int>(xiHolo.size() + xiAntiholo.size());
  for (const auto& f : factors) w += f.weight();
  return w;
}

int Monomial::length() const {
  return static_cast<int>(factors.size()) + (hasXi() ? 1 : 0);
}

int Monomial::degreeHolo(int idx) const {
  int d = static_cast<int>(std::count(xiHolo.begin(), xiHolo.end(), idx));
  for (const auto& f : factors) d += f.degreeHolo(idx);
  return d;
}

int Monomial::degreeAnti(int idx) const {
  int d = static_cast<int>(std::count(xiAntiholo.begin(), xiAntiholo.end(), idx));
  for (const auto& f : factors) d += f.degreeAnti(idx);
  return d;
}

int Monomial::maxIndex() const {
  int m = 0;
  auto scan = [&m](const IndexList& L) {
    for (int a : L) m = std::max(m, a);
  };
  for (const auto& f : factors) { scan(f.U); scan(f.V); }
  scan(xiHolo);
  scan(xiAntiholo);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors.reserve(factors.size() + o.factors.size());
  std::merge(factors.begin(), factors.end(), o.factors.begin(), o.factors.end(),
             std::back_inserter(r.factors));
  std::merge(xiHolo.begin(), xiHolo.end(), o.xiHolo.begin(), o.xiHolo.end(),
             std::back_inserter(r.xiHolo));
  std::merge(xiAntiholo.begin(), xiAntiholo.end(), o.xiAntiholo.begin(), o.xiAntiholo.end(),
             std::back_inserter(r.xiAntiholo));
  return r;
}

std::string Monomial::str() const {
  if (isOne()) return "1";
  std::ostringstream os;
  for (const auto& f : factors) os << f.str();
  if (hasXi()) {
    os << "Xi(";
    for (int a : xiHolo) os << a;
    os << ";";
    for (int b : xiAntiholo) os << b << "~";
    os << ")";
  }
  return os.str();
}

Monomial canonicalize(const std::vector<RawVariable>& raw, IndexList xiHolo,
                      IndexList xiAntiholo) {
  Monomial A;
  A.xiHolo = std::move(xiHolo);
  A.xiAntiholo = std::move(xiAntiholo);
  for (const auto& r : raw) {
    JetVariable v = makeVariable(r.kind, r.U, r.V, r.p, r.q);
    if (v.weight() == 1) {
      // bare w_a / wbar_b live in the Xi block
      if (v.kind == JetKind::Holo)
        A.xiHolo.push_back(v.U.front());
      else
        A.xiAntiholo.push_back(v.V.front());
    } else {
      A.factors.push_back(std::move(v));
    }
  }
  std::sort(A.factors.begin(), A.factors.end());
  std::sort(A.xiHolo.begin(), A.xiHolo.end());
  std::sort(A.xiAntiholo.begin(), A.xiAntiholo.end());
  return A;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [A, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << A.str();
  }
  return os.str();
}

}  // namespace dolwit::jet
