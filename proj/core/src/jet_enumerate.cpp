#include "dolwit/jet_enumerate.hpp"

#include <algorithm>

namespace dolwit::jet {

std::vector<IndexList> indexMultisets(int m, int size) {
  std::vector<IndexList> out;
  IndexList cur;
  auto rec = [&](auto&& self, int minVal, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int v = minVal; v <= m; ++v) {
      cur.push_back(v);
      self(self, v, left - 1);
      cur.pop_back();
    }
  };
  rec(rec, 1, size);
  return out;
}

std::vector<JetVariable> enumerateVariables(int m, int weight, int dimE) {
  std::vector<JetVariable> out;
  if (weight < 1) return out;

  auto push = [&](JetKind kind, int nu, int nv) {
    for (const auto& U : indexMultisets(m, nu))
      for (const auto& V : indexMultisets(m, nv)) {
        if (kind == JetKind::Bundle) {
          for (int p = 1; p <= dimE; ++p)
            for (int q = 1; q <= dimE; ++q) out.push_back(makeVariable(kind, U, V, p, q));
        } else {
          out.push_back(makeVariable(kind, U, V));
        }
      }
  };

  // g: |U|+|V| = weight+2 with both blocks >= 2
  for (int nu = 2; nu <= weight; ++nu) {
    int nv = weight + 2 - nu;
    if (nv >= 2) push(JetKind::Metric, nu, nv);
  }
  // h: |U|+|V| = weight with both blocks >= 1
  for (int nu = 1; nu < weight; ++nu) push(JetKind::Bundle, nu, weight - nu);
  // w: |U| >= 1, wbar: |V| >= 1
  for (int nu = 1; nu <= weight; ++nu) push(JetKind::Holo, nu, weight - nu);
  for (int nv = 1; nv <= weight; ++nv) push(JetKind::AntiHolo, weight - nv, nv);

  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void xiFill(int m, int leftover, const Monomial& base, std::vector<Monomial>& out) {
  for (int e = 0; e <= leftover; ++e) {
    int f = leftover - e;
    for (const auto& xh : indexMultisets(m, e))
      for (const auto& xa : indexMultisets(m, f)) {
        Monomial A = base;
        A.xiHolo = xh;
        A.xiAntiholo = xa;
        out.push_back(std::move(A));
      }
  }
}

}  // namespace

std::vector<Monomial> enumerateMonomials(int m, int weight, int dimE, const Limits& limits) {
  if (m < 1 || weight < 0 || dimE < 1) throw std::invalid_argument("enumerateMonomials: bad arguments");
  if (weight > limits.maxWeight || m > limits.maxDim || dimE > limits.maxRank)
    throw ResourceGuardError("enumerateMonomials: resource guard tripped");

  // all weight>=2 variables, in canonical order; monomials pick a
  // non-decreasing sequence of them so each multiset shows up once
  std::vector<JetVariable> vars;
  for (int w = 2; w <= weight; ++w) {
    auto vw = enumerateVariables(m, w, dimE);
    vars.insert(vars.end(), vw.begin(), vw.end());
  }
  std::sort(vars.begin(), vars.end());

  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t minVar, int left) -> void {
    xiFill(m, left, cur, out);
    for (std::size_t i = minVar; i < vars.size(); ++i) {
      int w = vars[i].weight();
      if (w > left) continue;
      cur.factors.push_back(vars[i]);
      self(self, i, left - w);
      cur.factors.pop_back();
    }
  };
  rec(rec, 0, weight);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dolwit::jet
