#include "dolwit/jet_invariance.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

namespace dolwit::jet {

int degree(const Monomial& A, int index, Flavor flavor, int m) {
  if (index < 1 || index > m) throw std::out_of_range("degree: index out of range");
  return flavor == Flavor::Holo ? A.degreeHolo(index) : A.degreeAnti(index);
}

Polynomial restrictTop(const Polynomial& P, int m) {
  if (m <= 0) throw std::invalid_argument("restrictTop: dimension underflow");
  Polynomial R;
  for (const auto& [A, c] : P.terms())
    if (A.degreeHolo(m) == 0 && A.degreeAnti(m) == 0) R.add(A, c);
  return R;
}

bool checkDegreeBalance(const Polynomial& P) {
  for (const auto& [A, c] : P.terms()) {
    int top = A.maxIndex();
    for (int a = 1; a <= top; ++a)
      if (A.degreeHolo(a) != A.degreeAnti(a)) return false;
  }
  return true;
}

namespace {

JetVariable relabel(const JetVariable& v, const std::vector<int>& perm) {
  JetVariable w = v;
  for (int& a : w.U) a = perm[a - 1];
  for (int& b : w.V) b = perm[b - 1];
  std::sort(w.U.begin(), w.U.end());
  std::sort(w.V.begin(), w.V.end());
  return w;
}

Monomial resort(Monomial A) {
  std::sort(A.factors.begin(), A.factors.end());
  std::sort(A.xiHolo.begin(), A.xiHolo.end());
  std::sort(A.xiAntiholo.begin(), A.xiAntiholo.end());
  return A;
}

/// Replace one occurrence of `from` by `to` in the chosen index list of
/// factor `fi` (or the Xi block for fi < 0) and recanonicalize.
Monomial replaceOnce(const Monomial& A, int fi, Flavor flavor, int from, int to) {
  Monomial B = A;
  IndexList* L = nullptr;
  if (fi >= 0)
    L = flavor == Flavor::Holo ? &B.factors[fi].U : &B.factors[fi].V;
  else
    L = flavor == Flavor::Holo ? &B.xiHolo : &B.xiAntiholo;
  auto it = std::find(L->begin(), L->end(), from);
  assert(it != L->end());
  *it = to;
  std::sort(L->begin(), L->end());
  return resort(std::move(B));
}

int countIn(const IndexList& L, int v) {
  return static_cast<int>(std::count(L.begin(), L.end(), v));
}

}  // namespace

Monomial applyIndexPermutation(const Monomial& A, const std::vector<int>& perm) {
  Monomial B;
  B.factors.reserve(A.factors.size());
  for (const auto& f : A.factors) B.factors.push_back(relabel(f, perm));
  for (int a : A.xiHolo) B.xiHolo.push_back(perm[a - 1]);
  for (int b : A.xiAntiholo) B.xiAntiholo.push_back(perm[b - 1]);
  return resort(std::move(B));
}

std::map<Monomial, long> rotationPlus(const Monomial& A, int a, int b) {
  std::map<Monomial, long> out;
  int nf = static_cast<int>(A.factors.size());
  for (int fi = -1; fi < nf; ++fi) {
    const IndexList& U = fi < 0 ? A.xiHolo : A.factors[fi].U;
    const IndexList& V = fi < 0 ? A.xiAntiholo : A.factors[fi].V;
    if (int c = countIn(U, a); c > 0) out[replaceOnce(A, fi, Flavor::Holo, a, b)] += c;
    if (int c = countIn(V, b); c > 0) out[replaceOnce(A, fi, Flavor::Anti, b, a)] -= c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<Monomial, long> rotationMinus(const Monomial& A, int a, int b) {
  std::map<Monomial, long> out;
  int nf = static_cast<int>(A.factors.size());
  for (int fi = -1; fi < nf; ++fi) {
    const IndexList& U = fi < 0 ? A.xiHolo : A.factors[fi].U;
    const IndexList& V = fi < 0 ? A.xiAntiholo : A.factors[fi].V;
    if (int c = countIn(V, a); c > 0) out[replaceOnce(A, fi, Flavor::Anti, a, b)] += c;
    if (int c = countIn(U, b); c > 0) out[replaceOnce(A, fi, Flavor::Holo, b, a)] -= c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

long uStatistic(const Monomial& B, int a, int b) {
  return B.degreeHolo(a) + B.degreeHolo(b) + B.degreeAnti(a) + B.degreeAnti(b);
}

std::vector<BSetEntry> bSet(const Monomial& B, int a, int b) {
  // candidates: undo a single change a->b (holo) or bbar->abar (anti),
  // i.e. apply b->a or abar->bbar to B
  std::set<Monomial> cand;
  int nf = static_cast<int>(B.factors.size());
  for (int fi = -1; fi < nf; ++fi) {
    const IndexList& U = fi < 0 ? B.xiHolo : B.factors[fi].U;
    const IndexList& V = fi < 0 ? B.xiAntiholo : B.factors[fi].V;
    if (countIn(U, b) > 0) cand.insert(replaceOnce(B, fi, Flavor::Holo, b, a));
    if (countIn(V, a) > 0) cand.insert(replaceOnce(B, fi, Flavor::Anti, a, b));
  }

  // nu(A): marked-slot count in A; slots of repeated identical factors are
  // identified, slots inside one symmetric index block are not
  std::vector<BSetEntry> out;
  for (const Monomial& A : cand) {
    long nu = 0;
    std::set<std::pair<int, bool>> seenFactor;  // (first position of equal factors, flavor)
    int na = static_cast<int>(A.factors.size());
    for (int fi = -1; fi < na; ++fi) {
      if (fi >= 0) {
        int first = fi;
        while (first > 0 && A.factors[first - 1] == A.factors[fi]) --first;
        if (first != fi) continue;  // identical factor already counted
      }
      const IndexList& U = fi < 0 ? A.xiHolo : A.factors[fi].U;
      const IndexList& V = fi < 0 ? A.xiAntiholo : A.factors[fi].V;
      if (int c = countIn(U, a); c > 0 && replaceOnce(A, fi, Flavor::Holo, a, b) == B) nu += c;
      if (int c = countIn(V, b); c > 0 && replaceOnce(A, fi, Flavor::Anti, b, a) == B) nu -= c;
    }
    assert(nu != 0);
    out.push_back({A, nu});
  }
  return out;
}

TwoMonomialReport checkTwoMonomialReportImpl(const Polynomial& P, int m) {
  TwoMonomialReport rep;
  if (P.isZero()) return rep;
  if (m == 0)
    for (const auto& [A, c] : P.terms()) m = std::max(m, A.maxIndex());
  if (m < 2) return rep;

  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) {
      if (a == b) continue;
      std::set<Monomial> candidates;
      for (const auto& [A, c] : P.terms()) {
        int nf = static_cast<int>(A.factors.size());
        for (int fi = -1; fi < nf; ++fi) {
          const IndexList& U = fi < 0 ? A.xiHolo : A.factors[fi].U;
          const IndexList& V = fi < 0 ? A.xiAntiholo : A.factors[fi].V;
          if (countIn(U, a) > 0) candidates.insert(replaceOnce(A, fi, Flavor::Holo, a, b));
          if (countIn(V, b) > 0) candidates.insert(replaceOnce(A, fi, Flavor::Anti, b, a));
        }
      }
      for (const Monomial& B : candidates) {
        std::vector<Monomial> present;
        for (const auto& e : bSet(B, a, b))
          if (P.contains(e.A)) present.push_back(e.A);
        if (present.size() == 1) {
          rep.ok = false;
          rep.B = B;
          rep.a = a;
          rep.b = b;
          rep.present = std::move(present);
          return rep;
        }
      }
    }
  return rep;
}

TwoMonomialReport checkTwoMonomialProperty(const Polynomial& P, int m) {
  return checkTwoMonomialReportImpl(P, m);
}

namespace {

std::vector<std::vector<int>> allPermutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Monomial applyBundlePermutation(const Monomial& A, const std::vector<int>& perm) {
  Monomial B = A;
  for (auto& f : B.factors)
    if (f.kind == JetKind::Bundle) {
      f.p = perm[f.p - 1];
      f.q = perm[f.q - 1];
    }
  return resort(std::move(B));
}

/// Exact rational kernel of a sparse integer matrix given by columns.
/// Rows are keyed by an arbitrary ordered key type.
template <typename RowKey>
std::vector<std::vector<GaussQ>> sparseKernel(
    const std::vector<std::map<RowKey, long>>& columns) {
  // collect row keys
  std::map<RowKey, int> rowId;
  for (const auto& col : columns)
    for (const auto& [k, v] : col) rowId.emplace(k, 0);
  int nr = 0;
  for (auto& [k, id] : rowId) id = nr++;
  int nc = static_cast<int>(columns.size());

  std::vector<std::map<int, mpq_class>> rows(nr);
  for (int j = 0; j < nc; ++j)
    for (const auto& [k, v] : columns[j]) rows[rowId[k]][j] = v;

  // row-reduce; record pivot column per eliminated row
  std::vector<int> pivotColOfRow;
  std::vector<int> pivotRowOfCol(nc, -1);
  for (int r = 0; r < nr; ++r) {
    auto& row = rows[r];
    // eliminate known pivots present in this row
    for (bool changed = true; changed;) {
      changed = false;
      for (auto it = row.begin(); it != row.end();) {
        int c = it->first;
        if (pivotRowOfCol[c] >= 0 && pivotRowOfCol[c] != r) {
          mpq_class f = it->second;
          const auto& prow = rows[pivotRowOfCol[c]];
          for (const auto& [pc, pv] : prow) {
            auto jt = row.find(pc);
            if (jt == row.end())
              row[pc] = -f * pv;
            else {
              jt->second -= f * pv;
              if (jt->second == 0) row.erase(jt);
            }
          }
          it = row.begin();
          changed = true;
        } else {
          ++it;
        }
      }
    }
    if (row.empty()) continue;
    int pc = row.begin()->first;
    mpq_class pv = row.begin()->second;
    for (auto& [c, v] : row) v /= pv;
    pivotRowOfCol[pc] = r;
  }

  // back-substitute pivot rows so each pivot column appears only in its row
  for (int c = 0; c < nc; ++c) {
    int pr = pivotRowOfCol[c];
    if (pr < 0) continue;
    for (int c2 = 0; c2 < nc; ++c2) {
      int pr2 = pivotRowOfCol[c2];
      if (pr2 < 0 || pr2 == pr) continue;
      auto it = rows[pr2].find(c);
      if (it == rows[pr2].end()) continue;
      mpq_class f = it->second;
      for (const auto& [cc, vv] : rows[pr]) {
        auto jt = rows[pr2].find(cc);
        if (jt == rows[pr2].end())
          rows[pr2][cc] = -f * vv;
        else {
          jt->second -= f * vv;
          if (jt->second == 0) rows[pr2].erase(jt);
        }
      }
    }
  }

  std::vector<std::vector<GaussQ>> kernel;
  for (int c = 0; c < nc; ++c) {
    if (pivotRowOfCol[c] >= 0) continue;  // pivot column: bound variable
    std::vector<GaussQ> vec(nc);
    vec[c] = GaussQ(1);
    for (int pc = 0; pc < nc; ++pc) {
      int pr = pivotRowOfCol[pc];
      if (pr < 0) continue;
      auto it = rows[pr].find(c);
      if (it != rows[pr].end()) vec[pc] = GaussQ(mpq_class(-it->second));
    }
    kernel.push_back(std::move(vec));
  }
  return kernel;
}

/// Rescale to coprime integers with positive leading entry.
void normalizeVector(std::vector<GaussQ>& v) {
  mpz_class lcm = 1;
  for (const auto& q : v)
    if (!q.isZero()) lcm = ::lcm(lcm, q.re.get_den());
  mpz_class gcd = 0;
  for (auto& q : v) {
    q.re *= lcm;
    q.re.canonicalize();
    gcd = ::gcd(gcd, q.re.get_num());
  }
  if (gcd == 0) return;
  int sign = 0;
  for (const auto& q : v)
    if (!q.isZero()) {
      sign = q.re > 0 ? 1 : -1;
      break;
    }
  for (auto& q : v) {
    q.re /= gcd * sign;
    q.re.canonicalize();
  }
}

}  // namespace

std::vector<Polynomial> invariantBasis(int m, int weight, int dimE, const Limits& limits) {
  if (weight % 2 != 0)
    throw std::invalid_argument("invariantBasis: invariant polynomials have even weight");
  auto monos = enumerateMonomials(m, weight, dimE, limits);

  // circle constraint: only degree-balanced monomials can appear
  std::vector<Monomial> balanced;
  for (auto& A : monos) {
    bool ok = true;
    for (int a = 1; a <= m && ok; ++a) ok = A.degreeHolo(a) == A.degreeAnti(a);
    if (ok) balanced.push_back(std::move(A));
  }

  // orbits under simultaneous index permutations (and bundle permutations)
  auto perms = allPermutations(m);
  auto bperms = allPermutations(dimE);
  std::map<Monomial, int> orbitOf;
  std::vector<std::vector<Monomial>> orbits;
  for (const auto& A : balanced) {
    if (orbitOf.count(A)) continue;
    std::set<Monomial> orb;
    for (const auto& p : perms)
      for (const auto& bp : bperms)
        orb.insert(applyBundlePermutation(applyIndexPermutation(A, p), bp));
    int id = static_cast<int>(orbits.size());
    for (const auto& X : orb) orbitOf[X] = id;
    orbits.emplace_back(orb.begin(), orb.end());
  }

  auto orbitSum = [&](int id) {
    Polynomial P;
    for (const auto& A : orbits[id]) P.add(A, GaussQ(1));
    return P;
  };

  int norb = static_cast<int>(orbits.size());
  std::vector<std::vector<GaussQ>> kernel;
  if (m == 1) {
    // the two-index rotations are vacuous; circle + permutations is all
    kernel.assign(norb, {});
    for (int j = 0; j < norb; ++j) {
      kernel[j].assign(norb, GaussQ());
      kernel[j][j] = GaussQ(1);
    }
  } else {
    // rotation constraints for the pair (1,2); permutation invariance
    // transports them to every other pair
    using RowKey = std::pair<int, Monomial>;
    std::vector<std::map<RowKey, long>> columns(norb);
    for (int j = 0; j < norb; ++j) {
      for (const auto& A : orbits[j]) {
        for (const auto& [B, c] : rotationPlus(A, 1, 2)) columns[j][{0, B}] += c;
        for (const auto& [B, c] : rotationMinus(A, 1, 2)) columns[j][{1, B}] += c;
      }
      std::erase_if(columns[j], [](const auto& kv) { return kv.second == 0; });
    }
    kernel = sparseKernel(columns);
  }

  std::vector<Polynomial> basis;
  for (auto& vec : kernel) {
    normalizeVector(vec);
    Polynomial P;
    for (int j = 0; j < norb; ++j)
      if (!vec[j].isZero()) P += orbitSum(j) * vec[j];
    basis.push_back(std::move(P));
  }
  return basis;
}

std::vector<Polynomial> kernelOfRestriction(int m, int weight, int dimE, const Limits& limits) {
  auto basis = invariantBasis(m, weight, dimE, limits);
  int nb = static_cast<int>(basis.size());
  if (nb == 0) return {};

  std::vector<std::map<Monomial, long>> columns(nb);
  std::vector<std::map<Monomial, GaussQ>> exactCols(nb);
  bool integral = true;
  for (int j = 0; j < nb; ++j) {
    Polynomial R = restrictTop(basis[j], m);
    for (const auto& [A, c] : R.terms()) {
      exactCols[j][A] = c;
      if (c.isReal() && c.re.get_den() == 1)
        columns[j][A] = static_cast<long>(c.re.get_num().get_si());
      else
        integral = false;
    }
  }

  std::vector<std::vector<GaussQ>> combos;
  if (integral) {
    combos = sparseKernel(columns);
  } else {
    // fall back to a dense exact solve over the restricted monomials
    std::map<Monomial, int> rowId;
    for (const auto& col : exactCols)
      for (const auto& [A, c] : col) rowId.emplace(A, 0);
    int nr = 0;
    for (auto& [A, id] : rowId) id = nr++;
    std::vector<std::map<int, long>> cols2(nb);
    // scale each column to integers
    for (int j = 0; j < nb; ++j) {
      mpz_class l = 1;
      for (const auto& [A, c] : exactCols[j]) l = lcm(l, c.re.get_den());
      for (const auto& [A, c] : exactCols[j]) {
        mpq_class s = c.re * l;
        s.canonicalize();
        cols2[j][rowId[A]] = static_cast<long>(s.get_num().get_si());
      }
    }
    combos = sparseKernel(cols2);
  }

  std::vector<Polynomial> out;
  for (auto& vec : combos) {
    normalizeVector(vec);
    Polynomial P;
    for (int j = 0; j < nb; ++j)
      if (!vec[j].isZero()) P += basis[j] * vec[j];
    out.push_back(std::move(P));
  }
  return out;
}

bool inWeightTwoBlock(const Polynomial& P) {
  for (const auto& [A, c] : P.terms()) {
    for (const auto& f : A.factors)
      if (f.weight() != 2) return false;
    bool xiEmpty = A.xiHolo.empty() && A.xiAntiholo.empty();
    bool xiPair = A.xiHolo.size() == 1 && A.xiAntiholo.size() == 1;
    if (!xiEmpty && !xiPair) return false;
  }
  return true;
}

namespace {

std::vector<const JetVariable*> ofKind(const Monomial& A, JetKind k) {
  std::vector<const JetVariable*> out;
  for (const auto& f : A.factors)
    if (f.kind == k) out.push_back(&f);
  return out;
}

bool allEqualTo(const IndexList& L, int v) {
  return std::all_of(L.begin(), L.end(), [v](int a) { return a == v; });
}

/// Backtracking slot assignment: blocks in the order g,h,w,wbar then Xi,
/// free permutation inside each block; slot nu <= n requires U_nu constant
/// equal to nu (empty allowed).
bool matchNormalForm(const Monomial& A, int n) {
  std::vector<std::vector<const JetVariable*>> blocks = {
      ofKind(A, JetKind::Metric), ofKind(A, JetKind::Bundle), ofKind(A, JetKind::Holo),
      ofKind(A, JetKind::AntiHolo)};
  std::vector<std::vector<bool>> used;
  for (const auto& blk : blocks) used.emplace_back(blk.size(), false);

  auto rec = [&](auto&& self, std::size_t bi, int slot) -> bool {
    if (bi == blocks.size())
      return !(A.hasXi() && slot <= n && !allEqualTo(A.xiHolo, slot));
    const auto& blk = blocks[bi];
    bool blockDone = std::none_of(used[bi].begin(), used[bi].end(), [](bool u) { return !u; });
    if (blockDone) return self(self, bi + 1, slot);
    if (slot > n) return self(self, bi + 1, slot + std::count(used[bi].begin(), used[bi].end(), false));
    for (std::size_t i = 0; i < blk.size(); ++i) {
      if (used[bi][i]) continue;
      if (!allEqualTo(blk[i]->U, slot)) continue;
      used[bi][i] = true;
      bool ok = self(self, bi, slot + 1);
      used[bi][i] = false;
      if (ok) return true;
    }
    return false;
  };
  return rec(rec, 0, 1);
}

/// The sharper normal form at weight 2m: diagonal slots across the blocks,
/// g antiholomorphic indices bounded by the g-block size, Xi empty or the
/// single pair at the top index.
bool matchSharpForm(const Monomial& A, int m) {
  for (const auto& f : A.factors)
    if (f.weight() != 2) return false;

  bool xiEmpty = !A.hasXi();
  if (!xiEmpty && !(A.xiHolo == IndexList{m} && A.xiAntiholo == IndexList{m})) return false;

  auto g = ofKind(A, JetKind::Metric);
  auto h = ofKind(A, JetKind::Bundle);
  auto w = ofKind(A, JetKind::Holo);
  auto wb = ofKind(A, JetKind::AntiHolo);
  int a = static_cast<int>(g.size());
  int slots = a + static_cast<int>(h.size() + w.size() + wb.size());
  if (slots + (xiEmpty ? 0 : 1) != m) return false;

  // g block: slot nu gets U = (nu,nu) and V inside 1..a
  std::vector<bool> used(g.size(), false);
  auto recG = [&](auto&& self, int nu) -> bool {
    if (nu > a) return true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (used[i]) continue;
      if (!(g[i]->U == IndexList{nu, nu})) continue;
      bool okV = std::all_of(g[i]->V.begin(), g[i]->V.end(), [a](int b) { return b <= a; });
      if (!okV) continue;
      used[i] = true;
      if (self(self, nu + 1)) return true;
      used[i] = false;
    }
    return false;
  };
  if (!recG(recG, 1)) return false;

  // h, w, wbar blocks: strictly diagonal one-index slots
  int slot = a + 1;
  for (auto* blk : {&h, &w, &wb}) {
    std::vector<bool> u(blk->size(), false);
    auto recB = [&](auto&& self, int nu, int left) -> bool {
      if (left == 0) return true;
      for (std::size_t i = 0; i < blk->size(); ++i) {
        if (u[i]) continue;
        if (!((*blk)[i]->U == IndexList{nu} && (*blk)[i]->V == IndexList{nu})) continue;
        u[i] = true;
        if (self(self, nu + 1, left - 1)) return true;
        u[i] = false;
      }
      return false;
    };
    if (!recB(recB, slot, static_cast<int>(blk->size()))) return false;
    slot += static_cast<int>(blk->size());
  }
  return true;
}

}  // namespace

SpecialMonomialReport specialMonomial(const Polynomial& P, int m, int n) {
  if (!restrictTop(P, m).isZero())
    throw std::invalid_argument("specialMonomial: P is not in the kernel of the restriction map");
  SpecialMonomialReport rep;
  for (const auto& [A, c] : P.terms()) {
    bool sharp = A.weight() == 2 * m;
    bool hit = sharp ? matchSharpForm(A, m) : matchNormalForm(A, n);
    if (hit) {
      rep.found = true;
      rep.witness = A;
      rep.length = A.length();
      rep.sharpForm = sharp;
      return rep;
    }
  }
  return rep;
}

}  // namespace dolwit::jet
