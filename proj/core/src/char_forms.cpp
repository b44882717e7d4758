#include "dolwit/char_forms.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

namespace dolwit {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int permSign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

Form truncate(const Form& f, int maxDegree) {
  Form r(f.complexDim());
  for (const auto& [k, g] : f.components()) {
    int deg = std::popcount(k.first) + std::popcount(k.second);
    if (deg <= maxDegree) r.addComponent(k.first, k.second, g);
  }
  return r;
}

CurvatureMatrix matWedge(const CurvatureMatrix& A, const CurvatureMatrix& B, int maxDegree) {
  CurvatureMatrix C = CurvatureMatrix::zero(A.rank, A.m);
  for (int i = 0; i < A.rank; ++i)
    for (int j = 0; j < A.rank; ++j) {
      Form acc(A.m);
      for (int k = 0; k < A.rank; ++k) acc += wedge(A.at(i, k), B.at(k, j));
      C.at(i, j) = truncate(acc, maxDegree);
    }
  return C;
}

Form trace(const CurvatureMatrix& A) {
  Form t(A.m);
  for (int i = 0; i < A.rank; ++i) t += A.at(i, i);
  return t;
}

/// Power sums tr(X^k) for k = 1..kmax of X = (i/2pi) F.
std::vector<Form> powerSums(const CurvatureMatrix& F, int kmax, int maxDegree) {
  CurvatureMatrix X = CurvatureMatrix::zero(F.rank, F.m);
  for (int i = 0; i < F.rank; ++i)
    for (int j = 0; j < F.rank; ++j) X.at(i, j) = F.at(i, j) * cplx(0, 1.0 / (2.0 * kPi));
  std::vector<Form> p;
  CurvatureMatrix Xk = X;
  for (int k = 1; k <= kmax; ++k) {
    p.push_back(trace(Xk));
    if (k < kmax) Xk = matWedge(Xk, X, maxDegree);
  }
  return p;
}

Form expOfEvenForm(const Form& L, int m, int maxDegree) {
  // L has components of degree >= 2 only; the series terminates
  Form result = Form::constantScalar(m, 1.0);
  Form term = Form::constantScalar(m, 1.0);
  for (int j = 1; 2 * j <= maxDegree; ++j) {
    term = truncate(wedge(term, L), maxDegree) * (1.0 / j);
    if (term.isZero()) break;
    result += term;
  }
  return result;
}

}  // namespace

std::vector<double> pfaffianSamples(const RealCurvature& R, int m) {
  if (m % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension");
  if (m != R.dim) throw std::invalid_argument("pfaffian: dimension mismatch");
  int half = m / 2;
  double pref = 1.0 / std::tgamma(half + 1);
  for (int i = 0; i < half; ++i) pref *= -1.0 / (8.0 * kPi);

  auto perms = permutations(m);
  std::vector<int> sign(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) sign[i] = permSign(perms[i]);

  long npts = std::max<long>(1, R.grid.total());
  std::vector<double> out(npts, 0.0);
  for (long p = 0; p < npts; ++p) {
    double acc = 0;
    for (std::size_t si = 0; si < perms.size(); ++si)
      for (std::size_t ti = 0; ti < perms.size(); ++ti) {
        double prod = double(sign[si] * sign[ti]);
        const auto& s = perms[si];
        const auto& t = perms[ti];
        for (int pair = 0; pair < half && prod != 0.0; ++pair)
          prod *= R.at(p, s[2 * pair], s[2 * pair + 1], t[2 * pair], t[2 * pair + 1]);
        acc += prod;
      }
    out[p] = pref * acc;
  }
  return out;
}

FourierFunction pfaffian(const RealCurvature& R, int m) {
  auto vals = pfaffianSamples(R, m);
  if (R.grid.dim() == 0) return FourierFunction::constant(0, vals[0]);
  std::vector<cplx> cv(vals.begin(), vals.end());
  return fromSamples(R.grid, cv).pruned(1e-13);
}

Form chernCharacter(const CurvatureMatrix& F, int topDegree) {
  Form ch = Form::constantScalar(F.m, double(F.rank));
  int kmax = topDegree / 2;
  if (kmax < 1) return ch;
  auto p = powerSums(F, kmax, topDegree);
  double fact = 1;
  for (int k = 1; k <= kmax; ++k) {
    fact *= k;
    ch += p[k - 1] * (1.0 / fact);
  }
  return ch;
}

std::vector<double> toddSeriesCoefficients(int kmax) {
  // x/(1-e^{-x}) = 1 / A with A = sum_j (-1)^j x^j/(j+1)!
  std::vector<double> A(kmax + 1);
  double fact = 1;
  for (int j = 0; j <= kmax; ++j) {
    fact *= (j + 1);
    A[j] = (j % 2 ? -1.0 : 1.0) / fact;
  }
  std::vector<double> inv(kmax + 1, 0.0);
  inv[0] = 1.0;
  for (int n = 1; n <= kmax; ++n) {
    double s = 0;
    for (int j = 1; j <= n; ++j) s += A[j] * inv[n - j];
    inv[n] = -s;
  }
  return inv;
}

std::vector<double> toddLogCoefficients(int kmax) {
  auto t = toddSeriesCoefficients(kmax);
  // log(1 + u) with u = t - 1
  std::vector<double> u(t.begin() + 1, t.end());
  std::vector<double> logc(kmax + 1, 0.0);
  std::vector<double> upow(kmax, 0.0);  // current power of u, offset by 1
  std::vector<double> cur = u;
  for (int j = 1; j <= kmax; ++j) {
    double sgn = (j % 2 ? 1.0 : -1.0);
    for (int d = j; d <= kmax; ++d) logc[d] += sgn / j * cur[d - 1];
    if (j < kmax) {
      // cur = cur * u (both offset by one power of x)
      std::vector<double> nxt(kmax, 0.0);
      for (int a = 1; a <= kmax; ++a)
        for (int b = 1; a + b <= kmax; ++b) nxt[a + b - 1] += cur[a - 1] * u[b - 1];
      cur = nxt;
    }
  }
  return {logc.begin() + 1, logc.end()};  // s_1..s_kmax
}

Form todd(const CurvatureMatrix& F, int topDegree) {
  int kmax = topDegree / 2;
  if (kmax < 1) return Form::constantScalar(F.m, 1.0);
  auto s = toddLogCoefficients(kmax);
  auto p = powerSums(F, kmax, topDegree);
  Form L(F.m);
  for (int k = 1; k <= kmax; ++k) L += p[k - 1] * s[k - 1];
  return expOfEvenForm(L, F.m, topDegree);
}

Form theta(const Form& omega, int topDegree, double tol) {
  int m = omega.complexDim();
  if (omega.isZero()) return Form::constantScalar(m, 1.0);
  if (!omega.hasPureBidegree(1, 0)) throw std::invalid_argument("theta: omega must be (1,0)");
  if (partialOp(omega).maxAbs() > tol)
    throw std::domain_error("theta: partial(omega) != 0");
  Form dIm = dOp(imagPartOneForm(omega));
  Form result = Form::constantScalar(m, 1.0);
  Form power = Form::constantScalar(m, 1.0);
  double fact = 1;
  for (int k = 1; 2 * k <= topDegree; ++k) {
    fact *= k;
    power = truncate(wedge(power, dIm), topDegree);
    if (power.isZero()) break;
    result += power * (1.0 / (fact * std::pow(kPi, k)));
  }
  return result;
}

Form indexDensityForm(const ManifoldSpec& M) {
  if (!checkKahler(M)) throw std::domain_error("indexDensity: metric is not Kahler");
  int top = 2 * M.m;
  Form td = todd(tangentCurvature(M), top);
  Form ch = chernCharacter(bundleCurvature(M), top);
  Form th = theta(M.omega, top);
  Form prod = truncate(wedge(truncate(wedge(td, ch), top), th), top);

  IndexMask full = (IndexMask(1) << M.m) - 1;
  Form topPart(M.m);
  if (const FourierFunction* f = prod.component(full, full)) topPart.setComponent(full, full, *f);
  return topPart;
}

FourierFunction indexDensity(const ManifoldSpec& M) {
  Form topPart = indexDensityForm(M);
  if (topPart.isZero()) return FourierFunction(2 * M.m);
  return hodgeStarTop(topPart, metricDet2(M)).pruned(1e-14);
}

}  // namespace dolwit
