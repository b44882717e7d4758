#include "dolwit/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <lapacke.h>

#include "dolwit/geometry.hpp"

namespace dolwit::spectral {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kExpFloor = 42.0;  // exp(-42) ~ 5e-19, below double resolution
}  // namespace

std::vector<double> TGrid::points() const {
  if (count < 2 || tMin <= 0 || tMax <= tMin) throw std::invalid_argument("TGrid: bad parameters");
  std::vector<double> ts(count);
  double r = std::pow(tMax / tMin, 1.0 / (count - 1));
  double t = tMin;
  for (int i = 0; i < count; ++i, t *= r) ts[i] = t;
  ts.back() = tMax;
  return ts;
}

namespace {

std::vector<double> modelExponents(int mReal) {
  if (mReal % 2 != 0) throw std::invalid_argument("fit: odd real dimension");
  std::vector<double> e;
  for (int n = 0; n <= mReal / 2 + 1; ++n) e.push_back((2.0 * n - mReal) / 2.0);
  return e;
}

}  // namespace

SharedFit::SharedFit(const std::vector<double>& ts, int mReal) : ts_(ts) {
  exps_ = modelExponents(mReal);
  int nt = static_cast<int>(ts.size());
  int nc = static_cast<int>(exps_.size());
  if (nt < nc + 1) throw std::invalid_argument("fit: need more t samples than coefficients");
  Eigen::MatrixXd V(nt, nc);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nc; ++j) V(i, j) = std::pow(ts[i], exps_[j]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  cond_ = svd.singularValues()(0) / svd.singularValues()(nc - 1);
  Eigen::VectorXd sinv = svd.singularValues().cwiseInverse();
  pinv_ = svd.matrixV() * sinv.asDiagonal() * svd.matrixU().transpose();
}

FitResult SharedFit::fit(const std::vector<double>& values) const {
  if (values.size() != ts_.size()) throw std::invalid_argument("fit: sample count mismatch");
  Eigen::Map<const Eigen::VectorXd> y(values.data(), values.size());
  Eigen::VectorXd c = pinv_ * y;
  FitResult r;
  r.exponents = exps_;
  r.coeff.assign(c.data(), c.data() + c.size());
  double ss = 0;
  for (std::size_t i = 0; i < ts_.size(); ++i) {
    double fit = 0;
    for (std::size_t j = 0; j < exps_.size(); ++j) fit += c(j) * std::pow(ts_[i], exps_[j]);
    ss += (fit - values[i]) * (fit - values[i]);
  }
  r.residual = std::sqrt(ss / ts_.size());
  r.conditionNumber = cond_;
  r.wellConditioned = cond_ < 1e10;
  return r;
}

FitResult fitCoefficients(const HeatTraceSeries& series, int mReal) {
  SharedFit sf(series.t, mReal);
  return sf.fit(series.value);
}

// ---------------------------------------------------------------------------

struct GalerkinComplex::LeafData {
  ManifoldSpec spec;
  std::vector<std::pair<int, int>> modes;
  Eigen::MatrixXcd d0, M0, M1;
  LevelEigen eig[2];
  FourierFunction weight0, weight1;  // pointwise fiber trace weights
};

namespace {

Eigen::MatrixXcd convolutionMatrix(const FourierFunction& w,
                                   const std::vector<std::pair<int, int>>& modes) {
  long n = static_cast<long>(modes.size());
  Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      FourierFunction::Freq d{modes[i].first - modes[j].first, modes[i].second - modes[j].second};
      W(i, j) = w.amplitude(d);
    }
  return W;
}

void hermitize(Eigen::MatrixXcd& A) { A = 0.5 * (A + A.adjoint()).eval(); }

bool isScaledIdentity(const Eigen::MatrixXcd& B, double& c) {
  c = B(0, 0).real();
  long n = B.rows();
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) {
      cplx expect = i == j ? cplx(c) : cplx(0);
      if (std::abs(B(i, j) - expect) > 1e-14 * std::max(1.0, std::abs(c))) return false;
    }
  return c > 0;
}

LevelEigen solvePencil(Eigen::MatrixXcd A, Eigen::MatrixXcd B) {
  int n = static_cast<int>(A.rows());
  std::vector<double> w(n);
  double c = 1.0;
  if (isScaledIdentity(B, c)) {
    // constant mass: plain Hermitian solve, then rescale to B-orthonormality
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(A.data()), n, w.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    for (int i = 0; i < n; ++i) w[i] /= c;
    A *= 1.0 / std::sqrt(c);
  } else {
    int info = LAPACKE_zhegvd(LAPACK_COL_MAJOR, 1, 'V', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(A.data()), n,
                              reinterpret_cast<lapack_complex_double*>(B.data()), n, w.data());
    if (info != 0) throw std::runtime_error("zhegvd failed, info=" + std::to_string(info));
  }
  LevelEigen e;
  e.values = Eigen::Map<Eigen::VectorXd>(w.data(), n);
  double scale = std::max(1.0, std::abs(e.values(n - 1)));
  for (int i = 0; i < n; ++i) {
    if (e.values(i) < -1e-7 * scale)
      throw std::runtime_error("solvePencil: negative eigenvalue in a nonnegative pencil");
    if (e.values(i) < 0) e.values(i) = 0;
  }
  e.vectors = std::move(A);
  return e;
}

int maxSupport(const FourierFunction& f) {
  int s = 0;
  for (int v : f.support()) s = std::max(s, v);
  return s;
}

}  // namespace

GalerkinComplex assemble(const ManifoldSpec& M, int cutoff) {
  if (M.m != 1)
    throw std::invalid_argument(
        "assemble: only complex-dimension-1 blocks assemble directly; build products with "
        "tensorProduct");
  if (M.bundleRank != 1) throw std::invalid_argument("assemble: line bundles only");
  if (!M.omega.isZero() && !M.omega.hasPureBidegree(1, 0))
    throw std::invalid_argument("assemble: omega must be a (1,0)-form");

  const FourierFunction& g11 = M.g(0, 0);
  const FourierFunction& h = M.h(0, 0);
  FourierFunction u(2);  // omega = u dz
  if (const FourierFunction* c = M.omega.component(1, 0)) u = *c;

  int support = std::max({maxSupport(g11), maxSupport(h), maxSupport(u)});
  if (cutoff < support + 1)
    throw std::invalid_argument("assemble: cutoff too small for the data's Fourier support");

  auto leaf = std::make_shared<GalerkinComplex::LeafData>();
  leaf->spec = M;
  int N = cutoff;
  leaf->modes.reserve(static_cast<std::size_t>(2 * N + 1) * (2 * N + 1));
  for (int k1 = -N; k1 <= N; ++k1)
    for (int k2 = -N; k2 <= N; ++k2) leaf->modes.push_back({k1, k2});
  long n = static_cast<long>(leaf->modes.size());

  FourierFunction det2g = (g11 * 2.0).prunedRelative(1e-15);
  leaf->weight0 = h;
  leaf->weight1 = pointwiseQuotient(h * 2.0, det2g);  // g^{1bar1} h

  // d0 = sqrt2 (dbar + ext(omegabar)): symbol pi(i k1 - k2) plus the
  // multiplication operator by conj(u)
  Eigen::MatrixXcd D = convolutionMatrix(u.conj(), leaf->modes);
  for (long i = 0; i < n; ++i)
    D(i, i) += cplx(0, kPi) * double(leaf->modes[i].first) - kPi * double(leaf->modes[i].second);
  leaf->d0 = std::sqrt(2.0) * D;

  leaf->M0 = convolutionMatrix((h * det2g).prunedRelative(1e-15), leaf->modes);
  leaf->M1 = convolutionMatrix(h * 2.0, leaf->modes);
  hermitize(leaf->M0);
  hermitize(leaf->M1);

  Eigen::MatrixXcd A0 = leaf->d0.adjoint() * leaf->M1 * leaf->d0;
  hermitize(A0);
  leaf->eig[0] = solvePencil(A0, leaf->M0);

  Eigen::MatrixXcd X = Eigen::LLT<Eigen::MatrixXcd>(leaf->M0)
                           .solve((leaf->d0.adjoint() * leaf->M1).eval());
  Eigen::MatrixXcd A1 = leaf->M1 * leaf->d0 * X;
  hermitize(A1);
  leaf->eig[1] = solvePencil(A1, leaf->M1);

  GalerkinComplex G;
  G.m_ = 1;
  G.cutoff_ = cutoff;
  G.leaf_ = std::move(leaf);
  return G;
}

GalerkinComplex tensorProduct(GalerkinComplex a, GalerkinComplex b) {
  GalerkinComplex G;
  G.m_ = a.m_ + b.m_;
  G.cutoff_ = std::min(a.cutoff_, b.cutoff_);
  G.left_ = std::make_shared<GalerkinComplex>(std::move(a));
  G.right_ = std::make_shared<GalerkinComplex>(std::move(b));
  return G;
}

const Eigen::MatrixXcd& GalerkinComplex::d0() const {
  if (!leaf_) throw std::logic_error("d0: not a leaf");
  return leaf_->d0;
}
const Eigen::MatrixXcd& GalerkinComplex::mass0() const {
  if (!leaf_) throw std::logic_error("mass0: not a leaf");
  return leaf_->M0;
}
const Eigen::MatrixXcd& GalerkinComplex::mass1() const {
  if (!leaf_) throw std::logic_error("mass1: not a leaf");
  return leaf_->M1;
}
const LevelEigen& GalerkinComplex::levelEigen(int level) const {
  if (!leaf_) throw std::logic_error("levelEigen: not a leaf");
  if (level < 0 || level > 1) throw std::out_of_range("levelEigen: level");
  return leaf_->eig[level];
}
const ManifoldSpec& GalerkinComplex::spec() const {
  if (!leaf_) throw std::logic_error("spec: not a leaf");
  return leaf_->spec;
}
const std::vector<std::pair<int, int>>& GalerkinComplex::modes() const {
  if (!leaf_) throw std::logic_error("modes: not a leaf");
  return leaf_->modes;
}

long GalerkinComplex::levelDimension(int level) const {
  if (level < 0 || level > m_) return 0;
  if (leaf_) return leaf_->eig[level].values.size();
  long total = 0;
  for (int i = 0; i <= left_->m_; ++i) {
    int j = level - i;
    if (j < 0 || j > right_->m_) continue;
    total += left_->levelDimension(i) * right_->levelDimension(j);
  }
  return total;
}

double GalerkinComplex::levelTrace(int level, double t) const {
  if (level < 0 || level > m_) return 0;
  if (leaf_) {
    const auto& v = leaf_->eig[level].values;
    double s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      double a = t * v(i);
      if (a < kExpFloor) s += std::exp(-a);
    }
    return s;
  }
  double s = 0;
  for (int i = 0; i <= left_->m_; ++i) {
    int j = level - i;
    if (j < 0 || j > right_->m_) continue;
    s += left_->levelTrace(i, t) * right_->levelTrace(j, t);
  }
  return s;
}

double GalerkinComplex::heatSupertrace(double t) const {
  if (t <= 0) throw std::invalid_argument("heatSupertrace: t must be positive");
  double s = 0;
  for (int i = 0; i <= m_; ++i) s += (i % 2 ? -1.0 : 1.0) * levelTrace(i, t);
  return s;
}

namespace {

/// Leaf level densities: tr K_i(t,x,x) = w_i(x) sum_a e^{-t l_a} |phi_a(x)|^2
/// with eigenvectors mass-orthonormal; modes beyond the exp resolution at the
/// smallest t are skipped.
std::vector<std::vector<std::vector<double>>> leafDensityTable(
    const GalerkinComplex& G, const std::vector<double>& ts, const GridShape& grid) {
  double tMin = *std::min_element(ts.begin(), ts.end());
  double lamCut = kExpFloor / tMin;
  long npts = grid.total();
  const auto& modes = G.modes();
  long nm = static_cast<long>(modes.size());

  Eigen::MatrixXcd B(npts, nm);
  for (long p = 0; p < npts; ++p) {
    auto x = grid.point(p);
    for (long q = 0; q < nm; ++q) {
      double phase = 2 * kPi * (modes[q].first * x[0] + modes[q].second * x[1]);
      B(p, q) = std::polar(1.0, phase);
    }
  }

  const ManifoldSpec& M = G.spec();
  FourierFunction det2g = (M.g(0, 0) * 2.0).prunedRelative(1e-15);

  std::vector<std::vector<std::vector<double>>> out(2);
  for (int level = 0; level < 2; ++level) {
    const LevelEigen& eig = G.levelEigen(level);
    long nsel = 0;
    while (nsel < eig.values.size() && eig.values(nsel) <= lamCut) ++nsel;
    Eigen::MatrixXd P = (B * eig.vectors.leftCols(nsel)).cwiseAbs2();

    FourierFunction weight =
        level == 0 ? M.h(0, 0) : pointwiseQuotient(M.h(0, 0) * 2.0, det2g);
    auto wsamp = weight.sample(grid);

    out[level].assign(ts.size(), std::vector<double>(npts, 0.0));
    Eigen::VectorXd ex(nsel);
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      for (long a = 0; a < nsel; ++a) {
        double arg = ts[ti] * eig.values(a);
        ex(a) = arg < kExpFloor ? std::exp(-arg) : 0.0;
      }
      Eigen::VectorXd dens = P * ex;
      for (long p = 0; p < npts; ++p) out[level][ti][p] = dens(p) * wsamp[p].real();
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::vector<double>>> levelDensityTable(
    const GalerkinComplex& G, const std::vector<double>& ts, const GridShape& grid) {
  if (grid.dim() != 2 * G.complexDim())
    throw std::invalid_argument("levelDensityTable: grid dimension mismatch");
  if (G.isLeaf()) return leafDensityTable(G, ts, grid);

  const GalerkinComplex& A = G.leftFactor();
  const GalerkinComplex& B = G.rightFactor();
  GridShape ga{std::vector<int>(grid.size.begin(), grid.size.begin() + 2 * A.complexDim())};
  GridShape gb{std::vector<int>(grid.size.begin() + 2 * A.complexDim(), grid.size.end())};
  auto ta = levelDensityTable(A, ts, ga);
  auto tb = levelDensityTable(B, ts, gb);
  long na = ga.total(), nb = gb.total();

  std::vector<std::vector<std::vector<double>>> out(
      G.levels(), std::vector<std::vector<double>>(ts.size(), std::vector<double>(na * nb, 0.0)));
  for (int k = 0; k < G.levels(); ++k)
    for (int i = 0; i <= A.complexDim(); ++i) {
      int j = k - i;
      if (j < 0 || j > B.complexDim()) continue;
      for (std::size_t ti = 0; ti < ts.size(); ++ti)
        for (long pa = 0; pa < na; ++pa) {
          double va = ta[i][ti][pa];
          if (va == 0) continue;
          double* dst = out[k][ti].data() + pa * nb;
          const double* src = tb[j][ti].data();
          for (long pb = 0; pb < nb; ++pb) dst[pb] += va * src[pb];
        }
    }
  return out;
}

std::vector<std::vector<double>> pointwiseDensityTable(const GalerkinComplex& G,
                                                       const std::vector<double>& ts,
                                                       const GridShape& grid) {
  auto levels = levelDensityTable(G, ts, grid);
  std::vector<std::vector<double>> out(ts.size(), std::vector<double>(grid.total(), 0.0));
  for (int k = 0; k < G.levels(); ++k) {
    double sign = k % 2 ? -1.0 : 1.0;
    for (std::size_t ti = 0; ti < ts.size(); ++ti)
      for (long p = 0; p < grid.total(); ++p) out[ti][p] += sign * levels[k][ti][p];
  }
  return out;
}

namespace {

std::vector<double> leafLevelDensityAt(const GalerkinComplex& G, double t,
                                       const std::vector<double>& x) {
  const auto& modes = G.modes();
  long nm = static_cast<long>(modes.size());
  Eigen::VectorXcd bx(nm);
  for (long q = 0; q < nm; ++q)
    bx(q) = std::polar(1.0, 2 * kPi * (modes[q].first * x[0] + modes[q].second * x[1]));

  const ManifoldSpec& M = G.spec();
  FourierFunction det2g = (M.g(0, 0) * 2.0).prunedRelative(1e-15);
  std::vector<double> out(2, 0.0);
  for (int level = 0; level < 2; ++level) {
    const LevelEigen& eig = G.levelEigen(level);
    Eigen::VectorXcd vals = eig.vectors.adjoint() * bx;
    double s = 0;
    for (Eigen::Index a = 0; a < vals.size(); ++a) {
      double arg = t * eig.values(a);
      if (arg < kExpFloor) s += std::exp(-arg) * std::norm(vals(a));
    }
    FourierFunction weight = level == 0 ? M.h(0, 0) : pointwiseQuotient(M.h(0, 0) * 2.0, det2g);
    out[level] = s * weight.evaluate(x).real();
  }
  return out;
}

std::vector<double> levelDensityAt(const GalerkinComplex& G, double t,
                                   const std::vector<double>& x) {
  if (G.isLeaf()) return leafLevelDensityAt(G, t, x);
  const GalerkinComplex& A = G.leftFactor();
  const GalerkinComplex& B = G.rightFactor();
  std::vector<double> xa(x.begin(), x.begin() + 2 * A.complexDim());
  std::vector<double> xb(x.begin() + 2 * A.complexDim(), x.end());
  auto da = levelDensityAt(A, t, xa);
  auto db = levelDensityAt(B, t, xb);
  std::vector<double> out(G.levels(), 0.0);
  for (int k = 0; k < G.levels(); ++k)
    for (int i = 0; i <= A.complexDim(); ++i) {
      int j = k - i;
      if (j < 0 || j > B.complexDim()) continue;
      out[k] += da[i] * db[j];
    }
  return out;
}

}  // namespace

double pointwiseDensity(const GalerkinComplex& G, double t, const std::vector<double>& x) {
  if (x.size() != static_cast<std::size_t>(2 * G.complexDim()))
    throw std::invalid_argument("pointwiseDensity: point dimension mismatch");
  auto levels = levelDensityAt(G, t, x);
  double s = 0;
  for (int k = 0; k < G.levels(); ++k) s += (k % 2 ? -1.0 : 1.0) * levels[k];
  return s;
}

HeatTraceSeries heatTrace(const GalerkinComplex& G, const TGrid& grid) {
  HeatTraceSeries s;
  s.t = grid.points();
  for (double t : s.t) s.value.push_back(G.heatSupertrace(t));
  return s;
}

IndexCertificate mckeanSingerIndex(const GalerkinComplex& G, const TGrid& grid) {
  auto ts = grid.points();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double t : ts) {
    double v = G.heatSupertrace(t);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double mid = G.heatSupertrace(ts[ts.size() / 2]);
  IndexCertificate c;
  c.index = std::lround(mid);
  c.maxDeviation = hi - lo;
  c.offInteger = std::abs(mid - double(c.index));
  if (c.offInteger > 1e-3)
    throw std::runtime_error("mckeanSingerIndex: supertrace far from an integer (under-resolved)");
  return c;
}

double integrateDensity(const ManifoldSpec& M, const GridShape& grid,
                        const std::vector<double>& values) {
  if (static_cast<long>(values.size()) != grid.total())
    throw std::invalid_argument("integrateDensity: value count mismatch");
  auto w = metricDet2(M).sample(grid);
  double s = 0;
  for (long p = 0; p < grid.total(); ++p) s += values[p] * w[p].real();
  return s / double(grid.total());
}

}  // namespace dolwit::spectral
