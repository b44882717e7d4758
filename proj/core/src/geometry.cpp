#include "dolwit/geometry.hpp"

#include <Eigen/Dense>
#include <functional>
#include <cmath>

namespace dolwit {

namespace {

FourierFunction dz(const FourierFunction& f, int a) {
  return (f.derivative(2 * a) - f.derivative(2 * a + 1) * cplx(0, 1)) * 0.5;
}
FourierFunction dzbar(const FourierFunction& f, int b) {
  return (f.derivative(2 * b) + f.derivative(2 * b + 1) * cplx(0, 1)) * 0.5;
}

/// Pointwise matrix function of the metric entries, re-expanded in modes and
/// verified at scattered probe points.
std::vector<std::vector<FourierFunction>> pointwiseMatrixOp(
    const std::vector<std::vector<FourierFunction>>& entries, int realDim,
    const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& op, double tol = 1e-11) {
  int n = static_cast<int>(entries.size());
  std::vector<int> s(realDim, 0);
  for (const auto& row : entries)
    for (const auto& f : row) {
      auto fs = f.support();
      for (int i = 0; i < realDim; ++i) s[i] = std::max(s[i], fs[i]);
    }
  for (int& v : s) v = std::max(2 * v + 4, 4);
  auto probes = probePoints(realDim, 128);

  for (int attempt = 0; attempt < 5; ++attempt) {
    GridShape grid = productGrid(s, realDim);
    long npts = grid.total();
    std::vector<std::vector<std::vector<cplx>>> samples(n, std::vector<std::vector<cplx>>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) samples[i][j] = entries[i][j].sample(grid);

    std::vector<std::vector<std::vector<cplx>>> res(
        n, std::vector<std::vector<cplx>>(n, std::vector<cplx>(npts)));
    Eigen::MatrixXcd A(n, n);
    for (long p = 0; p < npts; ++p) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = samples[i][j][p];
      Eigen::MatrixXcd B = op(A);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) res[i][j][p] = B(i, j);
    }

    std::vector<std::vector<FourierFunction>> out(n, std::vector<FourierFunction>(n));
    double maxAmp = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        out[i][j] = fromSamples(grid, res[i][j]).prunedRelative(1e-13);
        maxAmp = std::max(maxAmp, out[i][j].maxAbsAmplitude());
      }

    double err = 0;
    for (const auto& x : probes) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = entries[i][j].evaluate(x);
      Eigen::MatrixXcd B = op(A);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) err = std::max(err, std::abs(B(i, j) - out[i][j].evaluate(x)));
    }
    if (err < tol * std::max(1.0, maxAmp)) return out;
    for (int& v : s) v *= 2;
  }
  throw std::runtime_error("pointwiseMatrixOp: series did not stabilize");
}

}  // namespace

Form kahlerForm(const ManifoldSpec& M) {
  Form omega(M.m);
  for (int a = 0; a < M.m; ++a)
    for (int b = 0; b < M.m; ++b)
      omega.addComponent(IndexMask(1) << a, IndexMask(1) << b, M.g(a, b) * cplx(0, 1));
  return omega;
}

bool checkKahler(const ManifoldSpec& M, double tol) {
  return dOp(kahlerForm(M)).maxAbs() < tol;
}

bool checkDelClosed(const ManifoldSpec& M, double tol) {
  if (M.omega.isZero()) return true;
  return partialOp(M.omega).maxAbs() < tol;
}

Form dImOmega(const ManifoldSpec& M) { return dOp(imagPartOneForm(M.omega)); }

std::vector<std::vector<FourierFunction>> metricInverse(const ManifoldSpec& M) {
  return pointwiseMatrixOp(M.metric, 2 * M.m,
                           [](const Eigen::MatrixXcd& A) { return A.inverse().eval(); });
}

FourierFunction metricDet2(const ManifoldSpec& M) {
  auto det = pointwiseMatrixOp(M.metric, 2 * M.m, [](const Eigen::MatrixXcd& A) {
    Eigen::MatrixXcd d(1, 1);
    d(0, 0) = (2.0 * A).determinant();
    return d;
  });
  return det[0][0];
}

double ComplexCurvature::maxSymmetryViolation() const {
  double v = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          // symmetry in the holomorphic pair (a,c) and antiholomorphic (b,d)
          v = std::max(v, (at(a, b, c, d) - at(c, b, a, d)).maxAbsOnGrid());
          v = std::max(v, (at(a, b, c, d) - at(a, d, c, b)).maxAbsOnGrid());
          // Hermitian reality
          v = std::max(v, (at(a, b, c, d) - at(b, a, d, c).conj()).maxAbsOnGrid());
        }
  return v;
}

ComplexCurvature curvatureTensor(const ManifoldSpec& M) {
  int m = M.m;
  auto ginv = metricInverse(M);
  ComplexCurvature R;
  R.m = m;
  R.R.assign(static_cast<std::size_t>(m) * m * m * m, FourierFunction(2 * m));

  // first derivatives, cached
  std::vector<std::vector<std::vector<FourierFunction>>> dG(m), dGbar(m);
  for (int a = 0; a < m; ++a) {
    dG[a].assign(m, std::vector<FourierFunction>(m));
    dGbar[a].assign(m, std::vector<FourierFunction>(m));
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        dG[a][b][c] = dz(M.g(a, b), c);      // g_{a bbar, c}
        dGbar[a][b][c] = dzbar(M.g(a, b), c);  // g_{a bbar, cbar}
      }
  }

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          FourierFunction val = -dzbar(dG[a][b][c], d);
          for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) val += ginv[s][r] * dG[a][s][c] * dGbar[r][b][d];
          R.at(a, b, c, d) = val.pruned(1e-15);
        }
  return R;
}

namespace {

CurvatureMatrix chernCurvatureOf(const std::vector<std::vector<FourierFunction>>& H, int m) {
  int n = static_cast<int>(H.size());
  auto Hinv = pointwiseMatrixOp(H, 2 * m,
                                [](const Eigen::MatrixXcd& A) { return A.inverse().eval(); });
  CurvatureMatrix F = CurvatureMatrix::zero(n, m);
  // theta = H^{-1} partial H (a matrix of (1,0)-forms), F = dbar theta
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Form theta(m);
      for (int a = 0; a < m; ++a) {
        FourierFunction comp(2 * m);
        for (int s = 0; s < n; ++s) comp += Hinv[p][s] * dz(H[s][q], a);
        theta.addComponent(IndexMask(1) << a, 0, comp.pruned(1e-15));
      }
      F.at(p, q) = dbar(theta);
    }
  return F;
}

}  // namespace

CurvatureMatrix tangentCurvature(const ManifoldSpec& M) {
  return chernCurvatureOf(M.metric, M.m);
}

CurvatureMatrix bundleCurvature(const ManifoldSpec& M) {
  return chernCurvatureOf(M.bundleMetric, M.m);
}

RealCurvature RealCurvature::zero(int dim, GridShape g) {
  RealCurvature R;
  R.dim = dim;
  R.grid = std::move(g);
  R.data.assign(R.grid.total() * static_cast<long>(dim) * dim * dim * dim, 0.0);
  return R;
}

RealCurvature RealCurvature::constant(int dim, const std::vector<double>& comps) {
  RealCurvature R = zero(dim, GridShape{std::vector<int>{}});
  if (static_cast<long>(comps.size()) != static_cast<long>(dim) * dim * dim * dim)
    throw std::invalid_argument("RealCurvature::constant: component count mismatch");
  R.data = comps;
  return R;
}

double RealCurvature::maxSymmetryViolation() const {
  double v = 0;
  long npts = grid.total();
  for (long p = 0; p < npts; ++p)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            v = std::max(v, std::abs(at(p, i, j, k, l) + at(p, j, i, k, l)));
            v = std::max(v, std::abs(at(p, i, j, k, l) + at(p, i, j, l, k)));
            v = std::max(v, std::abs(at(p, i, j, k, l) - at(p, k, l, i, j)));
          }
  return v;
}

double RealCurvature::maxBianchiViolation() const {
  double v = 0;
  long npts = grid.total();
  for (long p = 0; p < npts; ++p)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l)
            v = std::max(v, std::abs(at(p, i, j, k, l) + at(p, j, k, i, l) + at(p, k, i, j, l)));
  return v;
}

std::vector<double> RealCurvature::scalarCurvatureSamples() const {
  long npts = grid.total();
  std::vector<double> tau(npts, 0.0);
  for (long p = 0; p < npts; ++p)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) tau[p] += at(p, i, j, j, i);
  return tau;
}

RealCurvature realCurvature(const ManifoldSpec& M, const GridShape& grid) {
  int m = M.m;
  int dim = 2 * m;
  ComplexCurvature Rc = curvatureTensor(M);

  // sample complex curvature and metric
  std::vector<std::vector<cplx>> Rs(static_cast<std::size_t>(m) * m * m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          Rs[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d] = Rc.at(a, b, c, d).sample(grid);
  std::vector<std::vector<cplx>> Gs(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) Gs[a * m + b] = M.g(a, b).sample(grid);

  RealCurvature R = RealCurvature::zero(dim, grid);
  long npts = grid.total();
  Eigen::MatrixXcd G(m, m);
  for (long p = 0; p < npts; ++p) {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) G(a, b) = Gs[a * m + b][p];
    // unitary frame v_a = sum_c T_{ac} d/dz^c with T (2G) T^* = I
    Eigen::MatrixXcd C = (2.0 * G).llt().matrixL();
    Eigen::MatrixXcd T = C.inverse();

    // real frame e_{2a} = v_a + conj(v_a), e_{2a+1} = i(v_a - conj(v_a)):
    // holomorphic coefficients a_{i c}
    Eigen::MatrixXcd coef(dim, m);
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < m; ++c) {
        coef(2 * a, c) = T(a, c);
        coef(2 * a + 1, c) = cplx(0, 1) * T(a, c);
      }

    // pair tensors M_{ij}^{cd} = a_{ic} conj(a_{jd}) - conj(a_{id}) a_{jc}
    std::vector<cplx> pair(static_cast<std::size_t>(dim) * dim * m * m);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d)
            pair[((static_cast<std::size_t>(i) * dim + j) * m + c) * m + d] =
                coef(i, c) * std::conj(coef(j, d)) - std::conj(coef(i, d)) * coef(j, c);

    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            cplx acc = 0;
            for (int a = 0; a < m; ++a)
              for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                  for (int d = 0; d < m; ++d)
                    acc += pair[((static_cast<std::size_t>(i) * dim + j) * m + a) * m + b] *
                           pair[((static_cast<std::size_t>(k) * dim + l) * m + c) * m + d] *
                           Rs[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d][p];
            R.at(p, i, j, k, l) = acc.real();
          }
  }
  return R;
}

FourierFunction scalarCurvature(const ManifoldSpec& M) {
  // sample tau on a grid comfortably resolving the curvature modes
  ComplexCurvature Rc = curvatureTensor(M);
  std::vector<int> s(2 * M.m, 0);
  for (const auto& f : Rc.R) {
    auto fs = f.support();
    for (int i = 0; i < 2 * M.m; ++i) s[i] = std::max(s[i], fs[i]);
  }
  for (int& v : s) v = 2 * v + 4;
  GridShape grid = productGrid(s, 2 * M.m);
  RealCurvature R = realCurvature(M, grid);
  auto tau = R.scalarCurvatureSamples();
  std::vector<cplx> vals(tau.begin(), tau.end());
  return fromSamples(grid, vals).pruned(1e-12);
}

}  // namespace dolwit
