#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <numbers>

#include "dolwit/char_forms.hpp"
#include "dolwit/spectral.hpp"

using namespace dolwit;
using namespace dolwit::spectral;

namespace {

constexpr double kPi = std::numbers::pi;

FourierFunction sin1(int dim, int axis, double amp = 1.0) {
  FourierFunction f(dim);
  FourierFunction::Freq k(dim, 0);
  k[axis] = 1;
  f.setAmplitude(k, cplx(0, -0.5 * amp));
  k[axis] = -1;
  f.setAmplitude(k, cplx(0, 0.5 * amp));
  return f;
}

FourierFunction cos1(int dim, int axis, double amp = 1.0) {
  FourierFunction f(dim);
  FourierFunction::Freq k(dim, 0);
  k[axis] = 1;
  f.setAmplitude(k, 0.5 * amp);
  k[axis] = -1;
  f.setAmplitude(k, 0.5 * amp);
  return f;
}

ManifoldSpec sinTwistTorus(double amp = 1.0) {
  Form w(1);
  w.setComponent(1, 0, sin1(2, 0, amp));
  return flatTorus(w, "flat-sin");
}

ManifoldSpec constTwistTorus(cplx c) {
  Form w(1);
  w.setComponent(1, 0, FourierFunction::constant(2, c));
  return flatTorus(w, "flat-const");
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

std::vector<double> sortedSums(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  std::vector<double> s;
  s.reserve(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) s.push_back(a(i) + b(j));
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("t-grid and coefficient fits") {
  TGrid tg{0.01, 0.1, 5};
  auto ts = tg.points();
  REQUIRE(ts.size() == 5);
  CHECK(ts.front() == doctest::Approx(0.01));
  CHECK(ts.back() == doctest::Approx(0.1));
  CHECK(ts[1] / ts[0] == doctest::Approx(ts[2] / ts[1]));

  // exact model data is recovered exactly
  HeatTraceSeries s;
  s.t = TGrid{0.004, 0.04, 10}.points();
  for (double t : s.t) s.value.push_back(3.0 / t + 0.5 + 7.0 * t);
  auto fit = fitCoefficients(s, 2);
  REQUIRE(fit.coeff.size() == 3);
  CHECK(fit.coeff[0] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.coeff[1] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(fit.coeff[2] == doctest::Approx(7.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-10);
  CHECK(fit.wellConditioned);

  CHECK_THROWS_AS(fitCoefficients(s, 3), std::invalid_argument);

  // the all-zero series fits to zero coefficients
  HeatTraceSeries z;
  z.t = s.t;
  z.value.assign(s.t.size(), 0.0);
  auto zfit = fitCoefficients(z, 2);
  for (double ci : zfit.coeff) CHECK(std::abs(ci) < 1e-12);
}

TEST_CASE("flat torus spectrum") {
  GalerkinComplex G = assemble(flatTorus(), 6);
  for (int level = 0; level < 2; ++level) {
    const auto& v = G.levelEigen(level).values;
    // eigenvalues 4 pi^2 (j^2+k^2) with the lattice multiplicities
    std::vector<double> expect;
    for (int j = -6; j <= 6; ++j)
      for (int k = -6; k <= 6; ++k) expect.push_back(4 * kPi * kPi * (j * j + k * k));
    std::sort(expect.begin(), expect.end());
    REQUIRE(v.size() == static_cast<long>(expect.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
      CHECK(v(i) == doctest::Approx(expect[i]).epsilon(1e-10));
  }

  // supertrace vanishes identically
  for (double t : {0.01, 0.1, 1.0}) CHECK(std::abs(G.heatSupertrace(t)) < 1e-10);

  auto cert = mckeanSingerIndex(G);
  CHECK(cert.index == 0);
  CHECK(cert.maxDeviation < 1e-10);
}

TEST_CASE("constant twist: closed-form spectrum per mode") {
  cplx c(0.3, 0.7);
  GalerkinComplex G = assemble(constTwistTorus(c), 6);
  std::vector<double> expect;
  for (int j = -6; j <= 6; ++j)
    for (int k = -6; k <= 6; ++k)
      expect.push_back(4.0 * std::norm(cplx(0, kPi) * double(j) - kPi * double(k) + std::conj(c)));
  std::sort(expect.begin(), expect.end());
  const auto& v = G.levelEigen(0).values;
  REQUIRE(v.size() == static_cast<long>(expect.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    CHECK(v(i) == doctest::Approx(expect[i]).epsilon(1e-9));

  // resonant twist puts one mode in each kernel; the index stays 0
  GalerkinComplex Gr = assemble(constTwistTorus(cplx(0, kPi)), 6);
  int ker0 = 0, ker1 = 0;
  for (Eigen::Index i = 0; i < Gr.levelEigen(0).values.size(); ++i)
    ker0 += Gr.levelEigen(0).values(i) < 1e-8;
  for (Eigen::Index i = 0; i < Gr.levelEigen(1).values.size(); ++i)
    ker1 += Gr.levelEigen(1).values(i) < 1e-8;
  CHECK(ker0 == 1);
  CHECK(ker1 == 1);
  CHECK(mckeanSingerIndex(Gr).index == 0);
}

TEST_CASE("level-1 pairs with level-0 away from the kernel") {
  GalerkinComplex G = assemble(sinTwistTorus(), 8);
  const auto& v0 = G.levelEigen(0).values;
  const auto& v1 = G.levelEigen(1).values;
  REQUIRE(v0.size() == v1.size());
  // equal dimensions and index 0 make the full sorted spectra coincide
  double scale = std::max(v0(v0.size() - 1), 1.0);
  for (Eigen::Index i = 0; i < v0.size(); ++i)
    CHECK(std::abs(v0(i) - v1(i)) < 1e-8 * scale);

  // supertrace constancy (McKean-Singer at fixed truncation)
  auto ts = TGrid{0.01, 0.5, 9}.points();
  double lo = 1e300, hi = -1e300;
  for (double t : ts) {
    double s = G.heatSupertrace(t);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi - lo < 1e-8);
}

TEST_CASE("assembly input validation") {
  CHECK_THROWS_AS(assemble(sinTwistTorus(), 1), std::invalid_argument);  // insufficient padding
  ManifoldSpec P = productSpec(flatTorus(), flatTorus());
  CHECK_THROWS_AS(assemble(P, 8), std::invalid_argument);  // not a leaf block
  ManifoldSpec M = flatTorus();
  M.bundleRank = 2;
  M.bundleMetric = {{FourierFunction::constant(2, 1.0), FourierFunction(2)},
                    {FourierFunction(2), FourierFunction::constant(2, 1.0)}};
  CHECK_THROWS_AS(assemble(M, 8), std::invalid_argument);  // line bundles only
}

TEST_CASE("pointwise densities") {
  // flat, untwisted: levelwise cancellation is exact pointwise
  GalerkinComplex G0 = assemble(flatTorus(), 5);
  for (double t : {0.05, 0.2})
    for (double x : {0.0, 0.3}) CHECK(std::abs(pointwiseDensity(G0, t, {x, 0.1})) < 1e-10);

  // constant twist: translation invariance
  GalerkinComplex Gc = assemble(constTwistTorus(cplx(0.4, 0.2)), 5);
  double ref = pointwiseDensity(Gc, 0.1, {0.0, 0.0});
  for (double x : {0.2, 0.5, 0.8})
    CHECK(pointwiseDensity(Gc, 0.1, {x, x / 2}) == doctest::Approx(ref).epsilon(1e-9));

  // grid table agrees with single-point evaluation, and integrates to the trace
  GalerkinComplex G = assemble(sinTwistTorus(), 8);
  std::vector<double> ts{0.05, 0.1};
  GridShape grid{{32, 32}};
  auto table = pointwiseDensityTable(G, ts, grid);
  for (long p : {0L, 5L, 700L}) {
    auto x = grid.point(p);
    CHECK(table[0][p] == doctest::Approx(pointwiseDensity(G, ts[0], x)).epsilon(1e-10));
  }
  double integral = integrateDensity(G.spec(), grid, table[1]);
  CHECK(integral == doctest::Approx(G.heatSupertrace(ts[1])).epsilon(1e-8));
}

TEST_CASE("tensor product against explicit kronecker assembly") {
  int N = 2;
  GalerkinComplex A = assemble(sinTwistTorus(), N);
  GalerkinComplex B = assemble(constTwistTorus(cplx(0.5, -0.3)), N);
  GalerkinComplex P = tensorProduct(A, B);
  long n = static_cast<long>(A.modes().size());
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);

  // product differentials with the alternating sign
  Eigen::MatrixXcd d0(2 * n * n, n * n);
  d0.topRows(n * n) = kron(A.d0(), I);
  d0.bottomRows(n * n) = kron(I, B.d0());
  Eigen::MatrixXcd d1(n * n, 2 * n * n);
  d1.leftCols(n * n) = -kron(I, B.d0());
  d1.rightCols(n * n) = kron(A.d0(), I);

  CHECK((d1 * d0).norm() < 1e-12);  // nilpotency

  // block masses
  Eigen::MatrixXcd M0 = kron(A.mass0(), B.mass0());
  Eigen::MatrixXcd M1 = Eigen::MatrixXcd::Zero(2 * n * n, 2 * n * n);
  M1.topLeftCorner(n * n, n * n) = kron(A.mass1(), B.mass0());
  M1.bottomRightCorner(n * n, n * n) = kron(A.mass0(), B.mass1());
  Eigen::MatrixXcd M2 = kron(A.mass1(), B.mass1());

  // level-0 Laplacian: pencil (d0^H M1 d0, M0)
  Eigen::MatrixXcd A0 = d0.adjoint() * M1 * d0;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es0(0.5 * (A0 + A0.adjoint()), M0);
  auto expect0 = sortedSums(A.levelEigen(0).values, B.levelEigen(0).values);
  REQUIRE(es0.eigenvalues().size() == static_cast<long>(expect0.size()));
  double scale = expect0.back();
  for (Eigen::Index i = 0; i < es0.eigenvalues().size(); ++i)
    CHECK(std::abs(es0.eigenvalues()(i) - expect0[i]) < 1e-8 * scale);

  // level-1 Laplacian: d0 d0* + d1* d1 against the mass pencil
  Eigen::MatrixXcd X = M0.llt().solve((d0.adjoint() * M1).eval());
  Eigen::MatrixXcd A1 = M1 * d0 * X + d1.adjoint() * M2 * d1;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es1(0.5 * (A1 + A1.adjoint()), M1);
  auto e10 = sortedSums(A.levelEigen(1).values, B.levelEigen(0).values);
  auto e01 = sortedSums(A.levelEigen(0).values, B.levelEigen(1).values);
  std::vector<double> expect1;
  expect1.insert(expect1.end(), e10.begin(), e10.end());
  expect1.insert(expect1.end(), e01.begin(), e01.end());
  std::sort(expect1.begin(), expect1.end());
  REQUIRE(es1.eigenvalues().size() == static_cast<long>(expect1.size()));
  for (Eigen::Index i = 0; i < es1.eigenvalues().size(); ++i)
    CHECK(std::abs(es1.eigenvalues()(i) - expect1[i]) < 1e-8 * scale);

  // supertrace factorizes
  for (double t : {0.05, 0.2}) {
    CHECK(P.heatSupertrace(t) ==
          doctest::Approx(A.heatSupertrace(t) * B.heatSupertrace(t)).epsilon(1e-12));
    // and against the explicit spectra
    double strExplicit = 0;
    for (Eigen::Index i = 0; i < es0.eigenvalues().size(); ++i)
      strExplicit += std::exp(-t * es0.eigenvalues()(i));
    for (Eigen::Index i = 0; i < es1.eigenvalues().size(); ++i)
      strExplicit -= std::exp(-t * es1.eigenvalues()(i));
    auto e11 = sortedSums(A.levelEigen(1).values, B.levelEigen(1).values);
    for (double v : e11) strExplicit += std::exp(-t * v);
    CHECK(P.heatSupertrace(t) == doctest::Approx(strExplicit).epsilon(1e-9));
  }

  // pointwise density factorizes (the local product identity)
  for (double t : {0.05, 0.15}) {
    std::vector<double> x{0.1, 0.7, 0.4, 0.2};
    double lhs = pointwiseDensity(P, t, x);
    double rhs = pointwiseDensity(A, t, {0.1, 0.7}) * pointwiseDensity(B, t, {0.4, 0.2});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }

  CHECK(P.levelDimension(0) == n * n);
  CHECK(P.levelDimension(1) == 2 * n * n);
  CHECK(P.levelDimension(2) == n * n);
  CHECK(P.levels() == 3);
}

TEST_CASE("single-operator heat trace recovers the flat-area coefficient") {
  // Tr exp(t Lap) ~ Area/(4 pi t): fit the level-0 trace alone
  GalerkinComplex G = assemble(flatTorus(), 8);
  HeatTraceSeries s;
  s.t = TGrid{0.004, 0.02, 10}.points();
  for (double t : s.t) s.value.push_back(G.levelTrace(0, t));
  auto fit = fitCoefficients(s, 2);
  CHECK(fit.coeff[0] == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-4));
}

TEST_CASE("twisted line bundle density matches the chern-character route") {
  // flat torus, omega = 0, h = e^{-psi}: the density is *ch_1 = (Lap psi)/(4 pi)
  FourierFunction psi = cos1(2, 1, 0.2);
  ManifoldSpec M = flatTorus();
  withLineBundle(M, psi);

  GalerkinComplex G = assemble(M, 14);
  auto ts = TGrid{1e-3, 1e-2, 12}.points();
  GridShape grid{{16, 16}};
  auto dens = pointwiseDensityTable(G, ts, grid);

  FourierFunction analytic = indexDensity(M);
  auto av = analytic.sample(grid);
  SharedFit sf(ts, 2);
  std::vector<double> series(ts.size());
  double worst = 0;
  for (long p = 0; p < grid.total(); ++p) {
    for (std::size_t ti = 0; ti < ts.size(); ++ti) series[ti] = dens[ti][p];
    worst = std::max(worst, std::abs(sf.fit(series).coeff[1] - av[p].real()));
  }
  CHECK(worst < 5e-3);

  // and the analytic side really is (Lap psi)/(4 pi)
  FourierFunction lap = psi.derivative(0).derivative(0) + psi.derivative(1).derivative(1);
  CHECK((analytic - lap * (1.0 / (4 * kPi))).maxAbsOnGrid() < 1e-10);
}
