#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "dolwit/char_forms.hpp"
#include "dolwit/geometry.hpp"

using namespace dolwit;

namespace {

constexpr double kPi = std::numbers::pi;

FourierFunction sin2pix(int dim, int axis, double amp = 1.0) {
  FourierFunction f(dim);
  FourierFunction::Freq k(dim, 0);
  k[axis] = 1;
  f.setAmplitude(k, cplx(0, -0.5 * amp));
  k[axis] = -1;
  f.setAmplitude(k, cplx(0, 0.5 * amp));
  return f;
}

FourierFunction cos2pix(int dim, int axis, double amp = 1.0) {
  FourierFunction f(dim);
  FourierFunction::Freq k(dim, 0);
  k[axis] = 1;
  f.setAmplitude(k, 0.5 * amp);
  k[axis] = -1;
  f.setAmplitude(k, 0.5 * amp);
  return f;
}

Form omegaSinDz() {
  Form w(1);
  w.setComponent(1, 0, sin2pix(2, 0));
  return w;
}

}  // namespace

TEST_CASE("kahler form of flat tori") {
  ManifoldSpec M = flatTorus();
  Form W = kahlerForm(M);
  // dx^dy = (i/2) dz^dzbar
  REQUIRE(W.component(1, 1) != nullptr);
  CHECK(std::abs(W.component(1, 1)->amplitude({0, 0}) - cplx(0, 0.5)) < 1e-15);
  CHECK((W.conj() - W).maxAbs() < 1e-14);
  CHECK(std::abs(integrate(W) - cplx(1.0)) < 1e-14);

  ManifoldSpec P = productSpec(flatTorus(), flatTorus());
  Form W2 = kahlerForm(P);
  // dx1^dy1 + dx2^dy2
  REQUIRE(W2.component(0b01, 0b01) != nullptr);
  REQUIRE(W2.component(0b10, 0b10) != nullptr);
  CHECK((W2.conj() - W2).maxAbs() < 1e-14);
}

TEST_CASE("kahler check") {
  CHECK(checkKahler(flatTorus()));
  FourierFunction phi = sin2pix(2, 0, 0.1);
  CHECK(checkKahler(conformalTorus(phi)));  // any m=1 metric is Kahler

  ManifoldSpec P = productSpec(conformalTorus(phi), flatTorus());
  CHECK(checkKahler(P));

  // m=2 metric with g_{1 1bar} depending on z^2 violates the symmetry
  ManifoldSpec bad = productSpec(flatTorus(), flatTorus());
  bad.metric[0][0] = bad.metric[0][0] + sin2pix(4, 2, 0.05);
  CHECK_FALSE(checkKahler(bad));
}

TEST_CASE("del-closedness of omega") {
  CHECK(checkDelClosed(flatTorus(omegaSinDz())));  // (2,0)-forms vanish at m=1

  // symmetric m=2 example: omega = u dz1 + u dz2 with u = u(x1 + x2)
  FourierFunction u(4);
  u.setAmplitude({1, 0, 1, 0}, cplx(0, -0.5));
  u.setAmplitude({-1, 0, -1, 0}, cplx(0, 0.5));
  Form sym(2);
  sym.setComponent(0b01, 0, u);
  sym.setComponent(0b10, 0, u);
  ManifoldSpec P = productSpec(flatTorus(), flatTorus());
  P.omega = sym;
  CHECK(checkDelClosed(P));

  // asymmetric: omega = sin(2 pi x2) dz1 only
  Form bad(2);
  bad.setComponent(0b01, 0, sin2pix(4, 2));
  P.omega = bad;
  CHECK_FALSE(checkDelClosed(P));
}

TEST_CASE("d Im omega") {
  ManifoldSpec M = flatTorus(omegaSinDz());
  Form dim = dImOmega(M);
  // sin(2 pi x) dz -> 2 pi cos(2 pi x) dx^dy; dx^dy = (i/2) dz^dzbar
  FourierFunction expect = cos2pix(2, 0, 2 * kPi) * cplx(0, 0.5);
  REQUIRE(dim.component(1, 1) != nullptr);
  CHECK((*dim.component(1, 1) - expect).maxAbsOnGrid() < 1e-12);
  CHECK(std::abs(integrate(dim)) < 1e-13);

  ManifoldSpec C = flatTorus();
  Form constw(1);
  constw.setComponent(1, 0, FourierFunction::constant(2, cplx(1.0, 2.0)));
  C.omega = constw;
  CHECK(dImOmega(C).isZero());
}

TEST_CASE("curvature of flat and conformal tori") {
  CHECK(curvatureTensor(flatTorus()).maxSymmetryViolation() < 1e-14);
  for (const auto& f : curvatureTensor(flatTorus()).R) CHECK(f.maxAbsOnGrid() < 1e-14);

  // conformal torus: tau = -2 e^{-2 phi} Lap(phi), checked pointwise against
  // a finite-difference Laplacian of phi
  FourierFunction phi = sin2pix(2, 0, 0.1);
  ManifoldSpec M = conformalTorus(phi);
  CHECK(curvatureTensor(M).maxSymmetryViolation() < 1e-9);

  FourierFunction tau = scalarCurvature(M);
  double hstep = 1e-4;
  for (double x : {0.1, 0.37, 0.66}) {
    double p0 = phi.evaluate({x, 0.5}).real();
    double pxp = phi.evaluate({x + hstep, 0.5}).real();
    double pxm = phi.evaluate({x - hstep, 0.5}).real();
    double pyp = phi.evaluate({x, 0.5 + hstep}).real();
    double pym = phi.evaluate({x, 0.5 - hstep}).real();
    double lap = (pxp + pxm + pyp + pym - 4 * p0) / (hstep * hstep);
    double expect = -2.0 * std::exp(-2 * p0) * lap;
    CHECK(std::abs(tau.evaluate({x, 0.5}).real() - expect) < 1e-4);
  }

  // real curvature symmetries on a sample grid
  RealCurvature R = realCurvature(M, GridShape{{8, 8}});
  CHECK(R.maxSymmetryViolation() < 1e-9);
  CHECK(R.maxBianchiViolation() < 1e-9);
}

TEST_CASE("curvature of a product is block diagonal") {
  FourierFunction phi = sin2pix(2, 0, 0.1);
  ManifoldSpec P = productSpec(conformalTorus(phi), flatTorus());
  ComplexCurvature R = curvatureTensor(P);
  // any component touching the flat factor vanishes
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          if (a == 1 || b == 1 || c == 1 || d == 1)
            CHECK(R.at(a, b, c, d).maxAbsOnGrid() < 1e-10);

  // scalar curvature of the product = pullback sum
  FourierFunction tauP = scalarCurvature(P);
  FourierFunction tau1 = scalarCurvature(conformalTorus(phi));
  CHECK((tauP - embedFactorFn(tau1, 0, 2)).maxAbsOnGrid() < 1e-8);
}

TEST_CASE("tangent curvature matrix agrees with the curvature tensor") {
  FourierFunction phi = sin2pix(2, 0, 0.1);
  ManifoldSpec M = conformalTorus(phi);
  CurvatureMatrix F = tangentCurvature(M);
  ComplexCurvature R = curvatureTensor(M);
  auto ginv = metricInverse(M);

  // trace of F vs g^{s a} R_{a s c d} dz^c ^ dzbar^d (trace kills the
  // transpose ambiguity)
  Form trF(1);
  for (int i = 0; i < 1; ++i) trF += F.at(i, i);
  FourierFunction expect(2);
  for (int a = 0; a < 1; ++a)
    for (int s = 0; s < 1; ++s) expect += ginv[s][a] * R.at(a, s, 0, 0);
  REQUIRE(trF.component(1, 1) != nullptr);
  CHECK((*trF.component(1, 1) - expect).maxAbsOnGrid() < 1e-9);
}

TEST_CASE("manifold json round trip is exact") {
  FourierFunction phi = sin2pix(2, 0, 0.1);
  Form w = omegaSinDz();
  ManifoldSpec M = conformalTorus(phi, w, "round-trip");
  withLineBundle(M, cos2pix(2, 1, 0.3));

  auto j = toJson(M);
  ManifoldSpec M2 = manifoldFromJson(j);
  CHECK(M2.m == M.m);
  CHECK(M2.label == M.label);
  CHECK(M2.metric[0][0] == M.metric[0][0]);      // bit-exact amplitudes
  CHECK(M2.bundleMetric[0][0] == M.bundleMetric[0][0]);
  CHECK(M2.omega == M.omega);

  // and the serialized text round-trips byte for byte
  auto j2 = toJson(M2);
  CHECK(j.dump() == j2.dump());
}
