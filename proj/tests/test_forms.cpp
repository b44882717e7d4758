#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "dolwit/form.hpp"

using namespace dolwit;

namespace {

constexpr double kPi = std::numbers::pi;

Form randomSmallForm(int m, std::mt19937& rng) {
  std::uniform_int_distribution<int> mask(0, (1 << m) - 1);
  std::uniform_int_distribution<int> freq(-2, 2);
  std::uniform_real_distribution<double> amp(-1, 1);
  Form f(m);
  for (int c = 0; c < 3; ++c) {
    FourierFunction::Freq k(2 * m);
    for (int& v : k) v = freq(rng);
    f.addComponent(mask(rng), mask(rng), FourierFunction::mode(k, cplx(amp(rng), amp(rng))));
  }
  return f;
}

double maxAbsDiff(const Form& a, const Form& b) { return (a - b).maxAbs(); }

}  // namespace

TEST_CASE("fourier arithmetic is exact on amplitudes") {
  // f = exp(2 pi i x), g = exp(-2 pi i x): f*g = 1
  auto f = FourierFunction::mode({1, 0});
  auto g = FourierFunction::mode({-1, 0});
  auto fg = f * g;
  CHECK(fg.amplitudes().size() == 1);
  CHECK(fg.amplitude({0, 0}) == cplx(1));

  // derivative of exp(2 pi i (x+2y)) along y
  auto h = FourierFunction::mode({1, 2});
  auto hy = h.derivative(1);
  CHECK(hy.amplitude({1, 2}) == cplx(0, 4 * kPi));

  // conj flips the frequency
  auto c = (f * cplx(2, 3)).conj();
  CHECK(c.amplitude({-1, 0}) == cplx(2, -3));
}

TEST_CASE("fromSamples inverts sample exactly for resolved polynomials") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> amp(-1, 1);
  FourierFunction f(2);
  for (int k1 = -2; k1 <= 2; ++k1)
    for (int k2 = -2; k2 <= 2; ++k2) f.setAmplitude({k1, k2}, cplx(amp(rng), amp(rng)));
  GridShape g{{8, 8}};
  auto rec = fromSamples(g, f.sample(g));
  CHECK((rec - f).maxAbsAmplitude() < 1e-14);
}

TEST_CASE("wedge graded commutativity and unit") {
  // dz^1 ^ dzbar^1 = -(dzbar^1 ^ dz^1)
  Form dz1(1), dzb1(1);
  dz1.setComponent(1, 0, FourierFunction::constant(2, 1.0));
  dzb1.setComponent(0, 1, FourierFunction::constant(2, 1.0));
  CHECK(maxAbsDiff(wedge(dz1, dzb1), wedge(dzb1, dz1) * cplx(-1)) < 1e-15);

  Form one = Form::constantScalar(1, 1.0);
  CHECK(maxAbsDiff(wedge(dz1, one), dz1) < 1e-15);

  std::mt19937 rng(3);
  for (int it = 0; it < 10; ++it) {
    Form a = randomSmallForm(2, rng), b = randomSmallForm(2, rng), c = randomSmallForm(2, rng);
    CHECK(maxAbsDiff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-12);
  }
}

TEST_CASE("wedge Koszul sign on the m=2 top form") {
  // (dz^1 ^ dzbar^1) ^ (dz^2 ^ dzbar^2): moving dz^2 across dzbar^1 gives -1,
  // relative to the standard frame dz^1 dz^2 dzbar^1 dzbar^2
  Form a(2), b(2);
  a.setComponent(0b01, 0b01, FourierFunction::constant(4, 1.0));
  b.setComponent(0b10, 0b10, FourierFunction::constant(4, 1.0));
  Form top = wedge(a, b);
  REQUIRE(top.component(0b11, 0b11) != nullptr);
  CHECK(top.component(0b11, 0b11)->amplitude({0, 0, 0, 0}) == cplx(-1));
}

TEST_CASE("dolbeault operators on Fourier data") {
  // dbar(e^{2 pi i x}) = pi i e^{2 pi i x} dzbar
  Form f = Form::scalar(1, FourierFunction::mode({1, 0}));
  Form df = dbar(f);
  REQUIRE(df.component(0, 1) != nullptr);
  CHECK(std::abs(df.component(0, 1)->amplitude({1, 0}) - cplx(0, kPi)) < 1e-15);

  // partial of a constant vanishes
  CHECK(partialOp(Form::constantScalar(2, 3.0)).isZero());

  // d^2 = 0, dbar^2 = 0, partial^2 = 0, and the two anticommute, exactly
  std::mt19937 rng(5);
  for (int it = 0; it < 10; ++it) {
    Form a = randomSmallForm(2, rng);
    CHECK(dOp(dOp(a)).maxAbs() < 1e-12);
    CHECK(dbar(dbar(a)).maxAbs() < 1e-12);
    CHECK(partialOp(partialOp(a)).maxAbs() < 1e-12);
    CHECK((partialOp(dbar(a)) + dbar(partialOp(a))).maxAbs() < 1e-12);
  }
}

TEST_CASE("conjugation swaps bidegrees and intertwines the operators") {
  std::mt19937 rng(7);
  for (int it = 0; it < 10; ++it) {
    Form a = randomSmallForm(2, rng);
    CHECK(maxAbsDiff(a.conj().conj(), a) < 1e-14);
    CHECK(maxAbsDiff(partialOp(a).conj(), dbar(a.conj())) < 1e-12);
  }
}

TEST_CASE("imaginary part of a (1,0)-form") {
  // w = (u+iv) dz -> Im w = v dx + u dy; test with u = cos 2pi x, v = sin 2pi x
  FourierFunction u(2), v(2);
  u.setAmplitude({1, 0}, 0.5);
  u.setAmplitude({-1, 0}, 0.5);
  v.setAmplitude({1, 0}, cplx(0, -0.5));
  v.setAmplitude({-1, 0}, cplx(0, 0.5));
  Form w(1);
  w.setComponent(1, 0, u + v * cplx(0, 1));
  Form im = imagPartOneForm(w);

  // compare against v dx + u dy written in the dz, dzbar frame:
  // dx = (dz + dzbar)/2, dy = (dz - dzbar)/(2i)
  Form expect(1);
  expect.setComponent(1, 0, (v * 0.5 + u * (cplx(1) / cplx(0, 2))));
  expect.setComponent(0, 1, (v * 0.5 - u * (cplx(1) / cplx(0, 2))));
  CHECK(maxAbsDiff(im, expect) < 1e-14);

  // w = dz -> Im w = dy
  Form dz1(1);
  dz1.setComponent(1, 0, FourierFunction::constant(2, 1.0));
  Form imdz = imagPartOneForm(dz1);
  Form dy(1);
  dy.setComponent(1, 0, FourierFunction::constant(2, cplx(0, -0.5)));
  dy.setComponent(0, 1, FourierFunction::constant(2, cplx(0, 0.5)));
  CHECK(maxAbsDiff(imdz, dy) < 1e-14);

  // purely imaginary constant coefficient iv: Im = v dx
  Form wiv(1);
  wiv.setComponent(1, 0, FourierFunction::constant(2, cplx(0, 2.0)));
  Form imiv = imagPartOneForm(wiv);
  Form dx2(1);
  dx2.setComponent(1, 0, FourierFunction::constant(2, 1.0));
  dx2.setComponent(0, 1, FourierFunction::constant(2, 1.0));
  CHECK(maxAbsDiff(imiv, dx2) < 1e-14);

  CHECK_THROWS_AS(imagPartOneForm(Form::constantScalar(1, 1.0)), std::invalid_argument);
}

TEST_CASE("hodge star on top forms") {
  // c dx^dy on the flat torus: dx^dy = (i/2) dz^dzbar
  Form f(1);
  f.setComponent(1, 1, FourierFunction::constant(2, cplx(0, 0.5) * 3.0));
  auto s = hodgeStarTop(f, FourierFunction::constant(2, 1.0));
  CHECK(std::abs(s.amplitude({0, 0}) - cplx(3.0)) < 1e-14);

  // e^{2 phi}(dx^2+dy^2) metric: *(dx^dy) = e^{-2 phi}; take phi with one mode
  FourierFunction phi(2);
  phi.setAmplitude({1, 0}, 0.05);
  phi.setAmplitude({-1, 0}, 0.05);
  // det(2g) = e^{2 phi}; build it by sampling
  GridShape grid{{32, 32}};
  auto pv = (phi * 2.0).sample(grid);
  std::vector<cplx> ev(pv.size());
  for (std::size_t i = 0; i < pv.size(); ++i) ev[i] = std::exp(pv[i]);
  auto det2g = fromSamples(grid, ev).pruned(1e-16);

  Form dxdy(1);
  dxdy.setComponent(1, 1, FourierFunction::constant(2, cplx(0, 0.5)));
  auto star = hodgeStarTop(dxdy, det2g);
  for (double x : {0.0, 0.3, 0.7}) {
    double expect = std::exp(-2 * phi.evaluate({x, 0.2}).real());
    CHECK(std::abs(star.evaluate({x, 0.2}) - cplx(expect)) < 1e-10);
  }

  CHECK(hodgeStarTop(Form(1), FourierFunction::constant(2, 1.0)).isZero());
  CHECK_THROWS_AS(hodgeStarTop(Form::constantScalar(1, 1.0), FourierFunction::constant(2, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("integral of an exact top form vanishes") {
  std::mt19937 rng(13);
  for (int it = 0; it < 10; ++it) {
    Form a = randomSmallForm(2, rng);
    CHECK(std::abs(integrate(dOp(a))) < 1e-12);
  }

  // and the integral itself is the zero-frequency amplitude times the frame factor
  Form f(1);
  f.setComponent(1, 1, FourierFunction::constant(2, cplx(0, 0.5)));  // dx^dy
  CHECK(std::abs(integrate(f) - cplx(1.0)) < 1e-14);
}

TEST_CASE("factor embedding preserves products") {
  std::mt19937 rng(17);
  Form a1 = randomSmallForm(1, rng), b1 = randomSmallForm(1, rng);
  Form pa = embedFactor(a1, 0, 2), pb = embedFactor(b1, 0, 2);
  CHECK(maxAbsDiff(wedge(pa, pb), embedFactor(wedge(a1, b1), 0, 2)) < 1e-12);
  Form pa2 = embedFactor(a1, 1, 2);
  CHECK(maxAbsDiff(dOp(pa2), embedFactor(dOp(a1), 1, 2)) < 1e-12);
}
