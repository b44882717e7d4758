#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "dolwit/form.hpp"

namespace dolwit {

/// A model datum (M, g, J, omega, E, h) on the torus T^{2m}: Hermitian metric
/// components g_{a bbar} and bundle metric h_{p qbar} as finite Fourier
/// series, plus the twisting (1,0)-form.
///
/// Conventions: g_{a bbar} = g(d/dz^a, d/dzbar^b), so the flat metric
/// dx^2 + dy^2 has g_{1 1bar} = 1/2; the Riemannian volume density is
/// det(2 g).
struct ManifoldSpec {
  int m = 1;
  std::vector<std::vector<FourierFunction>> metric;        // m x m
  int bundleRank = 1;
  std::vector<std::vector<FourierFunction>> bundleMetric;  // rank x rank
  Form omega;                                              // bidegree (1,0)
  std::string label;

  const FourierFunction& g(int a, int b) const { return metric[a][b]; }
  const FourierFunction& h(int p, int q) const { return bundleMetric[p][q]; }
};

/// Flat T^2 with the trivial line bundle; omega defaults to zero.
ManifoldSpec flatTorus(Form omega = Form(1), std::string label = "flat");

/// Conformal T^2 with metric e^{2 phi} (dx^2 + dy^2); phi a real trig
/// polynomial in (x, y).  The series of e^{2 phi} is truncated at machine
/// precision.
ManifoldSpec conformalTorus(const FourierFunction& phi, Form omega = Form(1),
                            std::string label = "conformal");

/// Replaces the trivial line-bundle metric by h = e^{-psi}.
ManifoldSpec& withLineBundle(ManifoldSpec& M, const FourierFunction& psi);

/// Product datum: block metric, tensor-product bundle metric, summed omega.
ManifoldSpec productSpec(const ManifoldSpec& M1, const ManifoldSpec& M2);

/// e^{f} of a real trig polynomial, truncated at machine precision and
/// verified against pointwise exponentials on a refined grid.
FourierFunction expOf(const FourierFunction& f, double tol = 1e-12);

nlohmann::json toJson(const FourierFunction& f);
nlohmann::json toJson(const Form& f);
nlohmann::json toJson(const ManifoldSpec& M);
FourierFunction fourierFromJson(const nlohmann::json& j, int expectedDim = -1);
Form formFromJson(const nlohmann::json& j);
ManifoldSpec manifoldFromJson(const nlohmann::json& j);

}  // namespace dolwit
