#pragma once

#include "dolwit/curvature.hpp"
#include "dolwit/manifold.hpp"

namespace dolwit {

/// Kahler form Omega = i sum g_{a bbar} dz^a ^ dzbar^b; normalized so the
/// flat metric gives dx ^ dy with the positive orientation.
Form kahlerForm(const ManifoldSpec& M);

/// d(Omega) = 0 to tolerance on the Fourier data.
bool checkKahler(const ManifoldSpec& M, double tol = 1e-10);

/// |partial omega| < tol; the nilpotency hypothesis on the twisting form.
bool checkDelClosed(const ManifoldSpec& M, double tol = 1e-10);

/// d Im(omega), the curvature of the deformation.
Form dImOmega(const ManifoldSpec& M);

/// Inverse metric entries ginv[s][a] = g^{sbar a} with
/// sum_b g_{a bbar} g^{bbar c} = delta_a^c, by pointwise inversion.
std::vector<std::vector<FourierFunction>> metricInverse(const ManifoldSpec& M);

/// Volume density det(2 g_{a bbar}) of the underlying Riemannian metric.
FourierFunction metricDet2(const ManifoldSpec& M);

/// Kahler curvature tensor R_{a bbar c dbar} =
///   - g_{a bbar, c dbar} + g^{sbar r} g_{a sbar, c} g_{r bbar, dbar},
/// stored row-major over (a,b,c,d).
struct ComplexCurvature {
  int m = 0;
  std::vector<FourierFunction> R;  // m^4 entries

  const FourierFunction& at(int a, int b, int c, int d) const {
    return R[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d];
  }
  FourierFunction& at(int a, int b, int c, int d) {
    return R[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d];
  }
  /// Hermitian and Kahler symmetry residuals, for validation.
  double maxSymmetryViolation() const;
};

ComplexCurvature curvatureTensor(const ManifoldSpec& M);

/// Chern curvature of T^{1,0}M as a matrix of (1,1)-forms,
/// F = dbar(G^{-1} partial G); requires checkKahler.
CurvatureMatrix tangentCurvature(const ManifoldSpec& M);

/// Chern curvature of (E,h), F = dbar(H^{-1} partial H).
CurvatureMatrix bundleCurvature(const ManifoldSpec& M);

/// Riemann tensor in a pointwise orthonormal frame on the grid, built from
/// the complex curvature via a Cholesky frame of 2g.
RealCurvature realCurvature(const ManifoldSpec& M, const GridShape& grid);

/// tau = sum_{ij} R_{ijji} over the orthonormal frame, re-expanded in modes.
FourierFunction scalarCurvature(const ManifoldSpec& M);

}  // namespace dolwit
