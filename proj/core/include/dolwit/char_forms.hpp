#pragma once

#include "dolwit/geometry.hpp"

namespace dolwit {

/// Euler form scalar of the displayed curvature sum with prefactor
/// (-1)^{m/2} / (8^{m/2} pi^{m/2} (m/2)!); m must be even and match R.dim.
/// Evaluated over permutation pairs (the Gram inner product kills every
/// other index tuple).
FourierFunction pfaffian(const RealCurvature& R, int m);
std::vector<double> pfaffianSamples(const RealCurvature& R, int m);

/// Total Chern character tr exp((i/2pi) F) truncated at the given form
/// degree; ch_0 = rank.
Form chernCharacter(const CurvatureMatrix& F, int topDegree);

/// Total Todd genus, expanded through power sums of (i/2pi) F:
/// Td = exp(sum_k s_k tr X^k) with log(x/(1-e^{-x})) = sum_k s_k x^k.
Form todd(const CurvatureMatrix& F, int topDegree);

/// Coefficients s_1..s_kmax of log(x/(1-e^{-x})).
std::vector<double> toddLogCoefficients(int kmax);
/// Coefficients t_0..t_kmax of x/(1-e^{-x}) itself (t_0 = 1, t_1 = 1/2, ...).
std::vector<double> toddSeriesCoefficients(int kmax);

/// Deformation factor Theta = sum_k (d Im omega)^k / (k! pi^k); requires
/// partial(omega) = 0 within tol.
Form theta(const Form& omega, int topDegree, double tol = 1e-10);

/// The analytic index density *{Td ^ ch ^ Theta}_m of the deformed Dolbeault
/// complex; rejects non-Kahler input.
FourierFunction indexDensity(const ManifoldSpec& M);

/// The degree-2m part of Td(TM) ^ ch(E) ^ Theta as a form (before the star).
Form indexDensityForm(const ManifoldSpec& M);

}  // namespace dolwit
