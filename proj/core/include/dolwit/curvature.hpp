#pragma once

#include "dolwit/form.hpp"

namespace dolwit {

/// Chern-connection curvature of a Hermitian bundle: a rank x rank matrix of
/// (1,1)-forms.  Only symmetric functions of it feed the characteristic
/// series, so the row/column convention is immaterial downstream.
struct CurvatureMatrix {
  int rank = 0;
  int m = 0;  // complex dimension of the base
  std::vector<Form> entries;  // row-major rank x rank

  static CurvatureMatrix zero(int rank, int m) {
    CurvatureMatrix F;
    F.rank = rank;
    F.m = m;
    F.entries.assign(static_cast<std::size_t>(rank) * rank, Form(m));
    return F;
  }
  const Form& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * rank + j]; }
  Form& at(int i, int j) { return entries[static_cast<std::size_t>(i) * rank + j]; }
};

/// Riemann tensor components R_{ijkl} in a local orthonormal frame, sampled
/// on a grid (a single-point grid holds constant synthetic data).
struct RealCurvature {
  int dim = 0;  // real dimension
  GridShape grid;
  std::vector<double> data;  // [pt][i][j][k][l], row-major

  static RealCurvature zero(int dim, GridShape g);
  /// Constant tensor from an arbitrary component table.
  static RealCurvature constant(int dim, const std::vector<double>& comps);

  double at(long pt, int i, int j, int k, int l) const {
    return data[((static_cast<long>(pt) * dim + i) * dim + j) * dim * dim + k * dim + l];
  }
  double& at(long pt, int i, int j, int k, int l) {
    return data[((static_cast<long>(pt) * dim + i) * dim + j) * dim * dim + k * dim + l];
  }

  /// Largest violation of the antisymmetry in (i,j) and (k,l) and of the
  /// pair symmetry R_{ijkl} = R_{klij}.
  double maxSymmetryViolation() const;
  /// Largest violation of the first Bianchi identity.
  double maxBianchiViolation() const;
  /// tau(x) = sum_{ij} R_{ijji}(x).
  std::vector<double> scalarCurvatureSamples() const;
};

}  // namespace dolwit
