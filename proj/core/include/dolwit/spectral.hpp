#pragma once

#include <Eigen/Core>
#include <memory>

#include "dolwit/manifold.hpp"

namespace dolwit::spectral {

/// Geometric t-grid for heat-trace sampling.
struct TGrid {
  double tMin = 0.02;
  double tMax = 0.2;
  int count = 12;
  std::vector<double> points() const;
};

/// Supertrace samples over a t-grid.
struct HeatTraceSeries {
  std::vector<double> t;
  std::vector<double> value;
};

/// Least-squares fit of sum_n c_n t^{(2n-m)/2}, n = 0..m/2+1; the last term
/// absorbs the remainder of the asymptotic series.
struct FitResult {
  std::vector<double> exponents;
  std::vector<double> coeff;
  double residual = 0;         // rms misfit
  double conditionNumber = 0;  // of the design matrix
  bool wellConditioned = true;
};

FitResult fitCoefficients(const HeatTraceSeries& series, int mReal);

/// Shared design-matrix fit for many series over one t-grid (pointwise fits).
class SharedFit {
 public:
  SharedFit(const std::vector<double>& ts, int mReal);
  FitResult fit(const std::vector<double>& values) const;
  const std::vector<double>& exponents() const { return exps_; }
  double conditionNumber() const { return cond_; }

 private:
  std::vector<double> ts_;
  std::vector<double> exps_;
  Eigen::MatrixXd pinv_;  // coeff = pinv * values
  double cond_ = 0;
};

struct LevelEigen {
  Eigen::VectorXd values;    // ascending, clamped at zero within tolerance
  Eigen::MatrixXcd vectors;  // columns, mass-orthonormal
};

/// Truncated matrix realization of the deformed Dolbeault complex of a torus
/// block, or the tensor product of two complexes.  Leaves are complex
/// dimension 1 (flat or conformal metric, line bundle, Fourier-polynomial
/// twisting form); higher dimensions are assembled only through products.
class GalerkinComplex {
 public:
  int complexDim() const { return m_; }
  int levels() const { return m_ + 1; }
  int cutoff() const { return cutoff_; }

  long levelDimension(int level) const;
  /// sum_a exp(-t lambda_a) of level i.
  double levelTrace(int level, double t) const;
  /// sum_i (-1)^i levelTrace(i, t).
  double heatSupertrace(double t) const;

  bool isLeaf() const { return !left_; }
  const GalerkinComplex& leftFactor() const { return *left_; }
  const GalerkinComplex& rightFactor() const { return *right_; }

  // leaf accessors (throw on products)
  const Eigen::MatrixXcd& d0() const;
  const Eigen::MatrixXcd& mass0() const;
  const Eigen::MatrixXcd& mass1() const;
  const LevelEigen& levelEigen(int level) const;
  const ManifoldSpec& spec() const;
  /// mode list of the leaf basis, (k1,k2) pairs in assembly order
  const std::vector<std::pair<int, int>>& modes() const;

  friend GalerkinComplex assemble(const ManifoldSpec& M, int cutoff);
  friend GalerkinComplex tensorProduct(GalerkinComplex a, GalerkinComplex b);

 private:
  int m_ = 0;
  int cutoff_ = 0;
  // leaf payload
  struct LeafData;
  std::shared_ptr<const LeafData> leaf_;
  // product payload
  std::shared_ptr<const GalerkinComplex> left_, right_;
};

/// Assembles the m=1 complex sqrt(2)(dbar + ext(omegabar)) at the given mode
/// cutoff per axis, with adjoints taken against the metric mass matrices.
/// Unsupported metric classes and insufficient padding are rejected.
GalerkinComplex assemble(const ManifoldSpec& M, int cutoff);

/// Product complex d_k = sum_{i+j=k} d_i x id + (-1)^i id x d_j, realized
/// structurally (factor spectra and kernels combine; no 4d matrices).
GalerkinComplex tensorProduct(GalerkinComplex a, GalerkinComplex b);

/// Per-level pointwise heat-kernel traces tr K_i(t,x,x) over a sampling
/// grid; indexed [level][ti][point].
std::vector<std::vector<std::vector<double>>> levelDensityTable(
    const GalerkinComplex& G, const std::vector<double>& ts, const GridShape& grid);

/// Supertrace density sum_i (-1)^i tr K_i(t,x,x); indexed [ti][point].
std::vector<std::vector<double>> pointwiseDensityTable(const GalerkinComplex& G,
                                                       const std::vector<double>& ts,
                                                       const GridShape& grid);

/// Single-point supertrace density.
double pointwiseDensity(const GalerkinComplex& G, double t, const std::vector<double>& x);

/// Supertrace series over a t-grid.
HeatTraceSeries heatTrace(const GalerkinComplex& G, const TGrid& grid);

struct IndexCertificate {
  long index = 0;
  double maxDeviation = 0;  // max-min of the supertrace over the t-grid
  double offInteger = 0;    // distance of the mid-grid value to the integer
};

/// McKean-Singer index: the (t-independent) supertrace rounded to an integer,
/// with a constancy certificate; deviation beyond 1e-3 signals
/// under-resolution and throws.
IndexCertificate mckeanSingerIndex(const GalerkinComplex& G, const TGrid& grid = TGrid{});

/// Volume-weighted integral of a sampled density over the grid (quadrature
/// weight det(2g) per point).
double integrateDensity(const ManifoldSpec& M, const GridShape& grid,
                        const std::vector<double>& values);

}  // namespace dolwit::spectral
