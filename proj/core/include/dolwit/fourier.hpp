#pragma once

#include <complex>
#include <map>
#include <vector>

namespace dolwit {

using cplx = std::complex<double>;

/// Uniform sampling grid on the torus [0,1)^dim; size[a] points along axis a.
struct GridShape {
  std::vector<int> size;

  int dim() const { return static_cast<int>(size.size()); }
  long total() const {
    long n = 1;
    for (int s : size) n *= s;
    return n;
  }
  std::vector<double> point(long flat) const {
    std::vector<double> x(size.size());
    for (int a = dim() - 1; a >= 0; --a) {
      x[a] = double(flat % size[a]) / size[a];
      flat /= size[a];
    }
    return x;
  }
};

/// A trigonometric polynomial on the torus [0,1)^dim:
///   f(x) = sum_k a_k exp(2 pi i k.x),  finitely many k in Z^dim.
/// Arithmetic is exact on the stored amplitudes (products are convolutions);
/// nothing is truncated inside this type.
class FourierFunction {
 public:
  using Freq = std::vector<int>;

  FourierFunction() = default;
  explicit FourierFunction(int dim) : dim_(dim) {}

  static FourierFunction constant(int dim, cplx c);
  /// c * exp(2 pi i k.x)
  static FourierFunction mode(Freq k, cplx c = 1.0);

  int dim() const { return dim_; }
  bool isZero() const { return amps_.empty(); }
  const std::map<Freq, cplx>& amplitudes() const { return amps_; }

  cplx amplitude(const Freq& k) const {
    auto it = amps_.find(k);
    return it == amps_.end() ? cplx(0) : it->second;
  }
  void setAmplitude(const Freq& k, cplx a);

  FourierFunction& operator+=(const FourierFunction& o);
  FourierFunction& operator-=(const FourierFunction& o);
  FourierFunction operator+(const FourierFunction& o) const;
  FourierFunction operator-(const FourierFunction& o) const;
  FourierFunction operator-() const;
  FourierFunction operator*(const FourierFunction& o) const;
  FourierFunction operator*(cplx s) const;

  /// d/dx^axis (axis counts real coordinates 0..dim-1).
  FourierFunction derivative(int axis) const;
  FourierFunction conj() const;

  cplx evaluate(const std::vector<double>& x) const;
  std::vector<cplx> sample(const GridShape& grid) const;

  /// Largest |k_a| over stored modes, per axis.
  std::vector<int> support() const;
  double maxAbsAmplitude() const;
  /// Drops amplitudes below eps (use after grid round trips).
  FourierFunction pruned(double eps = 1e-15) const;
  /// Drops amplitudes below relEps * max amplitude.
  FourierFunction prunedRelative(double relEps = 1e-15) const;

  /// sup |f| estimated on a grid resolving every stored mode.
  double maxAbsOnGrid() const;

  bool operator==(const FourierFunction& o) const { return dim_ == o.dim_ && amps_ == o.amps_; }

 private:
  int dim_ = 0;
  std::map<Freq, cplx> amps_;
};

/// Exact inverse DFT of sampled values: recovers the trig polynomial whose
/// per-axis frequencies lie in the window floor(-(n-1)/2) .. floor(n/2) for a
/// grid of n points.  Exact when the sampled function is such a polynomial.
FourierFunction fromSamples(const GridShape& grid, const std::vector<cplx>& values);

/// Smallest power of two strictly greater than 2*support, per axis.
GridShape productGrid(const std::vector<int>& supportPerAxis, int dim);

/// Pointwise quotient f/g re-expanded in modes; refines the grid until the
/// re-expansion reproduces the quotient to tol at the sample points.
FourierFunction pointwiseQuotient(const FourierFunction& f, const FourierFunction& g,
                                  double tol = 1e-11);

/// Deterministic low-discrepancy points on [0,1)^dim for residual checks.
std::vector<std::vector<double>> probePoints(int dim, int count);

}  // namespace dolwit
