#pragma once

#include <cstdint>

#include "dolwit/fourier.hpp"

namespace dolwit {

/// Index set {1..m} packed as a bitmask; bit a-1 stands for the index a.
using IndexMask = std::uint32_t;

/// A complex differential form on the torus T^{2m} with Fourier-series
/// coefficients.  Components live in the frames
///   dz^{s_1} ^ ... ^ dz^{s_p} ^ dzbar^{t_1} ^ ... ^ dzbar^{t_q},
/// s and t ascending, holomorphic factors first.  Real coordinates are
/// ordered (x^1, y^1, x^2, y^2, ...), period 1 each, and the orientation
/// dx^1 ^ dy^1 ^ ... ^ dx^m ^ dy^m is positive.
class Form {
 public:
  using Key = std::pair<IndexMask, IndexMask>;  // (holo set, antiholo set)

  Form() = default;
  explicit Form(int m) : m_(m) {}

  static Form scalar(int m, const FourierFunction& f);
  static Form constantScalar(int m, cplx c) { return scalar(m, FourierFunction::constant(2 * m, c)); }

  int complexDim() const { return m_; }
  bool isZero() const { return comps_.empty(); }
  const std::map<Key, FourierFunction>& components() const { return comps_; }

  const FourierFunction* component(IndexMask holo, IndexMask anti) const;
  void setComponent(IndexMask holo, IndexMask anti, FourierFunction f);
  void addComponent(IndexMask holo, IndexMask anti, const FourierFunction& f);

  /// True iff every component has exactly p holomorphic and q antiholomorphic
  /// frame factors.
  bool hasPureBidegree(int p, int q) const;
  /// Degree of the single bidegree present; throws when mixed.
  std::pair<int, int> bidegree() const;

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator*(cplx s) const;
  Form& operator+=(const Form& o);

  /// Largest coefficient magnitude over all components, on resolving grids.
  double maxAbs() const;

  Form conj() const;

  bool operator==(const Form& o) const { return m_ == o.m_ && comps_ == o.comps_; }

 private:
  int m_ = 0;
  std::map<Key, FourierFunction> comps_;
};

/// Graded-commutative exterior product with Koszul signs.
Form wedge(const Form& a, const Form& b);

/// The Dolbeault operators and the exterior derivative d = partial + dbar,
/// computed exactly on the Fourier data.
Form dbar(const Form& f);
Form partialOp(const Form& f);
Form dOp(const Form& f);

/// Im(w) = (w - conj w)/(2i) for a (1,0)-form; the result is a real 1-form
/// stored through its (1,0) and (0,1) parts.
Form imagPartOneForm(const Form& omega);

/// Integral over the torus (zero unless the form has a top-degree part).
cplx integrate(const Form& f);

/// Identifies a top-degree form with the scalar s such that f = s dvol(g),
/// where dvol = det(2 g_{a bbar}) dx^1^dy^1^...  The determinant function is
/// supplied by the caller; non-constant densities divide pointwise on a grid
/// and re-expand.
FourierFunction hodgeStarTop(const Form& f, const FourierFunction& det2g);

/// Pullback along the inclusion of a product factor: indices and frequency
/// axes shift by mOffset complex dimensions inside a total of mTotal.
Form embedFactor(const Form& f, int mOffset, int mTotal);
FourierFunction embedFactorFn(const FourierFunction& f, int mOffset, int mTotal);

}  // namespace dolwit
