#pragma once

#include <gmpxx.h>
#include <string>

namespace dolwit {

/// Exact Gaussian rational a + b i with a, b in Q.
///
/// All jet-algebra coefficients live here; the linear solves in the
/// invariance machinery stay exact so kernel dimensions are trustworthy.
struct GaussQ {
  mpq_class re, im;

  GaussQ() : re(0), im(0) {}
  GaussQ(long n) : re(n), im(0) {}
  GaussQ(long num, long den) : re(num, den), im(0) { re.canonicalize(); }
  GaussQ(mpq_class r) : re(std::move(r)), im(0) {}
  GaussQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool isZero() const { return re == 0 && im == 0; }
  bool isReal() const { return im == 0; }

  GaussQ operator-() const { return {mpq_class(-re), mpq_class(-im)}; }
  GaussQ operator+(const GaussQ& o) const { return {mpq_class(re + o.re), mpq_class(im + o.im)}; }
  GaussQ operator-(const GaussQ& o) const { return {mpq_class(re - o.re), mpq_class(im - o.im)}; }
  GaussQ operator*(const GaussQ& o) const {
    return {mpq_class(re * o.re - im * o.im), mpq_class(re * o.im + im * o.re)};
  }
  GaussQ operator/(const GaussQ& o) const {
    mpq_class n = o.re * o.re + o.im * o.im;
    return {mpq_class((re * o.re + im * o.im) / n), mpq_class((im * o.re - re * o.im) / n)};
  }
  GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
  GaussQ& operator-=(const GaussQ& o) { re -= o.re; im -= o.im; return *this; }
  GaussQ& operator*=(const GaussQ& o) { *this = *this * o; return *this; }

  bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussQ& o) const { return !(*this == o); }

  /// "a/b" for real values, "a/b+c/d i" (or "a/b-c/d i") otherwise.
  std::string str() const {
    if (im == 0) return re.get_str();
    std::string s = re.get_str();
    if (im > 0) s += "+";
    s += im.get_str();
    s += " i";
    return s;
  }

  double toDouble() const { return re.get_d(); }
};

inline GaussQ operator*(long n, const GaussQ& q) { return GaussQ(n) * q; }

}  // namespace dolwit
