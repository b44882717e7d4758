#include "dolwit/form.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dolwit {

namespace {

int bits(IndexMask m) { return std::popcount(m); }

/// Sign of merging two ascending index lists (bitmasks): (-1)^inversions,
/// 0 when they overlap.
int mergeSign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int sign = 1;
  while (b) {
    IndexMask low = b & (IndexMask(0) - b);  // lowest set bit of b
    // elements of a above this bit must jump over it
    IndexMask above = a & ~((low << 1) - 1);
    if (bits(above) % 2) sign = -sign;
    b &= b - 1;
  }
  return sign;
}

/// Sign of inserting single index bit `one` into ascending list `set`.
int insertSign(IndexMask set, IndexMask one) {
  if (set & one) return 0;
  IndexMask below = set & (one - 1);
  return bits(below) % 2 ? -1 : 1;
}

}  // namespace

Form Form::scalar(int m, const FourierFunction& f) {
  Form r(m);
  if (!f.isZero()) r.comps_[{0, 0}] = f;
  return r;
}

const FourierFunction* Form::component(IndexMask holo, IndexMask anti) const {
  auto it = comps_.find({holo, anti});
  return it == comps_.end() ? nullptr : &it->second;
}

void Form::setComponent(IndexMask holo, IndexMask anti, FourierFunction f) {
  if (f.isZero())
    comps_.erase({holo, anti});
  else
    comps_[{holo, anti}] = std::move(f);
}

void Form::addComponent(IndexMask holo, IndexMask anti, const FourierFunction& f) {
  if (f.isZero()) return;
  auto [it, fresh] = comps_.emplace(Key{holo, anti}, f);
  if (!fresh) {
    it->second += f;
    if (it->second.isZero()) comps_.erase(it);
  }
}

bool Form::hasPureBidegree(int p, int q) const {
  for (const auto& [k, f] : comps_)
    if (bits(k.first) != p || bits(k.second) != q) return false;
  return true;
}

std::pair<int, int> Form::bidegree() const {
  if (comps_.empty()) return {0, 0};
  auto k0 = comps_.begin()->first;
  std::pair<int, int> d{bits(k0.first), bits(k0.second)};
  if (!hasPureBidegree(d.first, d.second)) throw std::logic_error("Form: mixed bidegree");
  return d;
}

Form Form::operator+(const Form& o) const {
  Form r = *this;
  r += o;
  return r;
}

Form& Form::operator+=(const Form& o) {
  if (m_ != o.m_) {
    if (comps_.empty() && m_ == 0) { *this = o; return *this; }
    throw std::invalid_argument("Form dimension mismatch");
  }
  for (const auto& [k, f] : o.comps_) addComponent(k.first, k.second, f);
  return *this;
}

Form Form::operator-(const Form& o) const { return *this + o * cplx(-1); }

Form Form::operator*(cplx s) const {
  Form r(m_);
  if (s == cplx(0)) return r;
  for (const auto& [k, f] : comps_) r.comps_[k] = f * s;
  return r;
}

double Form::maxAbs() const {
  double m = 0;
  for (const auto& [k, f] : comps_) m = std::max(m, f.maxAbsOnGrid());
  return m;
}

Form Form::conj() const {
  Form r(m_);
  for (const auto& [k, f] : comps_) {
    int sign = (bits(k.first) * bits(k.second)) % 2 ? -1 : 1;
    r.addComponent(k.second, k.first, f.conj() * cplx(sign));
  }
  return r;
}

Form wedge(const Form& a, const Form& b) {
  if (a.complexDim() != b.complexDim()) throw std::invalid_argument("wedge: dimension mismatch");
  Form r(a.complexDim());
  for (const auto& [ka, fa] : a.components())
    for (const auto& [kb, fb] : b.components()) {
      if ((ka.first & kb.first) || (ka.second & kb.second)) continue;
      // move the dz block of b across the dzbar block of a, then merge
      int sign = (bits(kb.first) * bits(ka.second)) % 2 ? -1 : 1;
      sign *= mergeSign(ka.first, kb.first);
      sign *= mergeSign(ka.second, kb.second);
      if (sign == 0) continue;
      r.addComponent(ka.first | kb.first, ka.second | kb.second, (fa * fb) * cplx(sign));
    }
  return r;
}

namespace {

// complex coordinate derivatives on the interleaved (x^1,y^1,x^2,y^2,...) axes
FourierFunction dzAlpha(const FourierFunction& f, int alpha) {
  return (f.derivative(2 * alpha) - f.derivative(2 * alpha + 1) * cplx(0, 1)) * 0.5;
}
FourierFunction dzbarAlpha(const FourierFunction& f, int alpha) {
  return (f.derivative(2 * alpha) + f.derivative(2 * alpha + 1) * cplx(0, 1)) * 0.5;
}

}  // namespace

Form dbar(const Form& f) {
  int m = f.complexDim();
  Form r(m);
  for (const auto& [k, g] : f.components()) {
    int signPastHolo = bits(k.first) % 2 ? -1 : 1;
    for (int b = 0; b < m; ++b) {
      IndexMask bit = IndexMask(1) << b;
      if (k.second & bit) continue;
      FourierFunction dg = dzbarAlpha(g, b);
      if (dg.isZero()) continue;
      int sign = signPastHolo * insertSign(k.second, bit);
      r.addComponent(k.first, k.second | bit, dg * cplx(sign));
    }
  }
  return r;
}

Form partialOp(const Form& f) {
  int m = f.complexDim();
  Form r(m);
  for (const auto& [k, g] : f.components()) {
    for (int a = 0; a < m; ++a) {
      IndexMask bit = IndexMask(1) << a;
      if (k.first & bit) continue;
      FourierFunction dg = dzAlpha(g, a);
      if (dg.isZero()) continue;
      int sign = insertSign(k.first, bit);
      r.addComponent(k.first | bit, k.second, dg * cplx(sign));
    }
  }
  return r;
}

Form dOp(const Form& f) { return partialOp(f) + dbar(f); }

Form imagPartOneForm(const Form& omega) {
  if (!omega.hasPureBidegree(1, 0))
    throw std::invalid_argument("imagPartOneForm: expected a (1,0)-form");
  return (omega - omega.conj()) * (cplx(1) / cplx(0, 2));
}

namespace {

/// dz^1^...^dz^m ^ dzbar^1^...^dzbar^m = topFrameFactor(m) dx^1^dy^1^...
cplx topFrameFactor(int m) {
  // interleaving the wedge into (dz^a ^ dzbar^a) pairs costs (-1)^{m(m-1)/2},
  // each pair is -2i dx^a ^ dy^a
  cplx c = (m * (m - 1) / 2) % 2 ? -1.0 : 1.0;
  for (int i = 0; i < m; ++i) c *= cplx(0, -2);
  return c;
}

}  // namespace

cplx integrate(const Form& f) {
  int m = f.complexDim();
  IndexMask full = (IndexMask(1) << m) - 1;
  const FourierFunction* top = f.component(full, full);
  if (!top) return 0;
  return top->amplitude(FourierFunction::Freq(2 * m, 0)) * topFrameFactor(m);
}

FourierFunction hodgeStarTop(const Form& f, const FourierFunction& det2g) {
  int m = f.complexDim();
  IndexMask full = (IndexMask(1) << m) - 1;
  for (const auto& [k, g] : f.components())
    if (k.first != full || k.second != full)
      throw std::invalid_argument("hodgeStarTop: form is not of top degree");
  const FourierFunction* top = f.component(full, full);
  if (!top) return FourierFunction(2 * m);

  FourierFunction scaled = *top * topFrameFactor(m);
  // constant densities divide exactly
  if (det2g.amplitudes().size() == 1 &&
      det2g.amplitudes().begin()->first == FourierFunction::Freq(2 * m, 0))
    return scaled * (cplx(1) / det2g.amplitudes().begin()->second);
  return pointwiseQuotient(scaled, det2g);
}

FourierFunction embedFactorFn(const FourierFunction& f, int mOffset, int mTotal) {
  FourierFunction r(2 * mTotal);
  for (const auto& [k, a] : f.amplitudes()) {
    FourierFunction::Freq kk(2 * mTotal, 0);
    for (std::size_t i = 0; i < k.size(); ++i) kk[2 * mOffset + i] = k[i];
    r.setAmplitude(kk, a);
  }
  return r;
}

Form embedFactor(const Form& f, int mOffset, int mTotal) {
  Form r(mTotal);
  for (const auto& [k, g] : f.components())
    r.addComponent(k.first << mOffset, k.second << mOffset, embedFactorFn(g, mOffset, mTotal));
  return r;
}

}  // namespace dolwit
