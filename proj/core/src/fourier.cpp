#include "dolwit/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dolwit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FourierFunction FourierFunction::constant(int dim, cplx c) {
  FourierFunction f(dim);
  f.setAmplitude(Freq(dim, 0), c);
  return f;
}

FourierFunction FourierFunction::mode(Freq k, cplx c) {
  FourierFunction f(static_cast<int>(k.size()));
  f.setAmplitude(std::move(k), c);
  return f;
}

void FourierFunction::setAmplitude(const Freq& k, cplx a) {
  if (static_cast<int>(k.size()) != dim_) throw std::invalid_argument("frequency dimension mismatch");
  if (a == cplx(0))
    amps_.erase(k);
  else
    amps_[k] = a;
}

FourierFunction& FourierFunction::operator+=(const FourierFunction& o) {
  if (dim_ != o.dim_) {
    if (isZero() && dim_ == 0) { *this = o; return *this; }
    throw std::invalid_argument("FourierFunction dimension mismatch");
  }
  for (const auto& [k, a] : o.amps_) {
    auto [it, fresh] = amps_.emplace(k, a);
    if (!fresh) {
      it->second += a;
      if (it->second == cplx(0)) amps_.erase(it);
    }
  }
  return *this;
}

FourierFunction& FourierFunction::operator-=(const FourierFunction& o) { return *this += -o; }

FourierFunction FourierFunction::operator+(const FourierFunction& o) const {
  FourierFunction r = *this;
  r += o;
  return r;
}

FourierFunction FourierFunction::operator-(const FourierFunction& o) const {
  FourierFunction r = *this;
  r += -o;
  return r;
}

FourierFunction FourierFunction::operator-() const {
  FourierFunction r(dim_);
  for (const auto& [k, a] : amps_) r.amps_[k] = -a;
  return r;
}

FourierFunction FourierFunction::operator*(const FourierFunction& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("FourierFunction dimension mismatch");
  FourierFunction r(dim_);
  Freq sum(dim_);
  for (const auto& [k1, a1] : amps_)
    for (const auto& [k2, a2] : o.amps_) {
      for (int i = 0; i < dim_; ++i) sum[i] = k1[i] + k2[i];
      auto [it, fresh] = r.amps_.emplace(sum, a1 * a2);
      if (!fresh) it->second += a1 * a2;
    }
  std::erase_if(r.amps_, [](const auto& kv) { return kv.second == cplx(0); });
  return r;
}

FourierFunction FourierFunction::operator*(cplx s) const {
  FourierFunction r(dim_);
  if (s == cplx(0)) return r;
  for (const auto& [k, a] : amps_) r.amps_[k] = a * s;
  return r;
}

FourierFunction FourierFunction::derivative(int axis) const {
  FourierFunction r(dim_);
  for (const auto& [k, a] : amps_)
    if (k[axis] != 0) r.amps_[k] = a * cplx(0, kTwoPi * k[axis]);
  return r;
}

FourierFunction FourierFunction::conj() const {
  FourierFunction r(dim_);
  Freq neg(dim_);
  for (const auto& [k, a] : amps_) {
    for (int i = 0; i < dim_; ++i) neg[i] = -k[i];
    r.amps_[neg] = std::conj(a);
  }
  return r;
}

cplx FourierFunction::evaluate(const std::vector<double>& x) const {
  cplx v = 0;
  for (const auto& [k, a] : amps_) {
    double phase = 0;
    for (int i = 0; i < dim_; ++i) phase += k[i] * x[i];
    v += a * std::polar(1.0, kTwoPi * phase);
  }
  return v;
}

std::vector<cplx> FourierFunction::sample(const GridShape& grid) const {
  if (grid.dim() != dim_) throw std::invalid_argument("grid dimension mismatch");
  long n = grid.total();
  std::vector<cplx> out(n, cplx(0));
  for (const auto& [k, a] : amps_) {
    std::vector<std::vector<cplx>> tab(dim_);
    for (int ax = 0; ax < dim_; ++ax) {
      tab[ax].resize(grid.size[ax]);
      for (int j = 0; j < grid.size[ax]; ++j)
        tab[ax][j] = std::polar(1.0, kTwoPi * k[ax] * j / double(grid.size[ax]));
    }
    for (long flat = 0; flat < n; ++flat) {
      long rest = flat;
      cplx ph = a;
      for (int ax = dim_ - 1; ax >= 0; --ax) {
        ph *= tab[ax][rest % grid.size[ax]];
        rest /= grid.size[ax];
      }
      out[flat] += ph;
    }
  }
  return out;
}

std::vector<int> FourierFunction::support() const {
  std::vector<int> s(dim_, 0);
  for (const auto& [k, a] : amps_)
    for (int i = 0; i < dim_; ++i) s[i] = std::max(s[i], std::abs(k[i]));
  return s;
}

double FourierFunction::maxAbsAmplitude() const {
  double m = 0;
  for (const auto& [k, a] : amps_) m = std::max(m, std::abs(a));
  return m;
}

FourierFunction FourierFunction::pruned(double eps) const {
  FourierFunction r(dim_);
  for (const auto& [k, a] : amps_)
    if (std::abs(a) > eps) r.amps_[k] = a;
  return r;
}

FourierFunction FourierFunction::prunedRelative(double relEps) const {
  return pruned(relEps * maxAbsAmplitude());
}

double FourierFunction::maxAbsOnGrid() const {
  if (isZero()) return 0;
  GridShape g = productGrid(support(), dim_);
  double m = 0;
  for (cplx v : sample(g)) m = std::max(m, std::abs(v));
  return m;
}

FourierFunction fromSamples(const GridShape& grid, const std::vector<cplx>& values) {
  int dim = grid.dim();
  if (static_cast<long>(values.size()) != grid.total())
    throw std::invalid_argument("fromSamples: value count mismatch");

  // successive one-axis DFTs
  std::vector<cplx> work = values;
  std::vector<long> stride(dim, 1);
  for (int ax = dim - 1; ax >= 1; --ax) stride[ax - 1] = stride[ax] * grid.size[ax];

  for (int ax = 0; ax < dim; ++ax) {
    int n = grid.size[ax];
    std::vector<cplx> tw(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        tw[k * n + j] = std::polar(1.0 / n, -kTwoPi * k * j / n);
    std::vector<cplx> buf(n);
    long outer = grid.total() / n;
    for (long o = 0; o < outer; ++o) {
      long base = 0, rest = o;
      for (int a2 = dim - 1; a2 >= 0; --a2) {
        if (a2 == ax) continue;
        long s = grid.size[a2];
        base += (rest % s) * stride[a2];
        rest /= s;
      }
      for (int j = 0; j < n; ++j) buf[j] = work[base + j * stride[ax]];
      for (int k = 0; k < n; ++k) {
        cplx acc = 0;
        for (int j = 0; j < n; ++j) acc += tw[k * n + j] * buf[j];
        work[base + k * stride[ax]] = acc;
      }
    }
  }

  FourierFunction f(dim);
  FourierFunction::Freq k(dim);
  for (long flat = 0; flat < grid.total(); ++flat) {
    if (work[flat] == cplx(0)) continue;
    long rest = flat;
    for (int ax = dim - 1; ax >= 0; --ax) {
      int n = grid.size[ax];
      int ki = static_cast<int>(rest % n);
      rest /= n;
      k[ax] = ki <= n / 2 ? ki : ki - n;  // centered frequency window
    }
    f.setAmplitude(k, work[flat]);
  }
  return f;
}

GridShape productGrid(const std::vector<int>& supportPerAxis, int dim) {
  GridShape g;
  g.size.resize(dim);
  for (int i = 0; i < dim; ++i) {
    int need = 2 * supportPerAxis[i] + 1;
    int n = 2;
    while (n < need) n *= 2;
    g.size[i] = n;
  }
  return g;
}

std::vector<std::vector<double>> probePoints(int dim, int count) {
  // deterministic low-discrepancy points (Weyl sequence)
  static const double alphas[] = {0.7548776662466927, 0.5698402909980532, 0.3660254037844386,
                                  0.2360679774997897, 0.6180339887498949, 0.4142135623730951,
                                  0.3247179572447460, 0.1892071150027210};
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  for (int p = 0; p < count; ++p)
    for (int d = 0; d < dim; ++d) {
      double v = (p + 1) * alphas[d % 8];
      pts[p][d] = v - std::floor(v);
    }
  return pts;
}

FourierFunction pointwiseQuotient(const FourierFunction& f, const FourierFunction& g,
                                  double tol) {
  if (f.isZero()) return FourierFunction(f.dim());
  auto sf = f.support();
  auto sg = g.support();
  std::vector<int> s(f.dim());
  for (int i = 0; i < f.dim(); ++i) s[i] = sf[i] + sg[i] + 1;
  auto probes = probePoints(f.dim(), 128);
  double scale = std::max(1.0, f.maxAbsAmplitude());

  for (int attempt = 0; attempt < 5; ++attempt) {
    GridShape grid = productGrid(s, f.dim());
    auto fv = f.sample(grid);
    auto gv = g.sample(grid);
    std::vector<cplx> qv(fv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) {
      if (std::abs(gv[i]) < 1e-14) throw std::domain_error("pointwiseQuotient: divisor vanishes");
      qv[i] = fv[i] / gv[i];
    }
    FourierFunction q = fromSamples(grid, qv).prunedRelative(1e-13);

    double err = 0;
    for (const auto& x : probes)
      err = std::max(err, std::abs(q.evaluate(x) * g.evaluate(x) - f.evaluate(x)));
    if (err < tol * scale) return q;
    for (int& v : s) v *= 2;
  }
  throw std::runtime_error("pointwiseQuotient: did not converge to requested tolerance");
}

}  // namespace dolwit
