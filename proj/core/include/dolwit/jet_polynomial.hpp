#pragma once

#include <map>

#include "dolwit/jet_monomial.hpp"
#include "dolwit/rational.hpp"

namespace dolwit::jet {

/// Exact polynomial in the jet algebra: canonical monomial -> coefficient.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Monomial& A, GaussQ c = GaussQ(1)) {
    if (!c.isZero()) terms_[A] = std::move(c);
  }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(GaussQ c) { return Polynomial(Monomial::one(), std::move(c)); }

  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }

  /// c(A,P): the coefficient of the canonical monomial A, exactly.
  GaussQ coeff(const Monomial& A) const {
    auto it = terms_.find(A);
    return it == terms_.end() ? GaussQ() : it->second;
  }
  bool contains(const Monomial& A) const { return terms_.count(A) != 0; }

  void add(const Monomial& A, const GaussQ& c) {
    if (c.isZero()) return;
    auto [it, fresh] = terms_.emplace(A, c);
    if (!fresh) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [A, c] : o.terms_) add(A, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [A, c] : o.terms_) add(A, -c);
    return *this;
  }
  Polynomial operator+(const Polynomial& o) const { Polynomial r = *this; r += o; return r; }
  Polynomial operator-(const Polynomial& o) const { Polynomial r = *this; r -= o; return r; }

  Polynomial operator*(const GaussQ& s) const {
    Polynomial r;
    if (s.isZero()) return r;
    for (const auto& [A, c] : terms_) r.terms_[A] = c * s;
    return r;
  }
  Polynomial operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [A, ca] : terms_)
      for (const auto& [B, cb] : o.terms_) r.add(A * B, ca * cb);
    return r;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  const std::map<Monomial, GaussQ>& terms() const { return terms_; }

  std::string str() const;

 private:
  std::map<Monomial, GaussQ> terms_;
};

}  // namespace dolwit::jet
