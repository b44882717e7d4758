#pragma once

#include <tuple>

#include "dolwit/jet_variable.hpp"

namespace dolwit::jet {

/// A canonical monomial: a sorted multiset of jet variables of weight >= 2
/// plus the Xi block collecting the weight-1 letters (bare w_a / wbar_b).
struct Monomial {
  std::vector<JetVariable> factors;  // sorted, each of weight >= 2
  IndexList xiHolo;                  // sorted multiset of bare w indices
  IndexList xiAntiholo;              // sorted multiset of bare wbar indices

  static Monomial one() { return Monomial{}; }

  bool isOne() const { return factors.empty() && xiHolo.empty() && xiAntiholo.empty(); }
  bool hasXi() const { return !xiHolo.empty() || !xiAntiholo.empty(); }

  int weight() const;
  /// Number of variable factors, with the whole Xi block counting as one.
  int length() const;

  /// Total occurrences of a holomorphic (resp. antiholomorphic) index across
  /// all factors and the Xi block; 0 when the index is absent.
  int degreeHolo(int idx) const;
  int degreeAnti(int idx) const;
  /// Largest index value that appears (0 for the empty monomial).
  int maxIndex() const;

  Monomial operator*(const Monomial& o) const;

  auto key() const { return std::tie(factors, xiHolo, xiAntiholo); }
  bool operator==(const Monomial& o) const { return key() == o.key(); }
  bool operator<(const Monomial& o) const { return key() < o.key(); }

  std::string str() const;
};

/// Raw, possibly unsorted variable data plus loose weight-1 letters.
/// canonicalize() validates shapes, sorts every symmetric index block, moves
/// weight-1 variables into Xi and sorts the factor list.  Idempotent.
struct RawVariable {
  JetKind kind;
  IndexList U, V;
  int p = 0, q = 0;
};

Monomial canonicalize(const std::vector<RawVariable>& raw,
                      IndexList xiHolo = {}, IndexList xiAntiholo = {});

}  // namespace dolwit::jet
