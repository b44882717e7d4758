#pragma once

#include <optional>
#include <utility>

#include "dolwit/jet_enumerate.hpp"
#include "dolwit/jet_polynomial.hpp"

namespace dolwit::jet {

enum class Flavor { Holo, Anti };

/// Occurrence count of an index in a monomial; throws when the index is
/// outside 1..m.
int degree(const Monomial& A, int index, Flavor flavor, int m);

/// Drops every monomial carrying the top index m (either flavor) and
/// reinterprets the rest one dimension down.  Ring morphism.
Polynomial restrictTop(const Polynomial& P, int m);

/// True iff deg_a(A) = deg_abar(A) for every index a and every monomial of P.
bool checkDegreeBalance(const Polynomial& P);

/// Simultaneous relabeling of holomorphic and antiholomorphic indices;
/// perm[i-1] is the image of index i.
Monomial applyIndexPermutation(const Monomial& A, const std::vector<int>& perm);

/// Infinitesimal two-index rotation generators for the pair (a,b), expanded
/// multilinearly over every index occurrence.  Plus: a->b on holomorphic
/// slots minus bbar->abar on antiholomorphic slots; Minus: abar->bbar minus
/// b->a.  A polynomial is rotation invariant iff both annihilate it.
std::map<Monomial, long> rotationPlus(const Monomial& A, int a, int b);
std::map<Monomial, long> rotationMinus(const Monomial& A, int a, int b);

struct BSetEntry {
  Monomial A;
  long nu = 0;  // nonzero; negative entries come from antiholomorphic changes
};

/// The set B(B) for the index pair (a,b): all monomials A that reach B by a
/// single change a->b (holomorphic) or bbar->abar (antiholomorphic), with the
/// marked-slot multiplicities of the worked example in the source material
/// (slots of repeated identical factors are identified).
std::vector<BSetEntry> bSet(const Monomial& B, int a = 1, int b = 2);

/// deg_a + deg_b + deg_abar + deg_bbar of B.
long uStatistic(const Monomial& B, int a = 1, int b = 2);

struct TwoMonomialReport {
  bool ok = true;
  Monomial B;                     // violating monomial when !ok
  int a = 0, b = 0;               // index pair of the violation
  std::vector<Monomial> present;  // the single member of B(B) found in P
};

/// Checks that for every monomial B and every index pair, never exactly one
/// element of B(B) appears in P.
TwoMonomialReport checkTwoMonomialProperty(const Polynomial& P, int m = 0);

/// Exact basis of the unitary-invariant subspace in the given weight.
/// Invariance is imposed as: simultaneous index permutations, the per-index
/// circle constraint (degree balance), and the infinitesimal two-index
/// rotations; these generate the full unitary group.  Bundle indices carry
/// permutation symmetry only.
std::vector<Polynomial> invariantBasis(int m, int weight, int dimE,
                                       const Limits& limits = Limits{});

/// Basis of ker(restrictTop) inside the invariant subspace.
std::vector<Polynomial> kernelOfRestriction(int m, int weight, int dimE,
                                            const Limits& limits = Limits{});

/// Membership in B_m + sum_{a,b} w_a wbar_b B_m: every factor of every
/// monomial has weight exactly 2 and the Xi block is empty or a single
/// w wbar pair.
bool inWeightTwoBlock(const Polynomial& P);

struct SpecialMonomialReport {
  bool found = false;
  Monomial witness;
  int length = 0;
  bool sharpForm = false;  // matched the weight = 2m normal form
};

/// Searches P (required to lie in ker restrictTop) for a monomial in normal
/// form: holomorphic index blocks U_nu = (nu,...,nu) for nu <= n, slots
/// ordered g,h,w,wbar,Xi; at weight 2m the sharper diagonal form is required.
SpecialMonomialReport specialMonomial(const Polynomial& P, int m, int n);

}  // namespace dolwit::jet
