#pragma once

#include "dolwit/jet_monomial.hpp"

namespace dolwit::jet {

struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumeration grows combinatorially; these bounds cover every check the
/// workbench runs and trip a ResourceGuardError beyond that.
struct Limits {
  int maxWeight = 6;
  int maxDim = 3;
  int maxRank = 2;
};

/// All canonical jet variables of the exact weight with indices in 1..m
/// and bundle indices in 1..dimE.
std::vector<JetVariable> enumerateVariables(int m, int weight, int dimE);

/// Every canonical monomial of the exact weight (no duplicates); weight 0
/// gives {1}.
std::vector<Monomial> enumerateMonomials(int m, int weight, int dimE,
                                         const Limits& limits = Limits{});

/// Sorted multisets of the given size with entries in 1..m.
std::vector<IndexList> indexMultisets(int m, int size);

}  // namespace dolwit::jet
