#pragma once

#include <vector>

#include "torbase/binomial.hpp"
#include "torbase/semigroup.hpp"

namespace torbase {

/// Number of components of the fiber graph of b, computed on the index graph
/// (p ~ q iff b - a_p - a_q lies in S) without enumerating factorizations.
std::size_t fiber_component_count(const NumericalSemigroup& s, Int b);

/// Elements w + a_j with w in the Apéry set, together with the Apéry set.
/// Every Betti element lies in this set.
std::vector<Int> betti_candidates(const NumericalSemigroup& s);

/// Ascending Betti elements: degrees whose fiber graph is disconnected.
std::vector<Int> betti_elements(const NumericalSemigroup& s);

BasisSet minimal_markov(const NumericalSemigroup& s);
BasisSet universal_markov(const NumericalSemigroup& s);

struct CriticalBinomials {
  Vec exponents;  // c_i, least c >= 1 with c*a_i in the semigroup of the others
  BasisSet basis{BasisKind::kCritical};
};

CriticalBinomials critical_binomials(const NumericalSemigroup& s);

/// True iff the fiber of every listed degree is connected under the moves
/// (translations of the binomials by monomials).
bool connects_fiber(const Fiber& fiber, std::span<const KernelBinomial> moves);

}  // namespace torbase
