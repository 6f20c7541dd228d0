#pragma once

#include "torbase/binomial.hpp"
#include "torbase/config.hpp"
#include "torbase/semigroup.hpp"

namespace torbase {

/// Graver basis by lattice completion from a minimal Markov basis.
BasisSet graver(const NumericalSemigroup& s, const Budget& budget = {});

/// Definitional test: no kernel binomial x^w - x^z other than b itself with
/// x^w | x^u and x^z | x^v.
bool is_primitive(const NumericalSemigroup& s, const KernelBinomial& b);

/// z conformally below w: z_i w_i >= 0 and |z_i| <= |w_i| for all i.
bool conformal_le(std::span<const Int> z, std::span<const Int> w);

}  // namespace torbase
