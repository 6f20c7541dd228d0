#pragma once

// Exact linear algebra on small integer matrices (internal).

#include <gmpxx.h>

#include <vector>

#include "torbase/semigroup.hpp"

namespace torbase::exact {

/// Rank of the row set.
std::size_t rank(const std::vector<Vec>& rows);

/// Primitive generator of the kernel of an (n-1) x n matrix of rank n-1,
/// by signed maximal minors. Returns an empty vector when the rank is smaller.
Vec null_vector(const std::vector<Vec>& rows);

/// Decides whether {x >= 0 : M x = rhs} is nonempty (phase one simplex with
/// Bland's rule, rational arithmetic).
bool feasible(const std::vector<std::vector<mpq_class>>& m, const std::vector<mpq_class>& rhs);

}  // namespace torbase::exact
