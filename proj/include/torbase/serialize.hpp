#pragma once

#include <span>

#include "json.hpp"
#include "torbase/binomial.hpp"
#include "torbase/census.hpp"
#include "torbase/classify.hpp"
#include "torbase/ed3.hpp"
#include "torbase/groebner.hpp"
#include "torbase/semigroup.hpp"

namespace torbase {

/// Key order is fixed so printed output is byte-stable.
using Json = nlohmann::ordered_json;

// Parsers throw ValidationError on malformed input. Binomial parsers need the
// generators to recompute degrees and check kernel membership.

Json to_json(const NumericalSemigroup& s);
NumericalSemigroup semigroup_from_json(const Json& j);

Json to_json(const KernelBinomial& b);
KernelBinomial binomial_from_json(const Json& j, std::span<const Int> gens);

Json to_json(const BasisSet& b);
BasisSet basis_set_from_json(const Json& j, std::span<const Int> gens);

Json to_json(const MonomialOrder& o);
MonomialOrder order_from_json(const Json& j);

Json to_json(const MarkedBasis& g);
MarkedBasis marked_basis_from_json(const Json& j);

Json to_json(const ClassificationReport& r);
ClassificationReport report_from_json(const Json& j);

Json to_json(const Ed3Parameters& p);
Ed3Parameters ed3_from_json(const Json& j);

Json to_json(const CensusRow& r);
CensusRow census_row_from_json(const Json& j);

Json to_json(const Finding& f);
Finding finding_from_json(const Json& j);

}  // namespace torbase
