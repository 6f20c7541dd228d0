#pragma once

#include <array>
#include <optional>

#include "torbase/binomial.hpp"
#include "torbase/semigroup.hpp"

namespace torbase {

/// A = {d2 d3, d1 d3, f3 d1 d2} with pairwise coprime d and gcd(f3, d3) = 1.
struct Ed3Parameters {
  Int d1 = 1;
  Int d2 = 1;
  Int d3 = 1;
  Int f3 = 1;

  /// Generators in role order (x1, x2, x3).
  std::array<Int, 3> generators() const;
  /// Throws ValidationError unless the invariants hold and A is a minimal
  /// generating set of a numerical semigroup.
  void validate() const;
  NumericalSemigroup semigroup() const;

  friend bool operator==(const Ed3Parameters&, const Ed3Parameters&) = default;
};

/// Explicit bases, expressed over the sorted generators of semigroup().
struct Ed3Bases {
  BasisSet markov;    // universal Markov, equal to Graver and critical
  BasisSet graver;
  BasisSet circuits;  // equal to the universal Gröbner basis
  BasisSet ugb;
};

Ed3Bases closed_form_bases(const Ed3Parameters& p);

struct Ed3Classification {
  bool universally_free = false;
  std::optional<Ed3Parameters> params;
};

/// Recovers the parameters from the unique writing. x3 is the generator with
/// the larger critical degree (largest generator on ties); x1 < x2 otherwise.
/// Universal freeness, Betti divisibility and the parametric form are all
/// evaluated; disagreement throws InternalConsistencyError.
Ed3Classification classify_ed3(const NumericalSemigroup& s);

}  // namespace torbase
