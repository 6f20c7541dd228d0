#pragma once

#include <functional>
#include <string>
#include <vector>

#include "torbase/binomial.hpp"
#include "torbase/config.hpp"
#include "torbase/semigroup.hpp"

namespace torbase {

/// Weight vector refined by a lexicographic tiebreak. Only differences of
/// A-homogeneous monomials are ever compared, so integer weights suffice.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(Vec weights, std::vector<std::size_t> tiebreak);

  /// Pure lex with x_{p0} > x_{p1} > ...; identity when perm is empty.
  static MonomialOrder lex(std::size_t n, std::vector<std::size_t> perm = {});
  /// "w1,...,wn[:p1,...,pn]" with rational weights p/q and a 1-based permutation.
  static MonomialOrder parse(const std::string& text, std::size_t n);

  /// x^u > x^v
  bool greater(std::span<const Int> u, std::span<const Int> v) const;

  const Vec& weights() const { return weights_; }
  const std::vector<std::size_t>& tiebreak() const { return tiebreak_; }
  std::size_t size() const { return tiebreak_.size(); }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  Vec weights_;
  std::vector<std::size_t> tiebreak_;  // 0-based, highest priority first
};

struct MarkedBinomial {
  Vec lead;
  Vec trail;

  Vec normal() const;  // lead - trail
  friend auto operator<=>(const MarkedBinomial&, const MarkedBinomial&) = default;
};

/// Reduced Gröbner basis with marked leading terms, sorted by (lead, trail).
struct MarkedBasis {
  MonomialOrder order;
  std::vector<MarkedBinomial> elements;

  /// Inner normals of the closed Gröbner cone {w : w . (lead - trail) >= 0}.
  std::vector<Vec> cone_normals() const;
  BasisSet unmarked(std::span<const Int> gens) const;
  std::size_t size() const { return elements.size(); }

  friend bool operator==(const MarkedBasis&, const MarkedBasis&) = default;
};

enum class PairSchedule { kFifo, kSmallestDegree };

/// Buchberger completion of the binomials `generators` (kernel vectors that
/// generate the toric ideal), followed by interreduction.
MarkedBasis buchberger(std::span<const Int> gens, std::span<const Vec> generators, const MonomialOrder& order,
                       PairSchedule schedule = PairSchedule::kSmallestDegree);

/// Reduced Gröbner basis starting from a minimal Markov basis.
MarkedBasis reduced_groebner(const NumericalSemigroup& s, const MonomialOrder& order,
                             PairSchedule schedule = PairSchedule::kSmallestDegree);

/// True when no lead divides a monomial of another element and no trail is
/// divisible by any lead.
bool is_reduced(const MarkedBasis& g);

/// Visits every reduced Gröbner basis, each carrying an interior weight,
/// until `visit` returns false. Returns false when stopped early.
bool for_each_groebner_basis(const NumericalSemigroup& s, const std::function<bool(const MarkedBasis&)>& visit,
                             const Budget& budget = {});

/// Early-exit check that all reduced Gröbner bases have `size` elements.
bool every_reduced_basis_has_size(const NumericalSemigroup& s, std::size_t size, const Budget& budget = {});

/// All distinct reduced Gröbner bases, by facet flipping. Each basis carries
/// a weight vector from the interior of its cone. Sorted by elements.
std::vector<MarkedBasis> groebner_fan(const NumericalSemigroup& s, const Budget& budget = {});

/// Union of the fan. Falls back to the fiber-edge filter over the Graver
/// basis when the cone budget is exceeded.
BasisSet universal_groebner(const NumericalSemigroup& s, const Budget& budget = {});

/// Graver elements x^u - x^v whose segment [u, v] is an edge of the convex
/// hull of the fiber of their degree.
BasisSet fiber_edge_universal(const NumericalSemigroup& s, const Budget& budget = {});
bool is_fiber_edge(const NumericalSemigroup& s, const KernelBinomial& b);
/// Same test by an exact phase-one simplex, for any embedding dimension.
bool is_fiber_edge_lp(const NumericalSemigroup& s, const KernelBinomial& b);

/// Sizes of all reduced Gröbner bases, ascending.
std::vector<std::size_t> initial_ideal_generator_counts(const NumericalSemigroup& s, const Budget& budget = {});

}  // namespace torbase
