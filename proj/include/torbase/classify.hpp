#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torbase/binomial.hpp"
#include "torbase/config.hpp"
#include "torbase/markov.hpp"
#include "torbase/semigroup.hpp"

namespace torbase {

/// a_i = f_i * prod_{j != i} d_j with d_i = gcd of the other generators.
struct UniqueWriting {
  std::vector<Int> d;
  std::vector<Int> f;
  friend bool operator==(const UniqueWriting&, const UniqueWriting&) = default;
};

/// x_i^{a_j/g} - x_j^{a_i/g} for all i < j.
BasisSet circuits(const NumericalSemigroup& s);
UniqueWriting unique_writing(const NumericalSemigroup& s);

/// `arrangement` lists 0-based generator indices. The chain
/// lcm(a_i, gcd(later)) in <later> is tested left to right.
bool is_free_for_arrangement(const NumericalSemigroup& s, std::span<const std::size_t> arrangement);

/// Lexicographically first free arrangement (as generator values), if any.
std::optional<std::vector<Int>> free_arrangement(const NumericalSemigroup& s);
bool is_free(const NumericalSemigroup& s);
/// Free for the descending arrangement (a_n, ..., a_1).
bool is_telescopic(const NumericalSemigroup& s);

/// First (element, subset) in mask order with lcm(a, gcd(T - a)) not in <T - a>.
struct FreenessFailure {
  Int element = 0;
  std::vector<Int> subset;
  friend bool operator==(const FreenessFailure&, const FreenessFailure&) = default;
};
std::optional<FreenessFailure> universal_freeness_failure(const NumericalSemigroup& s);
bool is_universally_free(const NumericalSemigroup& s);

bool is_complete_intersection(const NumericalSemigroup& s);
/// Betti elements form a divisibility chain. Cross-checked against the shape
/// of the unique writing; disagreement throws InternalConsistencyError.
bool is_betti_divisible(const NumericalSemigroup& s);
/// Shape of the unique writing: sorted f starts 1, 1 and is a divisibility chain.
bool has_betti_divisible_shape(const UniqueWriting& w);
/// Every Betti fiber is connected by circuit moves.
bool is_circuit_semigroup(const NumericalSemigroup& s);
/// n = 3 only: generators {d2 d3, f2 d1 d3, f3 d1 d2} up to order, d pairwise
/// coprime, gcd(d2, f2) = gcd(d3, f3) = 1.
bool has_three_circuit_shape(const NumericalSemigroup& s);

/// Partition {B, C} with lcm(gcd B, gcd C) = lcm(A) and both parts universally
/// free after scaling. First in mask order.
std::optional<GluingPartition> universally_free_split(const NumericalSemigroup& s);

/// Lazily computed bases of one semigroup. Not shareable across threads.
class BasisCache {
 public:
  explicit BasisCache(const NumericalSemigroup& s, Budget budget = {}) : s_(s), budget_(budget) {}

  const NumericalSemigroup& semigroup() const { return s_; }
  const BasisSet& circuits();
  const CriticalBinomials& critical();
  const BasisSet& minimal_markov();
  const BasisSet& universal_markov();
  const BasisSet& graver();
  const BasisSet& universal_groebner();
  const std::vector<Int>& betti();

 private:
  const NumericalSemigroup& s_;
  Budget budget_;
  std::optional<BasisSet> circuits_, minimal_markov_, universal_markov_, graver_, ugb_;
  std::optional<CriticalBinomials> critical_;
  std::optional<std::vector<Int>> betti_;
};

struct RobustnessFlags {
  bool robust = false;
  bool generalized_robust = false;
  bool strongly_robust = false;
  bool unique_betti = false;
  friend bool operator==(const RobustnessFlags&, const RobustnessFlags&) = default;
};
RobustnessFlags robustness_flags(BasisCache& cache);

inline constexpr std::size_t kFamilyCount = 6;

struct ClassificationReport {
  std::vector<Int> gens;
  bool ci = false;
  bool free = false;
  bool telescopic = false;
  bool universally_free = false;
  bool betti_divisible = false;
  bool circuit = false;
  std::optional<RobustnessFlags> robustness;
  /// F0..F5; empty when the bases were not computed or hit a budget.
  std::array<std::optional<bool>, kFamilyCount> families{};
  std::optional<std::vector<Int>> free_arrangement;
  std::optional<FreenessFailure> failure;
  std::vector<GluingPartition> gluings;
  std::vector<std::string> notes;

  /// Throws InternalConsistencyError when a proven implication is violated.
  void check_implications() const;
  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Predicates only, or with `families` the bases-dependent flags as well.
ClassificationReport classify(const NumericalSemigroup& s, bool families = false, const Budget& budget = {});

}  // namespace torbase
