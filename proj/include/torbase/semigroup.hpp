#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torbase/arith.hpp"

namespace torbase {

/// Exponent vector of a monomial, or a signed kernel vector.
using Vec = std::vector<Int>;

/// Generators above this bound are rejected at construction.
inline constexpr Int kMaxGenerator = 1'000'000;

/// Membership oracle for the submonoid of N generated by an arbitrary list of
/// positive integers. The list need not be coprime or minimal.
///
/// Uses the Apéry table of the scaled generators with respect to the
/// smallest one (shortest paths on residues).
class Monoid {
 public:
  Monoid() = default;
  explicit Monoid(std::span<const Int> gens);

  bool contains(Int b) const;
  Int gcd() const { return gcd_; }
  /// Apéry set of the scaled monoid with respect to its smallest generator.
  std::span<const Int> apery() const { return apery_; }
  Int modulus() const { return modulus_; }

 private:
  Int gcd_ = 0;
  Int modulus_ = 1;
  std::vector<Int> apery_;
};

/// Enumerates all factorizations of an integer over a fixed generator list.
/// Prefix monoids prune the recursion so the cost is output-sensitive.
class Factorizer {
 public:
  Factorizer() = default;
  explicit Factorizer(std::vector<Int> gens);

  /// All u >= 0 with sum u_i gens_i = b, in ascending lexicographic order.
  std::vector<Vec> factorizations(Int b) const;
  std::span<const Int> gens() const { return gens_; }

 private:
  void recurse(std::size_t i, Int rest, Vec& cur, std::vector<Vec>& out) const;

  std::vector<Int> gens_;
  std::vector<Monoid> prefix_;  // prefix_[k] is generated by gens_[0..k]
};

/// Fiber of an element b: all factorizations of b and the components of the
/// shared-support graph on them.
struct Fiber {
  Int degree = 0;
  std::vector<Vec> elements;           // ascending lexicographic
  std::vector<std::uint64_t> supports; // bitmask of nonzero coordinates
  std::vector<std::size_t> component;  // numbered by first appearance
  std::size_t component_count = 0;

  bool empty() const { return elements.empty(); }
  std::size_t size() const { return elements.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return (supports[i] & supports[j]) != 0; }
  std::vector<std::size_t> neighbors(std::size_t i) const;
};

Fiber make_fiber(Int degree, std::vector<Vec> elements);

enum class Normalize { kNormalize, kStrict };

struct GluingPartition {
  std::vector<Int> first;   // contains the smallest generator
  std::vector<Int> second;
  friend bool operator==(const GluingPartition&, const GluingPartition&) = default;
};

/// A numerical semigroup given by its minimal generating set, sorted ascending.
class NumericalSemigroup {
 public:
  explicit NumericalSemigroup(std::vector<Int> input, Normalize mode = Normalize::kNormalize);

  std::span<const Int> gens() const { return gens_; }
  const std::vector<Int>& gens_vector() const { return gens_; }
  std::size_t embedding_dimension() const { return gens_.size(); }
  Int gen(std::size_t i) const { return gens_[i]; }

  const std::vector<Int>& original_input() const { return input_; }
  /// True when the stored generators differ from the sorted input.
  bool was_normalized() const { return normalized_; }

  bool contains(Int b) const;
  Int frobenius() const;
  /// Apéry set with respect to the smallest generator, indexed by residue.
  std::span<const Int> apery() const { return monoid_.apery(); }

  std::vector<Vec> factorizations(Int b) const { return factorizer_.factorizations(b); }
  Fiber fiber(Int b) const;
  Int degree(std::span<const Int> u) const { return dot(u, gens_); }

  std::vector<GluingPartition> gluing_decompositions() const;

  /// "<a1,a2,...,an>"
  std::string to_string() const;
  static NumericalSemigroup parse(const std::string& text, Normalize mode = Normalize::kNormalize);

  friend bool operator==(const NumericalSemigroup& a, const NumericalSemigroup& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<Int> input_;
  std::vector<Int> gens_;
  bool normalized_ = false;
  Monoid monoid_;
  Factorizer factorizer_;
};

/// Minimal generators of the monoid spanned by `gens`, ascending, unscaled.
std::vector<Int> minimal_generators(std::vector<Int> gens);

}  // namespace torbase
