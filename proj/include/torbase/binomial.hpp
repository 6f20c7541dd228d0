#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torbase/semigroup.hpp"

namespace torbase {

/// Pure-difference binomial x^u - x^v of the toric ideal, stored as the kernel
/// vector z = u - v with the first nonzero entry positive.
class KernelBinomial {
 public:
  KernelBinomial() = default;

  /// Normalizes the sign of z and checks that it lies in the kernel of gens.
  static KernelBinomial from_vector(Vec z, std::span<const Int> gens);
  static KernelBinomial from_pair(std::span<const Int> u, std::span<const Int> v, std::span<const Int> gens);

  const Vec& vector() const { return z_; }
  Vec positive() const;
  Vec negative() const;
  Int degree() const { return degree_; }
  std::size_t size() const { return z_.size(); }
  std::uint64_t support() const;

  /// Canonical order: degree, then u lexicographic, then v lexicographic.
  friend std::strong_ordering operator<=>(const KernelBinomial& a, const KernelBinomial& b);
  friend bool operator==(const KernelBinomial& a, const KernelBinomial& b) { return a.z_ == b.z_; }

  /// "x1^3*x2 - x3^2"
  std::string to_string() const;

 private:
  Vec z_;
  Int degree_ = 0;
};

enum class BasisKind { kCircuits, kCritical, kMarkovMinimal, kMarkovUniversal, kGroebnerReduced, kGroebnerUniversal, kGraver };

std::string_view kind_name(BasisKind k);
BasisKind kind_from_name(std::string_view name);

/// A deduplicated, canonically sorted set of kernel binomials.
class BasisSet {
 public:
  BasisSet() = default;
  explicit BasisSet(BasisKind kind) : kind_(kind) {}
  BasisSet(BasisKind kind, std::vector<KernelBinomial> elements);

  BasisKind kind() const { return kind_; }
  const std::vector<KernelBinomial>& elements() const& { return elements_; }
  std::vector<KernelBinomial> elements() && { return std::move(elements_); }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(const KernelBinomial& b) const;
  bool subset_of(const BasisSet& other) const;
  bool same_elements(const BasisSet& other) const { return elements_ == other.elements_; }

  /// Elements whose support lies inside the index mask.
  std::vector<KernelBinomial> restricted_to(std::uint64_t mask) const;

  std::map<std::string, std::string>& meta() { return meta_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  friend bool operator==(const BasisSet&, const BasisSet&) = default;

 private:
  BasisKind kind_ = BasisKind::kGraver;
  std::vector<KernelBinomial> elements_;
  std::map<std::string, std::string> meta_;
};

/// Sorts and removes duplicates.
void canonicalize(std::vector<KernelBinomial>& v);

}  // namespace torbase
