#include "torbase/binomial.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "torbase/errors.hpp"

namespace torbase {

KernelBinomial KernelBinomial::from_vector(Vec z, std::span<const Int> gens) {
  if (z.size() != gens.size()) throw ValidationError("binomial length does not match the number of generators");
  auto first = std::find_if(z.begin(), z.end(), [](Int x) { return x != 0; });
  if (first == z.end()) throw ValidationError("zero vector is not a binomial");
  if (*first < 0)
    for (Int& x : z) x = -x;
  if (dot(z, gens) != 0) throw ValidationError("vector is not in the kernel of the generators");
  KernelBinomial b;
  b.z_ = std::move(z);
  Int d = 0;
  for (std::size_t i = 0; i < b.z_.size(); ++i)
    if (b.z_[i] > 0) d = checked_add(d, checked_mul(b.z_[i], gens[i]));
  b.degree_ = d;
  return b;
}

KernelBinomial KernelBinomial::from_pair(std::span<const Int> u, std::span<const Int> v, std::span<const Int> gens) {
  if (u.size() != v.size()) throw ValidationError("binomial sides have different lengths");
  Vec z(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0 || v[i] < 0) throw ValidationError("exponents must be nonnegative");
    z[i] = checked_sub(u[i], v[i]);
  }
  return from_vector(std::move(z), gens);
}

Vec KernelBinomial::positive() const {
  Vec u(z_.size());
  for (std::size_t i = 0; i < z_.size(); ++i) u[i] = z_[i] > 0 ? z_[i] : 0;
  return u;
}

Vec KernelBinomial::negative() const {
  Vec v(z_.size());
  for (std::size_t i = 0; i < z_.size(); ++i) v[i] = z_[i] < 0 ? -z_[i] : 0;
  return v;
}

std::uint64_t KernelBinomial::support() const {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < z_.size(); ++i)
    if (z_[i] != 0) m |= std::uint64_t{1} << i;
  return m;
}

std::strong_ordering operator<=>(const KernelBinomial& a, const KernelBinomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  const std::size_t n = std::min(a.z_.size(), b.z_.size());
  for (std::size_t i = 0; i < n; ++i) {
    Int pa = std::max<Int>(a.z_[i], 0), pb = std::max<Int>(b.z_[i], 0);
    if (auto c = pa <=> pb; c != 0) return c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Int na = std::max<Int>(-a.z_[i], 0), nb = std::max<Int>(-b.z_[i], 0);
    if (auto c = na <=> nb; c != 0) return c;
  }
  return a.z_.size() <=> b.z_.size();
}

namespace {

std::string monomial(const Vec& e) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << '*';
    os << 'x' << (i + 1);
    if (e[i] != 1) os << '^' << e[i];
    any = true;
  }
  if (!any) os << '1';
  return os.str();
}

constexpr std::array<std::pair<BasisKind, std::string_view>, 7> kKindNames{{
    {BasisKind::kCircuits, "circuits"},
    {BasisKind::kCritical, "critical"},
    {BasisKind::kMarkovMinimal, "markov-minimal"},
    {BasisKind::kMarkovUniversal, "markov-universal"},
    {BasisKind::kGroebnerReduced, "groebner-reduced"},
    {BasisKind::kGroebnerUniversal, "groebner-universal"},
    {BasisKind::kGraver, "graver"},
}};

}  // namespace

std::string KernelBinomial::to_string() const { return monomial(positive()) + " - " + monomial(negative()); }

std::string_view kind_name(BasisKind k) {
  for (auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "unknown";
}

BasisKind kind_from_name(std::string_view name) {
  for (auto& [kind, n] : kKindNames)
    if (n == name) return kind;
  throw ValidationError("unknown basis kind '" + std::string(name) + "'");
}

void canonicalize(std::vector<KernelBinomial>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

BasisSet::BasisSet(BasisKind kind, std::vector<KernelBinomial> elements) : kind_(kind), elements_(std::move(elements)) {
  canonicalize(elements_);
}

bool BasisSet::contains(const KernelBinomial& b) const {
  return std::binary_search(elements_.begin(), elements_.end(), b);
}

bool BasisSet::subset_of(const BasisSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

std::vector<KernelBinomial> BasisSet::restricted_to(std::uint64_t mask) const {
  std::vector<KernelBinomial> out;
  for (const auto& b : elements_)
    if ((b.support() & ~mask) == 0) out.push_back(b);
  return out;
}

}  // namespace torbase
