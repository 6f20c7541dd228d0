#include "torbase/ed3.hpp"

#include <algorithm>

#include "torbase/classify.hpp"
#include "torbase/errors.hpp"
#include "torbase/markov.hpp"

namespace torbase {

std::array<Int, 3> Ed3Parameters::generators() const {
  return {checked_mul(d2, d3), checked_mul(d1, d3), checked_mul(f3, checked_mul(d1, d2))};
}

void Ed3Parameters::validate() const {
  if (d1 < 1 || d2 < 1 || d3 < 1 || f3 < 1) throw ValidationError("parameters must be positive");
  if (gcd(d1, d2) != 1 || gcd(d1, d3) != 1 || gcd(d2, d3) != 1) throw ValidationError("d1, d2, d3 must be pairwise coprime");
  if (gcd(f3, d3) != 1) throw ValidationError("f3 and d3 must be coprime");
  auto g = generators();
  std::vector<Int> sorted(g.begin(), g.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || minimal_generators(sorted) != sorted)
    throw ValidationError("parameters do not give three minimal generators");
}

NumericalSemigroup Ed3Parameters::semigroup() const {
  validate();
  auto g = generators();
  return NumericalSemigroup({g.begin(), g.end()}, Normalize::kStrict);
}

Ed3Bases closed_form_bases(const Ed3Parameters& p) {
  const NumericalSemigroup s = p.semigroup();
  const auto roles = p.generators();
  std::array<std::size_t, 3> at{};
  for (std::size_t r = 0; r < 3; ++r)
    at[r] = static_cast<std::size_t>(std::find(s.gens().begin(), s.gens().end(), roles[r]) - s.gens().begin());

  // x1^e1 x2^e2 x3^e3 - x1^g1 x2^g2 x3^g3 in role coordinates.
  auto binomial = [&](std::array<Int, 3> lhs, std::array<Int, 3> rhs) {
    Vec z(3, 0);
    for (std::size_t r = 0; r < 3; ++r) z[at[r]] = lhs[r] - rhs[r];
    return KernelBinomial::from_vector(std::move(z), s.gens());
  };

  std::vector<KernelBinomial> markov{binomial({p.d1, 0, 0}, {0, p.d2, 0})};
  for (Int k = 0; k <= p.f3; ++k)
    markov.push_back(binomial({0, 0, p.d3}, {(p.f3 - k) * p.d1, k * p.d2, 0}));
  std::vector<KernelBinomial> circ{binomial({p.d1, 0, 0}, {0, p.d2, 0}), binomial({p.f3 * p.d1, 0, 0}, {0, 0, p.d3}),
                                   binomial({0, p.f3 * p.d2, 0}, {0, 0, p.d3})};
  return Ed3Bases{BasisSet(BasisKind::kMarkovUniversal, markov), BasisSet(BasisKind::kGraver, markov),
                  BasisSet(BasisKind::kCircuits, circ), BasisSet(BasisKind::kGroebnerUniversal, circ)};
}

Ed3Classification classify_ed3(const NumericalSemigroup& s) {
  if (s.embedding_dimension() != 3) throw ValidationError("ed3 classification needs three generators");
  const auto w = unique_writing(s);
  std::size_t third = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (w.f[i] >= w.f[third]) third = i;
  std::array<std::size_t, 2> rest{};
  for (std::size_t i = 0, k = 0; i < 3; ++i)
    if (i != third) rest[k++] = i;

  Ed3Classification out;
  const bool shape = w.f[rest[0]] == 1 && w.f[rest[1]] == 1;
  std::optional<Ed3Parameters> params;
  if (shape) {
    // d1 pairs with x2 through gcd(a2, a3); the unique writing stores it at x1's slot.
    params = Ed3Parameters{w.d[rest[0]], w.d[rest[1]], w.d[third], w.f[third]};
    const Int base = params->d1 * params->d2 * params->d3;
    std::vector<Int> expected{base};
    if (params->f3 > 1) expected.push_back(base * params->f3);
    if (betti_elements(s) != expected) params.reset();
  }
  out.universally_free = is_universally_free(s);
  const bool divisible = is_betti_divisible(s);
  ensure(out.universally_free == divisible, "universal freeness and Betti divisibility disagree for " + s.to_string());
  ensure(out.universally_free == params.has_value(), "parametric form disagrees with universal freeness for " + s.to_string());
  if (out.universally_free) out.params = params;
  return out;
}

}  // namespace torbase
