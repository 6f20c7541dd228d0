#include "torbase/classify.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "torbase/errors.hpp"
#include "torbase/graver.hpp"
#include "torbase/groebner.hpp"

namespace torbase {

namespace {

std::vector<Int> pick(std::span<const Int> gens, std::uint64_t mask) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (mask >> i & 1) out.push_back(gens[i]);
  return out;
}

// lcm(a_i, gcd(rest)) lies in the monoid generated by rest.
bool gluing_step(std::span<const Int> gens, std::size_t i, std::uint64_t rest) {
  auto others = pick(gens, rest);
  if (others.empty()) return true;
  Monoid m(others);
  return m.contains(lcm(gens[i], m.gcd()));
}

std::uint64_t full_mask(std::size_t n) { return n >= 64 ? ~0ULL : (1ULL << n) - 1; }

class FreeSearch {
 public:
  explicit FreeSearch(std::span<const Int> gens) : gens_(gens) {}

  bool run(std::uint64_t remaining, std::vector<std::size_t>& order) {
    if (std::popcount(remaining) <= 1) {
      if (remaining) order.push_back(static_cast<std::size_t>(std::countr_zero(remaining)));
      return true;
    }
    if (dead_.count(remaining)) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (!(remaining >> i & 1)) continue;
      const std::uint64_t rest = remaining & ~(1ULL << i);
      if (!gluing_step(gens_, i, rest)) continue;
      order.push_back(i);
      if (run(rest, order)) return true;
      order.pop_back();
    }
    dead_.insert(remaining);
    return false;
  }

 private:
  std::span<const Int> gens_;
  std::set<std::uint64_t> dead_;
};

}  // namespace

BasisSet circuits(const NumericalSemigroup& s) {
  const auto g = s.gens();
  std::vector<KernelBinomial> out;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Int d = gcd(g[i], g[j]);
      Vec z(g.size(), 0);
      z[i] = g[j] / d;
      z[j] = -(g[i] / d);
      out.push_back(KernelBinomial::from_vector(std::move(z), g));
    }
  return BasisSet(BasisKind::kCircuits, std::move(out));
}

UniqueWriting unique_writing(const NumericalSemigroup& s) {
  const auto g = s.gens();
  const std::size_t n = g.size();
  UniqueWriting w;
  w.d.resize(n);
  w.f.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.d[i] = gcd_of(pick(g, full_mask(n) & ~(1ULL << i)));
  for (std::size_t i = 0; i < n; ++i) {
    Int rest = g[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      ensure(rest % w.d[j] == 0, "unique writing is not exact");
      rest /= w.d[j];
    }
    w.f[i] = rest;
  }
  return w;
}

bool is_free_for_arrangement(const NumericalSemigroup& s, std::span<const std::size_t> arrangement) {
  const std::size_t n = s.embedding_dimension();
  if (arrangement.size() != n) throw ValidationError("arrangement has the wrong length");
  std::uint64_t seen = 0;
  for (std::size_t i : arrangement) {
    if (i >= n || (seen >> i & 1)) throw ValidationError("arrangement is not a permutation");
    seen |= 1ULL << i;
  }
  std::uint64_t rest = full_mask(n);
  for (std::size_t i : arrangement) {
    rest &= ~(1ULL << i);
    if (!gluing_step(s.gens(), i, rest)) return false;
  }
  return true;
}

std::optional<std::vector<Int>> free_arrangement(const NumericalSemigroup& s) {
  std::vector<std::size_t> order;
  FreeSearch search(s.gens());
  if (!search.run(full_mask(s.embedding_dimension()), order)) return std::nullopt;
  std::vector<Int> out;
  for (std::size_t i : order) out.push_back(s.gen(i));
  return out;
}

bool is_free(const NumericalSemigroup& s) { return free_arrangement(s).has_value(); }

bool is_telescopic(const NumericalSemigroup& s) {
  std::vector<std::size_t> order(s.embedding_dimension());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  return is_free_for_arrangement(s, order);
}

std::optional<FreenessFailure> universal_freeness_failure(const NumericalSemigroup& s) {
  const auto g = s.gens();
  const std::size_t n = g.size();
  for (std::uint64_t mask = 1; mask <= full_mask(n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      if (!gluing_step(g, i, mask & ~(1ULL << i))) return FreenessFailure{g[i], pick(g, mask)};
    }
  }
  return std::nullopt;
}

bool is_universally_free(const NumericalSemigroup& s) { return !universal_freeness_failure(s).has_value(); }

bool is_complete_intersection(const NumericalSemigroup& s) {
  return minimal_markov(s).size() + 1 == s.embedding_dimension();
}

bool has_betti_divisible_shape(const UniqueWriting& w) {
  auto f = w.f;
  if (f.size() < 2) return true;
  std::sort(f.begin(), f.end());
  if (f[0] != 1 || f[1] != 1) return false;
  for (std::size_t i = 2; i + 1 < f.size(); ++i)
    if (f[i + 1] % f[i] != 0) return false;
  return true;
}

bool is_betti_divisible(const NumericalSemigroup& s) {
  if (s.embedding_dimension() < 2) return true;
  const auto betti = betti_elements(s);
  bool chain = true;
  for (std::size_t i = 0; i + 1 < betti.size(); ++i)
    if (betti[i + 1] % betti[i] != 0) chain = false;
  ensure(chain == has_betti_divisible_shape(unique_writing(s)), "Betti divisibility criteria disagree for " + s.to_string());
  return chain;
}

bool is_circuit_semigroup(const NumericalSemigroup& s) {
  if (s.embedding_dimension() < 2) return true;
  const auto moves = circuits(s);
  for (Int b : betti_elements(s))
    if (!connects_fiber(s.fiber(b), moves.elements())) return false;
  return true;
}

bool has_three_circuit_shape(const NumericalSemigroup& s) {
  if (s.embedding_dimension() != 3) throw ValidationError("three-generator shape needs embedding dimension 3");
  const auto g = s.gens();
  for (std::size_t k = 0; k < 3; ++k) {
    const Int a1 = g[k], a2 = g[(k + 1) % 3], a3 = g[(k + 2) % 3];
    const Int common = gcd(a2, a3);
    for (Int d1 = 1; d1 <= common; ++d1) {
      if (common % d1) continue;
      for (Int d2 = 1; d2 <= a1; ++d2) {
        if (a1 % d2) continue;
        const Int d3 = a1 / d2;
        if ((a2 / d1) % d3 || (a3 / d1) % d2) continue;
        const Int f2 = a2 / (d1 * d3), f3 = a3 / (d1 * d2);
        if (gcd(d1, d2) == 1 && gcd(d1, d3) == 1 && gcd(d2, d3) == 1 && gcd(d2, f2) == 1 && gcd(d3, f3) == 1)
          return true;
      }
    }
  }
  return false;
}

std::optional<GluingPartition> universally_free_split(const NumericalSemigroup& s) {
  const auto g = s.gens();
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  const Int target = lcm_of(g);
  for (std::uint64_t mask = 1; mask < full_mask(n); mask += 2) {
    auto first = pick(g, mask);
    auto second = pick(g, full_mask(n) & ~mask);
    if (lcm(gcd_of(first), gcd_of(second)) != target) continue;
    if (is_universally_free(NumericalSemigroup(first)) && is_universally_free(NumericalSemigroup(second)))
      return GluingPartition{std::move(first), std::move(second)};
  }
  return std::nullopt;
}

const BasisSet& BasisCache::circuits() {
  if (!circuits_) circuits_ = torbase::circuits(s_);
  return *circuits_;
}
const CriticalBinomials& BasisCache::critical() {
  if (!critical_) critical_ = critical_binomials(s_);
  return *critical_;
}
const BasisSet& BasisCache::minimal_markov() {
  if (!minimal_markov_) minimal_markov_ = torbase::minimal_markov(s_);
  return *minimal_markov_;
}
const BasisSet& BasisCache::universal_markov() {
  if (!universal_markov_) universal_markov_ = torbase::universal_markov(s_);
  return *universal_markov_;
}
const BasisSet& BasisCache::graver() {
  if (!graver_) graver_ = torbase::graver(s_, budget_);
  return *graver_;
}
const BasisSet& BasisCache::universal_groebner() {
  if (!ugb_) ugb_ = torbase::universal_groebner(s_, budget_);
  return *ugb_;
}
const std::vector<Int>& BasisCache::betti() {
  if (!betti_) betti_ = betti_elements(s_);
  return *betti_;
}

RobustnessFlags robustness_flags(BasisCache& cache) {
  const auto& s = cache.semigroup();
  const auto& ugb = cache.universal_groebner();
  RobustnessFlags r;
  r.unique_betti = cache.betti().size() <= 1;
  for (Int b : cache.betti())
    ensure(connects_fiber(s.fiber(b), ugb.elements()), "universal Groebner basis does not generate");
  r.robust = ugb.size() == cache.minimal_markov().size();
  r.generalized_robust = ugb.same_elements(cache.universal_markov());
  ensure(r.generalized_robust == r.unique_betti, "generalized robustness disagrees with the Betti count for " + s.to_string());
  const auto& gr = cache.graver();
  r.strongly_robust = gr.same_elements(cache.universal_markov()) && gr.size() == cache.minimal_markov().size();
  return r;
}

void ClassificationReport::check_implications() const {
  auto implies = [&](bool a, bool b, const char* what) {
    ensure(!a || b, std::string(what) + " fails for " + NumericalSemigroup(gens).to_string());
  };
  implies(betti_divisible, universally_free, "Betti divisible => universally free");
  implies(universally_free, free, "universally free => free");
  implies(telescopic, free, "telescopic => free");
  implies(free, ci, "free => complete intersection");
  implies(universally_free, circuit, "universally free => circuit");
  implies(universally_free, !failure.has_value(), "universally free => no failing subset");
  implies(free, free_arrangement.has_value(), "free => arrangement");
  const auto& f = families;
  auto known = [&](std::size_t i) { return f[i].has_value() && *f[i]; };
  auto unknown_or = [&](std::size_t i, bool v) { return !f[i].has_value() || *f[i] == v; };
  ensure(unknown_or(0, betti_divisible) && unknown_or(3, universally_free) && unknown_or(5, circuit),
         "family flags disagree with predicates");
  implies(known(0), unknown_or(1, true) && unknown_or(2, true), "F0 => F1 and F2");
  implies(known(1) || known(3), unknown_or(4, true), "F1 or F3 => F4");
  implies(known(2), unknown_or(3, true), "F2 => F3");
  implies(known(3), unknown_or(5, true), "F3 => F5");
}

ClassificationReport classify(const NumericalSemigroup& s, bool families, const Budget& budget) {
  ClassificationReport r;
  r.gens = s.gens_vector();
  r.ci = is_complete_intersection(s);
  r.free_arrangement = free_arrangement(s);
  r.free = r.free_arrangement.has_value();
  r.telescopic = is_telescopic(s);
  r.failure = universal_freeness_failure(s);
  r.universally_free = !r.failure.has_value();
  r.betti_divisible = is_betti_divisible(s);
  r.circuit = is_circuit_semigroup(s);
  r.gluings = s.gluing_decompositions();
  if (families) {
    r.families[0] = r.betti_divisible;
    r.families[3] = r.universally_free;
    r.families[5] = r.circuit;
    BasisCache cache(s, budget);
    try {
      const auto& c = cache.circuits();
      const auto& m = cache.universal_markov();
      r.families[4] = c.subset_of(m);
      r.families[1] = m.same_elements(cache.graver());
      r.families[2] = c.same_elements(cache.universal_groebner());
      r.robustness = robustness_flags(cache);
    } catch (const ResourceLimitError& e) {
      r.notes.push_back(std::string("budget: ") + e.what());
    }
    static constexpr std::size_t kConjectured[] = {1, 2, 3, 4};
    for (std::size_t a : kConjectured)
      for (std::size_t b : kConjectured)
        if (a < b && r.families[a] && r.families[b] && *r.families[a] != *r.families[b])
          r.notes.push_back("F" + std::to_string(a) + " and F" + std::to_string(b) + " differ");
  }
  r.check_implications();
  return r;
}

}  // namespace torbase
