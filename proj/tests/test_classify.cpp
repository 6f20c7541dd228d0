#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "oracles.hpp"
#include "torbase/classify.hpp"
#include "torbase/errors.hpp"
#include "torbase/graver.hpp"
#include "torbase/groebner.hpp"
#include "torbase/markov.hpp"

using namespace torbase;
using oracle::make;
using oracle::make_set;

namespace {

bool free_by_permutations(const NumericalSemigroup& s) {
  std::vector<std::size_t> p(s.embedding_dimension());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (is_free_for_arrangement(s, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool universally_free_by_permutations(const NumericalSemigroup& s) {
  std::vector<std::size_t> p(s.embedding_dimension());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!is_free_for_arrangement(s, p)) return false;
  } while (std::next_permutation(p.begin(), p.end()));
  return true;
}

// Same size as a minimal presentation and connects every Betti fiber.
bool is_minimal_presentation(const NumericalSemigroup& s, const BasisSet& b) {
  if (b.size() != minimal_markov(s).size()) return false;
  for (Int beta : betti_elements(s))
    if (!connects_fiber(s.fiber(beta), b.elements())) return false;
  return true;
}

std::vector<Int> pairwise_lcms(std::span<const Int> g) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) out.push_back(lcm(g[i], g[j]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST(Classify, Circuits) {
  NumericalSemigroup a({4, 6, 9});
  EXPECT_TRUE(circuits(a).same_elements(
      make_set(a, {{{3, 0, 0}, {0, 2, 0}}, {{9, 0, 0}, {0, 0, 4}}, {{0, 3, 0}, {0, 0, 2}}}, BasisKind::kCircuits)));
  NumericalSemigroup b({3, 4, 5});
  EXPECT_TRUE(circuits(b).same_elements(
      make_set(b, {{{4, 0, 0}, {0, 3, 0}}, {{5, 0, 0}, {0, 0, 3}}, {{0, 5, 0}, {0, 0, 4}}}, BasisKind::kCircuits)));
  NumericalSemigroup c({5, 7});
  EXPECT_EQ(circuits(c).size(), 1u);
  EXPECT_TRUE(circuits(c).contains(make(c, {7, 0}, {0, 5})));
  EXPECT_EQ(circuits(c).kind(), BasisKind::kCircuits);
}

TEST(Classify, UniqueWriting) {
  NumericalSemigroup s({60, 280, 315, 378});
  // 60 = f_1 * 3 * 2 * 5 forces f_1 = 2.
  EXPECT_EQ(unique_writing(s), (UniqueWriting{{7, 3, 2, 5}, {2, 4, 3, 9}}));
  // Sorted order of <15,20,18>.
  NumericalSemigroup t({15, 20, 18});
  EXPECT_EQ(unique_writing(t), (UniqueWriting{{2, 5, 3}, {1, 3, 2}}));
  NumericalSemigroup p({5, 7});
  EXPECT_EQ(unique_writing(p), (UniqueWriting{{7, 5}, {1, 1}}));
}

TEST(Classify, Arrangements) {
  NumericalSemigroup s({8, 9, 10, 12});
  EXPECT_FALSE(is_free_for_arrangement(s, std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_TRUE(is_free_for_arrangement(s, std::vector<std::size_t>{1, 2, 0, 3}));
  EXPECT_TRUE(is_free(s));
  EXPECT_FALSE(is_universally_free(s));
  EXPECT_THROW(is_free_for_arrangement(s, std::vector<std::size_t>{0, 0, 1, 2}), ValidationError);
  EXPECT_THROW(is_free_for_arrangement(s, std::vector<std::size_t>{0, 1, 2}), ValidationError);
  auto f = free_arrangement(s);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(minimal_markov(s).size(), 3u);

  NumericalSemigroup p({5, 7});
  EXPECT_TRUE(is_free_for_arrangement(p, std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(is_free_for_arrangement(p, std::vector<std::size_t>{1, 0}));
  EXPECT_TRUE(is_universally_free(p));
}

TEST(Classify, CompleteIntersectionNotFree) {
  NumericalSemigroup s({10, 14, 15, 21});
  EXPECT_TRUE(is_complete_intersection(s));
  EXPECT_FALSE(is_free(s));
  EXPECT_EQ(s.gluing_decompositions(), (std::vector<GluingPartition>{{{10, 15}, {14, 21}}}));
  auto m = make_set(s, {{{0, 0, 0, 2}, {0, 3, 0, 0}}, {{0, 0, 2, 0}, {3, 0, 0, 0}}, {{0, 1, 0, 1}, {2, 0, 1, 0}}},
                    BasisKind::kMarkovMinimal);
  EXPECT_TRUE(minimal_markov(s).same_elements(m));
  EXPECT_TRUE(universal_markov(s).same_elements(m));
}

TEST(Classify, FiveGenerators) {
  NumericalSemigroup t({210, 330, 3080, 3465, 5544});
  EXPECT_TRUE(is_free(t));
  EXPECT_FALSE(is_universally_free(t));
  EXPECT_TRUE(is_free_for_arrangement(t, std::vector<std::size_t>{4, 3, 2, 1, 0}));
  EXPECT_FALSE(is_free_for_arrangement(t, std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(betti_elements(t), (std::vector<Int>{2310, 6930, 9240, 27720}));
  EXPECT_EQ(betti_elements(t), pairwise_lcms(t.gens()));
  EXPECT_EQ(t.gluing_decompositions().size(), 13u);
  EXPECT_EQ(critical_binomials(t).exponents, (Vec{11, 7, 3, 2, 5}));
  EXPECT_TRUE(is_minimal_presentation(t, make_set(t,
                                                       {{{0, 0, 0, 0, 5}, {0, 0, 0, 8, 0}},
                                                        {{0, 0, 0, 2, 0}, {0, 21, 0, 0, 0}},
                                                        {{0, 0, 3, 0, 0}, {0, 28, 0, 0, 0}},
                                                        {{0, 7, 0, 0, 0}, {11, 0, 0, 0, 0}}})));
  EXPECT_TRUE(is_circuit_semigroup(t));
}

TEST(Classify, NecessaryConditionsNotSufficient) {
  NumericalSemigroup s({30, 105, 546, 770});
  EXPECT_EQ(betti_elements(s), (std::vector<Int>{210, 2310, 2730}));
  EXPECT_EQ(lcm(546, 770), 30030);
  EXPECT_FALSE(std::ranges::binary_search(betti_elements(s), 30030));
  EXPECT_FALSE(is_universally_free(s));
  auto crit = critical_binomials(s).exponents;
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Int> rest;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) rest.push_back(s.gen(j));
    EXPECT_EQ(crit[i], gcd_of(rest));
  }
}

TEST(Classify, CircuitNotUniversallyFree) {
  NumericalSemigroup s({60, 280, 315, 378});
  EXPECT_TRUE(is_free_for_arrangement(s, std::vector<std::size_t>{3, 2, 1, 0}));
  EXPECT_FALSE(is_free_for_arrangement(s, std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_FALSE(is_universally_free(s));
  EXPECT_TRUE(is_circuit_semigroup(s));
  EXPECT_EQ(s.gluing_decompositions().size(), 3u);
  EXPECT_TRUE(is_minimal_presentation(
      s, make_set(s, {{{0, 0, 0, 5}, {0, 0, 6, 0}}, {{0, 0, 4, 0}, {7, 3, 0, 0}}, {{0, 3, 0, 0}, {14, 0, 0, 0}}})));
  auto fail = universal_freeness_failure(s);
  ASSERT_TRUE(fail.has_value());
  EXPECT_EQ(fail->element, 60);
}

TEST(Classify, CircuitSemigroups) {
  NumericalSemigroup s({30, 36, 40, 75});
  EXPECT_TRUE(is_circuit_semigroup(s));
  EXPECT_TRUE(is_minimal_presentation(
      s, make_set(s, {{{0, 5, 0, 0}, {6, 0, 0, 0}}, {{0, 0, 3, 0}, {4, 0, 0, 0}}, {{0, 0, 0, 2}, {5, 0, 0, 0}}})));
  NumericalSemigroup t({36, 40, 75});
  EXPECT_FALSE(is_circuit_semigroup(t));
  EXPECT_EQ(betti_elements(t), (std::vector<Int>{300, 360}));
  EXPECT_EQ(pairwise_lcms(t.gens()), (std::vector<Int>{360, 600, 900}));
  NumericalSemigroup u({15, 20, 18});
  EXPECT_TRUE(is_circuit_semigroup(u));
  EXPECT_TRUE(has_three_circuit_shape(u));
  EXPECT_FALSE(has_three_circuit_shape(t));
  EXPECT_TRUE(is_circuit_semigroup(NumericalSemigroup({5, 7})));
}

TEST(Classify, BettiDivisible) {
  EXPECT_TRUE(is_betti_divisible(NumericalSemigroup({10, 15, 18})));
  EXPECT_FALSE(is_betti_divisible(NumericalSemigroup({390, 546, 770, 1155})));
  EXPECT_FALSE(is_betti_divisible(NumericalSemigroup({15, 20, 18})));
  EXPECT_TRUE(is_betti_divisible(NumericalSemigroup({5, 7})));
  EXPECT_TRUE(is_universally_free(NumericalSemigroup({390, 546, 770, 1155})));
}

TEST(Classify, Robustness) {
  NumericalSemigroup p({5, 7});
  BasisCache cp(p);
  auto r = robustness_flags(cp);
  EXPECT_TRUE(r.robust && r.generalized_robust && r.strongly_robust && r.unique_betti);
  NumericalSemigroup s({10, 15, 18});
  BasisCache cs(s);
  EXPECT_FALSE(robustness_flags(cs).generalized_robust);
  NumericalSemigroup t({4, 6, 9});
  BasisCache ct(t);
  EXPECT_EQ(betti_elements(t), (std::vector<Int>{12, 18}));
  EXPECT_FALSE(robustness_flags(ct).generalized_robust);
}

TEST(Classify, FamilyReports) {
  auto big = classify(NumericalSemigroup({390, 546, 770, 1155}), true);
  EXPECT_TRUE(big.universally_free);
  EXPECT_EQ(big.families[0], false);
  EXPECT_EQ(big.families[1], true);
  EXPECT_EQ(big.families[2], true);
  EXPECT_EQ(big.families[3], true);
  EXPECT_EQ(big.families[4], true);
  EXPECT_EQ(big.families[5], true);
  EXPECT_TRUE(big.notes.empty());

  auto circ = classify(NumericalSemigroup({15, 20, 18}), true);
  EXPECT_EQ(circ.families[5], true);
  EXPECT_EQ(circ.families[3], false);
  EXPECT_EQ(circ.families[0], false);

  auto pair = classify(NumericalSemigroup({5, 7}), true);
  for (const auto& f : pair.families) EXPECT_EQ(f, true);
  EXPECT_TRUE(pair.ci && pair.free && pair.telescopic && pair.universally_free && pair.betti_divisible && pair.circuit);

  auto plain = classify(NumericalSemigroup({3, 4, 5}));
  EXPECT_FALSE(plain.families[1].has_value());
  EXPECT_FALSE(plain.ci);
}

TEST(Classify, ImplicationsRejected) {
  ClassificationReport r;
  r.gens = {5, 7};
  r.universally_free = true;
  EXPECT_THROW(r.check_implications(), InternalConsistencyError);
}

TEST(Classify, UniversallyFreeSplit) {
  auto split = universally_free_split(NumericalSemigroup({390, 546, 770, 1155}));
  ASSERT_TRUE(split.has_value());
  EXPECT_EQ(lcm(gcd_of(split->first), gcd_of(split->second)), 30030);
  EXPECT_FALSE(universally_free_split(NumericalSemigroup({8, 9, 10, 12})).has_value());
}

TEST(ClassifyProperty, SubsetCriterionMatchesPermutations) {
  auto instances = oracle::random_instances(300, 2, 5, 3, 80, 51);
  for (auto g : std::vector<std::vector<Int>>{{8, 9, 10, 12}, {10, 14, 15, 21}, {60, 280, 315, 378},
                                              {390, 546, 770, 1155}, {210, 330, 3080, 3465, 5544},
                                              {30, 105, 546, 770}, {10, 15, 18}, {4, 6, 9}, {30, 36, 40, 75}})
    instances.push_back(g);
  std::size_t uf = 0, fr = 0;
  for (const auto& g : instances) {
    NumericalSemigroup s(g);
    const bool u = is_universally_free(s);
    EXPECT_EQ(u, universally_free_by_permutations(s)) << s.to_string();
    EXPECT_EQ(is_free(s), free_by_permutations(s)) << s.to_string();
    uf += u;
    fr += is_free(s);
  }
  EXPECT_GT(uf, 0u);
  EXPECT_GT(fr, uf);
}

TEST(ClassifyProperty, UniversallyFreeConsequences) {
  auto instances = oracle::random_instances(200, 3, 4, 3, 120, 52);
  instances.push_back({390, 546, 770, 1155});
  instances.push_back({10, 15, 18});
  for (const auto& g : instances) {
    NumericalSemigroup s(g);
    auto r = classify(s);
    if (!r.universally_free) continue;
    const auto crit = critical_binomials(s);
    const auto w = unique_writing(s);
    EXPECT_EQ(crit.exponents, Vec(w.d.begin(), w.d.end())) << s.to_string();
    for (Int b : betti_elements(s))
      EXPECT_TRUE(std::any_of(s.gens().begin(), s.gens().end(),
                              [&, k = std::size_t{0}](Int a) mutable { return b % (crit.exponents[k++] * a) == 0; }))
          << s.to_string();
    EXPECT_TRUE(r.ci && r.circuit) << s.to_string();
    EXPECT_EQ(betti_elements(s), pairwise_lcms(s.gens())) << s.to_string();
    EXPECT_TRUE(circuits(s).subset_of(universal_markov(s))) << s.to_string();
  }
}

TEST(ClassifyProperty, BettiDivisibleBases) {
  std::size_t seen = 0;
  for (const auto& g : oracle::random_instances(300, 3, 4, 3, 120, 53)) {
    NumericalSemigroup s(g);
    if (!is_betti_divisible(s)) continue;
    ++seen;
    auto gr = graver(s);
    auto c = circuits(s);
    EXPECT_TRUE(c.same_elements(universal_groebner(s))) << s.to_string();
    EXPECT_TRUE(critical_binomials(s).basis.same_elements(universal_markov(s))) << s.to_string();
    EXPECT_TRUE(universal_markov(s).same_elements(gr)) << s.to_string();
    EXPECT_TRUE(is_universally_free(s));
  }
  EXPECT_GT(seen, 0u);
}

TEST(ClassifyProperty, CircuitShapeGenerators) {
  // a_j = f_j prod_{i != j} d_i with f_1 = 1 is circuit and free for (a_2, ..., a_n, a_1).
  std::size_t checked = 0;
  for (Int d1 = 1; d1 <= 7; ++d1)
    for (Int d2 = 2; d2 <= 7; ++d2)
      for (Int d3 = 2; d3 <= 7; ++d3)
        for (Int f2 = 1; f2 <= 5; ++f2)
          for (Int f3 = 1; f3 <= 5; ++f3) {
            if (gcd(d1, d2) != 1 || gcd(d1, d3) != 1 || gcd(d2, d3) != 1) continue;
            if (gcd(d2, f2) != 1 || gcd(d3, f3) != 1) continue;
            std::vector<Int> a{d2 * d3, f2 * d1 * d3, f3 * d1 * d2};
            auto sorted = a;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
            if (gcd_of(a) != 1 || minimal_generators(a) != sorted) continue;
            NumericalSemigroup s(a);
            EXPECT_TRUE(is_circuit_semigroup(s)) << s.to_string();
            EXPECT_TRUE(has_three_circuit_shape(s)) << s.to_string();
            auto index = [&](Int v) {
              return static_cast<std::size_t>(std::find(s.gens().begin(), s.gens().end(), v) - s.gens().begin());
            };
            EXPECT_TRUE(is_free_for_arrangement(s, std::vector<std::size_t>{index(a[1]), index(a[2]), index(a[0])}))
                << s.to_string();
            ++checked;
          }
  EXPECT_GT(checked, 100u);
}

TEST(ClassifyProperty, ThreeGeneratorCircuitShape) {
  for (const auto& g : oracle::random_instances(400, 3, 3, 3, 200, 54)) {
    NumericalSemigroup s(g);
    EXPECT_EQ(is_circuit_semigroup(s), has_three_circuit_shape(s)) << s.to_string();
    if (is_circuit_semigroup(s)) {
      EXPECT_TRUE(is_complete_intersection(s));
    }
    EXPECT_EQ(is_universally_free(s), is_betti_divisible(s)) << s.to_string();
  }
}

TEST(ClassifyProperty, CircuitInclusionsAndSubsets) {
  for (const auto& g : oracle::random_instances(60, 3, 4, 3, 60, 55)) {
    NumericalSemigroup s(g);
    auto c = circuits(s);
    EXPECT_TRUE(c.subset_of(universal_groebner(s))) << s.to_string();
    const bool in_markov = c.subset_of(universal_markov(s));
    const std::uint64_t full = (std::uint64_t{1} << s.embedding_dimension()) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      if (std::popcount(mask) < 2) continue;
      NumericalSemigroup sub(oracle::pick(s.gens(), mask));
      EXPECT_EQ(oracle::eliminated(c, mask), oracle::vectors(circuits(sub))) << s.to_string();
      if (in_markov) EXPECT_TRUE(circuits(sub).subset_of(universal_markov(sub))) << s.to_string();
    }
  }
}

TEST(ClassifyProperty, UniversallyFreeIffAllBasesMinimal) {
  for (const auto& g : oracle::random_instances(80, 3, 4, 3, 50, 56)) {
    NumericalSemigroup s(g);
    auto counts = initial_ideal_generator_counts(s);
    const bool all_minimal = std::all_of(counts.begin(), counts.end(),
                                         [&](std::size_t c) { return c + 1 == s.embedding_dimension(); });
    EXPECT_EQ(all_minimal, is_universally_free(s)) << s.to_string();
    if (is_free(s)) {
      EXPECT_EQ(counts.front() + 1, s.embedding_dimension()) << s.to_string();
    }
  }
}
