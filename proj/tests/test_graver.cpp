#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torbase/errors.hpp"
#include "torbase/graver.hpp"
#include "torbase/markov.hpp"

using namespace torbase;
using oracle::make;
using oracle::make_set;

TEST(Graver, Transcripts) {
  NumericalSemigroup s({4, 5, 6});
  EXPECT_TRUE(graver(s).same_elements(make_set(s, {{{0, 0, 2}, {3, 0, 0}},
                                                   {{0, 0, 3}, {2, 2, 0}},
                                                   {{0, 0, 4}, {1, 4, 0}},
                                                   {{0, 0, 5}, {0, 6, 0}},
                                                   {{0, 2, 0}, {1, 0, 1}},
                                                   {{0, 2, 1}, {4, 0, 0}},
                                                   {{0, 4, 0}, {5, 0, 0}}})));
  NumericalSemigroup p({4, 5});
  EXPECT_TRUE(graver(p).same_elements(make_set(p, {{{0, 4}, {5, 0}}})));
  NumericalSemigroup t({3, 4, 5});
  EXPECT_TRUE(graver(t).same_elements(make_set(t, {{{0, 0, 2}, {2, 1, 0}},
                                                   {{0, 0, 3}, {1, 3, 0}},
                                                   {{0, 0, 3}, {5, 0, 0}},
                                                   {{0, 0, 4}, {0, 5, 0}},
                                                   {{0, 1, 1}, {3, 0, 0}},
                                                   {{0, 2, 0}, {1, 0, 1}},
                                                   {{0, 3, 0}, {4, 0, 0}}})));
  NumericalSemigroup w({4, 6, 9});
  EXPECT_TRUE(graver(w).same_elements(make_set(w, {{{0, 0, 2}, {0, 3, 0}},
                                                   {{0, 0, 2}, {3, 1, 0}},
                                                   {{0, 0, 4}, {9, 0, 0}},
                                                   {{0, 1, 2}, {6, 0, 0}},
                                                   {{0, 2, 0}, {3, 0, 0}}})));
  NumericalSemigroup u({390, 546, 770, 1155});
  auto gr = graver(u);
  EXPECT_EQ(gr.size(), 170u);
  EXPECT_TRUE(gr.same_elements(universal_markov(u)));
}

TEST(Graver, Primitivity) {
  NumericalSemigroup s({4, 5, 6});
  NumericalSemigroup w({4, 6, 9});
  EXPECT_TRUE(is_primitive(w, make(w, {6, 0, 0}, {0, 1, 2})));
  EXPECT_FALSE(is_primitive(s, make(s, {12, 0, 0}, {0, 0, 8})));
  NumericalSemigroup t({3, 4, 5});
  EXPECT_TRUE(is_primitive(t, make(t, {0, 0, 3}, {1, 3, 0})));
}

TEST(Graver, Budget) {
  Budget tight;
  tight.graver_cap = 3;
  EXPECT_THROW(graver(NumericalSemigroup({4, 5, 6}), tight), ResourceLimitError);
  Budget low_degree;
  low_degree.degree_cap = 20;
  EXPECT_THROW(graver(NumericalSemigroup({4, 5, 6}), low_degree), ResourceLimitError);
}

TEST(GraverProperty, MatchesDefinitionalOracle) {
  for (const auto& g : oracle::random_instances(40, 2, 4, 3, 30, 31)) {
    NumericalSemigroup s(g);
    auto gr = graver(s);
    Int top = 0;
    for (const auto& b : gr.elements()) {
      top = std::max(top, b.degree());
      EXPECT_TRUE(is_primitive(s, b)) << s.to_string() << " " << b.to_string();
    }
    EXPECT_TRUE(gr.same_elements(oracle::brute_graver(s, top))) << s.to_string();
  }
}

TEST(GraverProperty, InclusionsAndElimination) {
  for (const auto& g : oracle::random_instances(40, 3, 4, 3, 50, 32)) {
    NumericalSemigroup s(g);
    auto gr = graver(s);
    EXPECT_TRUE(universal_markov(s).subset_of(gr)) << s.to_string();
    EXPECT_TRUE(critical_binomials(s).basis.subset_of(gr)) << s.to_string();
    const std::uint64_t full = (std::uint64_t{1} << s.embedding_dimension()) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      if (std::popcount(mask) < 2) continue;
      NumericalSemigroup sub(oracle::pick(s.gens(), mask));
      EXPECT_EQ(oracle::eliminated(gr, mask), oracle::vectors(graver(sub))) << s.to_string() << " mask " << mask;
    }
  }
}
