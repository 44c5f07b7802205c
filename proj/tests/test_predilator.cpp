#include <gtest/gtest.h>

#include "dilator/error.hpp"
#include "dilator/generate.hpp"
#include "dilator/predilator.hpp"
#include "support.hpp"

using namespace dilator;

namespace {

Predilator two_level() {
  // f(a,b) compared on b first, then a; g(a) shares the first comparison with f.
  Predilator p;
  p.add_term({"f", 2, {1, 0}});
  p.add_term({"g", 1, {0}});
  p.set_dist(0, 1, 1);
  return p;
}

}  // namespace

TEST(Predilator, BuiltinsAreValid) {
  EXPECT_TRUE(validate_predilator(identity_predilator()).ok());
  EXPECT_TRUE(validate_predilator(sum_predilator(3)).ok());
  EXPECT_TRUE(validate_predilator(nullary_chain(4)).ok());
  EXPECT_TRUE(validate_predilator(two_level()).ok());
  EXPECT_TRUE(validate_predilator(ordered_sum(two_level(), two_level())).ok());
}

TEST(Predilator, GeneratedInstancesAreValid) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto p = random_predilator(rng, 5, 3);
    auto r = validate_predilator(p);
    EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations[0].detail);
  }
}

TEST(Predilator, EachMutantBreaksExactlyItsClause) {
  EXPECT_TRUE(validate_predilator(oracle::mutant_base()).ok());
  for (const auto& m : oracle::curated_mutants()) {
    auto r = validate_predilator(m.p);
    EXPECT_EQ(r.clauses(), std::vector<Clause>{m.clause}) << m.label;
  }
}

TEST(Predilator, RestrictKeepsDistances) {
  auto p = ordered_sum(two_level(), identity_predilator());
  auto r = p.restrict({2, 0});
  ASSERT_EQ(r.size(), 2);
  EXPECT_EQ(r.term(0).name, "f");
  EXPECT_EQ(r.dist(0, 1), p.dist(0, 2));
}

TEST(Applied, SumOfTwoCopies) {
  auto p = sum_predilator(2);
  auto e = apply_order(p, 3);
  // a(0) < a(1) < a(2) < b(0) < b(1) < b(2)
  ASSERT_EQ(e.size(), 6u);
  EXPECT_EQ(e[2], (AppliedElement{0, {2}}));
  EXPECT_EQ(e[3], (AppliedElement{1, {0}}));
  EXPECT_EQ(applied_size(p, 3), 6);
}

TEST(Applied, MatchesOracleSort) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto p = random_predilator(rng, 4, 3);
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(apply_order(p, n), oracle::applied(p, n));
  }
}

TEST(Applied, CompareIsALinearOrder) {
  auto p = two_level();
  auto e = oracle::applied(p, 4);
  for (const auto& x : e)
    for (const auto& y : e) {
      auto c = compare_applied(p, x, y);
      EXPECT_EQ(c == 0, x == y);
      EXPECT_EQ(c, 0 <=> compare_applied(p, y, x));
    }
  EXPECT_THROW(compare_applied(p, {0, {1}}, {1, {0}}), ArityMismatch);
}

TEST(Applied, ReversedCarrier) {
  auto p = two_level();
  auto rev = [](int a, int b) { return b <=> a; };
  auto e = apply_order(p, rev, 3);
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_TRUE(compare_applied(p, e[i - 1], e[i], rev) < 0);
}

TEST(Applied, MapsAreFunctorialAndMonotone) {
  auto p = two_level();
  auto f = IncreasingMap::of({0, 2, 3}, 5);
  auto g = IncreasingMap::of({1, 2, 3, 5, 6}, 7);
  auto mf = apply_map(p, f);
  auto mg = apply_map(p, g);
  auto mgf = apply_map(p, g.after(f));
  for (std::size_t i = 0; i < mf.source.size(); ++i) {
    EXPECT_EQ(mgf.image[i], mg.image[mf.image[i]]);
    if (i) {
      EXPECT_LT(mf.image[i - 1], mf.image[i]);
    }
    std::vector<int> moved;
    for (int v : support(mf.source[i])) moved.push_back(f(v));
    EXPECT_EQ(support(mf.target[mf.image[i]]), moved);
  }
}

TEST(Applied, FundamentalComparisonAgreesWithDiagrams) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    auto p = random_predilator(rng, 4, 3);
    for (int s = 0; s < p.size(); ++s)
      for (int t = 0; t < p.size(); ++t) {
        int k0 = p.arity(s), k1 = p.arity(t);
        for (int n = std::max(k0, k1); n <= k0 + k1; ++n)
          for (const auto& a : oracle::subsets(n, k0))
            for (const auto& b : oracle::subsets(n, k1)) {
              bool want = compare_applied(p, {s, a}, {t, b}) < 0;
              EXPECT_EQ(compare_under_diagram(p, s, t, diagram_of(a, b)), want);
            }
      }
  }
}

TEST(Embedding, IdentityAndSums) {
  auto x = identity_predilator();
  auto xx = sum_predilator(2);
  auto f = search_embedding(x, xx);
  ASSERT_TRUE(f);
  EXPECT_TRUE(oracle::relations_agree(x, xx, *f));
  EXPECT_FALSE(search_isomorphism(x, xx));
  EXPECT_TRUE(check_embedding(xx, xx, {0, 1}));
  EXPECT_FALSE(check_embedding(xx, xx, {1, 0}));
  EXPECT_FALSE(search_embedding(two_level(), xx));
}

TEST(Embedding, AgreesWithExhaustiveRelationCheck) {
  Rng rng(17);
  for (int i = 0; i < 150; ++i) {
    auto p = random_predilator(rng, 3, 2, 1);
    auto q = random_predilator(rng, 4, 2, 1);
    // enumerate every increasing term map
    std::vector<int> f(p.size());
    std::function<void(int, int)> go = [&](int k, int lo) {
      if (k == p.size()) {
        EXPECT_EQ(check_embedding(p, q, f), oracle::relations_agree(p, q, f));
        return;
      }
      for (int v = lo; v < q.size(); ++v) {
        f[k] = v;
        go(k + 1, v + 1);
      }
    };
    go(0, 0);
    if (auto g = search_embedding(p, q)) {
      EXPECT_TRUE(oracle::relations_agree(p, q, *g));
    }
  }
}

TEST(Embedding, IsomorphismOfRestrictions) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    auto p = random_predilator(rng, 5, 3, 1);
    EXPECT_TRUE(oracle::iso_both_ways(p, p));
    std::vector<int> keep;
    for (int t = 0; t < p.size(); t += 2) keep.push_back(t);
    auto r = p.restrict(keep);
    auto f = search_embedding(r, p);
    ASSERT_TRUE(f);
    EXPECT_TRUE(oracle::relations_agree(r, p, *f));
  }
}

TEST(Coded, NormalizeRecoversPredilators) {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    auto p = random_predilator(rng, 4, 3);
    auto q = normalize_coded(as_coded(p), 3);
    EXPECT_TRUE(oracle::iso_both_ways(p, q));
  }
}

TEST(Coded, LazyFunctors) {
  EXPECT_TRUE(oracle::iso_both_ways(normalize_coded(double_functor(), 2), sum_predilator(2)));
  EXPECT_TRUE(oracle::iso_both_ways(normalize_coded(identity_functor(), 2), identity_predilator()));
}

TEST(Coded, AsCodedOrderMatches) {
  auto p = two_level();
  auto f = as_coded(p);
  auto e = apply_order(p, 4);
  auto c = f.order_at(4);
  ASSERT_EQ(c.size(), e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_EQ(c[i][0], e[i].term);
    EXPECT_EQ(f.supp_at(4, c[i]), e[i].args);
  }
}

TEST(Probe, DescendingColumnHasBadSequences) {
  auto chain = bad_sequence_probe(omega_star_column(), 1, 5);
  ASSERT_TRUE(chain);
  EXPECT_EQ(chain->size(), 6u);
  EXPECT_FALSE(bad_sequence_probe(sum_predilator(2), 3, 4));
  EXPECT_FALSE(bad_sequence_probe(nullary_chain(5), 2, 3));
}
