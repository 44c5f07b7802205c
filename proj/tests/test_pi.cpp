#include <gtest/gtest.h>

#include <set>

#include "dilator/error.hpp"
#include "dilator/flower.hpp"
#include "dilator/generate.hpp"
#include "dilator/pi.hpp"
#include "support.hpp"

using namespace dilator;

namespace {

std::vector<DecidableTree> toy_trees() {
  std::vector<DecidableTree> out{builtin_tree("full"), builtin_tree("empty"),
                                 builtin_tree("descending-run"), builtin_tree("bounded:1"),
                                 builtin_tree("bounded:2")};
  for (int k = 0; k < 20; ++k) out.push_back(builtin_tree("seeded:" + std::to_string(k)));
  return out;
}

std::vector<Seq> all_seqs(int max_len, int alphabet) {
  std::vector<Seq> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == max_len) continue;
    for (int a = 0; a < alphabet; ++a) {
      Seq s = out[i];
      s.push_back(a);
      out.push_back(s);
    }
  }
  return out;
}

// Longest chain i_0 < i_1 < ... of indices that descends under `below`.
template <class Less>
int longest_descent(int n, Less below) {
  std::vector<int> len(n, 1);
  int best = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i)
      if (below(j, i)) len[j] = std::max(len[j], len[i] + 1);
    best = std::max(best, len[j]);
  }
  return best;
}

}  // namespace

TEST(Pairing, CantorIsInjective) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 40; ++a)
    for (std::uint64_t b = 0; b < 40; ++b) EXPECT_TRUE(seen.insert(cantor_pair(a, b)).second);
  EXPECT_EQ(cantor_pair(0, 0), 0u);
  EXPECT_EQ(cantor_pair(1, 0), 1u);
  EXPECT_EQ(cantor_pair(0, 1), 2u);
  EXPECT_EQ(pair_sequences({1, 0}, {0, 2}), (Seq{1, 5}));
  EXPECT_THROW(pair_sequences({1}, {}), ArityMismatch);
}

TEST(Trees, BuiltinsAreClosed) {
  for (const auto& t : toy_trees()) EXPECT_TRUE(closure_violations(t, 3, 3).empty()) << t.name;
  EXPECT_THROW(builtin_tree("nope"), ParseError);
  EXPECT_THROW(builtin_tree("bounded:x"), ParseError);
  auto bad = table_tree({{{0}, {0}}});
  EXPECT_TRUE(bad.member({0}, {0}));
  EXPECT_EQ(closure_violations(bad, 2, 2).size(), 1u);
}

TEST(Trees, DescendingRun) {
  auto t = builtin_tree("descending-run");
  EXPECT_TRUE(t.member({3, 0, 0}, {3, 1, 0}));
  EXPECT_FALSE(t.member({2, 0}, {3, 1}));
  EXPECT_FALSE(t.member({3, 0}, {1, 1}));
}

TEST(OrderFamily, MatchesClauseOracle) {
  for (const auto& t : toy_trees())
    for (const auto& s : all_seqs(4, 3)) {
      auto o = order_family_step(t, s);
      int n = static_cast<int>(s.size());
      ASSERT_EQ(o.size(), n);
      auto in = [&](int i) {
        Seq c = seq_at(i);
        return c.size() <= s.size() && t.member(Seq(s.begin(), s.begin() + c.size()), c);
      };
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          bool want;
          if (in(i) && in(j))
            want = oracle::kb(seq_at(i), seq_at(j)) < 0;
          else if (in(i) != in(j))
            want = !in(i);
          else
            want = i < j;
          EXPECT_EQ(o.less(i, j), want);
        }
    }
}

TEST(OrderFamily, ClausesHold) {
  for (const auto& t : toy_trees()) {
    auto r = family_check(t, FamilyKind::order, {}, 4, 3);
    EXPECT_TRUE(r.ok()) << t.name << ": " << (r.ok() ? "" : r.problems[0]);
    EXPECT_EQ(r.prefixes_checked, 1 + 3 + 9 + 27 + 81);
  }
}

TEST(OrderFamily, TruncatedDescentBracketsTreeDescent) {
  // Out-of-tree codes are below in-tree ones and ordered by index, so a descent can
  // use at most one of them.
  for (const auto& t : toy_trees())
    for (const auto& s : all_seqs(5, 2)) {
      int n = static_cast<int>(s.size());
      auto o = order_family_step(t, s);
      auto in = [&](int i) { return code_in_tree(t, s, i); };
      int family = longest_descent(n, [&](int j, int i) { return o.less(j, i); });
      int tree = longest_descent(n, [&](int j, int i) {
        return in(i) && in(j) && oracle::kb(seq_at(j), seq_at(i)) < 0;
      });
      bool any_in = false;
      for (int i = 0; i < n; ++i) any_in = any_in || in(i);
      if (!any_in) tree = 0;
      EXPECT_LE(tree, family);
      EXPECT_LE(family, tree + 1);
    }
}

TEST(OrderFamily, IllFoundedBranchGivesLongDescents) {
  auto full = builtin_tree("full");
  Seq s(12, 0);
  auto o = order_family_step(full, s);
  int d = longest_descent(12, [&](int j, int i) { return o.less(j, i); });
  EXPECT_GE(d, 4);  // <> > <0> > <0,0> > <0,0,0> ...
  auto empty = builtin_tree("empty");
  auto e = order_family_step(empty, s);
  EXPECT_EQ(longest_descent(12, [&](int j, int i) { return e.less(j, i); }), 1);
}

TEST(DilatorFamily, StagesAreValidRestrictions) {
  for (const auto& t : toy_trees()) {
    auto r = family_check(t, FamilyKind::dilator, {}, 4, 3);
    EXPECT_TRUE(r.ok()) << t.name << ": " << (r.ok() ? "" : r.problems[0]);
  }
}

TEST(DilatorFamily, ShapeOfAStage) {
  auto p = dilator_family_step(builtin_tree("full"), {0, 1, 2, 0});
  ASSERT_EQ(p.size(), 4);
  // codes <0>, <1>, <0,0>, <0,1> in Kleene-Brouwer order: <0,0> <0,1> <0> <1>
  EXPECT_EQ(p.term(0).name, "2");
  EXPECT_EQ(p.term(1).name, "3");
  EXPECT_EQ(p.term(2).name, "0");
  EXPECT_EQ(p.term(3).name, "1");
  EXPECT_EQ(p.dist(0, 1), 1);
  EXPECT_EQ(p.dist(0, 3), 0);
  EXPECT_EQ(p.arity(0), 2);
}

TEST(DilatorFamily, ShoenfieldNormalizesToTheStage) {
  for (const auto& t : toy_trees())
    for (const auto& s : all_seqs(4, 2)) {
      auto p = dilator_family_step(t, s);
      auto q = normalize_coded(shoenfield_functor(t, s), 3);
      EXPECT_TRUE(oracle::iso_both_ways(p, q)) << t.name << " " << to_string(s);
    }
}

TEST(DilatorFamily, TruncationListsTheStage) {
  for (const auto& t : toy_trees())
    for (const auto& s : all_seqs(4, 2))
      for (int n = 0; n <= 3; ++n) {
        auto p = dilator_family_step(t, s);
        std::vector<Seq> want;
        for (const auto& e : oracle::applied(p, n)) {
          Seq c = seq_at(std::stoull(p.term(e.term).name) + 1);
          Seq v;
          for (std::size_t k = 0; k < c.size(); ++k) {
            v.push_back(c[k]);
            v.push_back(e.args[p.sigma(e.term)[k]]);
          }
          want.push_back(v);
        }
        EXPECT_EQ(shoenfield_truncation(t, s, n), want);
      }
}

TEST(DilatorFamily, MonotoneUnion) {
  for (const auto& t : toy_trees())
    for (const auto& s : all_seqs(4, 2))
      for (std::size_t k = 0; k <= s.size(); ++k)
        for (int n = 0; n <= 3; ++n) {
          auto small = shoenfield_truncation(t, Seq(s.begin(), s.begin() + k), n);
          auto big = shoenfield_truncation(t, s, n);
          std::vector<Seq> kept;
          std::set<Seq> members(small.begin(), small.end());
          for (const auto& e : big)
            if (members.count(e)) kept.push_back(e);
          EXPECT_EQ(kept, small);
        }
}

TEST(CodeTrie, Shape) {
  auto u = code_trie(2, 2);
  EXPECT_EQ(u.p.size(), 11);
  EXPECT_EQ(u.term_of.size(), 11u);
  EXPECT_TRUE(validate_predilator(u.p).ok());
  EXPECT_THROW(code_trie(2, 7), BoundExceeded);
  // three integrations followed by three derivatives return the same predilator
  auto f = integrate(integrate(integrate(u.p)));
  EXPECT_TRUE(is_semiflower(f).verdict);
  EXPECT_EQ(differentiate(differentiate(differentiate(f))), u.p);
}

TEST(CodeTrie, StagesEmbed) {
  auto u = code_trie(2, 2);
  for (const auto& t : toy_trees())
    for (const auto& s : all_seqs(6, 2)) {
      auto p = dilator_family_step(t, s);
      auto f = code_trie_embedding(u, p, s);
      EXPECT_TRUE(check_embedding(p, u.p, f)) << t.name << " " << to_string(s);
    }
  auto small = code_trie(1, 1);
  auto p = dilator_family_step(builtin_tree("full"), {0, 0});
  EXPECT_THROW(code_trie_embedding(small, p, {0, 0}), BoundExceeded);
}
