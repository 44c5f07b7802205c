#include <gtest/gtest.h>

#include <functional>

#include "dilator/error.hpp"
#include "dilator/flower.hpp"
#include "dilator/game.hpp"
#include "dilator/generate.hpp"
#include "support.hpp"

using namespace dilator;

namespace {

GameConfig ordinal(const std::string& tree, int kappa, int alphabet, int depth) {
  GameConfig c;
  c.mode = GameMode::ordinal;
  c.tree = builtin_tree(tree);
  c.kappa = kappa;
  c.alphabet = alphabet;
  c.depth = depth;
  return c;
}

// Ordinal-mode consistency from the clauses, without the library's stage order.
bool consistent_oracle(const GameConfig& c, const Seq& x, const std::vector<int>& targets) {
  std::size_t n = targets.size();
  Seq s(x.begin(), x.begin() + n);
  auto in = [&](std::size_t i) {
    Seq code = seq_at(i);
    return code.size() <= n && c.tree.member(Seq(s.begin(), s.begin() + code.size()), code);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool below = in(i) && in(j) ? oracle::kb(seq_at(i), seq_at(j)) < 0
                   : in(i) != in(j) ? !in(i)
                                    : i < j;
      if (below != (targets[i] < targets[j])) return false;
    }
  return true;
}

// Independent minimax over the ordinal game.
bool i_wins_oracle(const GameConfig& c, Seq x, std::vector<int> targets) {
  if (static_cast<int>(x.size()) >= c.depth) return true;
  if (x.size() % 2 == 0) {
    for (int a = 0; a < c.alphabet; ++a)
      for (int t = 0; t < c.kappa; ++t) {
        auto x2 = x;
        auto t2 = targets;
        x2.push_back(a);
        t2.push_back(t);
        if (consistent_oracle(c, x2, t2) && i_wins_oracle(c, x2, t2)) return true;
      }
    return false;
  }
  for (int a = 0; a < c.alphabet; ++a) {
    auto x2 = x;
    x2.push_back(a);
    if (!i_wins_oracle(c, x2, targets)) return false;
  }
  return true;
}

std::vector<Seq> plays(int length, int alphabet) {
  std::vector<Seq> out{{}};
  for (int k = 0; k < length; ++k) {
    std::vector<Seq> next;
    for (const auto& s : out)
      for (int a = 0; a < alphabet; ++a) {
        auto t = s;
        t.push_back(a);
        next.push_back(t);
      }
    out = next;
  }
  return out;
}

}  // namespace

TEST(Config, Validation) {
  EXPECT_THROW(validate_config(ordinal("full", 2, 1, 3)), IllegalMove);
  EXPECT_THROW(validate_config(ordinal("full", 2, 0, 2)), IllegalMove);
  EXPECT_NO_THROW(validate_config(ordinal("full", 2, 1, 2)));
}

TEST(Referee, StepsAndStatuses) {
  auto c = ordinal("empty", 3, 2, 4);
  PlayState st;
  st = referee_step(c, st, {0, 1});
  EXPECT_EQ(st.to_move(), Player::II);
  EXPECT_THROW(referee_step(c, st, {0, 1}), IllegalMove);
  EXPECT_THROW(referee_step(c, st, {2, -1}), IllegalMove);
  st = referee_step(c, st, {1, -1});
  // out-of-tree codes are ordered by index: target must increase
  auto bad = referee_step(c, st, {0, 0});
  EXPECT_EQ(bad.status, PlayStatus::i_violated);
  EXPECT_THROW(referee_step(c, bad, {0, -1}), IllegalMove);
  st = referee_step(c, st, {0, 2});
  st = referee_step(c, st, {0, -1});
  EXPECT_EQ(st.status, PlayStatus::complete);
  EXPECT_EQ(replay(c, st.x, st.targets), st);
  EXPECT_THROW(referee_step(c, PlayState{}, {0, 3}), IllegalMove);
}

TEST(Referee, ConsistencyMatchesOracle) {
  for (const char* tree : {"full", "empty", "descending-run", "seeded:3"}) {
    auto c = ordinal(tree, 4, 3, 6);
    for (const auto& x : plays(3, 3))
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int d = 0; d < 4; ++d) {
            std::vector<int> t{a, b, d};
            EXPECT_EQ(stage_consistent(c, x, t), consistent_oracle(c, x, t));
          }
  }
}

TEST(Solve, WinnerMatchesMinimax) {
  for (const char* tree : {"full", "empty", "descending-run", "bounded:1", "seeded:1", "seeded:2"})
    for (int kappa = 0; kappa <= 3; ++kappa)
      for (int alphabet = 1; alphabet <= 2; ++alphabet)
        for (int depth = 0; depth <= 4; depth += 2) {
          auto c = ordinal(tree, kappa, alphabet, depth);
          auto sol = solve_truncated(c);
          bool want = i_wins_oracle(c, {}, {});
          EXPECT_EQ(sol.winner == Player::I, want) << tree << " " << kappa << " " << alphabet << " " << depth;
          EXPECT_TRUE(verify_strategy(c, sol.winner, sol.strategy));
          Player loser = sol.winner == Player::I ? Player::II : Player::I;
          EXPECT_FALSE(verify_strategy(c, loser, seeded_strategy(c, loser, 5)));
        }
}

TEST(Solve, DilatorMode) {
  GameConfig c;
  c.mode = GameMode::dilator;
  c.tree = builtin_tree("full");
  c.omega = code_trie(2, 2).p;
  c.alphabet = 2;
  c.depth = 4;
  auto sol = solve_truncated(c);
  EXPECT_EQ(sol.winner, Player::I);
  EXPECT_TRUE(verify_strategy(c, Player::I, sol.strategy));
  c.omega = nullary_chain(1);
  auto lost = solve_truncated(c);
  EXPECT_EQ(lost.winner, Player::II);
  EXPECT_TRUE(verify_strategy(c, Player::II, lost.strategy));
}

TEST(Solve, Budget) {
  auto c = ordinal("full", 6, 3, 6);
  EXPECT_THROW(solve_truncated(c, 5), BudgetExceeded);
}

TEST(Families, MidpointIsCoherentAndClean) {
  auto c = ordinal("seeded:4", 1 << 12, 2, 6);
  auto e = midpoint_family(c);
  for (const auto& x : plays(5, 2)) {
    auto t = e(x, 3);
    EXPECT_TRUE(stage_consistent(c, x, t));
    auto shorter = e(x, 2);
    EXPECT_EQ(std::vector<int>(t.begin(), t.begin() + 2), shorter);
  }
  EXPECT_THROW(midpoint_family(ordinal("full", 2, 1, 6))(Seq{0, 0, 0, 0, 0}, 3), BudgetExceeded);
}

TEST(Families, CodeTrieIsCoherentAndClean) {
  auto u = code_trie(2, 2);
  GameConfig c;
  c.mode = GameMode::dilator;
  c.tree = builtin_tree("descending-run");
  c.omega = differentiate(differentiate(differentiate(integrate(integrate(integrate(u.p))))));
  c.alphabet = 2;
  c.depth = 6;
  auto e = code_trie_family(c, u);
  for (const auto& x : plays(5, 2)) {
    auto t = e(x, 3);
    EXPECT_TRUE(stage_consistent(c, x, t));
    EXPECT_EQ(std::vector<int>(t.begin(), t.begin() + 2), e(x, 2));
  }
}

TEST(Projection, LiftsAreCleanAndFollowTheAuxiliaryStrategy) {
  auto c = ordinal("descending-run", 1 << 10, 2, 6);
  auto sigma_prime = seeded_strategy(c, Player::II, 9);
  Selector sel{SelectorKind::at_embedding, midpoint_family(c), {}};
  auto sigma = project_strategy(c, sigma_prime, sel);
  for (int len = 0; len <= 3; ++len)
    for (const auto& i_moves : plays(len, 2)) {
      auto r = lift_projected_play(c, sigma_prime, sigma, i_moves, sel.embedding);
      EXPECT_TRUE(r.clean) << r.detail;
      EXPECT_TRUE(r.respects_sigma_prime) << r.detail;
      EXPECT_EQ(replay(c, r.lifted.x, r.lifted.targets), r.lifted);
    }
}

TEST(Projection, Selectors) {
  auto c = ordinal("full", 3, 2, 4);
  auto sigma_prime = seeded_strategy(c, Player::II, 2);
  auto first = project_strategy(c, sigma_prime, {SelectorKind::first, {}, {}});
  auto major = project_strategy(c, sigma_prime, {SelectorKind::majority, {}, {}});
  int a = first.at({0});
  int b = major.at({1});
  EXPECT_GE(a, 0);
  EXPECT_GE(b, 0);
  EXPECT_THROW(first.at({0, 1}), SelectorPartial);
  Strategy nowhere{[](const PlayState&) { return std::optional<Move>{}; }};
  auto partial = project_strategy(c, nowhere, {SelectorKind::majority, {}, {}});
  EXPECT_THROW(partial.at({0}), SelectorPartial);
  // majority picks the most common answer over all clean targets
  auto cands = clean_targets(c, {1}, 1);
  std::map<int, int> votes;
  for (const auto& p : cands) ++votes[sigma_prime.at(replay(c, {1}, p))->x];
  int best = votes.begin()->first;
  for (auto [m, n] : votes)
    if (n > votes[best]) best = m;
  EXPECT_EQ(b, best);
}
