#include "dilator/game.hpp"

#include <algorithm>

#include "dilator/error.hpp"

namespace dilator {

std::string to_string(PlayStatus s) {
  switch (s) {
    case PlayStatus::active: return "ACTIVE";
    case PlayStatus::i_violated: return "I-VIOLATED";
    case PlayStatus::complete: return "COMPLETE";
  }
  return "?";
}

std::string to_string(Player p) { return p == Player::I ? "I" : "II"; }

std::string to_string(SelectorKind k) {
  switch (k) {
    case SelectorKind::at_embedding: return "at-embedding";
    case SelectorKind::first: return "first";
    case SelectorKind::majority: return "majority";
  }
  return "?";
}

void validate_config(const GameConfig& cfg) {
  if (cfg.depth < 0 || cfg.depth % 2 != 0) throw IllegalMove("game depth must be even and non-negative");
  if (cfg.alphabet < 1) throw IllegalMove("move alphabet must be non-empty");
  if (cfg.kappa < 0) throw IllegalMove("target order size must be non-negative");
}

int target_count(const GameConfig& cfg) {
  return cfg.mode == GameMode::ordinal ? cfg.kappa : cfg.omega.size();
}

namespace {

Seq prefix(const Seq& s, std::size_t k) { return Seq(s.begin(), s.begin() + std::min(k, s.size())); }

// Stage term positions -> targets, for the dilator family whose term names are indices.
TermMap by_position(const Predilator& stage, const std::vector<int>& targets) {
  TermMap f(stage.size());
  for (int pos = 0; pos < stage.size(); ++pos) f[pos] = targets.at(std::stoi(stage.term(pos).name));
  return f;
}

}  // namespace

bool stage_consistent(const GameConfig& cfg, const Seq& x, const std::vector<int>& targets) {
  std::size_t n = targets.size();
  if (x.size() < n) throw IllegalMove("more targets than moves");
  Seq s = prefix(x, n);
  if (cfg.mode == GameMode::ordinal) {
    auto o = order_family_step(cfg.tree, s);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (o.less(static_cast<int>(i), static_cast<int>(j)) != (targets[i] < targets[j])) return false;
    return true;
  }
  auto stage = dilator_family_step(cfg.tree, s);
  return check_embedding(stage, cfg.omega, by_position(stage, targets), cfg.diagram_bound);
}

PlayState referee_step(const GameConfig& cfg, const PlayState& st, const Move& m) {
  if (st.status != PlayStatus::active) throw IllegalMove("play is over (" + to_string(st.status) + ")");
  if (m.x < 0 || m.x >= cfg.alphabet) throw IllegalMove("move " + std::to_string(m.x) + " outside the alphabet");
  PlayState next = st;
  next.x.push_back(m.x);
  if (st.to_move() == Player::I) {
    if (m.target < 0 || m.target >= target_count(cfg))
      throw IllegalMove("target " + std::to_string(m.target) + " outside the target range");
    next.targets.push_back(m.target);
    if (!stage_consistent(cfg, next.x, next.targets)) {
      next.status = PlayStatus::i_violated;
      return next;
    }
  } else if (m.target != -1) {
    throw IllegalMove("Player II does not name targets");
  }
  if (static_cast<int>(next.x.size()) >= cfg.depth) next.status = PlayStatus::complete;
  return next;
}

PlayState replay(const GameConfig& cfg, const Seq& x, const std::vector<int>& targets) {
  PlayState st;
  if (cfg.depth == 0) st.status = PlayStatus::complete;
  for (std::size_t k = 0; k < x.size(); ++k) {
    Move m{x[k], -1};
    if (k % 2 == 0) m.target = targets.at(k / 2);
    st = referee_step(cfg, st, m);
  }
  return st;
}

namespace {

using Key = std::pair<Seq, std::vector<int>>;

struct Solver {
  const GameConfig& cfg;
  long long budget;
  long long nodes = 0;
  std::map<Key, Move> table;  // winner's moves

  std::vector<Move> moves(const PlayState& st) const {
    std::vector<Move> out;
    for (int x = 0; x < cfg.alphabet; ++x) {
      if (st.to_move() == Player::II) {
        out.push_back({x, -1});
        continue;
      }
      for (int t = 0; t < target_count(cfg); ++t) out.push_back({x, t});
    }
    return out;
  }

  // Whether Player I wins from st; records winning moves for `record`.
  bool i_wins(const PlayState& st, Player record) {
    if (++nodes > budget) throw BudgetExceeded("truncated game exceeds " + std::to_string(budget) + " positions");
    if (st.status == PlayStatus::i_violated) return false;
    if (st.status == PlayStatus::complete) return true;
    Player mover = st.to_move();
    for (const Move& m : moves(st)) {
      bool w = i_wins(referee_step(cfg, st, m), record);
      if ((mover == Player::I) == w) {
        if (mover == record) table[{st.x, st.targets}] = m;
        return w;
      }
    }
    return mover == Player::II;
  }
};

Strategy table_strategy(std::shared_ptr<const std::map<Key, Move>> table) {
  return {[table](const PlayState& st) -> std::optional<Move> {
    auto it = table->find({st.x, st.targets});
    if (it == table->end()) return std::nullopt;
    return it->second;
  }};
}

}  // namespace

Solution solve_truncated(const GameConfig& cfg, long long budget) {
  validate_config(cfg);
  PlayState start;
  if (cfg.depth == 0) start.status = PlayStatus::complete;
  Solver probe{cfg, budget, 0, {}};
  bool i = probe.i_wins(start, Player::I);
  Solution sol;
  sol.winner = i ? Player::I : Player::II;
  // Re-solve recording the winner's moves at every position it can reach.
  Solver rec{cfg, budget, 0, {}};
  std::function<void(const PlayState&)> cover = [&](const PlayState& st) {
    if (st.status != PlayStatus::active) return;
    if (st.to_move() == sol.winner) {
      rec.i_wins(st, sol.winner);
      auto it = rec.table.find({st.x, st.targets});
      if (it != rec.table.end()) cover(referee_step(cfg, st, it->second));
    } else {
      for (const Move& m : rec.moves(st)) cover(referee_step(cfg, st, m));
    }
  };
  cover(start);
  sol.nodes = probe.nodes + rec.nodes;
  auto table = std::make_shared<const std::map<Key, Move>>(std::move(rec.table));
  sol.table = table;
  sol.strategy = table_strategy(table);
  return sol;
}

bool verify_strategy(const GameConfig& cfg, Player winner, const Strategy& s) {
  validate_config(cfg);
  Solver gen{cfg, kSolveBudget, 0, {}};
  std::function<bool(const PlayState&)> won = [&](const PlayState& st) -> bool {
    if (st.status == PlayStatus::i_violated) return winner == Player::II;
    if (st.status == PlayStatus::complete) return winner == Player::I;
    auto options = gen.moves(st);
    if (options.empty()) return (st.to_move() == Player::I) == (winner == Player::II);
    if (st.to_move() == winner) {
      auto m = s.at(st);
      if (!m) return false;
      PlayState next;
      try {
        next = referee_step(cfg, st, *m);
      } catch (const IllegalMove&) {
        return false;
      }
      return won(next);
    }
    for (const Move& m : options)
      if (!won(referee_step(cfg, st, m))) return false;
    return true;
  };
  PlayState start;
  if (cfg.depth == 0) start.status = PlayStatus::complete;
  return won(start);
}

Strategy seeded_strategy(const GameConfig& cfg, Player who, std::uint64_t seed) {
  int alphabet = cfg.alphabet, targets = target_count(cfg);
  return {[=](const PlayState& st) -> std::optional<Move> {
    if (st.status != PlayStatus::active || st.to_move() != who) return std::nullopt;
    std::uint64_t h = seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
    for (int v : st.x) h = (h ^ static_cast<std::uint64_t>(v + 1)) * 0x100000001b3ULL;
    for (int v : st.targets) h = (h ^ static_cast<std::uint64_t>(v + 7)) * 0x100000001b3ULL;
    h ^= h >> 29;
    Move m{static_cast<int>(h % static_cast<std::uint64_t>(alphabet)), -1};
    if (who == Player::I) {
      if (targets == 0) return std::nullopt;
      m.target = static_cast<int>((h >> 17) % static_cast<std::uint64_t>(targets));
    }
    return m;
  }};
}

TargetFamily midpoint_family(const GameConfig& cfg) {
  DecidableTree tree = cfg.tree;
  int kappa = cfg.kappa;
  return [tree, kappa](const Seq& x, int n) {
    std::vector<int> out;
    for (int k = 0; k < n; ++k) {
      auto o = order_family_step(tree, prefix(x, k + 1));
      int lo = -1, hi = kappa;
      for (int j = 0; j < k; ++j) {
        if (o.less(j, k)) lo = std::max(lo, out[j]);
        else hi = std::min(hi, out[j]);
      }
      if (hi - lo < 2) throw BudgetExceeded("target order too small for midpoint placement");
      out.push_back(lo + (hi - lo) / 2);
    }
    return out;
  };
}

TargetFamily code_trie_family(const GameConfig& cfg, const CodeTrie& u) {
  DecidableTree tree = cfg.tree;
  auto trie = std::make_shared<const CodeTrie>(u);
  return [tree, trie](const Seq& x, int n) {
    auto stage = dilator_family_step(tree, prefix(x, n));
    TermMap f = code_trie_embedding(*trie, stage, prefix(x, n));
    std::vector<int> out(n);
    for (int pos = 0; pos < stage.size(); ++pos) out[std::stoi(stage.term(pos).name)] = f[pos];
    return out;
  };
}

std::vector<std::vector<int>> clean_targets(const GameConfig& cfg, const Seq& x, int n, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void()> grow = [&]() {
    if (static_cast<int>(out.size()) >= cap) return;
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int t = 0; t < target_count(cfg); ++t) {
      cur.push_back(t);
      if (stage_consistent(cfg, x, cur)) grow();
      cur.pop_back();
    }
  };
  grow();
  return out;
}

PlainStrategy project_strategy(const GameConfig& cfg, const Strategy& sigma_prime, const Selector& sel) {
  auto value = [cfg, sigma_prime](const Seq& s, const std::vector<int>& p) -> std::optional<int> {
    PlayState st;
    try {
      st = replay(cfg, s, p);
    } catch (const IllegalMove&) {
      return std::nullopt;
    }
    if (st.status != PlayStatus::active) return std::nullopt;
    auto m = sigma_prime.at(st);
    if (!m) return std::nullopt;
    return m->x;
  };
  return {[cfg, sel, value](const Seq& s) -> int {
    if (s.size() % 2 == 0) throw SelectorPartial("not Player II's turn at " + to_string(s));
    int n = static_cast<int>(s.size() + 1) / 2;
    std::string at = " at " + to_string(s);
    if (sel.kind == SelectorKind::at_embedding) {
      auto v = value(s, sel.embedding(s, n));
      if (!v) throw SelectorPartial("strategy undefined at the supplied embedding" + at);
      return *v;
    }
    auto cands = sel.candidates ? sel.candidates(s, n) : clean_targets(cfg, s, n);
    if (cands.empty()) throw SelectorPartial("no candidate targets" + at);
    if (sel.kind == SelectorKind::first) {
      auto v = value(s, cands.front());
      if (!v) throw SelectorPartial("strategy undefined at the first candidate" + at);
      return *v;
    }
    std::map<int, int> votes;
    for (const auto& p : cands)
      if (auto v = value(s, p)) ++votes[*v];
    if (votes.empty()) throw SelectorPartial("strategy undefined at every candidate" + at);
    int best = votes.begin()->first;
    for (const auto& [move, count] : votes)
      if (count > votes[best]) best = move;
    return best;
  }};
}

LiftResult lift_projected_play(const GameConfig& cfg, const Strategy& sigma_prime,
                               const PlainStrategy& sigma, const Seq& i_moves, const TargetFamily& e) {
  LiftResult r;
  Seq x;
  for (std::size_t k = 0; k < i_moves.size() && static_cast<int>(x.size()) < cfg.depth; ++k) {
    x.push_back(i_moves[k]);
    if (static_cast<int>(x.size()) < cfg.depth) x.push_back(sigma.at(x));
  }
  int n = static_cast<int>(x.size() + 1) / 2;
  auto targets = e(x, n);
  PlayState st;
  if (cfg.depth == 0) st.status = PlayStatus::complete;
  for (std::size_t k = 0; k < x.size(); ++k) {
    Move m{x[k], -1};
    if (k % 2 == 0) {
      m.target = targets[k / 2];
    } else {
      auto expected = sigma_prime.at(st);
      if (!expected || expected->x != x[k]) {
        r.respects_sigma_prime = false;
        r.detail = "move " + std::to_string(k) + " differs from the auxiliary strategy";
      }
    }
    st = referee_step(cfg, st, m);
    if (st.status == PlayStatus::i_violated) {
      r.clean = false;
      r.detail = "violated after move " + std::to_string(k);
      break;
    }
  }
  r.lifted = st;
  return r;
}

}  // namespace dilator
