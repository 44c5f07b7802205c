#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dilator/pi.hpp"
#include "dilator/predilator.hpp"

namespace dilator {

enum class GameMode { ordinal, dilator };
enum class Player { I, II };
enum class PlayStatus { active, i_violated, complete };
std::string to_string(PlayStatus s);
std::string to_string(Player p);

struct GameConfig {
  GameMode mode = GameMode::ordinal;
  DecidableTree tree = builtin_tree("full");
  int kappa = 0;      // ordinal mode: targets are 0..kappa-1 in numeric order
  Predilator omega;   // dilator mode: targets are terms of omega
  int alphabet = 1;
  int depth = 0;
  int diagram_bound = kDefaultDiagramBound;
};
// Throws IllegalMove on odd depth or an empty alphabet.
void validate_config(const GameConfig& cfg);
int target_count(const GameConfig& cfg);

struct Move {
  int x = 0;
  int target = -1;  // set on Player I moves only
  bool operator==(const Move&) const = default;
};

struct PlayState {
  Seq x;
  std::vector<int> targets;  // one per Player I move
  PlayStatus status = PlayStatus::active;
  Player to_move() const { return x.size() % 2 == 0 ? Player::I : Player::II; }
  bool operator==(const PlayState&) const = default;
};

// The stage with n targets uses the family at x restricted to n.
// Ordinal mode: i below j at the stage iff target i < target j, for all i, j < n.
// Dilator mode: term i -> target i is an embedding of the stage into omega.
bool stage_consistent(const GameConfig& cfg, const Seq& x, const std::vector<int>& targets);
PlayState referee_step(const GameConfig& cfg, const PlayState& st, const Move& m);
// Replays x interleaved with targets from the start.
PlayState replay(const GameConfig& cfg, const Seq& x, const std::vector<int>& targets);

// Strategy in the auxiliary game; nullopt where undefined.
struct Strategy {
  std::function<std::optional<Move>(const PlayState&)> at;
};
// Player II choice in the plain game, as a function of the x-moves so far.
struct PlainStrategy {
  std::function<int(const Seq&)> at;
};

struct Solution {
  Player winner = Player::I;
  Strategy strategy;
  long long nodes = 0;
  std::shared_ptr<const std::map<std::pair<Seq, std::vector<int>>, Move>> table;
};
inline constexpr long long kSolveBudget = 2'000'000;
// Backward induction on the truncated game. Throws BudgetExceeded.
Solution solve_truncated(const GameConfig& cfg, long long budget = kSolveBudget);
// Plays the strategy for `winner` against every opponent move; true iff all plays are won.
bool verify_strategy(const GameConfig& cfg, Player winner, const Strategy& s);

Strategy seeded_strategy(const GameConfig& cfg, Player who, std::uint64_t seed);

// Targets for the first n indices of the play x. Coherent when the result for a
// longer play extends the result for its prefix.
using TargetFamily = std::function<std::vector<int>(const Seq& x, int n)>;
// Ordinal mode: each new index goes to the midpoint of the gap left by its neighbours.
// Throws BudgetExceeded when the target order runs out of room.
TargetFamily midpoint_family(const GameConfig& cfg);
// Dilator mode with omega term-for-term equal to the code trie's predilator.
TargetFamily code_trie_family(const GameConfig& cfg, const CodeTrie& u);
// All referee-clean target vectors of length n for the play x (at most `cap`).
std::vector<std::vector<int>> clean_targets(const GameConfig& cfg, const Seq& x, int n, int cap = 4096);

enum class SelectorKind { at_embedding, first, majority };
std::string to_string(SelectorKind k);
struct Selector {
  SelectorKind kind = SelectorKind::first;
  TargetFamily embedding;  // at_embedding
  std::function<std::vector<std::vector<int>>(const Seq&, int)> candidates;  // first, majority
};
// sigma(s) = selector over { sigma'(s with targets p) }. Throws SelectorPartial
// when the choice is undefined.
PlainStrategy project_strategy(const GameConfig& cfg, const Strategy& sigma_prime, const Selector& sel);

struct LiftResult {
  PlayState lifted;          // auxiliary play with targets from the family
  bool respects_sigma_prime = true;
  bool clean = true;         // never violated
  std::string detail;
};
// Plays the plain game with Player I moves `i_moves` against sigma, then lifts it
// with targets e(0), e(1), ... and referees every step.
LiftResult lift_projected_play(const GameConfig& cfg, const Strategy& sigma_prime,
                               const PlainStrategy& sigma, const Seq& i_moves, const TargetFamily& e);

}  // namespace dilator
