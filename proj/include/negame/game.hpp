#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "negame/rational.hpp"

namespace negame {

struct GameState {
  std::string name;
  std::vector<std::vector<std::string>> actions;  // per player, nonempty
  std::vector<Rational> rewards;                  // one per player
};

// Concurrent game: k players, per-state action sets, total transition map
// over legal action profiles, per-player state rewards.
//
// A legal profile at state s is encoded as a single integer (mixed radix,
// player 0 least significant).
struct Game {
  int player_count = 0;
  std::vector<GameState> states;
  int initial = -1;  // -1 when absent
  std::vector<std::vector<int>> transitions;  // [state][profile code] -> state

  int state_index(const std::string& name) const;  // -1 if absent
  int action_index(int s, int player, const std::string& a) const;  // -1 if absent
  int profile_count(int s) const;
  int encode_profile(int s, const std::vector<int>& action_indices) const;
  std::vector<int> decode_profile(int s, int code) const;
  std::vector<std::string> profile_labels(int s, int code) const;
  int successor(int s, int code) const { return transitions[s][code]; }
};

// Deterministic stationary profile: one action index per state and player.
struct PositionalProfile {
  std::vector<std::vector<int>> choice;  // [state][player] -> action index

  int profile_code(const Game& g, int s) const { return g.encode_profile(s, choice[s]); }
};

// Randomized stationary profile: per state and player a distribution over
// that player's actions (aligned with GameState::actions).
struct StationaryProfile {
  std::vector<std::vector<std::vector<Rational>>> dist;  // [state][player][action]
};

struct Lasso {
  std::vector<int> prefix_states;
  std::vector<int> prefix_codes;
  std::vector<int> cycle_states;  // nonempty; play returns to cycle_states[0]
  std::vector<int> cycle_codes;
};

struct ThresholdVector {
  std::vector<ExtendedRational> lower;  // x
  std::vector<ExtendedRational> upper;  // y
};

struct MemoryStructure {
  int size = 1;
  int initial = 0;
  // update[m][s][profile code] -> memory state
  std::vector<std::vector<std::vector<int>>> update;
};

struct GameValidation {
  std::optional<Game> game;  // set iff violations empty
  std::vector<std::string> violations;
};

// Checks all structural invariants of the JSON game description; reports
// every violation with state/player coordinates.
GameValidation validate_game(const nlohmann::json& raw);

// validate_game that throws std::invalid_argument on any violation.
Game game_from_json(const nlohmann::json& raw);
nlohmann::ordered_json game_to_json(const Game& g);

using Profile = std::variant<PositionalProfile, StationaryProfile>;
Profile profile_from_json(const Game& g, const nlohmann::json& raw);
nlohmann::ordered_json profile_to_json(const Game& g, const PositionalProfile& p);
nlohmann::ordered_json profile_to_json(const Game& g, const StationaryProfile& p);

// Yes -> controller per state (least controlling player index); No -> nullopt.
std::optional<std::vector<int>> is_turn_based(const Game& g);

// States whose every legal profile self-loops, ascending.
std::vector<int> terminal_states(const Game& g);

// True iff nonzero rewards occur only at terminal states.
bool is_terminal_reward(const Game& g);

// Deterministic play of σ from s0 until a state repeats; payoff is the
// average reward over the cycle (prefix ignored).
std::pair<Lasso, std::vector<Rational>> lasso_payoff(const Game& g,
                                                     const PositionalProfile& p,
                                                     int s0);

// Product game over S x M; product state (s, m) is named "s@m".
Game memory_product(const Game& g, const MemoryStructure& m);

}  // namespace negame
