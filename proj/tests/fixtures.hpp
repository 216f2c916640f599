#pragma once

#include <random>
#include <string>

#include "negame/game.hpp"

namespace fixtures {

// Two players at s1 pick a or b: mismatching picks end safe (1,-1), (b,b)
// ends dead (-1,1), (a,a) loops. No Nash equilibrium at all.
inline nlohmann::json g1_json() {
  return nlohmann::json::parse(R"({
    "players": 2,
    "initial": "s1",
    "states": [
      {"name": "s1", "actions": [["a","b"],["a","b"]], "rewards": ["0","0"]},
      {"name": "safe", "actions": [["-"],["-"]], "rewards": ["1","-1"]},
      {"name": "dead", "actions": [["-"],["-"]], "rewards": ["-1","1"]}
    ],
    "transitions": [
      {"from": "s1", "profile": ["a","a"], "to": "s1"},
      {"from": "s1", "profile": ["a","b"], "to": "safe"},
      {"from": "s1", "profile": ["b","a"], "to": "safe"},
      {"from": "s1", "profile": ["b","b"], "to": "dead"},
      {"from": "safe", "profile": ["-","-"], "to": "safe"},
      {"from": "dead", "profile": ["-","-"], "to": "dead"}
    ]
  })");
}

// Limit-average variation of g1: reward 1 for player 1 on the loop state.
// Not terminal-reward; also has no Nash equilibrium.
inline nlohmann::json g2_json() {
  return nlohmann::json::parse(R"({
    "players": 2,
    "initial": "s1",
    "states": [
      {"name": "s1", "actions": [["a","b"],["a","b"]], "rewards": ["0","1"]},
      {"name": "safe", "actions": [["-"],["-"]], "rewards": ["1","0"]},
      {"name": "dead", "actions": [["-"],["-"]], "rewards": ["0","1"]}
    ],
    "transitions": [
      {"from": "s1", "profile": ["a","a"], "to": "s1"},
      {"from": "s1", "profile": ["a","b"], "to": "safe"},
      {"from": "s1", "profile": ["b","a"], "to": "safe"},
      {"from": "s1", "profile": ["b","b"], "to": "dead"},
      {"from": "safe", "profile": ["-","-"], "to": "safe"},
      {"from": "dead", "profile": ["-","-"], "to": "dead"}
    ]
  })");
}

// Three-player turn-based chain s0 -> s1 -> s2 with four terminals; has a
// randomized stationary equilibrium giving player 0 payoff 1 but no pure
// equilibrium with positive payoff for player 0.
inline nlohmann::json fig3_json() {
  return nlohmann::json::parse(R"({
    "players": 3,
    "initial": "s0",
    "states": [
      {"name": "s0", "actions": [["-"],["s1","tc"],["-"]], "rewards": ["0","0","0"]},
      {"name": "s1", "actions": [["-"],["-"],["s2","td"]], "rewards": ["0","0","0"]},
      {"name": "s2", "actions": [["ta","tb"],["-"],["-"]], "rewards": ["0","0","0"]},
      {"name": "ta", "actions": [["-"],["-"],["-"]], "rewards": ["1","2","0"]},
      {"name": "tb", "actions": [["-"],["-"],["-"]], "rewards": ["1","0","2"]},
      {"name": "tc", "actions": [["-"],["-"],["-"]], "rewards": ["0","1","0"]},
      {"name": "td", "actions": [["-"],["-"],["-"]], "rewards": ["0","0","1"]}
    ],
    "transitions": [
      {"from": "s0", "profile": ["-","s1","-"], "to": "s1"},
      {"from": "s0", "profile": ["-","tc","-"], "to": "tc"},
      {"from": "s1", "profile": ["-","-","s2"], "to": "s2"},
      {"from": "s1", "profile": ["-","-","td"], "to": "td"},
      {"from": "s2", "profile": ["ta","-","-"], "to": "ta"},
      {"from": "s2", "profile": ["tb","-","-"], "to": "tb"},
      {"from": "ta", "profile": ["-","-","-"], "to": "ta"},
      {"from": "tb", "profile": ["-","-","-"], "to": "tb"},
      {"from": "tc", "profile": ["-","-","-"], "to": "tc"},
      {"from": "td", "profile": ["-","-","-"], "to": "td"}
    ]
  })");
}

// Three-player turn-based game with a pure (memory-using) equilibrium giving
// player 0 payoff 1 but no stationary equilibrium with positive payoff for
// player 0. Player 1 moves at s0, player 2 at s1, player 0 at s2.
inline nlohmann::json fig4_json() {
  return nlohmann::json::parse(R"({
    "players": 3,
    "initial": "s0",
    "states": [
      {"name": "s0", "actions": [["-"],["s1","s2"],["-"]], "rewards": ["0","0","0"]},
      {"name": "s1", "actions": [["-"],["-"],["t0","s2"]], "rewards": ["0","0","0"]},
      {"name": "s2", "actions": [["left","right"],["-"],["-"]], "rewards": ["0","0","0"]},
      {"name": "t0", "actions": [["-"],["-"],["-"]], "rewards": ["1","0","0"]},
      {"name": "t1", "actions": [["-"],["-"],["-"]], "rewards": ["0","1","0"]},
      {"name": "t2", "actions": [["-"],["-"],["-"]], "rewards": ["0","0","1"]}
    ],
    "transitions": [
      {"from": "s0", "profile": ["-","s1","-"], "to": "s1"},
      {"from": "s0", "profile": ["-","s2","-"], "to": "s2"},
      {"from": "s1", "profile": ["-","-","t0"], "to": "t0"},
      {"from": "s1", "profile": ["-","-","s2"], "to": "s2"},
      {"from": "s2", "profile": ["left","-","-"], "to": "t1"},
      {"from": "s2", "profile": ["right","-","-"], "to": "t2"},
      {"from": "t0", "profile": ["-","-","-"], "to": "t0"},
      {"from": "t1", "profile": ["-","-","-"], "to": "t1"},
      {"from": "t2", "profile": ["-","-","-"], "to": "t2"}
    ]
  })");
}

// Random concurrent game: per-player action counts in [1, max_actions],
// uniform transitions, integer rewards in [-2, 2].
inline negame::Game random_game(std::mt19937& rng, int players, int states,
                                int max_actions = 2) {
  negame::Game g;
  g.player_count = players;
  g.initial = 0;
  std::uniform_int_distribution<int> ad(1, max_actions), td(0, states - 1),
      rd(-2, 2);
  for (int s = 0; s < states; ++s) {
    negame::GameState st;
    st.name = "s" + std::to_string(s);
    for (int i = 0; i < players; ++i) {
      int na = ad(rng);
      std::vector<std::string> acts;
      for (int a = 0; a < na; ++a) acts.push_back("a" + std::to_string(a));
      st.actions.push_back(std::move(acts));
    }
    for (int i = 0; i < players; ++i)
      st.rewards.push_back(negame::Rational(rd(rng)));
    g.states.push_back(std::move(st));
  }
  for (int s = 0; s < states; ++s) {
    std::vector<int> row;
    for (int c = 0; c < g.profile_count(s); ++c) row.push_back(td(rng));
    g.transitions.push_back(std::move(row));
  }
  return g;
}

// Random terminal-reward game: the last `terminals` states are absorbing
// with integer rewards, every other state has zero rewards.
inline negame::Game random_terminal_game(std::mt19937& rng, int players,
                                         int inner, int terminals,
                                         int max_actions = 2) {
  negame::Game g = random_game(rng, players, inner + terminals, max_actions);
  for (int t = inner; t < inner + terminals; ++t) {
    for (int i = 0; i < players; ++i) g.states[t].actions[i] = {"-"};
    g.transitions[t] = {t};
  }
  for (int s = 0; s < inner; ++s)
    for (int i = 0; i < players; ++i) g.states[s].rewards[i] = negame::Rational(0);
  return g;
}

}  // namespace fixtures
