#pragma once

#include <string>
#include <utility>
#include <vector>

#include "negame/game.hpp"
#include "negame/rational.hpp"

namespace negame {

// Turn-based two-player zero-sum deterministic mean-payoff game. The weight
// of a move from v is w(v); Max maximizes the limit average, Min minimizes.
struct MpgVertex {
  std::string name;
  bool is_max = false;
  Rational weight;
  std::vector<int> succ;  // nonempty
};

struct MeanPayoffGame {
  std::vector<MpgVertex> vertices;
};

struct MpgSolution {
  std::vector<Rational> value;
  // Optimal positional strategies as positions into MpgVertex::succ;
  // max_choice[v] is set for Max vertices, min_choice[v] for Min vertices,
  // -1 otherwise.
  std::vector<int> max_choice;
  std::vector<int> min_choice;
};

// Exact values and optimal positional strategies for both players.
MpgSolution solve_mpg(const MeanPayoffGame& m);

// Coalition game for player i: Min (the coalition) picks a legal profile a
// at state s, moving to the pair vertex (s,a); Max (player i) then picks
// b in Gamma_i(s), moving to delta(s, (a_-i, b)). Both steps weigh r_i(s).
struct CoalitionGame {
  MeanPayoffGame mpg;
  int player = 0;
  std::vector<int> state_vertex;                 // state -> Min vertex
  std::vector<std::vector<int>> profile_vertex;  // [state][profile code] -> Max vertex
  // vertex -> (state, profile code) with code = -1 for state vertices
  std::vector<std::pair<int, int>> origin;
};

CoalitionGame coalition_game(const Game& g, int player);

struct PvalTable {
  std::vector<std::vector<Rational>> pval;  // [player][state]
  // punish[i]: the coalition's optimal punishment against player i; slot i
  // holds i's positional best reply to it.
  std::vector<PositionalProfile> punish;
};

// pval_i(s): the lowest payoff the coalition of all players but i can force
// on i from s, via one coalition-game solve per player.
PvalTable pval_table(const Game& g);

}  // namespace negame
