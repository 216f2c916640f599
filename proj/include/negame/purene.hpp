#pragma once

#include <optional>
#include <string>
#include <vector>

#include "negame/game.hpp"
#include "negame/graph.hpp"
#include "negame/mppath.hpp"
#include "negame/zerosum.hpp"

namespace negame {

// The z-secure graph G(z): vertices are the game states; an edge s -> t is
// present iff some legal profile a with delta(s,a) = t is z-secure at s,
// i.e. pval_i(delta(s, (a_-i, b))) <= z_i for every player i and every
// b in Gamma_i(s).
struct SecureGraph {
  std::vector<ExtendedRational> z;
  WeightedGraph graph;            // weights: r_i per state
  std::vector<int> edge_profile;  // per edge, one witnessing profile code
};

SecureGraph secure_graph(const Game& g, const PvalTable& pt,
                         const std::vector<ExtendedRational>& z);

struct PureWitness {
  int s0 = 0;
  std::vector<Rational> z;        // chosen security levels
  std::vector<Rational> payoff;   // the witness path's payoff vector
  SecureGraph graph;
  PathWitness path;               // flow + cycle families over graph.graph
  std::vector<PositionalProfile> punish;  // per player, from the pval table
  std::string description;
};

// Pure-NE existence with payoff in [x, y] from s0. Candidates z_i range
// over {x_i if finite} + {pval_i(s) within [x_i, y_i]}.
std::optional<PureWitness> decide_pure_ne(const Game& g, int s0,
                                          const std::vector<ExtendedRational>& x,
                                          const std::vector<ExtendedRational>& y);

// The equilibrium strategy profile induced by a witness, as a finite rule.
std::string pure_witness_profile(const Game& g, const PureWitness& w);

// First `steps` states of the witness path (on-path play).
std::vector<int> witness_path_states(const Game& g, const PureWitness& w,
                                     int steps);

// Profile code prescribed after a history of profile codes from w.s0:
// on-path -> the stored z-secure profile; first divergence by exactly one
// player i -> punishment sigma*(i); otherwise the first legal profile.
int witness_prescription(const Game& g, const PureWitness& w,
                         const std::vector<int>& history);

// Terminal-reward fast path; throws std::invalid_argument when g is not a
// terminal-reward game. Candidate payoffs: zero vector and terminal rewards.
std::optional<PureWitness> decide_pure_ne_terminal(
    const Game& g, int s0, const std::vector<ExtendedRational>& x,
    const std::vector<ExtendedRational>& y);

}  // namespace negame
