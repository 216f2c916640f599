#pragma once

#include <map>
#include <string>
#include <vector>

#include "negame/game.hpp"
#include "negame/rational.hpp"

namespace negame {

// Finite Markov chain induced by a stationary profile: P(s,t) is the total
// probability of moving from s to t under the product distribution.
struct InducedChain {
  std::vector<std::vector<Rational>> P;  // rows sum to exactly 1
};

InducedChain induced_chain(const Game& g, const StationaryProfile& sp);

// MDP left to deviator i when everyone else plays sp: p[s][b][t] is the
// probability of reaching t from s when i picks action b.
struct InducedMdp {
  int player = 0;
  std::vector<std::vector<std::vector<Rational>>> p;  // [s][b][t], rows sum to 1
};

InducedMdp induced_mdp(const Game& g, const StationaryProfile& sp, int i);

// Exact expected limit-average reward per player and state: recurrent
// classes of the positive-probability digraph get stationary-distribution
// gains, transient states mix them by absorption probability.
std::vector<std::vector<Rational>> mc_state_gains(const Game& g,
                                                  const StationaryProfile& sp);

std::vector<Rational> mc_mean_payoff(const Game& g, const StationaryProfile& sp,
                                     int s0);

// Optimal multichain gain and bias of the deviator's MDP, from the standard
// linear program (minimize the sum of gains subject to the superharmonicity
// and bias inequalities).
struct MdpSolution {
  std::vector<Rational> v;  // optimal gain per state
  std::vector<Rational> b;  // an accompanying bias vector
};

MdpSolution best_response_solution(const Game& g, const StationaryProfile& sp,
                                   int i);

Rational best_response_value(const Game& g, const StationaryProfile& sp, int i,
                             int s0);

struct StatVerdict {
  std::vector<Rational> payoff;         // z(s0)
  std::vector<Rational> best_response;  // v_i(s0)
  std::vector<Rational> slack;          // v_i - z_i
  bool is_ne = false;                   // all slacks <= 0
  bool in_box = false;                  // x <= z(s0) <= y
};

// Exact equilibrium check of a stationary profile; throws
// std::invalid_argument on a malformed profile before any solve.
StatVerdict verify_stationary_ne(const Game& g, int s0,
                                 const StationaryProfile& sp,
                                 const std::vector<ExtendedRational>& x,
                                 const std::vector<ExtendedRational>& y);

// SMT-LIB2 (QF_NRA) document whose satisfiability is equivalent to the
// existence of a stationary Nash equilibrium with payoff in [x, y]:
// per player, the strategy simplex, the gain/bias payoff system, the MDP
// value inequalities, v_i(s0) <= z_i(s0) and the threshold bounds.
std::string export_statne_constraints(const Game& g, int s0,
                                      const std::vector<ExtendedRational>& x,
                                      const std::vector<ExtendedRational>& y);

// Satisfying assignment for the exported document built from a verified
// equilibrium: strategy probabilities, chain gains and biases, MDP solution.
std::map<std::string, Rational> statne_assignment(const Game& g,
                                                  const StationaryProfile& sp);

}  // namespace negame
