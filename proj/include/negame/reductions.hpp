#pragma once

#include <optional>
#include <string>
#include <vector>

#include "negame/game.hpp"
#include "negame/rational.hpp"

namespace negame {

// CNF with clauses as signed 1-based variable indices (-3 means "not X3").
struct CnfFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;  // nonempty, at least one clause
};

CnfFormula cnf_from_dimacs(const std::string& text);

// Turn-based game of players 0..n: player 0 cycles through the clauses
// picking literal states; the literal's owner may quit to the sink at
// negative occurrences. Satisfiability == positional/stationary/pure NE
// with payoff 1 for player 0.
Game gen_sat_game(const CnfFormula& f);

// Three-player game on the digraph: player 0 walks the edges, players 1, 2
// only collect rewards. Hamiltonicity == positional NE with payoff
// >= (1, 1/n, (n-1)/n) from v0.
Game gen_hamiltonian_game(const std::vector<std::string>& vertices,
                          const std::vector<std::vector<int>>& out_edges,
                          int v0);

// Six-player quitting-chain gadget whose best stationary-equilibrium payoff
// for player 1 (with player 0 at >= 0) is exactly sqrt(p). The optimal
// profile is returned when sqrt(p) is rational.
struct SqrtGadget {
  Game game;
  std::optional<StationaryProfile> profile;
};

SqrtGadget gen_sqrt_gadget(const Rational& p);

// Eight-player chain of sqrt gadgets with p_i = d_i / d^2: a stationary NE
// with payoff >= threshold exists iff sum of sqrt(d_i) >= k.
struct SqrtSumGame {
  Game game;
  ThresholdVector threshold;
  std::optional<StationaryProfile> profile;  // set when every d_i is a square
};

SqrtSumGame gen_sqrtsum_game(const std::vector<long>& d, long k);

// Deterministic two-counter machine: per state either no transition, one
// increment, or a zero/decrement pair on the same counter; a zero test is
// never followed by a branching state.
struct CounterMachine {
  std::vector<std::string> states;
  int initial = 0;
  struct Transition {
    int from;
    std::string instr;  // inc1 inc2 dec1 dec2 zero1 zero2
    int to;
  };
  std::vector<Transition> transitions;
};

// Text format: first line "init q0", then lines "q INSTR q'".
CounterMachine counter_machine_from_text(const std::string& text);

// 14-player terminal-reward game simulating the machine: the computation is
// infinite iff a Nash equilibrium with payoff >= 0 for player 0 exists.
Game gen_counter_game(const CounterMachine& m);

// Finite trace of the (infinite-memory) safe equilibrium profile: counter
// encodings c_j^n = 2^-counter, the instruction sequence, and truncated
// monitor expectations with their geometric tail bounds.
struct SafeProfileTrace {
  int horizon = 0;
  std::vector<std::string> gamma;             // gamma[0] = "init"
  std::vector<std::vector<Rational>> c;       // [j][n], j in {0,1}
  std::vector<std::vector<Rational>> a_trunc; // [j][n], truncated expectations
  std::vector<Rational> bound;                // 4 * 4^-floor((N-n)/2)
};

SafeProfileTrace simulate_safe_profile(const CounterMachine& m, int horizon);

// Prefixes g with a two-state header and a no-equilibrium gadget so that
// the new game has a positional (stationary) NE iff g has one with payoff
// >= (1, 1/n, (n-1)/n). gadget "G2" keeps rewards in {0,1} via an n-cycle;
// gadget "G1" keeps the terminal-reward property.
Game wrap_with_no_ne_gadget(const Game& g, const std::string& gadget, int n);

// Canonical example games; name in {"G1","G2","fig3","fig4","Gp(<p>)",
// "satDemo","hamTriangle"}.
Game builtin_example(const std::string& name);

}  // namespace negame
