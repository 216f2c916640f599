#pragma once

#include <optional>
#include <vector>

#include "negame/game.hpp"
#include "negame/rational.hpp"

namespace negame {

struct PosVerdict {
  PositionalProfile profile;
  std::vector<Rational> payoff;     // z, from the induced lasso
  std::vector<Rational> deviation;  // v_i: best deviation value per player
  bool is_ne = false;               // v_i <= z_i for all i
  bool in_box = false;              // x <= z <= y
};

// Verifies one positional profile from s0: payoff via lasso_payoff and, per
// player, the best deviation value (max mean cycle reachable from s0 in the
// graph where everyone else follows the profile).
PosVerdict verify_positional(const Game& g, int s0, const PositionalProfile& p,
                             const std::vector<ExtendedRational>& x,
                             const std::vector<ExtendedRational>& y);

// Exhaustive search over positional profiles in lexicographic (state,
// player, action) order; first profile with is_ne && in_box wins. Writes a
// warning to stderr when the profile space exceeds `budget`.
std::optional<PosVerdict> decide_pos_ne(const Game& g, int s0,
                                        const std::vector<ExtendedRational>& x,
                                        const std::vector<ExtendedRational>& y,
                                        long long budget = 10'000'000);

}  // namespace negame
