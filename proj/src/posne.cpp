#include "negame/posne.hpp"

#include <iostream>

#include "negame/graph.hpp"

namespace negame {

namespace {

WeightedGraph deviation_graph(const Game& g, const PositionalProfile& p, int i) {
  WeightedGraph w;
  for (const auto& st : g.states) {
    w.vertices.push_back(st.name);
    w.weights.push_back({st.rewards[i]});
  }
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (std::size_t b = 0; b < g.states[s].actions[i].size(); ++b) {
      auto idx = p.choice[s];
      idx[i] = static_cast<int>(b);
      w.edges.emplace_back(
          static_cast<int>(s),
          g.successor(static_cast<int>(s),
                      g.encode_profile(static_cast<int>(s), idx)));
    }
  return w;
}

bool in_box(const std::vector<Rational>& z,
            const std::vector<ExtendedRational>& x,
            const std::vector<ExtendedRational>& y) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    ExtendedRational zi{z[i]};
    if (zi < x[i] || y[i] < zi) return false;
  }
  return true;
}

}  // namespace

PosVerdict verify_positional(const Game& g, int s0, const PositionalProfile& p,
                             const std::vector<ExtendedRational>& x,
                             const std::vector<ExtendedRational>& y) {
  PosVerdict v;
  v.profile = p;
  v.payoff = lasso_payoff(g, p, s0).second;
  v.in_box = in_box(v.payoff, x, y);
  v.is_ne = true;
  v.deviation.resize(g.player_count);
  for (int i = 0; i < g.player_count; ++i) {
    auto mc = max_mean_cycle(deviation_graph(g, p, i), 0, s0);
    // the profile's own lasso is available to the deviator, so a cycle
    // always exists
    v.deviation[i] = mc->value;
    if (v.deviation[i] > v.payoff[i]) v.is_ne = false;
  }
  return v;
}

std::optional<PosVerdict> decide_pos_ne(const Game& g, int s0,
                                        const std::vector<ExtendedRational>& x,
                                        const std::vector<ExtendedRational>& y,
                                        long long budget) {
  long long space = 1;
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (int i = 0; i < g.player_count; ++i) {
      space *= static_cast<long long>(g.states[s].actions[i].size());
      if (space > budget) {
        std::cerr << "warning: positional profile space exceeds budget of "
                  << budget << "; exhaustive search may be slow\n";
        s = g.states.size() - 1;
        i = g.player_count;
        break;
      }
    }

  // Odometer over all (state, player) slots, last slot fastest, so earlier
  // (state, player, action) coordinates vary slowest: lexicographic order.
  PositionalProfile p;
  p.choice.assign(g.states.size(), std::vector<int>(g.player_count, 0));
  for (;;) {
    // cheap screen first: payoff box, then per-player deviation values
    auto z = lasso_payoff(g, p, s0).second;
    if (in_box(z, x, y)) {
      bool ok = true;
      for (int i = 0; i < g.player_count && ok; ++i)
        if (max_mean_cycle(deviation_graph(g, p, i), 0, s0)->value > z[i])
          ok = false;
      if (ok) return verify_positional(g, s0, p, x, y);
    }
    // advance
    int slot = static_cast<int>(g.states.size()) * g.player_count - 1;
    while (slot >= 0) {
      int s = slot / g.player_count, i = slot % g.player_count;
      if (++p.choice[s][i] < static_cast<int>(g.states[s].actions[i].size()))
        break;
      p.choice[s][i] = 0;
      --slot;
    }
    if (slot < 0) return std::nullopt;
  }
}

}  // namespace negame
