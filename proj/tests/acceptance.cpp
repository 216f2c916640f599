// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check is exact; oracles are brute-force enumerations.
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "negame/game.hpp"
#include "negame/graph.hpp"
#include "negame/mppath.hpp"
#include "negame/posne.hpp"
#include "negame/purene.hpp"
#include "negame/reductions.hpp"
#include "negame/smt.hpp"
#include "negame/statne.hpp"
#include "negame/zerosum.hpp"

using namespace negame;

namespace {

int failures = 0;

void criterion(int idx, const std::string& name, const std::function<bool()>& f) {
  bool ok = false;
  std::string note;
  try {
    ok = f();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  std::cout << (ok ? "PASS" : "FAIL") << "  " << idx << ". " << name << note
            << std::endl;
  failures += !ok;
}

std::vector<ExtendedRational> lows(int k) {
  return std::vector<ExtendedRational>(static_cast<std::size_t>(k),
                                       ExtendedRational::minus_infinity());
}

std::vector<ExtendedRational> highs(int k) {
  return std::vector<ExtendedRational>(static_cast<std::size_t>(k),
                                       ExtendedRational::plus_infinity());
}

// exhaustive maximum over simple cycles reachable from `from`
std::optional<Rational> brute_max_mean(const WeightedGraph& g, int from) {
  auto adj = g.adjacency();
  auto reach_list = reachable(g, from);
  std::set<int> reach(reach_list.begin(), reach_list.end());
  std::optional<Rational> best;
  int n = static_cast<int>(g.vertices.size());
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  std::function<void(int, int, Rational, int)> dfs = [&](int start, int u,
                                                         Rational sum, int len) {
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (!reach.count(w) || w < start) continue;
      Rational total = sum + g.weights[static_cast<std::size_t>(u)][0];
      if (w == start) {
        Rational mean = total / Rational(len + 1);
        if (!best || mean > *best) best = mean;
      } else if (!on[static_cast<std::size_t>(w)]) {
        on[static_cast<std::size_t>(w)] = true;
        dfs(start, w, total, len + 1);
        on[static_cast<std::size_t>(w)] = false;
      }
    }
  };
  for (int s = 0; s < n; ++s)
    if (reach.count(s)) {
      on[static_cast<std::size_t>(s)] = true;
      dfs(s, s, Rational(0), 0);
      on[static_cast<std::size_t>(s)] = false;
    }
  return best;
}

// deterministic play of a joint positional choice in an MPG
Rational mpg_play(const MeanPayoffGame& m, const std::vector<int>& choice, int v0) {
  std::vector<int> seen(m.vertices.size(), -1);
  std::vector<int> order;
  int v = v0;
  while (seen[static_cast<std::size_t>(v)] < 0) {
    seen[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
    order.push_back(v);
    v = m.vertices[static_cast<std::size_t>(v)]
            .succ[static_cast<std::size_t>(choice[static_cast<std::size_t>(v)])];
  }
  Rational sum(0);
  int start = seen[static_cast<std::size_t>(v)];
  for (std::size_t i = static_cast<std::size_t>(start); i < order.size(); ++i)
    sum += m.vertices[static_cast<std::size_t>(order[i])].weight;
  return sum / Rational(static_cast<long>(order.size()) - start);
}

// all assignments of one choice per listed slot
void odometer(const std::vector<int>& sizes,
              const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> pick(sizes.size(), 0);
  while (true) {
    visit(pick);
    std::size_t i = 0;
    while (i < sizes.size() && ++pick[i] == sizes[i]) pick[i++] = 0;
    if (i == sizes.size()) break;
  }
}

// min over coalition positional profiles of i's positional best response
Rational brute_pval(const Game& g, int player, int s0) {
  std::vector<std::pair<int, int>> coalition_slots, own_slots;
  std::vector<int> coalition_sizes, own_sizes;
  for (int s = 0; s < static_cast<int>(g.states.size()); ++s)
    for (int i = 0; i < g.player_count; ++i) {
      int na = static_cast<int>(g.states[s].actions[static_cast<std::size_t>(i)].size());
      if (na == 1) continue;
      (i == player ? own_slots : coalition_slots).emplace_back(s, i);
      (i == player ? own_sizes : coalition_sizes).push_back(na);
    }
  std::optional<Rational> outer;
  odometer(coalition_sizes, [&](const std::vector<int>& cpick) {
    std::optional<Rational> inner;
    odometer(own_sizes, [&](const std::vector<int>& opick) {
      PositionalProfile p;
      p.choice.assign(g.states.size(), std::vector<int>(g.player_count, 0));
      for (std::size_t j = 0; j < coalition_slots.size(); ++j)
        p.choice[static_cast<std::size_t>(coalition_slots[j].first)]
                [static_cast<std::size_t>(coalition_slots[j].second)] = cpick[j];
      for (std::size_t j = 0; j < own_slots.size(); ++j)
        p.choice[static_cast<std::size_t>(own_slots[j].first)]
                [static_cast<std::size_t>(own_slots[j].second)] = opick[j];
      Rational v = lasso_payoff(g, p, s0).second[static_cast<std::size_t>(player)];
      if (!inner || v > *inner) inner = v;
    });
    if (!outer || *inner < *outer) outer = *inner;
  });
  return *outer;
}

bool brute_sat(const CnfFormula& f) {
  for (int mask = 0; mask < (1 << f.variables); ++mask) {
    bool all = true;
    for (const auto& cl : f.clauses) {
      bool sat = false;
      for (int lit : cl)
        sat = sat || ((mask >> (std::abs(lit) - 1)) & 1) == (lit > 0 ? 1 : 0);
      all = all && sat;
    }
    if (all) return true;
  }
  return false;
}

bool brute_hamiltonian(const std::vector<std::vector<int>>& out, int v0) {
  int n = static_cast<int>(out.size());
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                     std::vector<bool>(static_cast<std::size_t>(n)));
  for (int v = 0; v < n; ++v)
    for (int t : out[static_cast<std::size_t>(v)])
      adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)] = true;
  if (n == 1) return adj[0][0];
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (v != v0) rest.push_back(v);
  do {
    int prev = v0;
    bool ok = true;
    for (int v : rest) {
      ok = ok && adj[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
      prev = v;
    }
    if (ok && adj[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v0)])
      return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

long long profile_space(const Game& g) {
  long long total = 1;
  for (int s = 0; s < static_cast<int>(g.states.size()); ++s) {
    total *= g.profile_count(s);
    if (total > 1'000'000'000) return total;
  }
  return total;
}

StationaryProfile fig3_half(const Game& f) {
  StationaryProfile sp;
  sp.dist.resize(f.states.size());
  for (std::size_t s = 0; s < f.states.size(); ++s) {
    sp.dist[s].resize(3);
    for (int i = 0; i < 3; ++i) {
      sp.dist[s][static_cast<std::size_t>(i)].assign(
          f.states[s].actions[static_cast<std::size_t>(i)].size(), Rational(0));
      sp.dist[s][static_cast<std::size_t>(i)][0] = Rational(1);
    }
  }
  sp.dist[static_cast<std::size_t>(f.state_index("s2"))][0] = {Rational(1, 2),
                                                               Rational(1, 2)};
  return sp;
}

// exact re-validation of a path witness: flow constraints, integer
// multiplicities, Eulerian cycle families consuming them, payoff relations
bool check_path_witness(const WeightedGraph& g, const PathWitness& w) {
  const auto& f = w.flow;
  int k = static_cast<int>(f.f.size());
  std::size_t ne = f.edges.size();
  for (int i = 0; i < k; ++i) {
    Rational total(0), value(0);
    std::map<int, Rational> net;
    for (std::size_t e = 0; e < ne; ++e) {
      const Rational& fe = f.f[static_cast<std::size_t>(i)][e];
      if (fe.sign() < 0) return false;
      total += fe;
      value += fe * g.weights[static_cast<std::size_t>(f.edges[e].first)]
                             [static_cast<std::size_t>(i)];
      net[f.edges[e].first] += fe;
      net[f.edges[e].second] -= fe;
    }
    if (total != Rational(1)) return false;
    if (value != f.z[static_cast<std::size_t>(i)]) return false;
    for (const auto& [v, x] : net)
      if (x != Rational(0)) return false;
    // constraint (5): every family's long-run average dominates z
    for (int j = 0; j < k; ++j) {
      Rational other(0);
      for (std::size_t e = 0; e < ne; ++e)
        other += f.f[static_cast<std::size_t>(i)][e] *
                 g.weights[static_cast<std::size_t>(f.edges[e].first)]
                          [static_cast<std::size_t>(j)];
      if (other < f.z[static_cast<std::size_t>(j)]) return false;
    }
  }
  // multiplicities are f * d and the cycle families consume them exactly
  for (int i = 0; i < k; ++i) {
    std::map<std::pair<int, int>, mpz_class> left;
    for (std::size_t e = 0; e < ne; ++e) {
      Rational scaled = f.f[static_cast<std::size_t>(i)][e] * Rational(w.witness.d);
      if (!scaled.is_integer()) return false;
      if (scaled.numerator() != w.witness.multiplicity[static_cast<std::size_t>(i)][e])
        return false;
      if (scaled.sign() > 0) left[f.edges[e]] = scaled.numerator();
    }
    for (const auto& cyc : w.witness.cycles[static_cast<std::size_t>(i)]) {
      for (std::size_t t = 0; t < cyc.size(); ++t) {
        auto edge = std::make_pair(cyc[t], cyc[(t + 1) % cyc.size()]);
        auto it = left.find(edge);
        if (it == left.end() || it->second == 0) return false;
        if (--it->second == 0) left.erase(it);
      }
    }
    if (!left.empty()) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "max_mean_cycle equals simple-cycle enumeration", [] {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> nd(2, 6), wd(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
      int n = nd(rng);
      WeightedGraph g;
      for (int v = 0; v < n; ++v) {
        g.vertices.push_back("v" + std::to_string(v));
        g.weights.push_back({Rational(wd(rng))});
      }
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (rng() % 3 == 0) g.edges.emplace_back(u, v);
      auto karp = max_mean_cycle(g, 0, 0);
      auto brute = brute_max_mean(g, 0);
      if (karp.has_value() != brute.has_value()) return false;
      if (karp && karp->value != *brute) return false;
    }
    return true;
  });

  criterion(2, "solve_mpg matches brute-force min-max over positional pairs", [] {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> nd(2, 5), wd(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
      int n = nd(rng);
      MeanPayoffGame m;
      for (int v = 0; v < n; ++v) {
        MpgVertex vx;
        vx.name = "v" + std::to_string(v);
        vx.is_max = rng() % 2 == 0;
        vx.weight = Rational(wd(rng));
        for (int t = 0; t < n; ++t)
          if (rng() % 2 == 0) vx.succ.push_back(t);
        if (vx.succ.empty())
          vx.succ.push_back(static_cast<int>(rng() % static_cast<unsigned>(n)));
        m.vertices.push_back(std::move(vx));
      }
      std::vector<std::pair<int, int>> maxslots, minslots;
      std::vector<int> maxsizes, minsizes;
      for (int v = 0; v < n; ++v) {
        auto& slots = m.vertices[static_cast<std::size_t>(v)].is_max ? maxslots : minslots;
        auto& sizes = m.vertices[static_cast<std::size_t>(v)].is_max ? maxsizes : minsizes;
        slots.emplace_back(v, 0);
        sizes.push_back(static_cast<int>(m.vertices[static_cast<std::size_t>(v)].succ.size()));
      }
      auto sol = solve_mpg(m);
      for (int v0 = 0; v0 < n; ++v0) {
        std::optional<Rational> maxmin, minmax;
        odometer(maxsizes, [&](const std::vector<int>& mp) {
          std::optional<Rational> inner;
          odometer(minsizes, [&](const std::vector<int>& np) {
            std::vector<int> choice(static_cast<std::size_t>(n), 0);
            for (std::size_t j = 0; j < maxslots.size(); ++j)
              choice[static_cast<std::size_t>(maxslots[j].first)] = mp[j];
            for (std::size_t j = 0; j < minslots.size(); ++j)
              choice[static_cast<std::size_t>(minslots[j].first)] = np[j];
            Rational val = mpg_play(m, choice, v0);
            if (!inner || val < *inner) inner = val;
          });
          if (!maxmin || *inner > *maxmin) maxmin = *inner;
        });
        odometer(minsizes, [&](const std::vector<int>& np) {
          std::optional<Rational> inner;
          odometer(maxsizes, [&](const std::vector<int>& mp) {
            std::vector<int> choice(static_cast<std::size_t>(n), 0);
            for (std::size_t j = 0; j < maxslots.size(); ++j)
              choice[static_cast<std::size_t>(maxslots[j].first)] = mp[j];
            for (std::size_t j = 0; j < minslots.size(); ++j)
              choice[static_cast<std::size_t>(minslots[j].first)] = np[j];
            Rational val = mpg_play(m, choice, v0);
            if (!inner || val > *inner) inner = val;
          });
          if (!minmax || *inner < *minmax) minmax = *inner;
        });
        if (*maxmin != *minmax) return false;
        if (sol.value[static_cast<std::size_t>(v0)] != *maxmin) return false;
      }
    }
    return true;
  });

  criterion(3, "punishment values on the fixture games match brute force", [] {
    Game g1 = game_from_json(fixtures::g1_json());
    auto pt1 = pval_table(g1);
    int s1 = g1.state_index("s1");
    if (pt1.pval[0][static_cast<std::size_t>(s1)] != Rational(1)) return false;
    if (pt1.pval[1][static_cast<std::size_t>(s1)] != Rational(0)) return false;
    Game f4 = game_from_json(fixtures::fig4_json());
    auto pt4 = pval_table(f4);
    int s0 = f4.state_index("s0");
    for (int i = 0; i < 3; ++i)
      if (pt4.pval[static_cast<std::size_t>(i)][static_cast<std::size_t>(s0)] != Rational(0))
        return false;
    for (int i = 0; i < 2; ++i)
      for (int s = 0; s < 3; ++s)
        if (pt1.pval[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] !=
            brute_pval(g1, i, s))
          return false;
    for (int i = 0; i < 3; ++i)
      if (pt4.pval[static_cast<std::size_t>(i)][static_cast<std::size_t>(s0)] !=
          brute_pval(f4, i, s0))
        return false;
    return true;
  });

  criterion(4, "pure/stationary separations on the three-player fixtures", [] {
    Game f4 = game_from_json(fixtures::fig4_json());
    auto x4 = lows(3);
    x4[0] = ExtendedRational(Rational(1));
    auto w = decide_pure_ne(f4, f4.initial, x4, highs(3));
    if (!w) return false;
    if (w->payoff != std::vector<Rational>{Rational(1), Rational(0), Rational(0)})
      return false;
    auto onpath = witness_path_states(f4, *w, 4);
    if (onpath.empty() || onpath[0] != f4.initial) return false;
    int first = witness_prescription(f4, *w, {});
    if (f4.successor(f4.initial, first) != onpath[1]) return false;

    Game f3 = game_from_json(fixtures::fig3_json());
    auto x3 = lows(3);
    x3[0] = ExtendedRational(Rational(1, 1000));
    if (decide_pure_ne(f3, f3.initial, x3, highs(3)).has_value()) return false;

    auto xs = lows(3);
    xs[0] = ExtendedRational(Rational(1));
    auto v = verify_stationary_ne(f3, f3.initial, fig3_half(f3), xs, highs(3));
    return v.is_ne && v.in_box &&
           v.payoff == std::vector<Rational>{Rational(1), Rational(1), Rational(1)};
  });

  criterion(5, "the two matching-game fixtures admit no positional equilibrium", [] {
    for (const char* name : {"G1", "G2"}) {
      Game g = builtin_example(name);
      if (decide_pos_ne(g, g.initial, lows(2), highs(2)).has_value()) return false;
    }
    return true;
  });

  criterion(6, "Hamiltonicity equals positional-equilibrium existence", [] {
    std::mt19937 rng(17);
    auto x = lows(3);
    x[0] = ExtendedRational(Rational(1));
    x[1] = ExtendedRational(Rational(1, 4));
    x[2] = ExtendedRational(Rational(3, 4));
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<std::vector<int>> out(4);
      std::vector<std::string> names = {"a", "b", "c", "d"};
      for (int v = 0; v < 4; ++v) {
        for (int t = 0; t < 4; ++t)
          if (rng() % 3 == 0) out[static_cast<std::size_t>(v)].push_back(t);
        if (out[static_cast<std::size_t>(v)].empty())
          out[static_cast<std::size_t>(v)].push_back(static_cast<int>(rng() % 4));
      }
      Game g = gen_hamiltonian_game(names, out, 0);
      if (decide_pos_ne(g, 0, x, highs(3)).has_value() != brute_hamiltonian(out, 0))
        return false;
    }
    return true;
  });

  criterion(7, "satisfiability equals equilibrium existence on SAT games", [] {
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> vd(1, 4), md(1, 6), ld(1, 3);
    int done = 0;
    while (done < 30) {
      CnfFormula f;
      f.variables = vd(rng);
      int m = md(rng);
      for (int j = 0; j < m; ++j) {
        std::set<int> lits;
        int want = std::min(ld(rng), f.variables);
        while (static_cast<int>(lits.size()) < want) {
          int var = 1 + static_cast<int>(rng() % static_cast<unsigned>(f.variables));
          lits.insert(rng() % 2 ? var : -var);
        }
        f.clauses.emplace_back(lits.begin(), lits.end());
      }
      Game g = gen_sat_game(f);
      if (profile_space(g) > 400'000) continue;  // keep the run under budget
      ++done;
      auto x = lows(g.player_count);
      x[0] = ExtendedRational(Rational(1));
      bool sat = brute_sat(f);
      if (decide_pos_ne(g, g.initial, x, highs(g.player_count)).has_value() != sat)
        return false;
      if (decide_pure_ne(g, g.initial, x, highs(g.player_count)).has_value() != sat)
        return false;
    }
    return true;
  });

  criterion(8, "square-root gadget reproduces sqrt(1/4) = 1/2 exactly", [] {
    auto gad = gen_sqrt_gadget(Rational(1, 4));
    if (!gad.profile) return false;
    auto x = lows(6);
    x[0] = ExtendedRational(Rational(0));
    auto v = verify_stationary_ne(gad.game, gad.game.initial, *gad.profile, x,
                                  highs(6));
    if (!v.is_ne || !v.in_box) return false;
    if (v.payoff[0] != Rational(0) || v.payoff[1] != Rational(1, 2)) return false;
    for (int i = 2; i <= 5; ++i)
      if (v.slack[static_cast<std::size_t>(i)] != Rational(0)) return false;
    return true;
  });

  criterion(9, "square-root-sum chain pays exactly k/(d(n+1))", [] {
    auto sg = gen_sqrtsum_game({1, 1}, 2);
    if (!sg.profile) return false;
    for (int i = 1; i <= 2; ++i) {
      int t = sg.game.state_index("t" + std::to_string(i));
      if (sg.profile->dist[static_cast<std::size_t>(t)][0] !=
          std::vector<Rational>{Rational(i, i + 1), Rational(1, i + 1)})
        return false;
    }
    auto v = verify_stationary_ne(sg.game, sg.game.initial, *sg.profile,
                                  sg.threshold.lower, sg.threshold.upper);
    return v.is_ne && v.in_box && v.payoff[1] == Rational(1, 3);
  });

  criterion(10, "threshold-path decisions match the cycle-mean interval", [] {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> nd(2, 6), wd(-3, 3), bd(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
      int n = nd(rng);
      WeightedGraph g;
      for (int v = 0; v < n; ++v) {
        g.vertices.push_back("v" + std::to_string(v));
        g.weights.push_back({Rational(wd(rng))});
        g.edges.emplace_back(v, (v + 1) % n);  // spanning cycle: one SCC
      }
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (rng() % 4 == 0) g.edges.emplace_back(u, v);
      ExtendedRational lo = rng() % 4 == 0 ? ExtendedRational::minus_infinity()
                                           : ExtendedRational(Rational(bd(rng), 2));
      ExtendedRational hi = rng() % 4 == 0 ? ExtendedRational::plus_infinity()
                                           : ExtendedRational(Rational(bd(rng), 2));
      auto got = feasible_path(g, 0, {lo}, {hi});
      Rational lomean = min_mean_cycle(g, 0, 0)->value;
      Rational himean = max_mean_cycle(g, 0, 0)->value;
      bool want = lo <= hi && lo <= ExtendedRational(himean) &&
                  ExtendedRational(lomean) <= hi;
      if (got.has_value() != want) return false;
      if (got && !check_path_witness(g, *got)) return false;
    }
    // anti-correlated two-weight instance: z_1 + z_2 cannot exceed 1
    WeightedGraph two;
    two.vertices = {"s", "a", "b"};
    two.weights = {{Rational(0), Rational(0)},
                   {Rational(1), Rational(0)},
                   {Rational(0), Rational(1)}};
    two.edges = {{0, 1}, {1, 0}, {0, 2}, {2, 0}};
    auto inf = feasible_path(
        two, 0, {ExtendedRational(Rational(2, 3)), ExtendedRational(Rational(2, 3))},
        highs(2));
    return !inf.has_value();
  });

  criterion(11, "counter encodings obey the update law within bounds", [] {
    const char* machines[] = {
        "init q0\nq0 inc1 q1\nq1 zero1 q0\nq1 dec1 q0\n",
        "init p0\np0 inc1 p1\np1 inc2 p0\n",
        "init q0\nq0 inc1 q1\nq1 inc1 q2\nq2 zero1 q0\nq2 dec1 q2\n"};
    for (const char* text : machines) {
      auto m = counter_machine_from_text(text);
      auto tr = simulate_safe_profile(m, 12);  // throws if the law breaks
      if (tr.c[0][0] != Rational(1) || tr.c[1][0] != Rational(1)) return false;
      for (int j = 0; j < 2; ++j)
        for (int n = 0; n + 1 < 12; ++n) {
          const Rational& a =
              tr.a_trunc[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
          const Rational& b = tr.bound[static_cast<std::size_t>(n)];
          if (a < Rational(1) - b || a > Rational(1) + b) return false;
        }
    }
    return true;
  });

  criterion(12, "exported constraint system round-trips and is satisfied", [] {
    Game f3 = game_from_json(fixtures::fig3_json());
    auto x = lows(3);
    x[0] = ExtendedRational(Rational(1));
    auto text = export_statne_constraints(f3, f3.initial, x, highs(3));
    auto doc = parse_smt_document(text);
    if (doc.logic != "QF_NRA" || !doc.has_check_sat) return false;
    int unions = 0;
    for (const auto& st : f3.states) {
      std::set<std::string> u;
      for (const auto& acts : st.actions) u.insert(acts.begin(), acts.end());
      unions += static_cast<int>(u.size());
    }
    std::map<std::string, int> by_prefix;
    for (const auto& v : doc.variables)
      ++by_prefix[v.substr(0, v.find('_'))];
    if (by_prefix["alpha"] != 3 * unions) return false;
    for (const char* kind : {"z", "beta", "v", "w"})
      if (by_prefix[kind] != 3 * static_cast<int>(f3.states.size())) return false;
    auto again = parse_smt_document(text);
    if (again.variables != doc.variables ||
        again.asserts.size() != doc.asserts.size())
      return false;
    auto env = statne_assignment(f3, fig3_half(f3));
    for (const auto& a : doc.asserts)
      if (!eval_formula(a, env)) return false;
    return true;
  });

  std::cout << (failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS") << " ("
            << (12 - failures) << "/12)" << std::endl;
  return failures ? 1 : 0;
}
