#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "negame/purene.hpp"

using namespace negame;

namespace {

std::vector<ExtendedRational> fin(std::vector<Rational> v) {
  std::vector<ExtendedRational> out;
  for (auto& x : v) out.push_back(ExtendedRational(std::move(x)));
  return out;
}

std::vector<ExtendedRational> lows(int k) {
  return std::vector<ExtendedRational>(static_cast<std::size_t>(k),
                                       ExtendedRational::minus_infinity());
}

std::vector<ExtendedRational> highs(int k) {
  return std::vector<ExtendedRational>(static_cast<std::size_t>(k),
                                       ExtendedRational::plus_infinity());
}

bool has_edge(const SecureGraph& sg, int u, int v) {
  for (auto e : sg.graph.edges)
    if (e == std::make_pair(u, v)) return true;
  return false;
}

bool code_secure(const Game& g, const PvalTable& pt, int s, int code,
                 const std::vector<Rational>& z) {
  auto idx = g.decode_profile(s, code);
  for (int i = 0; i < g.player_count; ++i)
    for (std::size_t b = 0; b < g.states[s].actions[i].size(); ++b) {
      auto dev = idx;
      dev[i] = static_cast<int>(b);
      if (pt.pval[i][g.successor(s, g.encode_profile(s, dev))] > z[i])
        return false;
    }
  return true;
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

// Sound one-sided oracle: a lasso whose payoff lies in the box and whose
// every step is secure at that payoff is a pure-equilibrium play. It misses
// equilibria whose payoff needs phase mixing, so only Yes answers count.
std::optional<std::vector<Rational>> lasso_oracle(
    const Game& g, int s0, const PvalTable& pt,
    const std::vector<ExtendedRational>& x,
    const std::vector<ExtendedRational>& y) {
  PositionalProfile p;
  p.choice.assign(g.states.size(), std::vector<int>(g.player_count, 0));
  for (;;) {
    auto [lasso, z] = lasso_payoff(g, p, s0);
    if (in_box(z, x, y)) {
      bool ok = true;
      for (std::size_t t = 0; t < lasso.prefix_states.size() && ok; ++t)
        ok = code_secure(g, pt, lasso.prefix_states[t], lasso.prefix_codes[t], z);
      for (std::size_t t = 0; t < lasso.cycle_states.size() && ok; ++t)
        ok = code_secure(g, pt, lasso.cycle_states[t], lasso.cycle_codes[t], z);
      if (ok) return z;
    }
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

void check_witness(const Game& g, const PureWitness& w,
                   const std::vector<ExtendedRational>& x,
                   const std::vector<ExtendedRational>& y) {
  auto pt = pval_table(g);
  int k = g.player_count;
  // every secure-graph edge really is secure at z
  REQUIRE(w.graph.graph.edges.size() == w.graph.edge_profile.size());
  for (std::size_t e = 0; e < w.graph.graph.edges.size(); ++e) {
    auto [u, v] = w.graph.graph.edges[e];
    int code = w.graph.edge_profile[e];
    CHECK(g.successor(u, code) == v);
    CHECK(code_secure(g, pt, u, code, w.z));
  }
  // flow invariants and bounds z <= payoff, x <= payoff <= y
  const auto& fs = w.path.flow;
  CHECK(w.payoff == fs.z);
  CHECK(in_box(w.payoff, x, y));
  for (int i = 0; i < k; ++i) {
    CHECK(w.z[i] <= w.payoff[i]);
    Rational mass(0), zi(0);
    for (std::size_t e = 0; e < fs.edges.size(); ++e) {
      CHECK(fs.f[i][e].sign() >= 0);
      mass += fs.f[i][e];
      zi += fs.f[i][e] * g.states[fs.edges[e].first].rewards[i];
    }
    CHECK(mass == Rational(1));
    CHECK(zi == fs.z[i]);
    for (int v : fs.scc_vertices) {
      Rational net(0);
      for (std::size_t e = 0; e < fs.edges.size(); ++e) {
        if (fs.edges[e].second == v) net += fs.f[i][e];
        if (fs.edges[e].first == v) net -= fs.f[i][e];
      }
      CHECK(net == Rational(0));
    }
  }
  // flow edges are secure-graph edges
  std::set<std::pair<int, int>> se(w.graph.graph.edges.begin(),
                                   w.graph.graph.edges.end());
  for (auto e : fs.edges) CHECK(se.count(e) == 1);
  CHECK(!w.description.empty());
}

}  // namespace

TEST_CASE("secure graph of the three-player chain at z = (1,2,0)") {
  Game f = game_from_json(fixtures::fig3_json());
  auto pt = pval_table(f);
  auto sg = secure_graph(f, pt, fin({Rational(1), Rational(2), Rational(0)}));
  int s0 = f.state_index("s0"), s1 = f.state_index("s1"),
      s2 = f.state_index("s2");
  // player 2's deviation at s1 reaches td where her pval is 1 > 0
  CHECK(!has_edge(sg, s1, s2));
  CHECK(!has_edge(sg, s1, f.state_index("td")));
  // s0 -> s1 also falls: player 2's continuation value at s1 is 1 > 0
  CHECK(!has_edge(sg, s0, s1));
  // s0 -> tc stands: deviating to s1 only gets player 1 value 0 <= 2
  CHECK(has_edge(sg, s0, f.state_index("tc")));
  CHECK(has_edge(sg, s2, f.state_index("ta")));
  // terminal self-loops survive iff own rewards fit under z
  CHECK(has_edge(sg, f.state_index("ta"), f.state_index("ta")));
  CHECK(!has_edge(sg, f.state_index("tb"), f.state_index("tb")));  // pval_2=2>0
}

TEST_CASE("memoryful-equilibrium game: pure yes at x = (1,-inf,-inf)") {
  Game f = game_from_json(fixtures::fig4_json());
  auto x = lows(3);
  x[0] = ExtendedRational(Rational(1));
  auto w = decide_pure_ne(f, f.state_index("s0"), x, highs(3));
  REQUIRE(w.has_value());
  CHECK(w->payoff == std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
  check_witness(f, *w, x, highs(3));

  // on-path play heads straight for the player-0 terminal
  auto path = witness_path_states(f, *w, 6);
  int t0 = f.state_index("t0");
  CHECK(path == std::vector<int>{f.state_index("s0"), f.state_index("s1"), t0,
                                 t0, t0, t0});

  // prescriptions: on-path profiles, then punishment after a lone deviation
  int on0 = witness_prescription(f, *w, {});
  CHECK(f.successor(f.state_index("s0"), on0) == f.state_index("s1"));
  int on1 = witness_prescription(f, *w, {on0});
  CHECK(f.successor(f.state_index("s1"), on1) == t0);

  // player 1 deviates at s0 by playing to s2: the coalition punishes with
  // player 0's "right", handing player 1 payoff 0
  std::vector<int> dev{f.encode_profile(f.state_index("s0"), {0, 1, 0})};
  int pcode = witness_prescription(f, *w, dev);
  auto labels = f.profile_labels(f.state_index("s2"), pcode);
  CHECK(labels[0] == "right");

  // player 2 deviates at s1: punished by "left"
  std::vector<int> dev2{on0, f.encode_profile(f.state_index("s1"), {0, 0, 1})};
  int pcode2 = witness_prescription(f, *w, dev2);
  CHECK(f.profile_labels(f.state_index("s2"), pcode2)[0] == "left");

  CHECK(!pure_witness_profile(f, *w).empty());
}

TEST_CASE("mixing-only game: no pure equilibrium with positive player-0 payoff") {
  Game f = game_from_json(fixtures::fig3_json());
  auto x = lows(3);
  x[0] = ExtendedRational(Rational(1, 1000));
  CHECK(!decide_pure_ne(f, f.state_index("s0"), x, highs(3)).has_value());

  // unconstrained, an equilibrium exists (turn-based game); its payoff is a
  // terminal vector or zero
  auto w = decide_pure_ne(f, f.state_index("s0"), lows(3), highs(3));
  REQUIRE(w.has_value());
  check_witness(f, *w, lows(3), highs(3));
  CHECK(w->payoff[0] == Rational(0));  // positive payoff for 0 is impossible
}

TEST_CASE("games with no equilibrium at all") {
  Game g1 = game_from_json(fixtures::g1_json());
  CHECK(!decide_pure_ne(g1, 0, lows(2), highs(2)).has_value());
  Game g2 = game_from_json(fixtures::g2_json());
  CHECK(!decide_pure_ne(g2, 0, lows(2), highs(2)).has_value());
}

TEST_CASE("secure graph grows with z") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Game g = fixtures::random_game(rng, 2, 3);
    auto pt = pval_table(g);
    auto za = fin({Rational(0), Rational(0)});
    auto zb = fin({Rational(2), Rational(2)});
    auto sa = secure_graph(g, pt, za);
    auto sb = secure_graph(g, pt, zb);
    std::set<std::pair<int, int>> eb(sb.graph.edges.begin(), sb.graph.edges.end());
    for (auto e : sa.graph.edges) CHECK(eb.count(e) == 1);
  }
}

TEST_CASE("agreement with the secure-lasso oracle") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> sd(2, 4), bd(0, 3);
  const Rational levels[] = {Rational(-1), Rational(0), Rational(1, 2),
                             Rational(1)};
  int yes = 0, no = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Game g = fixtures::random_game(rng, 2, sd(rng));
    auto pt = pval_table(g);
    std::vector<ExtendedRational> x = lows(2), y = highs(2);
    for (int i = 0; i < 2; ++i) {
      if (bd(rng) < 3) x[i] = ExtendedRational(levels[bd(rng)]);
      if (bd(rng) < 2) y[i] = ExtendedRational(levels[bd(rng)] + Rational(1));
    }
    auto oracle = lasso_oracle(g, 0, pt, x, y);
    auto got = decide_pure_ne(g, 0, x, y);
    if (oracle) {
      REQUIRE(got.has_value());  // oracle answers are sound
    }
    if (got) {
      check_witness(g, *got, x, y);
      ++yes;
    } else {
      ++no;
    }
  }
  CHECK(yes >= 20);
  CHECK(no >= 20);
}

TEST_CASE("terminal-reward fast path matches the general decider") {
  Game g2 = game_from_json(fixtures::g2_json());
  CHECK_THROWS_AS(decide_pure_ne_terminal(g2, 0, lows(2), highs(2)),
                  std::invalid_argument);

  Game g1 = game_from_json(fixtures::g1_json());
  CHECK(!decide_pure_ne_terminal(g1, 0, lows(2), highs(2)).has_value());

  Game f3 = game_from_json(fixtures::fig3_json());
  Game f4 = game_from_json(fixtures::fig4_json());
  std::vector<std::pair<Game, int>> fixtures_list;
  fixtures_list.emplace_back(f3, f3.state_index("s0"));
  fixtures_list.emplace_back(f4, f4.state_index("s0"));
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial)
    fixtures_list.emplace_back(fixtures::random_terminal_game(rng, 2, 3, 2), 0);

  std::uniform_int_distribution<int> bd(0, 3);
  const Rational levels[] = {Rational(-1), Rational(0), Rational(1, 2),
                             Rational(1)};
  for (auto& [g, s0] : fixtures_list) {
    int k = g.player_count;
    for (int box = 0; box < 8; ++box) {
      std::vector<ExtendedRational> x = lows(k), y = highs(k);
      for (int i = 0; i < k; ++i) {
        if (bd(rng) < 3) x[i] = ExtendedRational(levels[bd(rng)]);
        if (bd(rng) < 2) y[i] = ExtendedRational(levels[bd(rng)] + Rational(1));
      }
      auto fast = decide_pure_ne_terminal(g, s0, x, y);
      auto full = decide_pure_ne(g, s0, x, y);
      CHECK(fast.has_value() == full.has_value());
      if (fast) {
        check_witness(g, *fast, x, y);
        // terminal-reward payoffs: zero or a terminal vector
        std::vector<std::vector<Rational>> cands{
            std::vector<Rational>(k, Rational(0))};
        for (int t : terminal_states(g)) cands.push_back(g.states[t].rewards);
        bool match = false;
        for (const auto& c : cands) match = match || c == fast->payoff;
        CHECK(match);
      }
    }
  }
}
