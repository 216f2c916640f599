#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "negame/posne.hpp"
#include "negame/purene.hpp"

using namespace negame;

namespace {

std::vector<ExtendedRational> lows(int k) {
  return std::vector<ExtendedRational>(static_cast<std::size_t>(k),
                                       ExtendedRational::minus_infinity());
}

std::vector<ExtendedRational> highs(int k) {
  return std::vector<ExtendedRational>(static_cast<std::size_t>(k),
                                       ExtendedRational::plus_infinity());
}

// Independent deviation oracle: player i's best positional deviation value,
// by enumerating i's positional strategies (positional is optimal in the
// one-player mean-payoff game left after fixing everyone else).
Rational brute_deviation(const Game& g, const PositionalProfile& p, int s0,
                         int i) {
  std::vector<int> dev(g.states.size(), 0);
  std::optional<Rational> best;
  for (;;) {
    PositionalProfile q = p;
    for (std::size_t s = 0; s < g.states.size(); ++s) q.choice[s][i] = dev[s];
    Rational v = lasso_payoff(g, q, s0).second[i];
    if (!best || v > *best) best = v;
    int s = static_cast<int>(g.states.size()) - 1;
    while (s >= 0) {
      if (++dev[s] < static_cast<int>(g.states[s].actions[i].size())) break;
      dev[s--] = 0;
    }
    if (s < 0) return *best;
  }
}

}  // namespace

TEST_CASE("verify_positional computes payoff and best deviations") {
  Game g1 = game_from_json(fixtures::g1_json());
  PositionalProfile p;
  p.choice = {{0, 1}, {0, 0}, {0, 0}};  // (a,b) at s1 -> safe, payoff (1,-1)
  auto v = verify_positional(g1, 0, p, lows(2), highs(2));
  CHECK(v.payoff == std::vector<Rational>{Rational(1), Rational(-1)});
  // player 1 can switch to a and loop at s1 for mean 0 > -1
  CHECK(v.deviation[1] == Rational(0));
  CHECK(!v.is_ne);
  CHECK(v.in_box);

  // box screening is independent of the equilibrium check
  auto x = lows(2);
  x[0] = ExtendedRational(Rational(2));
  CHECK(!verify_positional(g1, 0, p, x, highs(2)).in_box);
}

TEST_CASE("games without positional equilibria") {
  Game g1 = game_from_json(fixtures::g1_json());
  CHECK(!decide_pos_ne(g1, 0, lows(2), highs(2)).has_value());

  Game g2 = game_from_json(fixtures::g2_json());
  CHECK(!decide_pos_ne(g2, 0, lows(2), highs(2)).has_value());
  // stronger: every positional profile has a profitable deviation
  PositionalProfile p;
  p.choice.assign(3, std::vector<int>(2, 0));
  for (int c0 = 0; c0 < 2; ++c0)
    for (int c1 = 0; c1 < 2; ++c1) {
      p.choice[0] = {c0, c1};
      CHECK(!verify_positional(g2, 0, p, lows(2), highs(2)).is_ne);
    }
}

TEST_CASE("turn-based chain: no positional equilibrium pays player 0") {
  Game f = game_from_json(fixtures::fig3_json());
  auto x = lows(3);
  x[0] = ExtendedRational(Rational(1, 1000));
  CHECK(!decide_pos_ne(f, f.state_index("s0"), x, highs(3)).has_value());
  // unconstrained a positional equilibrium exists (turn-based)
  auto v = decide_pos_ne(f, f.state_index("s0"), lows(3), highs(3));
  REQUIRE(v.has_value());
  CHECK(v->is_ne);
  CHECK(v->payoff[0] == Rational(0));
}

TEST_CASE("memory unlocks the pure equilibrium of the memoryful game") {
  Game f = game_from_json(fixtures::fig4_json());
  auto x = lows(3);
  x[0] = ExtendedRational(Rational(1));
  // positionally out of reach ...
  CHECK(!decide_pos_ne(f, f.state_index("s0"), x, highs(3)).has_value());

  // ... but a 2-state memory recording "s1 was left" makes it positional
  MemoryStructure m;
  m.size = 2;
  m.initial = 0;
  m.update.assign(2, {});
  int s1 = f.state_index("s1");
  for (int mem = 0; mem < 2; ++mem)
    for (std::size_t s = 0; s < f.states.size(); ++s) {
      int next = (mem == 1 || static_cast<int>(s) == s1) ? 1 : 0;
      m.update[mem].push_back(
          std::vector<int>(f.profile_count(static_cast<int>(s)), next));
    }
  Game prod = memory_product(f, m);
  auto v = decide_pos_ne(prod, prod.state_index("s0@0"), x, highs(3));
  REQUIRE(v.has_value());
  CHECK(v->payoff == std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
}

TEST_CASE("one-player games: equilibrium iff a cycle mean fits the box") {
  // single player walking a 2-cycle of means {0, 1} plus a 1/2-mean 2-cycle
  auto j = nlohmann::json::parse(R"({
    "players": 1,
    "initial": "u",
    "states": [
      {"name": "u", "actions": [["stay","go"]], "rewards": ["0"]},
      {"name": "v", "actions": [["-"]], "rewards": ["1"]},
      {"name": "w", "actions": [["back"]], "rewards": ["1"]}
    ],
    "transitions": [
      {"from": "u", "profile": ["stay"], "to": "u"},
      {"from": "u", "profile": ["go"], "to": "w"},
      {"from": "v", "profile": ["-"], "to": "v"},
      {"from": "w", "profile": ["back"], "to": "u"}
    ]
  })");
  Game g = game_from_json(j);
  auto at = [&](const Rational& a, const Rational& b) {
    return decide_pos_ne(g, 0, {ExtendedRational(a)}, {ExtendedRational(b)});
  };
  CHECK(at(Rational(1, 2), Rational(1, 2)).has_value());   // the u-w cycle
  // staying at u pays 0, but the player herself prefers the u-w cycle
  CHECK(!at(Rational(0), Rational(0)).has_value());
  CHECK(!at(Rational(1), Rational(2)).has_value());        // v unreachable
  CHECK(!at(Rational(1, 3), Rational(1, 3)).has_value());  // no such mean
}

TEST_CASE("deviation values match brute force over positional deviations") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> sd(2, 4);
  for (int trial = 0; trial < 60; ++trial) {
    Game g = fixtures::random_game(rng, 2, sd(rng));
    PositionalProfile p;
    p.choice.assign(g.states.size(), std::vector<int>(2, 0));
    for (std::size_t s = 0; s < g.states.size(); ++s)
      for (int i = 0; i < 2; ++i)
        p.choice[s][i] = static_cast<int>(
            rng() % g.states[s].actions[i].size());
    auto v = verify_positional(g, 0, p, lows(2), highs(2));
    for (int i = 0; i < 2; ++i)
      CHECK(v.deviation[i] == brute_deviation(g, p, 0, i));
    CHECK(v.is_ne == (v.deviation[0] <= v.payoff[0] &&
                      v.deviation[1] <= v.payoff[1]));
  }
}

TEST_CASE("a positional equilibrium is in particular a pure one") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> sd(2, 3);
  int found = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Game g = fixtures::random_game(rng, 2, sd(rng));
    auto pos = decide_pos_ne(g, 0, lows(2), highs(2));
    if (!pos) continue;
    ++found;
    auto x = std::vector<ExtendedRational>{ExtendedRational(pos->payoff[0]),
                                           ExtendedRational(pos->payoff[1])};
    CHECK(decide_pure_ne(g, 0, x, x).has_value());
  }
  CHECK(found >= 10);
}
