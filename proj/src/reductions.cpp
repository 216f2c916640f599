#include "negame/reductions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace negame {

namespace {

// Incremental builder for (mostly) turn-based games: states start as
// all-singleton self-owned placeholders; moves() hands one player the
// choices, matrix() wires a two-player 2x2 state.
class Builder {
 public:
  explicit Builder(int players) { g_.player_count = players; }

  int add(const std::string& name) {
    GameState st;
    st.name = name;
    st.actions.assign(static_cast<std::size_t>(g_.player_count), {"-"});
    st.rewards.assign(static_cast<std::size_t>(g_.player_count), Rational(0));
    g_.states.push_back(std::move(st));
    targets_.emplace_back();
    return static_cast<int>(g_.states.size()) - 1;
  }

  void reward(int s, int player, const Rational& r) {
    g_.states[static_cast<std::size_t>(s)].rewards[static_cast<std::size_t>(player)] = r;
  }

  void loop(int s) { targets_[static_cast<std::size_t>(s)] = {s}; }

  void moves(int s, int player,
             const std::vector<std::pair<std::string, int>>& acts) {
    std::vector<std::string> labels;
    std::vector<int> tg;
    for (const auto& [l, t] : acts) {
      labels.push_back(l);
      tg.push_back(t);
    }
    g_.states[static_cast<std::size_t>(s)].actions[static_cast<std::size_t>(player)] = labels;
    targets_[static_cast<std::size_t>(s)] = tg;
  }

  // Players pa < pb both get {a, b}; row is in profile-code order, i.e.
  // (a,a), (b,a), (a,b), (b,b) with pa varying fastest.
  void matrix(int s, int pa, int pb, const std::vector<int>& row) {
    g_.states[static_cast<std::size_t>(s)].actions[static_cast<std::size_t>(pa)] = {"a", "b"};
    g_.states[static_cast<std::size_t>(s)].actions[static_cast<std::size_t>(pb)] = {"a", "b"};
    targets_[static_cast<std::size_t>(s)] = row;
  }

  // Appends a sub-game, padding its players up to this game's count with
  // singleton actions (profile codes are preserved). Returns the offset of
  // the sub-game's first state.
  int embed(const Game& sub, const std::string& suffix) {
    int off = static_cast<int>(g_.states.size());
    for (const auto& st : sub.states) {
      GameState ns = st;
      ns.name += suffix;
      ns.actions.resize(static_cast<std::size_t>(g_.player_count), {"-"});
      ns.rewards.resize(static_cast<std::size_t>(g_.player_count), Rational(0));
      g_.states.push_back(std::move(ns));
    }
    for (const auto& row : sub.transitions) {
      std::vector<int> shifted;
      for (int t : row) shifted.push_back(t + off);
      targets_.push_back(std::move(shifted));
    }
    return off;
  }

  Game finish(int initial) {
    g_.initial = initial;
    g_.transitions.clear();
    for (std::size_t s = 0; s < g_.states.size(); ++s) {
      if (static_cast<int>(targets_[s].size()) != g_.profile_count(static_cast<int>(s)))
        throw std::logic_error("builder: unwired state " + g_.states[s].name);
      g_.transitions.push_back(targets_[s]);
    }
    return g_;
  }

 private:
  Game g_;
  std::vector<std::vector<int>> targets_;
};

// Stationary profile putting all mass on action 0 everywhere.
StationaryProfile unit_profile(const Game& g) {
  StationaryProfile sp;
  sp.dist.resize(g.states.size());
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    sp.dist[s].resize(static_cast<std::size_t>(g.player_count));
    for (int i = 0; i < g.player_count; ++i) {
      sp.dist[s][static_cast<std::size_t>(i)].assign(
          g.states[s].actions[static_cast<std::size_t>(i)].size(), Rational(0));
      sp.dist[s][static_cast<std::size_t>(i)][0] = Rational(1);
    }
  }
  return sp;
}

std::optional<Rational> rational_sqrt(const Rational& p) {
  if (p.sign() < 0) return std::nullopt;
  mpz_class num = p.numerator(), den = p.denominator();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

}  // namespace

CnfFormula cnf_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  CnfFormula f;
  int declared_clauses = -1;
  std::string line;
  std::vector<int> clause;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> f.variables >> declared_clauses) || fmt != "cnf")
        throw std::invalid_argument("dimacs: bad problem line: " + line);
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (clause.empty()) throw std::invalid_argument("dimacs: empty clause");
        f.clauses.push_back(clause);
        clause.clear();
      } else {
        if (declared_clauses < 0)
          throw std::invalid_argument("dimacs: clause before problem line");
        if (std::abs(lit) > f.variables)
          throw std::invalid_argument("dimacs: literal out of range");
        clause.push_back(lit);
      }
    }
    if (!ls.eof()) throw std::invalid_argument("dimacs: bad token in: " + line);
  }
  if (!clause.empty()) throw std::invalid_argument("dimacs: unterminated clause");
  if (declared_clauses < 0) throw std::invalid_argument("dimacs: no problem line");
  if (static_cast<int>(f.clauses.size()) != declared_clauses)
    throw std::invalid_argument("dimacs: clause count mismatch");
  return f;
}

Game gen_sat_game(const CnfFormula& f) {
  if (f.variables < 1 || f.clauses.empty())
    throw std::invalid_argument("sat game: need variables and clauses");
  for (const auto& cl : f.clauses) {
    if (cl.empty()) throw std::invalid_argument("sat game: empty clause");
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > f.variables)
        throw std::invalid_argument("sat game: literal out of range");
  }
  int m = static_cast<int>(f.clauses.size());
  Builder b(f.variables + 1);
  std::vector<int> cs;
  for (int j = 0; j < m; ++j) cs.push_back(b.add("C" + std::to_string(j + 1)));
  int bot = b.add("bot");
  b.loop(bot);
  std::vector<std::pair<int, int>> positive;  // (state, owning variable)
  for (int j = 0; j < m; ++j) {
    int next = cs[static_cast<std::size_t>((j + 1) % m)];
    std::vector<std::pair<std::string, int>> picks;
    std::set<int> seen;
    for (int lit : f.clauses[static_cast<std::size_t>(j)]) {
      if (!seen.insert(lit).second) continue;
      int var = std::abs(lit);
      std::string label =
          (lit < 0 ? "nx" : "x") + std::to_string(var);
      int ls = b.add("C" + std::to_string(j + 1) + "_" + label);
      if (lit > 0) {
        b.moves(ls, var, {{"go", next}});
        positive.emplace_back(ls, var);
      } else {
        b.moves(ls, var, {{"go", next}, {"quit", bot}});
      }
      picks.emplace_back(label, ls);
    }
    b.moves(cs[static_cast<std::size_t>(j)], 0, picks);
  }
  Game g = b.finish(cs[0]);
  // player 0 earns 1 outside the sink; every variable player earns 1 except
  // at her own positive-literal states
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    if (static_cast<int>(s) != bot) g.states[s].rewards[0] = Rational(1);
    for (int i = 1; i <= f.variables; ++i)
      g.states[s].rewards[static_cast<std::size_t>(i)] = Rational(1);
  }
  for (const auto& [s, var] : positive)
    g.states[static_cast<std::size_t>(s)].rewards[static_cast<std::size_t>(var)] =
        Rational(0);
  return g;
}

Game gen_hamiltonian_game(const std::vector<std::string>& vertices,
                          const std::vector<std::vector<int>>& out_edges,
                          int v0) {
  int n = static_cast<int>(vertices.size());
  if (n < 1 || static_cast<int>(out_edges.size()) != n)
    throw std::invalid_argument("hamiltonian game: bad graph shape");
  if (v0 < 0 || v0 >= n)
    throw std::invalid_argument("hamiltonian game: v0 out of range");
  Builder b(3);
  for (const auto& v : vertices) b.add(v);
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<std::string, int>> acts;
    std::set<int> seen;
    for (int t : out_edges[static_cast<std::size_t>(v)]) {
      if (t < 0 || t >= n)
        throw std::invalid_argument("hamiltonian game: edge target out of range");
      if (seen.insert(t).second)
        acts.emplace_back(vertices[static_cast<std::size_t>(t)], t);
    }
    if (acts.empty())
      throw std::invalid_argument("hamiltonian game: vertex without successors");
    b.moves(v, 0, acts);
    b.reward(v, 0, Rational(1));
    b.reward(v, 1, v == v0 ? Rational(1) : Rational(0));
    b.reward(v, 2, v == v0 ? Rational(0) : Rational(1));
  }
  return b.finish(v0);
}

SqrtGadget gen_sqrt_gadget(const Rational& p) {
  if (p.sign() <= 0 || p >= Rational(1))
    throw std::invalid_argument("sqrt gadget: p must lie in (0,1)");
  Builder b(6);
  // two symmetric halves of the cycle; half 0 is watched by players 2 and 4,
  // half 1 by players 3 and 5
  int s1 = b.add("s1"), r1 = b.add("r1"), t1 = b.add("t1"), u1 = b.add("u1"),
      v1 = b.add("v1");
  int s2 = b.add("s2"), r2 = b.add("r2"), t2 = b.add("t2"), u2 = b.add("u2"),
      v2 = b.add("v2");
  auto quit = [&](const std::string& name,
                  const std::vector<std::pair<int, Rational>>& rewards) {
    int t = b.add(name);
    b.loop(t);
    for (const auto& [i, r] : rewards) b.reward(t, i, r);
    return t;
  };
  Rational one(1), two(2);
  int qs1 = quit("s1_quit", {{0, -one}, {2, one}});
  int qr1 = quit("r1_quit", {{0, -one}, {4, one}});
  int qt1 = quit("t1_quit", {{0, -one}, {5, one - p}});
  int qu1 = quit("u1_quit", {{1, one}, {2, one}, {4, two - p}});
  int qv1 = quit("v1_quit", {{2, two}, {4, one - p}, {5, one}});
  int qs2 = quit("s2_quit", {{0, -one}, {3, one}});
  int qr2 = quit("r2_quit", {{0, -one}, {4, one - p}});
  int qt2 = quit("t2_quit", {{0, -one}, {5, one}});
  int qu2 = quit("u2_quit", {{1, one}, {3, one}, {5, two - p}});
  int qv2 = quit("v2_quit", {{3, two}, {4, one}, {5, one - p}});
  b.moves(s1, 2, {{"continue", r1}, {"quit", qs1}});
  b.moves(r1, 4, {{"continue", t1}, {"quit", qr1}});
  b.moves(t1, 5, {{"continue", u1}, {"quit", qt1}});
  b.moves(u1, 0, {{"continue", v1}, {"quit", qu1}});
  b.moves(v1, 0, {{"continue", s2}, {"quit", qv1}});
  b.moves(s2, 3, {{"continue", r2}, {"quit", qs2}});
  b.moves(r2, 4, {{"continue", t2}, {"quit", qr2}});
  b.moves(t2, 5, {{"continue", u2}, {"quit", qt2}});
  b.moves(u2, 0, {{"continue", v2}, {"quit", qu2}});
  b.moves(v2, 0, {{"continue", s1}, {"quit", qv2}});
  SqrtGadget out;
  out.game = b.finish(s1);
  if (auto root = rational_sqrt(p)) {
    // player 0 continues from u with 1-p and from v with (1-sqrt(p))/(1-p);
    // all monitors continue surely
    Rational x0 = (one - *root) / (one - p);
    auto sp = unit_profile(out.game);
    for (int u : {u1, u2}) sp.dist[static_cast<std::size_t>(u)][0] = {one - p, p};
    for (int v : {v1, v2}) sp.dist[static_cast<std::size_t>(v)][0] = {x0, one - x0};
    out.profile = std::move(sp);
  }
  return out;
}

SqrtSumGame gen_sqrtsum_game(const std::vector<long>& d, long k) {
  int n = static_cast<int>(d.size());
  if (n < 1) throw std::invalid_argument("sqrtsum game: empty d");
  Rational dd(0);
  for (long di : d) {
    if (di < 1) throw std::invalid_argument("sqrtsum game: d_i must be >= 1");
    dd += Rational(di);
  }
  if (n == 1 && d[0] == 1)
    throw std::invalid_argument("sqrtsum game: d = (1) makes p_1 = 1");
  Builder b(8);
  std::vector<int> si(static_cast<std::size_t>(n + 1)),
      ri(static_cast<std::size_t>(n + 1)), ti(static_cast<std::size_t>(n + 1));
  for (int i = n; i >= 1; --i) {
    si[static_cast<std::size_t>(i)] = b.add("s" + std::to_string(i));
    ri[static_cast<std::size_t>(i)] = b.add("r" + std::to_string(i));
    ti[static_cast<std::size_t>(i)] = b.add("t" + std::to_string(i));
  }
  si[0] = b.add("s0");
  b.loop(si[0]);
  b.reward(si[0], 7, Rational(n + 1));
  std::vector<SqrtGadget> copies;
  std::vector<int> entry(static_cast<std::size_t>(n + 1));
  bool all_square = true;
  for (int i = 1; i <= n; ++i) {
    Rational pi = Rational(d[static_cast<std::size_t>(i - 1)]) / (dd * dd);
    SqrtGadget gad = gen_sqrt_gadget(pi);
    all_square = all_square && gad.profile.has_value();
    entry[static_cast<std::size_t>(i)] =
        b.embed(gad.game, "_g" + std::to_string(i));
    copies.push_back(std::move(gad));
  }
  for (int i = 1; i <= n; ++i) {
    Rational one(1);
    int sq = b.add("s" + std::to_string(i) + "_quit");
    b.loop(sq);
    b.reward(sq, 0, -one);
    b.reward(sq, 6, Rational(i, i + 1));
    int rq = b.add("r" + std::to_string(i) + "_quit");
    b.loop(rq);
    b.reward(rq, 0, -one);
    b.reward(rq, 7, Rational(n + 1, i + 1));
    b.moves(si[static_cast<std::size_t>(i)], 6,
            {{"continue", ri[static_cast<std::size_t>(i)]}, {"quit", sq}});
    b.moves(ri[static_cast<std::size_t>(i)], 7,
            {{"continue", ti[static_cast<std::size_t>(i)]}, {"quit", rq}});
    b.moves(ti[static_cast<std::size_t>(i)], 0,
            {{"next", si[static_cast<std::size_t>(i - 1)]},
             {"enter", entry[static_cast<std::size_t>(i)]}});
  }
  SqrtSumGame out;
  out.game = b.finish(si[static_cast<std::size_t>(n)]);
  // every gadget terminal additionally pays its chain watcher, player 6
  for (int i = 1; i <= n; ++i)
    for (int t : terminal_states(copies[static_cast<std::size_t>(i - 1)].game))
      out.game.states[static_cast<std::size_t>(entry[static_cast<std::size_t>(i)] + t)]
          .rewards[6] = Rational(1);
  out.threshold.lower.assign(8, ExtendedRational(Rational(0)));
  out.threshold.lower[1] = ExtendedRational(Rational(k) / (dd * Rational(n + 1)));
  out.threshold.upper.assign(8, ExtendedRational::plus_infinity());
  if (all_square) {
    auto sp = unit_profile(out.game);
    for (int i = 1; i <= n; ++i) {
      sp.dist[static_cast<std::size_t>(ti[static_cast<std::size_t>(i)])][0] = {
          Rational(i, i + 1), Rational(1, i + 1)};
      const auto& sub = *copies[static_cast<std::size_t>(i - 1)].profile;
      for (std::size_t s = 0; s < sub.dist.size(); ++s)
        for (std::size_t j = 0; j < sub.dist[s].size(); ++j)
          sp.dist[static_cast<std::size_t>(entry[static_cast<std::size_t>(i)]) + s][j] =
              sub.dist[s][j];
    }
    out.profile = std::move(sp);
  }
  return out;
}

CounterMachine counter_machine_from_text(const std::string& text) {
  static const std::set<std::string> instrs = {"inc1",  "inc2", "dec1",
                                               "dec2",  "zero1", "zero2"};
  CounterMachine m;
  std::map<std::string, int> index;
  auto state_of = [&](const std::string& q) {
    auto it = index.find(q);
    if (it != index.end()) return it->second;
    index[q] = static_cast<int>(m.states.size());
    m.states.push_back(q);
    return index[q];
  };
  std::istringstream in(text);
  std::string line;
  bool have_init = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b, c;
    if (!(ls >> a)) continue;
    if (!have_init) {
      if (a != "init" || !(ls >> b) || (ls >> c))
        throw std::invalid_argument("counter machine: expected 'init q0'");
      m.initial = state_of(b);
      have_init = true;
      continue;
    }
    std::string extra;
    if (!(ls >> b >> c) || (ls >> extra))
      throw std::invalid_argument("counter machine: expected 'q INSTR q'': " + line);
    if (!instrs.count(b))
      throw std::invalid_argument("counter machine: unknown instruction " + b);
    m.transitions.push_back({state_of(a), b, state_of(c)});
  }
  if (!have_init) throw std::invalid_argument("counter machine: missing init line");

  // determinism: per state nothing, one increment, or a zero/decrement pair
  // on the same counter; a zero test may not lead to a branching state
  std::vector<std::vector<const CounterMachine::Transition*>> by_state(
      m.states.size());
  for (const auto& t : m.transitions)
    by_state[static_cast<std::size_t>(t.from)].push_back(&t);
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    const auto& ts = by_state[q];
    if (ts.empty()) continue;
    if (ts.size() == 1) {
      if (ts[0]->instr.rfind("inc", 0) != 0)
        throw std::invalid_argument("counter machine: lone transition at " +
                                    m.states[q] + " must be an increment");
    } else if (ts.size() == 2) {
      std::string i0 = ts[0]->instr, i1 = ts[1]->instr;
      if (i0 > i1) std::swap(i0, i1);
      bool pair1 = (i0 == "dec1" && i1 == "zero1");
      bool pair2 = (i0 == "dec2" && i1 == "zero2");
      if (!pair1 && !pair2)
        throw std::invalid_argument(
            "counter machine: state " + m.states[q] +
            " needs a zero/dec pair on one counter");
    } else {
      throw std::invalid_argument("counter machine: too many transitions at " +
                                  m.states[q]);
    }
  }
  for (const auto& t : m.transitions)
    if (t.instr.rfind("zero", 0) == 0 &&
        by_state[static_cast<std::size_t>(t.to)].size() > 1)
      throw std::invalid_argument(
          "counter machine: zero test into branching state " +
          m.states[static_cast<std::size_t>(t.to)]);
  return m;
}

namespace {

// player layout of the counter game
constexpr int kCounterPlayers = 14;
int pl_A(int j, int t) { return 2 + (j - 1) * 2 + t; }
int pl_B(int j, int t) { return 6 + (j - 1) * 2 + t; }
int pl_D(int t) { return 10 + t; }
int pl_E(int j) { return 11 + j; }

const std::vector<std::string> kGammas = {"init", "inc1", "inc2", "dec1",
                                          "dec2", "zero1", "zero2"};

}  // namespace

Game gen_counter_game(const CounterMachine& m) {
  Builder b(kCounterPlayers);
  int nq = static_cast<int>(m.states.size());
  std::vector<std::vector<const CounterMachine::Transition*>> by_state(
      static_cast<std::size_t>(nq));
  for (const auto& t : m.transitions)
    by_state[static_cast<std::size_t>(t.from)].push_back(&t);

  // counter gadgets: an entry owned by player 0 choosing between terminals
  auto c_entry = [](int t, const std::string& gamma, int j) {
    return "C" + std::to_string(t) + "_" + gamma + "_" + std::to_string(j);
  };
  std::map<std::string, int> cidx;
  for (int t = 0; t < 2; ++t) {
    for (const auto& gamma : kGammas) {
      for (int j = 1; j <= 2; ++j) {
        std::string base = c_entry(t, gamma, j);
        int entry = b.add(base);
        cidx[base] = entry;
        bool zeroed = gamma == "init" || gamma == "zero" + std::to_string(j);
        bool incj = gamma == "inc" + std::to_string(j);
        bool decj = gamma == "dec" + std::to_string(j);
        int grey = b.add(base + "_grey");
        b.loop(grey);
        b.reward(grey, pl_A(j, t), Rational(2));
        b.reward(grey, pl_A(j, 1 - t),
                 incj ? Rational(4) : decj ? Rational(1) : Rational(2));
        b.reward(grey, pl_B(j, t), Rational(2));
        b.reward(grey, pl_B(j, 1 - t),
                 incj ? Rational(0) : decj ? Rational(3) : Rational(2));
        b.reward(grey, pl_D(t), Rational(3));
        b.reward(grey, pl_E(j), Rational(2));
        if (zeroed) {
          b.reward(grey, 1, Rational(1));
          b.moves(entry, 0, {{"grey", grey}});
        } else {
          int white = b.add(base + "_white");
          b.loop(white);
          b.reward(white, pl_A(j, t), Rational(3));
          b.reward(white, pl_B(j, t), Rational(1));
          b.reward(white, pl_B(j, 1 - t), Rational(4));
          b.reward(white, pl_D(t), Rational(3));
          b.reward(white, pl_E(j), Rational(2));
          b.moves(entry, 0, {{"grey", grey}, {"white", white}});
        }
      }
    }
  }

  // instruction states and monitored quit chains, created before wiring so
  // forward references resolve
  auto i_name = [&](int t, int q) {
    return "I" + std::to_string(t) + "_" + m.states[static_cast<std::size_t>(q)];
  };
  auto s_name = [&](int t, const std::string& gamma, int q,
                    const std::string& pos) {
    return "S" + std::to_string(t) + "_" + gamma + "_" +
           m.states[static_cast<std::size_t>(q)] + "_" + pos;
  };
  std::map<std::string, int> idx;
  for (int t = 0; t < 2; ++t)
    for (int q = 0; q < nq; ++q) idx[i_name(t, q)] = b.add(i_name(t, q));
  const std::vector<std::string> chain_pos = {"a1", "a2", "b1", "b2",
                                              "d",  "dn", "g",  "e1",
                                              "e2", "w"};
  for (int t = 0; t < 2; ++t)
    for (const auto& gamma : kGammas)
      for (int q = 0; q < nq; ++q)
        for (const auto& pos : chain_pos)
          idx[s_name(t, gamma, q, pos)] = b.add(s_name(t, gamma, q, pos));

  auto quit_for = [&](const std::string& name, int player, const Rational& r) {
    int qt = b.add(name);
    b.loop(qt);
    b.reward(qt, 0, Rational(-1));
    b.reward(qt, player, r);
    return qt;
  };

  for (int t = 0; t < 2; ++t) {
    for (const auto& gamma : kGammas) {
      for (int q = 0; q < nq; ++q) {
        auto at = [&](const std::string& pos) {
          return idx.at(s_name(t, gamma, q, pos));
        };
        // the quit chain runs A1 A2 B1 B2 D D' before player 0's branch
        struct Link {
          std::string pos;
          int player;
          Rational payout;
        };
        const std::vector<Link> links = {
            {"a1", pl_A(1, t), Rational(1)}, {"a2", pl_A(2, t), Rational(1)},
            {"b1", pl_B(1, t), Rational(1)}, {"b2", pl_B(2, t), Rational(1)},
            {"d", pl_D(t), Rational(2)},     {"dn", pl_D(1 - t), Rational(1)}};
        for (std::size_t l = 0; l < links.size(); ++l) {
          int here = at(links[l].pos);
          int next = l + 1 < links.size() ? at(links[l + 1].pos) : at("g");
          int qt = quit_for(s_name(t, gamma, q, links[l].pos) + "q",
                            links[l].player, links[l].payout);
          b.moves(here, links[l].player, {{"continue", next}, {"quit", qt}});
        }
        b.moves(at("g"), 0, {{"inst", idx.at(i_name(t, q))}, {"count", at("e1")}});
        int e1q = quit_for(s_name(t, gamma, q, "e1q"), pl_E(1), Rational(1));
        int e2q = quit_for(s_name(t, gamma, q, "e2q"), pl_E(2), Rational(1));
        b.moves(at("e1"), pl_E(1), {{"continue", at("e2")}, {"quit", e1q}});
        b.moves(at("e2"), pl_E(2), {{"continue", at("w")}, {"quit", e2q}});
        b.moves(at("w"), 0,
                {{"c1", cidx.at(c_entry(t, gamma, 1))},
                 {"c2", cidx.at(c_entry(t, gamma, 2))}});
      }
    }
  }

  for (int t = 0; t < 2; ++t) {
    for (int q = 0; q < nq; ++q) {
      int is = idx.at(i_name(t, q));
      const auto& ts = by_state[static_cast<std::size_t>(q)];
      if (ts.empty()) {
        b.loop(is);
        b.reward(is, 0, Rational(-1));
      } else if (ts.size() == 1) {
        b.moves(is, 1,
                {{"go", idx.at(s_name(1 - t, ts[0]->instr, ts[0]->to, "a1"))}});
      } else {
        const auto* zero = ts[0]->instr.rfind("zero", 0) == 0 ? ts[0] : ts[1];
        const auto* dec = zero == ts[0] ? ts[1] : ts[0];
        b.moves(is, 1,
                {{"zero", idx.at(s_name(1 - t, zero->instr, zero->to, "a1"))},
                 {"dec", idx.at(s_name(1 - t, dec->instr, dec->to, "a1"))}});
      }
    }
  }

  Game g = b.finish(idx.at(s_name(0, "init", m.initial, "a1")));
  // invariant of the counter terminals: each counter's A and B monitor of
  // either phase split exactly 4 between them
  for (int t = 0; t < 2; ++t)
    for (const auto& gamma : kGammas)
      for (int j = 1; j <= 2; ++j)
        for (const auto& kind : {"_grey", "_white"}) {
          int s = g.state_index(c_entry(t, gamma, j) + kind);
          if (s < 0) continue;
          for (int u = 0; u < 2; ++u) {
            Rational sum = g.states[static_cast<std::size_t>(s)]
                               .rewards[static_cast<std::size_t>(pl_A(j, u))] +
                           g.states[static_cast<std::size_t>(s)]
                               .rewards[static_cast<std::size_t>(pl_B(j, u))];
            if (sum != Rational(4))
              throw std::logic_error("counter game: monitor split violated at " +
                                     g.states[static_cast<std::size_t>(s)].name);
          }
        }
  return g;
}

SafeProfileTrace simulate_safe_profile(const CounterMachine& m, int horizon) {
  if (horizon < 2)
    throw std::invalid_argument("safe profile: horizon must be at least 2");
  std::vector<std::vector<const CounterMachine::Transition*>> by_state(
      m.states.size());
  for (const auto& t : m.transitions)
    by_state[static_cast<std::size_t>(t.from)].push_back(&t);

  SafeProfileTrace tr;
  tr.horizon = horizon;
  tr.c.assign(2, {});
  long cnt[2] = {0, 0};
  int q = m.initial;
  auto half_pow = [](long e) {
    Rational r(1);
    for (long i = 0; i < e; ++i) r *= Rational(1, 2);
    return r;
  };
  tr.gamma.push_back("init");
  tr.c[0].push_back(Rational(1));
  tr.c[1].push_back(Rational(1));
  for (int n = 1; n < horizon; ++n) {
    const auto& ts = by_state[static_cast<std::size_t>(q)];
    if (ts.empty())
      throw std::invalid_argument("safe profile: machine halts at step " +
                                  std::to_string(n - 1));
    std::string gamma;
    if (ts.size() == 1) {
      int j = ts[0]->instr.back() - '1';
      ++cnt[j];
      q = ts[0]->to;
      gamma = ts[0]->instr;
    } else {
      const auto* zero = ts[0]->instr.rfind("zero", 0) == 0 ? ts[0] : ts[1];
      const auto* dec = zero == ts[0] ? ts[1] : ts[0];
      int j = zero->instr.back() - '1';
      if (cnt[j] == 0) {
        q = zero->to;
        gamma = zero->instr;
      } else {
        --cnt[j];
        q = dec->to;
        gamma = dec->instr;
      }
    }
    tr.gamma.push_back(gamma);
    tr.c[0].push_back(half_pow(cnt[0]));
    tr.c[1].push_back(half_pow(cnt[1]));
  }
  // the update law the equilibrium enforces on the encodings
  for (int n = 1; n < horizon; ++n) {
    for (int j = 0; j < 2; ++j) {
      std::string sj = std::to_string(j + 1);
      const Rational &prev = tr.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(n - 1)],
                     &cur = tr.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
      const std::string& gamma = tr.gamma[static_cast<std::size_t>(n)];
      Rational want = gamma == "inc" + sj   ? prev / Rational(2)
                      : gamma == "dec" + sj ? prev * Rational(2)
                                            : prev;
      if (cur != want || (gamma == "zero" + sj && cur != Rational(1)))
        throw std::logic_error("safe profile: counter update law violated");
    }
  }
  // truncated expectation of each step's A monitor via the two-step
  // recurrence a_n = p_n + a_{n+2} / 4
  tr.a_trunc.assign(2, std::vector<Rational>(static_cast<std::size_t>(horizon - 1)));
  for (int j = 0; j < 2; ++j) {
    std::string sj = std::to_string(j + 1);
    for (int n = horizon - 2; n >= 0; --n) {
      const std::string& gamma = tr.gamma[static_cast<std::size_t>(n + 1)];
      Rational gain = gamma == "inc" + sj   ? Rational(4)
                      : gamma == "dec" + sj ? Rational(1)
                                            : Rational(2);
      Rational p = (Rational(3) - tr.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)]) /
                       Rational(4) +
                   gain / Rational(8) *
                       tr.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(n + 1)];
      tr.a_trunc[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] =
          p + (n + 2 <= horizon - 2
                   ? tr.a_trunc[static_cast<std::size_t>(j)][static_cast<std::size_t>(n + 2)] /
                         Rational(4)
                   : Rational(0));
    }
  }
  for (int n = 0; n < horizon - 1; ++n) {
    Rational bound(4);
    for (int i = 0; i < (horizon - n) / 2; ++i) bound /= Rational(4);
    tr.bound.push_back(bound);
  }
  return tr;
}

Game wrap_with_no_ne_gadget(const Game& g, const std::string& gadget, int n) {
  if (gadget != "G1" && gadget != "G2")
    throw std::invalid_argument("wrapper: gadget must be G1 or G2");
  if (n < 1) throw std::invalid_argument("wrapper: n must be positive");
  if (g.initial < 0)
    throw std::invalid_argument("wrapper: wrapped game needs an initial state");
  int k = std::max(3, g.player_count);
  std::set<std::string> used;
  for (const auto& st : g.states) used.insert(st.name);
  auto fresh = [&](std::string name) {
    while (used.count(name)) name += "'";
    used.insert(name);
    return name;
  };
  Builder b(k);
  int s0p = b.add(fresh("wrap_s0"));
  int s1p = b.add(fresh("wrap_s1"));
  int gs1 = b.add(fresh("noeq_s1"));
  int gsafe = b.add(fresh("noeq_safe"));
  int gdead = b.add(fresh("noeq_dead"));
  b.loop(gsafe);
  b.loop(gdead);
  b.matrix(gs1, 1, 2, {gs1, gsafe, gsafe, gdead});
  int branch;
  if (gadget == "G2") {
    // players 1 and 2 replay the matching game forever; player 0 banks 1
    // in every gadget state
    for (int s : {gs1, gsafe, gdead}) b.reward(s, 0, Rational(1));
    b.reward(gs1, 2, Rational(1));
    b.reward(gsafe, 1, Rational(1));
    b.reward(gdead, 2, Rational(1));
    // payoff (0, 1/n, (n-1)/n) as an n-cycle of 0/1 rewards
    std::vector<int> cyc;
    for (int i = 0; i < n; ++i) cyc.push_back(b.add(fresh("pay" + std::to_string(i))));
    for (int i = 0; i < n; ++i) {
      b.moves(cyc[static_cast<std::size_t>(i)], 0,
              {{"-", cyc[static_cast<std::size_t>((i + 1) % n)]}});
      b.reward(cyc[static_cast<std::size_t>(i)], 1, i == 0 ? Rational(1) : Rational(0));
      b.reward(cyc[static_cast<std::size_t>(i)], 2, i == 0 ? Rational(0) : Rational(1));
    }
    branch = cyc[0];
  } else {
    // terminal-reward variant: the matching game pays at its terminals and
    // player 0 strictly prefers it over the new terminal
    b.reward(gsafe, 1, Rational(1));
    b.reward(gsafe, 2, Rational(-1));
    b.reward(gdead, 1, Rational(-1));
    b.reward(gdead, 2, Rational(1));
    branch = b.add(fresh("pay"));
    b.loop(branch);
    b.reward(branch, 0, Rational(-1));
    b.reward(branch, 1, Rational(1, n));
    b.reward(branch, 2, Rational(n - 1, n));
  }
  int off = b.embed(g, "");
  b.moves(s0p, 0, {{"a", s1p}, {"b", gs1}});
  b.matrix(s1p, 1, 2, {off + g.initial, branch, branch, branch});
  return b.finish(s0p);
}

Game builtin_example(const std::string& name) {
  static const char* g1 = R"({
    "players": 2, "initial": "s1",
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
  })";
  static const char* g2 = R"({
    "players": 2, "initial": "s1",
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
  })";
  static const char* fig3 = R"({
    "players": 3, "initial": "s0",
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
  })";
  static const char* fig4 = R"({
    "players": 3, "initial": "s0",
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
  })";
  if (name == "G1") return game_from_json(nlohmann::json::parse(g1));
  if (name == "G2") return game_from_json(nlohmann::json::parse(g2));
  if (name == "fig3") return game_from_json(nlohmann::json::parse(fig3));
  if (name == "fig4") return game_from_json(nlohmann::json::parse(fig4));
  if (name.rfind("Gp(", 0) == 0 && name.back() == ')')
    return gen_sqrt_gadget(Rational::parse(name.substr(3, name.size() - 4))).game;
  if (name == "satDemo") {
    CnfFormula f;
    f.variables = 2;
    f.clauses = {{1, -2}, {2}};
    return gen_sat_game(f);
  }
  if (name == "hamTriangle")
    return gen_hamiltonian_game({"v0", "v1", "v2"}, {{1, 2}, {2, 0}, {0, 1}}, 0);
  throw std::invalid_argument("unknown example: " + name);
}

}  // namespace negame
