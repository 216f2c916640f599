#include "negame/purene.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace negame {

namespace {

bool profile_secure(const Game& g, const PvalTable& pt, int s, int code,
                    const std::vector<ExtendedRational>& z) {
  auto idx = g.decode_profile(s, code);
  for (int i = 0; i < g.player_count; ++i)
    for (std::size_t b = 0; b < g.states[s].actions[i].size(); ++b) {
      auto dev = idx;
      dev[i] = static_cast<int>(b);
      int t = g.successor(s, g.encode_profile(s, dev));
      if (!(ExtendedRational(pt.pval[i][t]) <= z[i])) return false;
    }
  return true;
}

// BFS path (vertex sequence, endpoints included) in the secure graph.
std::vector<int> bfs_path(const WeightedGraph& g, int from, int to) {
  if (from == to) return {from};
  auto adj = g.adjacency();
  std::vector<int> prev(g.vertices.size(), -1);
  std::queue<int> q;
  q.push(from);
  prev[from] = from;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : adj[v]) {
      if (prev[u] != -1) continue;
      prev[u] = v;
      if (u == to) {
        std::vector<int> path{to};
        while (path.back() != from) path.push_back(prev[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      q.push(u);
    }
  }
  throw std::logic_error("bfs_path: target unreachable inside witness component");
}

std::string describe(const Game& g, const PureWitness& w) {
  std::string d = "Equilibrium strategy profile (payoff ";
  for (std::size_t i = 0; i < w.payoff.size(); ++i)
    d += (i ? "," : "(") + w.payoff[i].str();
  d +=
      ")): (1) while the history follows the witness path, play the stored "
      "z-secure profile of the current edge; (2) at the first divergence, if "
      "exactly one player i deviated, the coalition switches to the "
      "punishment profile against i forever, holding i to at most z_i = ";
  for (std::size_t i = 0; i < w.z.size(); ++i)
    d += (i ? "," : "(") + w.z[i].str();
  d += "); (3) after any other divergence, play the first legal profile.";
  return d;
}

PureWitness make_witness(const Game& g, int s0, const PvalTable& pt,
                         std::vector<Rational> z, SecureGraph sg,
                         PathWitness pw) {
  PureWitness w;
  w.s0 = s0;
  w.z = std::move(z);
  w.payoff = pw.flow.z;
  w.graph = std::move(sg);
  w.path = std::move(pw);
  w.punish = pt.punish;
  w.description = describe(g, w);
  return w;
}

}  // namespace

SecureGraph secure_graph(const Game& g, const PvalTable& pt,
                         const std::vector<ExtendedRational>& z) {
  SecureGraph sg;
  sg.z = z;
  for (const auto& st : g.states) {
    sg.graph.vertices.push_back(st.name);
    std::vector<Rational> wrow;
    for (const auto& r : st.rewards) wrow.push_back(r);
    sg.graph.weights.push_back(std::move(wrow));
  }
  int ns = static_cast<int>(g.states.size());
  for (int s = 0; s < ns; ++s) {
    std::set<int> seen;  // targets already covered at s
    for (int code = 0; code < g.profile_count(s); ++code) {
      int t = g.successor(s, code);
      if (seen.count(t)) continue;
      if (profile_secure(g, pt, s, code, z)) {
        seen.insert(t);
        sg.graph.edges.emplace_back(s, t);
        sg.edge_profile.push_back(code);
      }
    }
  }
  return sg;
}

std::optional<PureWitness> decide_pure_ne(const Game& g, int s0,
                                          const std::vector<ExtendedRational>& x,
                                          const std::vector<ExtendedRational>& y) {
  auto pt = pval_table(g);
  int k = g.player_count;
  std::vector<std::vector<Rational>> cand(k);
  for (int i = 0; i < k; ++i) {
    std::set<Rational> c;
    if (x[i].is_finite()) c.insert(x[i].finite());
    for (const auto& p : pt.pval[i]) {
      ExtendedRational pe{p};
      if (x[i] <= pe && pe <= y[i]) c.insert(p);
    }
    if (c.empty()) return std::nullopt;  // every NE payoff >= pval_i(s0)
    cand[i].assign(c.begin(), c.end());
  }

  std::map<std::vector<Rational>, SecureGraph> memo;
  std::vector<std::size_t> pick(k, 0);
  for (;;) {
    std::vector<Rational> z(k);
    for (int i = 0; i < k; ++i) z[i] = cand[i][pick[i]];
    auto it = memo.find(z);
    if (it == memo.end()) {
      std::vector<ExtendedRational> ze(z.begin(), z.end());
      it = memo.emplace(z, secure_graph(g, pt, ze)).first;
    }
    const SecureGraph& sg = it->second;
    std::vector<ExtendedRational> lower(z.begin(), z.end());
    auto pw = feasible_path(sg.graph, s0, lower, y);
    if (pw) return make_witness(g, s0, pt, std::move(z), sg, *std::move(pw));

    int i = k - 1;
    while (i >= 0 && ++pick[i] == cand[i].size()) pick[i--] = 0;
    if (i < 0) return std::nullopt;
  }
}

std::vector<int> witness_path_states(const Game& g, const PureWitness& w,
                                     int steps) {
  (void)g;
  int k = static_cast<int>(w.path.witness.cycles.size());
  std::vector<int> out;
  // approach the component: shortest secure path from s0 to the first cycle
  int first_fam = 1 % k;
  const auto& first_cycle = w.path.witness.cycles[first_fam].front();
  auto prefix = bfs_path(w.graph.graph, w.s0, first_cycle.front());
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i) out.push_back(prefix[i]);
  int cur = first_cycle.front();
  for (long long n = 1; static_cast<int>(out.size()) < steps; ++n) {
    int fam = static_cast<int>(n % k);
    long long reps = 1;
    for (long long t = 2; t <= n && reps < steps; ++t) reps *= t;  // n!
    for (long long rep = 0;
         rep < reps && static_cast<int>(out.size()) < steps; ++rep) {
      for (const auto& cyc : w.path.witness.cycles[fam]) {
        if (static_cast<int>(out.size()) >= steps) break;
        auto hop = bfs_path(w.graph.graph, cur, cyc.front());
        for (std::size_t i = 0; i + 1 < hop.size(); ++i) out.push_back(hop[i]);
        for (long long lap = 0;
             lap < n && static_cast<int>(out.size()) < steps; ++lap)
          for (int v : cyc) out.push_back(v);
        cur = cyc.front();
      }
    }
  }
  out.resize(steps);
  return out;
}

int witness_prescription(const Game& g, const PureWitness& w,
                         const std::vector<int>& history) {
  // profile prescribed for each secure edge
  std::map<std::pair<int, int>, int> edge_code;
  for (std::size_t e = 0; e < w.graph.graph.edges.size(); ++e)
    edge_code[w.graph.graph.edges[e]] = w.graph.edge_profile[e];

  int len = static_cast<int>(history.size());
  auto onpath = witness_path_states(g, w, len + 2);

  // actual states visited
  std::vector<int> actual{w.s0};
  for (int c : history) {
    int s = actual.back();
    if (c < 0 || c >= g.profile_count(s))
      throw std::invalid_argument("witness_prescription: illegal profile code");
    actual.push_back(g.successor(s, c));
  }

  for (int t = 0; t < len; ++t) {
    int prescribed = edge_code.at({onpath[t], onpath[t + 1]});
    if (actual[t] == onpath[t] && history[t] == prescribed) continue;
    // first divergence
    int s_end = actual.back();
    if (actual[t] != onpath[t])
      throw std::logic_error("witness_prescription: inconsistent history");
    auto want = g.decode_profile(onpath[t], prescribed);
    auto got = g.decode_profile(onpath[t], history[t]);
    int deviator = -1, diffs = 0;
    for (int i = 0; i < g.player_count; ++i)
      if (want[i] != got[i]) {
        deviator = i;
        ++diffs;
      }
    if (diffs == 1)
      return g.encode_profile(s_end, w.punish[deviator].choice[s_end]);
    return 0;  // simultaneous divergence: first legal profile
  }
  return edge_code.at({onpath[len], onpath[len + 1]});
}

std::string pure_witness_profile(const Game& g, const PureWitness& w) {
  (void)g;
  return w.description;
}

std::optional<PureWitness> decide_pure_ne_terminal(
    const Game& g, int s0, const std::vector<ExtendedRational>& x,
    const std::vector<ExtendedRational>& y) {
  if (!is_terminal_reward(g))
    throw std::invalid_argument("decide_pure_ne_terminal: not a terminal-reward game");
  auto pt = pval_table(g);
  int k = g.player_count;

  auto zero = std::vector<Rational>(k, Rational(0));
  std::vector<std::pair<std::vector<Rational>, int>> cands;  // payoff, terminal
  cands.emplace_back(zero, -1);
  for (int t : terminal_states(g)) cands.emplace_back(g.states[t].rewards, t);

  for (const auto& [p, term] : cands) {
    bool boxed = true;
    for (int i = 0; i < k; ++i) {
      ExtendedRational pe{p[i]};
      if (pe < x[i] || y[i] < pe) { boxed = false; break; }
    }
    if (!boxed) continue;

    // z_i = max{x_i, pval_i(s) : pval_i(s) <= p_i}; empty set kills the
    // candidate (the deviator can always beat p_i)
    std::vector<Rational> z(k);
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      bool have = false;
      Rational best;
      if (x[i].is_finite()) { have = true; best = x[i].finite(); }
      for (const auto& pv : pt.pval[i])
        if (pv <= p[i] && (!have || pv > best)) { have = true; best = pv; }
      if (!have) { ok = false; break; }
      z[i] = best;
    }
    if (!ok) continue;

    std::vector<ExtendedRational> ze(z.begin(), z.end());
    auto sg = secure_graph(g, pt, ze);

    std::vector<std::pair<int, int>> cycle_edges;  // the secure cycle to pin
    if (term >= 0) {
      bool self = false;
      for (std::size_t e = 0; e < sg.graph.edges.size(); ++e)
        if (sg.graph.edges[e] == std::make_pair(term, term)) self = true;
      if (!self) continue;
      auto reach = reachable(sg.graph, s0);
      if (std::find(reach.begin(), reach.end(), term) == reach.end()) continue;
      cycle_edges = {{term, term}};
    } else {
      // zero payoff: a reachable secure cycle through zero-reward states
      WeightedGraph sub = sg.graph;
      sub.edges.clear();
      auto zero_state = [&](int s) {
        for (const auto& r : g.states[s].rewards)
          if (r.sign() != 0) return false;
        return true;
      };
      for (auto [u, v] : sg.graph.edges)
        if (zero_state(u) && zero_state(v)) sub.edges.emplace_back(u, v);
      if (!zero_state(s0)) continue;  // cannot even start among zero states
      // also require reachability from s0 through secure edges; a path from
      // s0 can only cross zero-reward states (terminals cannot be crossed)
      auto reach = reachable(sub, s0);
      std::vector<char> in(sub.vertices.size(), 0);
      for (int v : reach) in[v] = 1;
      std::optional<std::vector<int>> cyc;
      for (const auto& c : sccs(sub)) {
        if (!c.has_internal_edge || !in[c.vertices[0]]) continue;
        auto mc = max_mean_cycle(sub, 0, c.vertices[0]);
        cyc = mc->cycle;
        break;
      }
      if (!cyc) continue;
      for (std::size_t i = 0; i < cyc->size(); ++i)
        cycle_edges.emplace_back((*cyc)[i], (*cyc)[(i + 1) % cyc->size()]);
    }

    // assemble a one-cycle path witness by hand
    FlowSolution fs;
    for (auto [u, v] : cycle_edges) {
      fs.scc_vertices.push_back(u);
      fs.edges.emplace_back(u, v);
    }
    std::sort(fs.scc_vertices.begin(), fs.scc_vertices.end());
    Rational share(1, static_cast<long>(cycle_edges.size()));
    fs.f.assign(k, std::vector<Rational>(cycle_edges.size(), share));
    fs.z = p;
    PathWitness pw;
    pw.scc.vertices = fs.scc_vertices;
    pw.scc.has_internal_edge = true;
    pw.witness = extract_cycle_witness(sg.graph, fs);
    pw.flow = fs;
    return make_witness(g, s0, pt, std::move(z), std::move(sg), std::move(pw));
  }
  return std::nullopt;
}

}  // namespace negame
