#include "negame/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace negame {

int WeightedGraph::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<int>> WeightedGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (auto [u, v] : edges) adj[u].push_back(v);
  return adj;
}

WeightedGraph graph_from_json(const nlohmann::json& j) {
  WeightedGraph g;
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
      !j.contains("weights"))
    throw std::invalid_argument("graph: expected vertices/edges/weights");
  for (const auto& v : j.at("vertices")) g.vertices.push_back(v.get<std::string>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph: edge must be [u, v]");
    int u = g.vertex_index(e[0].get<std::string>());
    int v = g.vertex_index(e[1].get<std::string>());
    if (u < 0 || v < 0) throw std::invalid_argument("graph: edge endpoint unknown");
    g.edges.emplace_back(u, v);
  }
  for (const auto& row : j.at("weights")) {
    std::vector<Rational> w;
    for (const auto& x : row) w.push_back(Rational::parse(x.get<std::string>()));
    g.weights.push_back(std::move(w));
  }
  if (g.weights.size() != g.vertices.size())
    throw std::invalid_argument("graph: one weight row per vertex required");
  for (const auto& w : g.weights)
    if (static_cast<int>(w.size()) != g.weight_count())
      throw std::invalid_argument("graph: ragged weight rows");
  return g;
}

nlohmann::ordered_json graph_to_json(const WeightedGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertices;
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges)
    edges.push_back({g.vertices[u], g.vertices[v]});
  j["edges"] = std::move(edges);
  auto weights = nlohmann::ordered_json::array();
  for (const auto& row : g.weights) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& x : row) r.push_back(x.str());
    weights.push_back(std::move(r));
  }
  j["weights"] = std::move(weights);
  return j;
}

std::vector<int> reachable(const WeightedGraph& g, int v0) {
  if (v0 < 0 || v0 >= static_cast<int>(g.vertices.size()))
    throw std::invalid_argument("reachable: unknown start vertex");
  auto adj = g.adjacency();
  std::vector<bool> seen(g.vertices.size(), false);
  std::vector<int> stack{v0};
  seen[v0] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<Scc> sccs(const WeightedGraph& g) {
  int n = static_cast<int>(g.vertices.size());
  auto adj = g.adjacency();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<Scc> out;
  int next_index = 0;

  // Iterative Tarjan; components are emitted in reverse topological order.
  struct Frame { int v; std::size_t child; };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    while (!frames.empty()) {
      auto& f = frames.back();
      int v = f.v;
      if (f.child == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (f.child < adj[v].size()) {
        int w = adj[v][f.child++];
        if (index[w] == -1) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        Scc c;
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = static_cast<int>(out.size());
          c.vertices.push_back(w);
          if (w == v) break;
        }
        std::sort(c.vertices.begin(), c.vertices.end());
        out.push_back(std::move(c));
      }
      frames.pop_back();
      if (!frames.empty()) {
        int p = frames.back().v;
        low[p] = std::min(low[p], low[v]);
      }
    }
  }
  for (auto [u, v] : g.edges)
    if (comp[u] == comp[v]) out[comp[u]].has_internal_edge = true;
  return out;
}

namespace {

// Max mean over cycles inside one strongly connected set (all weights taken
// from `w`, edge weight = weight of source). `verts` must have an internal
// edge. Returns value and a witness cycle attaining it.
MeanCycle karp_scc(const std::vector<int>& verts,
                   const std::vector<std::vector<int>>& adj,
                   const std::vector<Rational>& w) {
  int nn = static_cast<int>(verts.size());
  std::vector<int> local(adj.size(), -1);
  for (int i = 0; i < nn; ++i) local[verts[i]] = i;

  // Internal edges with weights, in local indexing.
  struct E { int u, v; Rational wt; };
  std::vector<E> es;
  for (int i = 0; i < nn; ++i)
    for (int t : adj[verts[i]])
      if (local[t] >= 0) es.push_back({i, local[t], w[verts[i]]});

  // Karp: D[k][v] = best weight of a length-k walk from vertex 0 to v.
  const Rational none(0);
  std::vector<std::vector<bool>> has(nn + 1, std::vector<bool>(nn, false));
  std::vector<std::vector<Rational>> d(nn + 1, std::vector<Rational>(nn, none));
  has[0][0] = true;
  for (int k = 1; k <= nn; ++k)
    for (const auto& e : es) {
      if (!has[k - 1][e.u]) continue;
      Rational cand = d[k - 1][e.u] + e.wt;
      if (!has[k][e.v] || cand > d[k][e.v]) {
        has[k][e.v] = true;
        d[k][e.v] = cand;
      }
    }

  bool found = false;
  Rational best;
  for (int v = 0; v < nn; ++v) {
    if (!has[nn][v]) continue;
    bool vfound = false;
    Rational vmin;
    for (int k = 0; k < nn; ++k) {
      if (!has[k][v]) continue;
      Rational mean = (d[nn][v] - d[k][v]) / Rational(nn - k);
      if (!vfound || mean < vmin) {
        vfound = true;
        vmin = mean;
      }
    }
    if (vfound && (!found || vmin > best)) {
      found = true;
      best = vmin;
    }
  }
  if (!found) throw std::logic_error("karp_scc: no cycle in component");

  // Witness: with weights shifted by -best no positive cycle remains and a
  // zero cycle exists. Longest-walk potentials stabilize; every zero cycle
  // consists of tight edges, so a cycle survives pruning of vertices without
  // tight out-edges.
  std::vector<Rational> pot(nn, Rational(0));
  for (int round = 0; round < nn; ++round) {
    bool changed = false;
    for (const auto& e : es) {
      Rational cand = pot[e.u] + e.wt - best;
      if (cand > pot[e.v]) {
        pot[e.v] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<std::vector<int>> tight(nn);
  for (const auto& e : es)
    if (pot[e.u] + e.wt - best == pot[e.v]) tight[e.u].push_back(e.v);
  std::vector<bool> alive(nn, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < nn; ++v) {
      if (!alive[v]) continue;
      bool has_out = false;
      for (int t : tight[v])
        if (alive[t]) { has_out = true; break; }
      if (!has_out) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  int start = -1;
  for (int v = 0; v < nn; ++v)
    if (alive[v]) { start = v; break; }
  if (start < 0) throw std::logic_error("karp_scc: witness extraction failed");
  std::vector<int> mark(nn, -1), walk;
  int cur = start;
  while (mark[cur] == -1) {
    mark[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    int nxt = -1;
    for (int t : tight[cur])
      if (alive[t]) { nxt = t; break; }
    cur = nxt;
  }
  MeanCycle mc;
  mc.value = best;
  for (std::size_t i = mark[cur]; i < walk.size(); ++i)
    mc.cycle.push_back(verts[walk[i]]);
  return mc;
}

}  // namespace

std::optional<MeanCycle> max_mean_cycle(const WeightedGraph& g, int i, int from) {
  if (i < 0 || i >= g.weight_count())
    throw std::invalid_argument("max_mean_cycle: bad weight index");
  auto reach = reachable(g, from);
  std::vector<bool> in_reach(g.vertices.size(), false);
  for (int v : reach) in_reach[v] = true;

  // Restrict to the reachable subgraph, then take each SCC with a cycle.
  WeightedGraph sub = g;
  sub.edges.clear();
  for (auto [u, v] : g.edges)
    if (in_reach[u] && in_reach[v]) sub.edges.emplace_back(u, v);
  auto adj = sub.adjacency();
  std::vector<Rational> w(g.vertices.size());
  for (std::size_t s = 0; s < g.vertices.size(); ++s) w[s] = g.weights[s][i];

  std::optional<MeanCycle> best;
  for (const auto& c : sccs(sub)) {
    if (!c.has_internal_edge || !in_reach[c.vertices[0]]) continue;
    MeanCycle mc = karp_scc(c.vertices, adj, w);
    if (!best || mc.value > best->value) best = std::move(mc);
  }
  return best;
}

std::optional<MeanCycle> min_mean_cycle(const WeightedGraph& g, int i, int from) {
  WeightedGraph neg = g;
  for (auto& row : neg.weights) row[i] = -row[i];
  auto r = max_mean_cycle(neg, i, from);
  if (r) r->value = -r->value;
  return r;
}

}  // namespace negame
