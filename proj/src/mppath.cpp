#include "negame/mppath.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "negame/lp.hpp"

namespace negame {

std::optional<FlowSolution> scc_lp(const WeightedGraph& g, const Scc& scc,
                                   const std::vector<ExtendedRational>& x,
                                   const std::vector<ExtendedRational>& y) {
  int k = g.weight_count();
  if (static_cast<int>(x.size()) != k || static_cast<int>(y.size()) != k)
    throw std::invalid_argument("scc_lp: threshold arity mismatch");
  if (!scc.has_internal_edge) return std::nullopt;

  std::vector<char> in(g.vertices.size(), 0);
  for (int v : scc.vertices) in[v] = 1;
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges)
    if (in[u] && in[v]) edges.emplace_back(u, v);
  int m = static_cast<int>(edges.size());

  LinearProgram lp;
  auto var = [&](int i, int e) { return i * m + e; };
  for (int i = 0; i < k; ++i)
    for (int e = 0; e < m; ++e)
      lp.variables.push_back("f_" + std::to_string(i) + "_" + std::to_string(e));
  int nvar = k * m;
  auto row = [&]() { return std::vector<Rational>(nvar, Rational(0)); };

  // (1) f >= 0
  for (int v = 0; v < nvar; ++v) {
    auto c = row();
    c[v] = Rational(1);
    lp.constraints.push_back({std::move(c), Relation::GreaterEq, Rational(0)});
  }
  // (2) total mass 1 per weight index
  for (int i = 0; i < k; ++i) {
    auto c = row();
    for (int e = 0; e < m; ++e) c[var(i, e)] = Rational(1);
    lp.constraints.push_back({std::move(c), Relation::Equal, Rational(1)});
  }
  // (3) flow conservation per weight index and vertex
  for (int i = 0; i < k; ++i)
    for (int v : scc.vertices) {
      auto c = row();
      for (int e = 0; e < m; ++e) {
        if (edges[e].second == v) c[var(i, e)] += Rational(1);
        if (edges[e].first == v) c[var(i, e)] -= Rational(1);
      }
      lp.constraints.push_back({std::move(c), Relation::Equal, Rational(0)});
    }
  // (4) x_i <= z_i <= y_i, infinite bounds dropped
  for (int i = 0; i < k; ++i) {
    if (x[i].is_finite()) {
      auto c = row();
      for (int e = 0; e < m; ++e) c[var(i, e)] = g.weights[edges[e].first][i];
      lp.constraints.push_back({std::move(c), Relation::GreaterEq, x[i].finite()});
    }
    if (y[i].is_finite()) {
      auto c = row();
      for (int e = 0; e < m; ++e) c[var(i, e)] = g.weights[edges[e].first][i];
      lp.constraints.push_back({std::move(c), Relation::LessEq, y[i].finite()});
    }
  }
  // (5) z_i <= sum_e f_{j,e} r_i(e) for every pair i != j
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      auto c = row();
      for (int e = 0; e < m; ++e) {
        c[var(j, e)] += g.weights[edges[e].first][i];
        c[var(i, e)] -= g.weights[edges[e].first][i];
      }
      lp.constraints.push_back({std::move(c), Relation::GreaterEq, Rational(0)});
    }

  auto r = lp_solve(lp);
  if (r.status != LpResult::Status::Feasible) return std::nullopt;

  FlowSolution sol;
  sol.scc_vertices = scc.vertices;
  sol.edges = edges;
  sol.f.assign(k, std::vector<Rational>(m));
  sol.z.assign(k, Rational(0));
  for (int i = 0; i < k; ++i)
    for (int e = 0; e < m; ++e) {
      sol.f[i][e] = r.assignment[var(i, e)];
      sol.z[i] += sol.f[i][e] * g.weights[edges[e].first][i];
    }
  return sol;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CycleWitness extract_cycle_witness(const WeightedGraph& g, const FlowSolution& fs) {
  int k = static_cast<int>(fs.f.size());
  int m = static_cast<int>(fs.edges.size());
  CycleWitness w;
  w.d = 1;
  for (int i = 0; i < k; ++i)
    for (int e = 0; e < m; ++e)
      w.d = lcm(w.d, mpz_class(fs.f[i][e].denominator()));
  w.multiplicity.assign(k, std::vector<mpz_class>(m));
  Rational d{w.d};
  mpz_class total = 0;
  for (int i = 0; i < k; ++i)
    for (int e = 0; e < m; ++e) {
      Rational c = fs.f[i][e] * d;
      w.multiplicity[i][e] = c.numerator();
      total += c.numerator();
    }
  if (total > 5'000'000)
    throw std::runtime_error("extract_cycle_witness: multiplicities too large to materialize");

  int n = static_cast<int>(g.vertices.size());
  for (int i = 0; i < k; ++i) {
    // balance check (restates flow conservation)
    std::map<int, mpz_class> degree;  // in minus out
    for (int e = 0; e < m; ++e) {
      if (w.multiplicity[i][e] == 0) continue;
      degree[fs.edges[e].second] += w.multiplicity[i][e];
      degree[fs.edges[e].first] -= w.multiplicity[i][e];
    }
    for (const auto& [v, d2] : degree)
      if (d2 != 0)
        throw std::invalid_argument("extract_cycle_witness: unbalanced multigraph");

    // connected components of the support (undirected view)
    Dsu dsu(n);
    for (int e = 0; e < m; ++e)
      if (w.multiplicity[i][e] != 0) dsu.join(fs.edges[e].first, fs.edges[e].second);

    std::vector<long long> remaining(m);
    std::vector<std::vector<int>> out(n);  // edge ids
    for (int e = 0; e < m; ++e) {
      remaining[e] = w.multiplicity[i][e].get_si();
      if (remaining[e] > 0) out[fs.edges[e].first].push_back(e);
    }
    std::vector<std::vector<int>> family;
    std::vector<char> used_root(n, 0);
    for (int v0 = 0; v0 < n; ++v0) {
      if (out[v0].empty()) continue;
      int root = dsu.find(v0);
      if (used_root[root]) continue;
      bool has_left = false;
      for (int e : out[v0])
        if (remaining[e] > 0) { has_left = true; break; }
      if (!has_left) continue;
      used_root[root] = 1;

      // Hierholzer over the component containing v0
      std::vector<int> stack{v0}, cycle;
      std::vector<std::size_t> cursor(n, 0);
      while (!stack.empty()) {
        int v = stack.back();
        int chosen = -1;
        while (cursor[v] < out[v].size()) {
          int e = out[v][cursor[v]];
          if (remaining[e] > 0) { chosen = e; break; }
          ++cursor[v];
        }
        if (chosen >= 0) {
          --remaining[chosen];
          if (remaining[chosen] == 0) ++cursor[v];
          stack.push_back(fs.edges[chosen].second);
        } else {
          cycle.push_back(v);
          stack.pop_back();
        }
      }
      std::reverse(cycle.begin(), cycle.end());
      cycle.pop_back();  // closing vertex repeats the first
      family.push_back(std::move(cycle));
    }
    w.cycles.push_back(std::move(family));
  }

  w.schedule =
      "For n = 1, 2, ... the witness path plays phase i = n mod " +
      std::to_string(k) +
      ": traverse every cycle of family i in order, n times each (zeta_n^i), "
      "repeated n! times, then move to the start of the next phase's first "
      "cycle along any connecting path inside the component. Edge e is used "
      "with long-run frequency f_{i,e} = c_{i,e}/" + w.d.get_str() +
      " during phase i, so the limit-average payoff of the path is z.";
  return w;
}

std::optional<PathWitness> feasible_path(const WeightedGraph& g, int v0,
                                         const std::vector<ExtendedRational>& x,
                                         const std::vector<ExtendedRational>& y) {
  auto reach = reachable(g, v0);
  std::vector<char> in_reach(g.vertices.size(), 0);
  for (int v : reach) in_reach[v] = 1;
  for (const auto& scc : sccs(g)) {
    if (!scc.has_internal_edge || !in_reach[scc.vertices[0]]) continue;
    auto sol = scc_lp(g, scc, x, y);
    if (!sol) continue;
    PathWitness w;
    w.scc = scc;
    w.witness = extract_cycle_witness(g, *sol);
    w.flow = *std::move(sol);
    return w;
  }
  return std::nullopt;
}

}  // namespace negame
