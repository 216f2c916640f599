#include "negame/zerosum.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace negame {

namespace {

constexpr long long kWeightCap = 1'000'000'000LL;  // keeps all lifting math in int64

// Least-progress-measure lifting for the energy game with vertex weights
// lw: a move from v adds lw[v] to the energy. Vertices with lifter[v] true
// try to keep the energy bounded (picking the successor with least required
// credit); the others try to exhaust it. f[v] <= top iff the lifter wins
// from v; choice[v] is a credit-preserving successor position for winning
// lifter vertices.
struct EnergyResult {
  std::vector<long long> f;  // top + 1 encodes "lost"
  long long top = 0;
  std::vector<int> choice;
};

EnergyResult energy_lift(const std::vector<std::vector<int>>& succ,
                         const std::vector<char>& lifter,
                         const std::vector<long long>& lw) {
  int n = static_cast<int>(succ.size());
  long long top = 0;
  for (int v = 0; v < n; ++v)
    if (lw[v] < 0) top -= lw[v];
  const long long lost = top + 1;

  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v)
    for (int u : succ[v]) pred[u].push_back(v);

  std::vector<long long> f(n, 0);
  auto needed = [&](int v) {
    long long best = lifter[v] ? lost : 0;
    for (int u : succ[v]) {
      long long c;
      if (f[u] > top)
        c = lost;
      else
        c = std::max(0LL, f[u] - lw[v]);
      if (c > top) c = lost;
      if (lifter[v])
        best = std::min(best, c);
      else
        best = std::max(best, c);
    }
    return best;
  };

  std::deque<int> queue;
  std::vector<char> queued(n, 1);
  for (int v = 0; v < n; ++v) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    long long nf = needed(v);
    if (nf <= f[v]) continue;
    f[v] = nf;
    for (int u : pred[v])
      if (!queued[u]) {
        queued[u] = 1;
        queue.push_back(u);
      }
  }

  EnergyResult res;
  res.top = top;
  res.choice.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!lifter[v] || f[v] > top) continue;
    for (std::size_t p = 0; p < succ[v].size(); ++p) {
      int u = succ[v][p];
      if (f[u] <= top && std::max(0LL, f[u] - lw[v]) <= f[v]) {
        res.choice[v] = static_cast<int>(p);
        break;
      }
    }
    if (res.choice[v] < 0)
      throw std::logic_error("energy_lift: fixpoint without witness successor");
  }
  res.f = std::move(f);
  return res;
}

// Fractions p/q in [0,1) with q <= n, ascending (Farey sequence minus 1/1).
std::vector<std::pair<long long, long long>> farey(long long n) {
  std::vector<std::pair<long long, long long>> out;
  long long a = 0, b = 1, c = 1, d = n;
  out.emplace_back(a, b);
  while (c < d || (c == 1 && d == 1)) {
    if (c == 1 && d == 1) break;
    long long k = (n + b) / d;
    long long e = k * c - a, g = k * d - b;
    a = c;
    b = d;
    c = e;
    d = g;
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

MpgSolution solve_mpg(const MeanPayoffGame& m) {
  int n = static_cast<int>(m.vertices.size());
  if (n == 0) return {};
  for (const auto& v : m.vertices)
    if (v.succ.empty())
      throw std::invalid_argument("solve_mpg: vertex without successor");

  // Clear denominators: integer weights wi = D * weight.
  mpz_class dlcm(1);
  for (const auto& v : m.vertices)
    dlcm = lcm(dlcm, v.weight.denominator());
  Rational scale{dlcm};
  std::vector<long long> w(n);
  long long maxw = 0;
  for (int v = 0; v < n; ++v) {
    Rational s = m.vertices[v].weight * scale;
    mpz_class num = s.numerator();
    if (!num.fits_slong_p() || std::llabs(num.get_si()) > kWeightCap)
      throw std::invalid_argument("solve_mpg: weights out of supported range");
    w[v] = num.get_si();
    maxw = std::max(maxw, std::llabs(w[v]));
  }

  std::vector<std::vector<int>> succ(n);
  std::vector<char> is_max(n), is_min(n);
  for (int v = 0; v < n; ++v) {
    succ[v] = m.vertices[v].succ;
    is_max[v] = m.vertices[v].is_max;
    is_min[v] = !m.vertices[v].is_max;
  }

  // "value(v) >= a/b" queries via energy lifting on weights b*w - a.
  std::map<std::pair<long long, long long>, std::vector<char>> memo;
  auto query = [&](long long a, long long b) -> const std::vector<char>& {
    long long g = std::gcd(std::llabs(a), b);
    if (g > 1) { a /= g; b /= g; }
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    std::vector<long long> lw(n);
    for (int v = 0; v < n; ++v) lw[v] = b * w[v] - a;
    auto er = energy_lift(succ, is_max, lw);
    std::vector<char> win(n);
    for (int v = 0; v < n; ++v) win[v] = er.f[v] <= er.top;
    return memo.emplace(std::make_pair(a, b), std::move(win)).first->second;
  };

  // Cycle means have denominator <= n, so all values lie in the candidate
  // grid c + p/q with c integer in [-maxw, maxw] and p/q in the Farey list.
  auto fr = farey(n);
  long long fsz = static_cast<long long>(fr.size());
  long long count = 2 * maxw * fsz + 1;  // last candidate is +maxw exactly
  auto cand = [&](long long idx) -> std::pair<long long, long long> {
    long long c = -maxw + idx / fsz;
    auto [p, q] = fr[idx % fsz];
    return {c * q + p, q};  // reduced: gcd(p,q)=1
  };

  std::vector<std::pair<long long, long long>> val(n);  // over integer weights
  for (int v = 0; v < n; ++v) {
    long long lo = 0, hi = count - 1;  // win at -maxw always holds
    while (lo < hi) {
      long long mid = lo + (hi - lo + 1) / 2;
      auto [a, b] = cand(mid);
      if (query(a, b)[v])
        lo = mid;
      else
        hi = mid - 1;
    }
    val[v] = cand(lo);
  }

  MpgSolution sol;
  sol.value.resize(n);
  for (int v = 0; v < n; ++v)
    sol.value[v] = Rational(val[v].first, val[v].second) / scale;
  sol.max_choice.assign(n, -1);
  sol.min_choice.assign(n, -1);

  // Strategies per value class: restrict to the class, then solve the
  // value-0 energy game on shifted weights (and its dual for Min).
  std::map<std::pair<long long, long long>, std::vector<int>> classes;
  for (int v = 0; v < n; ++v) classes[val[v]].push_back(v);
  for (const auto& [t, members] : classes) {
    auto [a, b] = t;
    std::vector<char> in_class(n, 0);
    for (int v : members) in_class[v] = 1;
    std::vector<std::vector<int>> csucc(n);
    std::vector<std::vector<int>> pos(n);  // original successor positions
    for (int v : members)
      for (std::size_t p = 0; p < succ[v].size(); ++p)
        if (in_class[succ[v][p]]) {
          csucc[v].push_back(succ[v][p]);
          pos[v].push_back(static_cast<int>(p));
        }
    // Lift only over class members; map to a compact index space.
    std::vector<int> local(n, -1);
    int nn = static_cast<int>(members.size());
    for (int i = 0; i < nn; ++i) local[members[i]] = i;
    std::vector<std::vector<int>> lsucc(nn);
    std::vector<long long> lw_max(nn), lw_min(nn);
    std::vector<char> lmax(nn), lmin(nn);
    for (int i = 0; i < nn; ++i) {
      int v = members[i];
      for (int u : csucc[v]) lsucc[i].push_back(local[u]);
      if (lsucc[i].empty())
        throw std::logic_error("solve_mpg: value class without internal move");
      lw_max[i] = b * w[v] - a;
      lw_min[i] = a - b * w[v];
      lmax[i] = is_max[v];
      lmin[i] = is_min[v];
    }
    auto er_max = energy_lift(lsucc, lmax, lw_max);
    auto er_min = energy_lift(lsucc, lmin, lw_min);
    for (int i = 0; i < nn; ++i) {
      int v = members[i];
      if (er_max.f[i] > er_max.top || er_min.f[i] > er_min.top)
        throw std::logic_error("solve_mpg: class member loses its own value");
      if (is_max[v]) sol.max_choice[v] = pos[v][er_max.choice[i]];
      if (is_min[v]) sol.min_choice[v] = pos[v][er_min.choice[i]];
    }
  }
  return sol;
}

CoalitionGame coalition_game(const Game& g, int player) {
  CoalitionGame cg;
  cg.player = player;
  int ns = static_cast<int>(g.states.size());
  cg.state_vertex.resize(ns);
  cg.profile_vertex.resize(ns);

  for (int s = 0; s < ns; ++s) {
    cg.state_vertex[s] = static_cast<int>(cg.mpg.vertices.size());
    cg.origin.emplace_back(s, -1);
    MpgVertex mv;
    mv.name = g.states[s].name;
    mv.is_max = false;
    mv.weight = g.states[s].rewards[player];
    cg.mpg.vertices.push_back(std::move(mv));
  }
  for (int s = 0; s < ns; ++s) {
    int pc = g.profile_count(s);
    cg.profile_vertex[s].resize(pc);
    for (int code = 0; code < pc; ++code) {
      cg.profile_vertex[s][code] = static_cast<int>(cg.mpg.vertices.size());
      cg.origin.emplace_back(s, code);
      MpgVertex mv;
      auto labels = g.profile_labels(s, code);
      mv.name = g.states[s].name + "|";
      for (int i = 0; i < g.player_count; ++i)
        mv.name += (i ? "," : "") + labels[i];
      mv.is_max = true;
      mv.weight = g.states[s].rewards[player];
      cg.mpg.vertices.push_back(std::move(mv));
    }
  }
  for (int s = 0; s < ns; ++s) {
    auto& min_succ = cg.mpg.vertices[cg.state_vertex[s]].succ;
    for (int code = 0; code < g.profile_count(s); ++code)
      min_succ.push_back(cg.profile_vertex[s][code]);
    for (int code = 0; code < g.profile_count(s); ++code) {
      auto& max_succ = cg.mpg.vertices[cg.profile_vertex[s][code]].succ;
      auto idx = g.decode_profile(s, code);
      // successor position p corresponds to player i's action p
      for (std::size_t bidx = 0; bidx < g.states[s].actions[player].size(); ++bidx) {
        auto dev = idx;
        dev[player] = static_cast<int>(bidx);
        max_succ.push_back(
            cg.state_vertex[g.successor(s, g.encode_profile(s, dev))]);
      }
    }
  }
  return cg;
}

PvalTable pval_table(const Game& g) {
  PvalTable t;
  int ns = static_cast<int>(g.states.size());
  t.pval.assign(g.player_count, std::vector<Rational>(ns));
  t.punish.resize(g.player_count);
  for (int i = 0; i < g.player_count; ++i) {
    auto cg = coalition_game(g, i);
    auto sol = solve_mpg(cg.mpg);
    for (int s = 0; s < ns; ++s)
      t.pval[i][s] = sol.value[cg.state_vertex[s]];
    PositionalProfile p;
    p.choice.resize(ns);
    for (int s = 0; s < ns; ++s) {
      // Min's choice at s is a profile code (coalition moves); Max's choice
      // at the chosen pair vertex is i's best-reply action index.
      int code = sol.min_choice[cg.state_vertex[s]];
      p.choice[s] = g.decode_profile(s, code);
      p.choice[s][i] = sol.max_choice[cg.profile_vertex[s][code]];
    }
    t.punish[i] = std::move(p);
  }
  return t;
}

}  // namespace negame
