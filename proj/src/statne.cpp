#include "negame/statne.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "negame/graph.hpp"
#include "negame/linalg.hpp"
#include "negame/lp.hpp"
#include "negame/smt.hpp"

namespace negame {

namespace {

void validate_profile(const Game& g, const StationaryProfile& sp) {
  if (sp.dist.size() != g.states.size())
    throw std::invalid_argument("stationary profile: wrong state count");
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    if (static_cast<int>(sp.dist[s].size()) != g.player_count)
      throw std::invalid_argument("stationary profile: wrong player count at '" +
                                  g.states[s].name + "'");
    for (int i = 0; i < g.player_count; ++i) {
      const auto& d = sp.dist[s][i];
      if (d.size() != g.states[s].actions[i].size())
        throw std::invalid_argument("stationary profile: wrong support at '" +
                                    g.states[s].name + "'");
      Rational sum(0);
      for (const auto& p : d) {
        if (p.sign() < 0)
          throw std::invalid_argument(
              "stationary profile: negative probability at '" +
              g.states[s].name + "'");
        sum += p;
      }
      if (sum != Rational(1))
        throw std::invalid_argument(
            "stationary profile: probabilities do not sum to 1 at '" +
            g.states[s].name + "'");
    }
  }
}

Rational profile_probability(const Game& g, const StationaryProfile& sp, int s,
                             int code) {
  Rational p(1);
  auto idx = g.decode_profile(s, code);
  for (int i = 0; i < g.player_count; ++i) p *= sp.dist[s][i][idx[i]];
  return p;
}

// Probability kernel of deviator i picking action b at s, others following sp.
Rational deviation_probability(const Game& g, const StationaryProfile& sp,
                               int i, int s, int code) {
  Rational p(1);
  auto idx = g.decode_profile(s, code);
  for (int j = 0; j < g.player_count; ++j)
    if (j != i) p *= sp.dist[s][j][idx[j]];
  return p;
}

}  // namespace

InducedChain induced_chain(const Game& g, const StationaryProfile& sp) {
  validate_profile(g, sp);
  int n = static_cast<int>(g.states.size());
  InducedChain c;
  c.P.assign(n, std::vector<Rational>(n, Rational(0)));
  for (int s = 0; s < n; ++s) {
    for (int code = 0; code < g.profile_count(s); ++code)
      c.P[s][g.successor(s, code)] += profile_probability(g, sp, s, code);
    Rational row(0);
    for (const auto& p : c.P[s]) row += p;
    if (row != Rational(1))
      throw std::logic_error("induced chain row does not sum to 1");
  }
  return c;
}

InducedMdp induced_mdp(const Game& g, const StationaryProfile& sp, int i) {
  validate_profile(g, sp);
  int n = static_cast<int>(g.states.size());
  InducedMdp m;
  m.player = i;
  m.p.resize(n);
  for (int s = 0; s < n; ++s) {
    int nb = static_cast<int>(g.states[s].actions[i].size());
    m.p[s].assign(nb, std::vector<Rational>(n, Rational(0)));
    for (int code = 0; code < g.profile_count(s); ++code) {
      int b = g.decode_profile(s, code)[i];
      m.p[s][b][g.successor(s, code)] +=
          deviation_probability(g, sp, i, s, code);
    }
    for (int b = 0; b < nb; ++b) {
      Rational row(0);
      for (const auto& p : m.p[s][b]) row += p;
      if (row != Rational(1))
        throw std::logic_error("induced MDP kernel row does not sum to 1");
    }
  }
  return m;
}

std::vector<std::vector<Rational>> mc_state_gains(const Game& g,
                                                  const StationaryProfile& sp) {
  auto chain = induced_chain(g, sp);
  int n = static_cast<int>(g.states.size());
  int k = g.player_count;

  // positive-probability digraph
  WeightedGraph dg;
  for (int s = 0; s < n; ++s) {
    dg.vertices.push_back(g.states[s].name);
    dg.weights.push_back({Rational(0)});
    for (int t = 0; t < n; ++t)
      if (chain.P[s][t].sign() > 0) dg.edges.emplace_back(s, t);
  }
  auto comps = sccs(dg);

  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c].vertices) comp_of[v] = static_cast<int>(c);
  std::vector<char> bottom(comps.size(), 1);
  for (auto [u, v] : dg.edges)
    if (comp_of[u] != comp_of[v]) bottom[comp_of[u]] = 0;

  // per-class gains via the exact stationary distribution
  std::vector<std::vector<Rational>> class_gain(comps.size());
  std::vector<int> classes;  // bottom class indices
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!bottom[c]) continue;
    classes.push_back(static_cast<int>(c));
    const auto& cls = comps[c].vertices;
    int m = static_cast<int>(cls.size());
    std::vector<int> local(n, -1);
    for (int j = 0; j < m; ++j) local[cls[j]] = j;
    std::vector<LinearRow> rows;
    for (int t = 0; t < m; ++t) {
      LinearRow r;
      r.coefficients.assign(m, Rational(0));
      for (int s = 0; s < m; ++s) r.coefficients[s] += chain.P[cls[s]][cls[t]];
      r.coefficients[t] -= Rational(1);
      r.rhs = Rational(0);
      rows.push_back(std::move(r));
    }
    LinearRow norm;
    norm.coefficients.assign(m, Rational(1));
    norm.rhs = Rational(1);
    rows.push_back(std::move(norm));
    auto sol = solve_linear_system(rows);
    if (sol.status != LinearSystemResult::Status::Unique)
      throw std::logic_error("stationary distribution is not unique");
    class_gain[c].assign(k, Rational(0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < m; ++j)
        class_gain[c][i] += sol.assignment[j] * g.states[cls[j]].rewards[i];
  }

  // absorption probabilities of transient states into each bottom class
  std::vector<int> transient;
  std::vector<int> tlocal(n, -1);
  for (int s = 0; s < n; ++s)
    if (!bottom[comp_of[s]]) {
      tlocal[s] = static_cast<int>(transient.size());
      transient.push_back(s);
    }
  int nt = static_cast<int>(transient.size());

  std::vector<std::vector<Rational>> gains(k,
                                           std::vector<Rational>(n, Rational(0)));
  for (int s = 0; s < n; ++s)
    if (bottom[comp_of[s]])
      for (int i = 0; i < k; ++i) gains[i][s] = class_gain[comp_of[s]][i];

  if (nt > 0) {
    for (int c : classes) {
      std::vector<LinearRow> rows;
      for (int a = 0; a < nt; ++a) {
        LinearRow r;
        r.coefficients.assign(nt, Rational(0));
        r.coefficients[a] = Rational(1);
        r.rhs = Rational(0);
        int s = transient[a];
        for (int t = 0; t < n; ++t) {
          if (chain.P[s][t].sign() == 0) continue;
          if (tlocal[t] >= 0)
            r.coefficients[tlocal[t]] -= chain.P[s][t];
          else if (comp_of[t] == c)
            r.rhs += chain.P[s][t];
        }
        rows.push_back(std::move(r));
      }
      auto sol = solve_linear_system(rows);
      if (sol.status != LinearSystemResult::Status::Unique)
        throw std::logic_error("absorption system is not unique");
      for (int a = 0; a < nt; ++a)
        for (int i = 0; i < k; ++i)
          gains[i][transient[a]] += sol.assignment[a] * class_gain[c][i];
    }
  }
  return gains;
}

std::vector<Rational> mc_mean_payoff(const Game& g, const StationaryProfile& sp,
                                     int s0) {
  auto gains = mc_state_gains(g, sp);
  std::vector<Rational> z;
  for (int i = 0; i < g.player_count; ++i) z.push_back(gains[i][s0]);
  return z;
}

MdpSolution best_response_solution(const Game& g, const StationaryProfile& sp,
                                   int i) {
  auto mdp = induced_mdp(g, sp, i);
  int n = static_cast<int>(g.states.size());
  LinearProgram lp;
  for (int s = 0; s < n; ++s) lp.variables.push_back("v" + std::to_string(s));
  for (int s = 0; s < n; ++s) lp.variables.push_back("b" + std::to_string(s));
  for (int s = 0; s < n; ++s)
    for (std::size_t b = 0; b < mdp.p[s].size(); ++b) {
      LpConstraint gain;  // v_s >= sum_t p(t|s,b) v_t
      gain.coefficients.assign(2 * n, Rational(0));
      gain.coefficients[s] = Rational(1);
      for (int t = 0; t < n; ++t) gain.coefficients[t] -= mdp.p[s][b][t];
      gain.relation = Relation::GreaterEq;
      gain.rhs = Rational(0);
      lp.constraints.push_back(std::move(gain));

      LpConstraint bias;  // b_s + v_s >= r_i(s) + sum_t p(t|s,b) b_t
      bias.coefficients.assign(2 * n, Rational(0));
      bias.coefficients[s] = Rational(1);
      bias.coefficients[n + s] += Rational(1);
      for (int t = 0; t < n; ++t) bias.coefficients[n + t] -= mdp.p[s][b][t];
      bias.relation = Relation::GreaterEq;
      bias.rhs = g.states[s].rewards[i];
      lp.constraints.push_back(std::move(bias));
    }
  LpObjective obj;
  obj.coefficients.assign(2 * n, Rational(0));
  for (int s = 0; s < n; ++s) obj.coefficients[s] = Rational(1);
  obj.direction = Direction::Minimize;
  lp.objective = obj;

  auto res = lp_solve(lp);
  if (res.status != LpResult::Status::Feasible)
    throw std::logic_error("MDP value program did not solve");
  MdpSolution sol;
  sol.v.assign(res.assignment.begin(), res.assignment.begin() + n);
  sol.b.assign(res.assignment.begin() + n, res.assignment.begin() + 2 * n);
  return sol;
}

Rational best_response_value(const Game& g, const StationaryProfile& sp, int i,
                             int s0) {
  return best_response_solution(g, sp, i).v[s0];
}

StatVerdict verify_stationary_ne(const Game& g, int s0,
                                 const StationaryProfile& sp,
                                 const std::vector<ExtendedRational>& x,
                                 const std::vector<ExtendedRational>& y) {
  validate_profile(g, sp);
  StatVerdict v;
  v.payoff = mc_mean_payoff(g, sp, s0);
  v.is_ne = true;
  for (int i = 0; i < g.player_count; ++i) {
    v.best_response.push_back(best_response_value(g, sp, i, s0));
    v.slack.push_back(v.best_response[i] - v.payoff[i]);
    if (v.slack[i].sign() > 0) v.is_ne = false;
  }
  v.in_box = true;
  for (int i = 0; i < g.player_count; ++i) {
    ExtendedRational zi{v.payoff[i]};
    if (zi < x[i] || y[i] < zi) v.in_box = false;
  }
  return v;
}

namespace {

// Naming scheme shared by the exporter and the assignment builder. The
// alpha block ranges over the union of all players' action labels at s,
// pinned to 0 outside the player's own set.
std::vector<std::string> state_action_union(const Game& g, int s) {
  std::vector<std::string> labels;
  for (int j = 0; j < g.player_count; ++j)
    for (const auto& a : g.states[s].actions[j])
      if (std::find(labels.begin(), labels.end(), a) == labels.end())
        labels.push_back(a);
  return labels;
}

std::string alpha_name(const Game& g, int i, int s, const std::string& a) {
  return smt_symbol("alpha_" + std::to_string(i) + "_" + g.states[s].name +
                    "_" + a);
}

std::string z_name(const Game& g, int i, int s) {
  return smt_symbol("z_" + std::to_string(i) + "_" + g.states[s].name);
}

std::string beta_name(const Game& g, int i, int s) {
  return smt_symbol("beta_" + std::to_string(i) + "_" + g.states[s].name);
}

std::string v_name(const Game& g, int i, int s) {
  return smt_symbol("v_" + std::to_string(i) + "_" + g.states[s].name);
}

std::string bb_name(const Game& g, int i, int s) {
  return smt_symbol("w_" + std::to_string(i) + "_" + g.states[s].name);
}

// (* alpha_j_s_aj ... ) over all players, optionally skipping one.
std::string profile_product(const Game& g, int s, int code, int skip) {
  auto idx = g.decode_profile(s, code);
  std::vector<std::string> factors;
  for (int j = 0; j < g.player_count; ++j) {
    if (j == skip) continue;
    factors.push_back(alpha_name(g, j, s, g.states[s].actions[j][idx[j]]));
  }
  if (factors.empty()) return "1";
  if (factors.size() == 1) return factors[0];
  std::string out = "(*";
  for (const auto& f : factors) out += " " + f;
  return out + ")";
}

std::string weighted_sum(const std::vector<std::pair<std::string, std::string>>&
                             terms) {  // (coeff expr) pairs
  if (terms.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [c, e] : terms) parts.push_back("(* " + c + " " + e + ")");
  if (parts.size() == 1) return parts[0];
  std::string out = "(+";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

}  // namespace

std::string export_statne_constraints(const Game& g, int s0,
                                      const std::vector<ExtendedRational>& x,
                                      const std::vector<ExtendedRational>& y) {
  int n = static_cast<int>(g.states.size());
  int k = g.player_count;
  std::ostringstream out;
  out << "; stationary Nash equilibrium constraints for initial state "
      << g.states[s0].name << "\n(set-logic QF_NRA)\n";

  for (int i = 0; i < k; ++i)
    for (int s = 0; s < n; ++s)
      for (const auto& a : state_action_union(g, s))
        out << "(declare-fun " << alpha_name(g, i, s, a) << " () Real)\n";
  for (int i = 0; i < k; ++i)
    for (int s = 0; s < n; ++s)
      out << "(declare-fun " << z_name(g, i, s) << " () Real)\n"
          << "(declare-fun " << beta_name(g, i, s) << " () Real)\n"
          << "(declare-fun " << v_name(g, i, s) << " () Real)\n"
          << "(declare-fun " << bb_name(g, i, s) << " () Real)\n";

  for (int i = 0; i < k; ++i) {
    // strategy simplex of player i
    for (int s = 0; s < n; ++s) {
      std::string sum = "(+";
      int own = 0;
      for (const auto& a : g.states[s].actions[i]) {
        out << "(assert (>= " << alpha_name(g, i, s, a) << " 0))\n";
        sum += " " + alpha_name(g, i, s, a);
        ++own;
      }
      out << "(assert (= " << (own == 1 ? alpha_name(g, i, s, g.states[s].actions[i][0])
                                        : sum + ")")
          << " 1))\n";
      for (const auto& a : state_action_union(g, s)) {
        bool owned = std::find(g.states[s].actions[i].begin(),
                               g.states[s].actions[i].end(),
                               a) != g.states[s].actions[i].end();
        if (!owned)
          out << "(assert (= " << alpha_name(g, i, s, a) << " 0))\n";
      }
    }

    // payoff gain/bias system under the joint strategy
    for (int s = 0; s < n; ++s) {
      std::vector<std::pair<std::string, std::string>> zt, bt;
      for (int code = 0; code < g.profile_count(s); ++code) {
        int t = g.successor(s, code);
        zt.emplace_back(profile_product(g, s, code, -1), z_name(g, i, t));
        bt.emplace_back(profile_product(g, s, code, -1), beta_name(g, i, t));
      }
      out << "(assert (= " << z_name(g, i, s) << " " << weighted_sum(zt)
          << "))\n";
      out << "(assert (= (+ " << z_name(g, i, s) << " " << beta_name(g, i, s)
          << ") (+ " << smt_rational(g.states[s].rewards[i]) << " "
          << weighted_sum(bt) << ")))\n";
    }

    // MDP value inequalities for deviator i
    for (int s = 0; s < n; ++s)
      for (std::size_t b = 0; b < g.states[s].actions[i].size(); ++b) {
        std::vector<std::pair<std::string, std::string>> vt, bt;
        for (int code = 0; code < g.profile_count(s); ++code) {
          if (g.decode_profile(s, code)[i] != static_cast<int>(b)) continue;
          int t = g.successor(s, code);
          vt.emplace_back(profile_product(g, s, code, i), v_name(g, i, t));
          bt.emplace_back(profile_product(g, s, code, i), bb_name(g, i, t));
        }
        out << "(assert (>= " << v_name(g, i, s) << " " << weighted_sum(vt)
            << "))\n";
        out << "(assert (>= (+ " << bb_name(g, i, s) << " " << v_name(g, i, s)
            << ") (+ " << smt_rational(g.states[s].rewards[i]) << " "
            << weighted_sum(bt) << ")))\n";
      }

    // equilibrium and threshold conditions at s0
    out << "(assert (<= " << v_name(g, i, s0) << " " << z_name(g, i, s0)
        << "))\n";
    if (x[i].is_finite())
      out << "(assert (>= " << z_name(g, i, s0) << " "
          << smt_rational(x[i].finite()) << "))\n";
    if (y[i].is_finite())
      out << "(assert (<= " << z_name(g, i, s0) << " "
          << smt_rational(y[i].finite()) << "))\n";
  }
  out << "(check-sat)\n";
  return out.str();
}

std::map<std::string, Rational> statne_assignment(const Game& g,
                                                  const StationaryProfile& sp) {
  validate_profile(g, sp);
  int n = static_cast<int>(g.states.size());
  int k = g.player_count;
  std::map<std::string, Rational> env;
  for (int i = 0; i < k; ++i)
    for (int s = 0; s < n; ++s) {
      for (const auto& a : state_action_union(g, s)) env[alpha_name(g, i, s, a)] = Rational(0);
      for (std::size_t b = 0; b < g.states[s].actions[i].size(); ++b)
        env[alpha_name(g, i, s, g.states[s].actions[i][b])] = sp.dist[s][i][b];
    }

  auto gains = mc_state_gains(g, sp);
  auto chain = induced_chain(g, sp);
  for (int i = 0; i < k; ++i) {
    for (int s = 0; s < n; ++s) env[z_name(g, i, s)] = gains[i][s];
    // bias: (I - P) beta = r_i - z_i, any particular solution
    std::vector<LinearRow> rows;
    for (int s = 0; s < n; ++s) {
      LinearRow r;
      r.coefficients.assign(n, Rational(0));
      r.coefficients[s] = Rational(1);
      for (int t = 0; t < n; ++t) r.coefficients[t] -= chain.P[s][t];
      r.rhs = g.states[s].rewards[i] - gains[i][s];
      rows.push_back(std::move(r));
    }
    auto sol = solve_linear_system(rows);
    if (sol.status == LinearSystemResult::Status::Inconsistent)
      throw std::logic_error("bias system inconsistent");
    for (int s = 0; s < n; ++s) env[beta_name(g, i, s)] = sol.assignment[s];

    auto mdp = best_response_solution(g, sp, i);
    for (int s = 0; s < n; ++s) {
      env[v_name(g, i, s)] = mdp.v[s];
      env[bb_name(g, i, s)] = mdp.b[s];
    }
  }
  return env;
}

}  // namespace negame
