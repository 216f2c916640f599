#include "negame/game.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace negame {

int Game::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].name == name) return static_cast<int>(i);
  return -1;
}

int Game::action_index(int s, int player, const std::string& a) const {
  const auto& acts = states[s].actions[player];
  for (std::size_t i = 0; i < acts.size(); ++i)
    if (acts[i] == a) return static_cast<int>(i);
  return -1;
}

int Game::profile_count(int s) const {
  int n = 1;
  for (const auto& acts : states[s].actions) n *= static_cast<int>(acts.size());
  return n;
}

int Game::encode_profile(int s, const std::vector<int>& action_indices) const {
  int code = 0, stride = 1;
  for (int i = 0; i < player_count; ++i) {
    code += action_indices[i] * stride;
    stride *= static_cast<int>(states[s].actions[i].size());
  }
  return code;
}

std::vector<int> Game::decode_profile(int s, int code) const {
  std::vector<int> idx(player_count);
  for (int i = 0; i < player_count; ++i) {
    int sz = static_cast<int>(states[s].actions[i].size());
    idx[i] = code % sz;
    code /= sz;
  }
  return idx;
}

std::vector<std::string> Game::profile_labels(int s, int code) const {
  auto idx = decode_profile(s, code);
  std::vector<std::string> out(player_count);
  for (int i = 0; i < player_count; ++i) out[i] = states[s].actions[i][idx[i]];
  return out;
}

GameValidation validate_game(const nlohmann::json& raw) {
  GameValidation res;
  auto fail = [&](const std::string& msg) { res.violations.push_back(msg); };

  if (!raw.is_object()) {
    fail("game description must be a JSON object");
    return res;
  }
  Game g;
  if (!raw.contains("players") || !raw.at("players").is_number_integer() ||
      raw.at("players").get<int>() < 1) {
    fail("field 'players' must be an integer >= 1");
    return res;
  }
  g.player_count = raw.at("players").get<int>();
  if (!raw.contains("states") || !raw.at("states").is_array() ||
      raw.at("states").empty()) {
    fail("field 'states' must be a nonempty array");
    return res;
  }

  std::set<std::string> names;
  for (const auto& js : raw.at("states")) {
    GameState st;
    if (!js.contains("name") || !js.at("name").is_string()) {
      fail("state without a string 'name'");
      return res;
    }
    st.name = js.at("name").get<std::string>();
    if (!names.insert(st.name).second) fail("duplicate state name '" + st.name + "'");
    if (!js.contains("actions") || !js.at("actions").is_array() ||
        static_cast<int>(js.at("actions").size()) != g.player_count) {
      fail("state '" + st.name + "': 'actions' must list one action set per player");
      return res;
    }
    for (int i = 0; i < g.player_count; ++i) {
      std::vector<std::string> acts;
      for (const auto& a : js.at("actions")[i]) acts.push_back(a.get<std::string>());
      if (acts.empty())
        fail("state '" + st.name + "', player " + std::to_string(i) +
             ": empty action set");
      std::set<std::string> dedup(acts.begin(), acts.end());
      if (dedup.size() != acts.size())
        fail("state '" + st.name + "', player " + std::to_string(i) +
             ": duplicate action label");
      st.actions.push_back(std::move(acts));
    }
    if (!js.contains("rewards") ||
        static_cast<int>(js.at("rewards").size()) != g.player_count) {
      fail("state '" + st.name + "': reward arity != player count");
      st.rewards.assign(g.player_count, Rational(0));
    } else {
      try {
        for (const auto& r : js.at("rewards"))
          st.rewards.push_back(Rational::parse(r.get<std::string>()));
      } catch (const std::exception& e) {
        fail("state '" + st.name + "': " + e.what());
        st.rewards.assign(g.player_count, Rational(0));
      }
    }
    g.states.push_back(std::move(st));
  }
  if (!res.violations.empty()) return res;

  for (std::size_t s = 0; s < g.states.size(); ++s)
    g.transitions.emplace_back(g.profile_count(static_cast<int>(s)), -1);

  for (const auto& jt : raw.contains("transitions")
                            ? raw.at("transitions")
                            : nlohmann::json::array()) {
    std::string from = jt.value("from", std::string());
    std::string to = jt.value("to", std::string());
    int s = g.state_index(from);
    int t = g.state_index(to);
    if (s < 0) { fail("transition from unknown state '" + from + "'"); continue; }
    if (t < 0) { fail("transition to unknown state '" + to + "'"); continue; }
    if (!jt.contains("profile") ||
        static_cast<int>(jt.at("profile").size()) != g.player_count) {
      fail("transition at '" + from + "': profile arity != player count");
      continue;
    }
    std::vector<int> idx(g.player_count);
    bool legal = true;
    for (int i = 0; i < g.player_count; ++i) {
      idx[i] = g.action_index(s, i, jt.at("profile")[i].get<std::string>());
      if (idx[i] < 0) {
        fail("transition at '" + from + "': illegal profile (player " +
             std::to_string(i) + " action '" +
             jt.at("profile")[i].get<std::string>() + "' not in its action set)");
        legal = false;
        break;
      }
    }
    if (!legal) continue;
    int code = g.encode_profile(s, idx);
    if (g.transitions[s][code] != -1)
      fail("duplicate transition at '" + from + "'");
    g.transitions[s][code] = t;
  }
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (int code = 0; code < g.profile_count(static_cast<int>(s)); ++code)
      if (g.transitions[s][code] == -1) {
        auto labels = g.profile_labels(static_cast<int>(s), code);
        std::string prof;
        for (const auto& l : labels) prof += (prof.empty() ? "" : ",") + l;
        fail("undefined legal profile (" + prof + ") at state '" +
             g.states[s].name + "'");
      }

  if (raw.contains("initial")) {
    g.initial = g.state_index(raw.at("initial").get<std::string>());
    if (g.initial < 0) fail("unknown initial state");
  }
  if (res.violations.empty()) res.game = std::move(g);
  return res;
}

Game game_from_json(const nlohmann::json& raw) {
  auto v = validate_game(raw);
  if (!v.game) {
    std::string msg = "invalid game:";
    for (const auto& s : v.violations) msg += "\n  " + s;
    throw std::invalid_argument(msg);
  }
  return *std::move(v.game);
}

nlohmann::ordered_json game_to_json(const Game& g) {
  nlohmann::ordered_json j;
  j["players"] = g.player_count;
  if (g.initial >= 0) j["initial"] = g.states[g.initial].name;
  auto states = nlohmann::ordered_json::array();
  for (const auto& st : g.states) {
    nlohmann::ordered_json js;
    js["name"] = st.name;
    js["actions"] = st.actions;
    auto rewards = nlohmann::ordered_json::array();
    for (const auto& r : st.rewards) rewards.push_back(r.str());
    js["rewards"] = std::move(rewards);
    states.push_back(std::move(js));
  }
  j["states"] = std::move(states);
  auto transitions = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (int code = 0; code < g.profile_count(static_cast<int>(s)); ++code) {
      nlohmann::ordered_json jt;
      jt["from"] = g.states[s].name;
      jt["profile"] = g.profile_labels(static_cast<int>(s), code);
      jt["to"] = g.states[g.transitions[s][code]].name;
      transitions.push_back(std::move(jt));
    }
  j["transitions"] = std::move(transitions);
  return j;
}

Profile profile_from_json(const Game& g, const nlohmann::json& raw) {
  std::string kind = raw.value("kind", std::string());
  int n = static_cast<int>(g.states.size());
  if (kind == "positional") {
    PositionalProfile p;
    p.choice.assign(n, {});
    std::vector<std::vector<bool>> seen(n);
    for (int s = 0; s < n; ++s) {
      p.choice[s].assign(g.player_count, -1);
      seen[s].assign(g.player_count, false);
    }
    for (const auto& c : raw.at("choices")) {
      int s = g.state_index(c.at("state").get<std::string>());
      int i = c.at("player").get<int>();
      if (s < 0 || i < 0 || i >= g.player_count)
        throw std::invalid_argument("profile: unknown state or player");
      int a = g.action_index(s, i, c.at("action").get<std::string>());
      if (a < 0) throw std::invalid_argument("profile: action not in action set");
      p.choice[s][i] = a;
      seen[s][i] = true;
    }
    for (int s = 0; s < n; ++s)
      for (int i = 0; i < g.player_count; ++i)
        if (!seen[s][i]) {
          if (g.states[s].actions[i].size() == 1)
            p.choice[s][i] = 0;  // forced move may be omitted
          else
            throw std::invalid_argument("profile: missing choice at state '" +
                                        g.states[s].name + "' player " +
                                        std::to_string(i));
        }
    return p;
  }
  if (kind == "stationary") {
    StationaryProfile p;
    p.dist.assign(n, {});
    for (int s = 0; s < n; ++s) {
      p.dist[s].assign(g.player_count, {});
      for (int i = 0; i < g.player_count; ++i)
        p.dist[s][i].assign(g.states[s].actions[i].size(), Rational(0));
    }
    std::vector<std::vector<bool>> seen(n);
    for (int s = 0; s < n; ++s) seen[s].assign(g.player_count, false);
    for (const auto& c : raw.at("choices")) {
      int s = g.state_index(c.at("state").get<std::string>());
      int i = c.at("player").get<int>();
      if (s < 0 || i < 0 || i >= g.player_count)
        throw std::invalid_argument("profile: unknown state or player");
      for (const auto& e : c.at("dist")) {
        int a = g.action_index(s, i, e.at("action").get<std::string>());
        if (a < 0) throw std::invalid_argument("profile: action not in action set");
        p.dist[s][i][a] = Rational::parse(e.at("prob").get<std::string>());
      }
      seen[s][i] = true;
    }
    for (int s = 0; s < n; ++s)
      for (int i = 0; i < g.player_count; ++i) {
        if (!seen[s][i]) {
          if (g.states[s].actions[i].size() == 1)
            p.dist[s][i][0] = Rational(1);
          else
            throw std::invalid_argument("profile: missing distribution at state '" +
                                        g.states[s].name + "' player " +
                                        std::to_string(i));
        }
        Rational sum(0);
        for (const auto& q : p.dist[s][i]) {
          if (q.sign() < 0)
            throw std::invalid_argument("profile: negative probability");
          sum += q;
        }
        if (sum != Rational(1))
          throw std::invalid_argument("profile: probabilities at state '" +
                                      g.states[s].name + "' player " +
                                      std::to_string(i) + " sum to " + sum.str());
      }
    return p;
  }
  throw std::invalid_argument("profile: kind must be 'positional' or 'stationary'");
}

nlohmann::ordered_json profile_to_json(const Game& g, const PositionalProfile& p) {
  nlohmann::ordered_json j;
  j["kind"] = "positional";
  auto choices = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (int i = 0; i < g.player_count; ++i) {
      nlohmann::ordered_json c;
      c["state"] = g.states[s].name;
      c["player"] = i;
      c["action"] = g.states[s].actions[i][p.choice[s][i]];
      choices.push_back(std::move(c));
    }
  j["choices"] = std::move(choices);
  return j;
}

nlohmann::ordered_json profile_to_json(const Game& g, const StationaryProfile& p) {
  nlohmann::ordered_json j;
  j["kind"] = "stationary";
  auto choices = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (int i = 0; i < g.player_count; ++i) {
      nlohmann::ordered_json c;
      c["state"] = g.states[s].name;
      c["player"] = i;
      auto dist = nlohmann::ordered_json::array();
      for (std::size_t a = 0; a < g.states[s].actions[i].size(); ++a) {
        nlohmann::ordered_json e;
        e["action"] = g.states[s].actions[i][a];
        e["prob"] = p.dist[s][i][a].str();
        dist.push_back(std::move(e));
      }
      c["dist"] = std::move(dist);
      choices.push_back(std::move(c));
    }
  j["choices"] = std::move(choices);
  return j;
}

std::optional<std::vector<int>> is_turn_based(const Game& g) {
  std::vector<int> ctrl(g.states.size(), -1);
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    int wide = -1;  // player with more than one action, if any
    for (int i = 0; i < g.player_count; ++i)
      if (g.states[s].actions[i].size() > 1) {
        if (wide != -1) return std::nullopt;  // two wide players: concurrent
        wide = i;
      }
    ctrl[s] = wide == -1 ? 0 : wide;  // all-singleton: least index controls
  }
  return ctrl;
}

std::vector<int> terminal_states(const Game& g) {
  std::vector<int> out;
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    bool term = true;
    for (int t : g.transitions[s])
      if (t != static_cast<int>(s)) { term = false; break; }
    if (term) out.push_back(static_cast<int>(s));
  }
  return out;
}

bool is_terminal_reward(const Game& g) {
  auto terms = terminal_states(g);
  std::vector<bool> is_term(g.states.size(), false);
  for (int t : terms) is_term[t] = true;
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    if (is_term[s]) continue;
    for (const auto& r : g.states[s].rewards)
      if (r.sign() != 0) return false;
  }
  return true;
}

std::pair<Lasso, std::vector<Rational>> lasso_payoff(const Game& g,
                                                     const PositionalProfile& p,
                                                     int s0) {
  std::vector<int> at(g.states.size(), -1);
  std::vector<int> walk, codes;
  int cur = s0;
  while (at[cur] == -1) {
    at[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    int code = p.profile_code(g, cur);
    codes.push_back(code);
    cur = g.successor(cur, code);
  }
  Lasso l;
  int start = at[cur];
  l.prefix_states.assign(walk.begin(), walk.begin() + start);
  l.prefix_codes.assign(codes.begin(), codes.begin() + start);
  l.cycle_states.assign(walk.begin() + start, walk.end());
  l.cycle_codes.assign(codes.begin() + start, codes.end());

  std::vector<Rational> payoff(g.player_count, Rational(0));
  for (int s : l.cycle_states)
    for (int i = 0; i < g.player_count; ++i) payoff[i] += g.states[s].rewards[i];
  Rational len(static_cast<long>(l.cycle_states.size()));
  for (auto& x : payoff) x /= len;
  return {std::move(l), std::move(payoff)};
}

Game memory_product(const Game& g, const MemoryStructure& m) {
  Game out;
  out.player_count = g.player_count;
  int ns = static_cast<int>(g.states.size());
  for (int mem = 0; mem < m.size; ++mem)
    for (int s = 0; s < ns; ++s) {
      GameState st = g.states[s];
      st.name += "@" + std::to_string(mem);
      out.states.push_back(std::move(st));
    }
  for (int mem = 0; mem < m.size; ++mem)
    for (int s = 0; s < ns; ++s) {
      std::vector<int> row(g.profile_count(s));
      for (int code = 0; code < g.profile_count(s); ++code)
        row[code] = m.update[mem][s][code] * ns + g.successor(s, code);
      out.transitions.push_back(std::move(row));
    }
  if (g.initial >= 0) out.initial = m.initial * ns + g.initial;
  return out;
}

}  // namespace negame
