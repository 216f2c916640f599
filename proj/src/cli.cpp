#include "negame/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "negame/game.hpp"
#include "negame/mppath.hpp"
#include "negame/posne.hpp"
#include "negame/purene.hpp"
#include "negame/reductions.hpp"
#include "negame/statne.hpp"
#include "negame/zerosum.hpp"

namespace negame {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kYes = 0, kNo = 1, kError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game load_game(const std::string& path) {
  return game_from_json(json::parse(read_file(path)));
}

std::vector<ExtendedRational> parse_thresholds(const std::string& text, int k) {
  std::vector<ExtendedRational> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ','))
    out.push_back(ExtendedRational::parse(part));
  if (static_cast<int>(out.size()) != k)
    throw std::invalid_argument("expected " + std::to_string(k) +
                                " thresholds, got " +
                                std::to_string(out.size()));
  return out;
}

ordered_json rat_list(const std::vector<Rational>& v) {
  auto a = ordered_json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

ordered_json ext_list(const std::vector<ExtendedRational>& v) {
  auto a = ordered_json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

void write_witness(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

// single-line machine verdict on stdout, human summary on stderr
int emit(const std::string& command, const std::string& answer,
         ordered_json payload, const std::string& human) {
  ordered_json v;
  v["command"] = command;
  v["answer"] = answer;
  for (auto& [key, value] : payload.items()) v[key] = std::move(value);
  std::cout << v.dump() << "\n";
  std::cerr << human << "\n";
  if (answer == "yes" || answer == "verified") return kYes;
  if (answer == "no" || answer == "rejected") return kNo;
  return kError;
}

ordered_json path_witness_json(const WeightedGraph& g, const PathWitness& w) {
  ordered_json j;
  auto verts = ordered_json::array();
  for (int v : w.flow.scc_vertices)
    verts.push_back(g.vertices[static_cast<std::size_t>(v)]);
  j["scc"] = std::move(verts);
  auto edges = ordered_json::array();
  for (const auto& [u, v] : w.flow.edges)
    edges.push_back({g.vertices[static_cast<std::size_t>(u)],
                     g.vertices[static_cast<std::size_t>(v)]});
  j["edges"] = std::move(edges);
  auto flows = ordered_json::array();
  for (const auto& row : w.flow.f) flows.push_back(rat_list(row));
  j["flow"] = std::move(flows);
  j["z"] = rat_list(w.flow.z);
  j["denominator"] = w.witness.d.get_str();
  auto fam = ordered_json::array();
  for (const auto& family : w.witness.cycles) {
    auto cycles = ordered_json::array();
    for (const auto& cyc : family) {
      auto names = ordered_json::array();
      for (int v : cyc) names.push_back(g.vertices[static_cast<std::size_t>(v)]);
      cycles.push_back(std::move(names));
    }
    fam.push_back(std::move(cycles));
  }
  j["cycles"] = std::move(fam);
  j["schedule"] = w.witness.schedule;
  return j;
}

int require_initial(const Game& g) {
  if (g.initial < 0)
    throw std::invalid_argument("game has no initial state");
  return g.initial;
}

struct Options {
  std::string command = "unknown";
  std::string game, graph, profile, machine, dimacs, witness;
  std::string lower, upper, name, p, d, v0;
  long long budget = 10'000'000;
  long k = 0;
};

int cmd_solve_pure(const Options& o) {
  Game g = load_game(o.game);
  auto x = parse_thresholds(o.lower, g.player_count);
  auto y = parse_thresholds(o.upper, g.player_count);
  auto w = decide_pure_ne(g, require_initial(g), x, y);
  ordered_json payload;
  if (w) {
    payload["payoff"] = rat_list(w->payoff);
    payload["z"] = rat_list(w->z);
    if (!o.witness.empty()) {
      ordered_json wit;
      wit["z"] = rat_list(w->z);
      wit["payoff"] = rat_list(w->payoff);
      auto punish = ordered_json::array();
      for (const auto& p : w->punish) punish.push_back(profile_to_json(g, p));
      wit["punish"] = std::move(punish);
      wit["path"] = path_witness_json(w->graph.graph, w->path);
      wit["description"] = pure_witness_profile(g, *w);
      write_witness(o.witness, wit);
    }
    return emit("solve pure", "yes", payload,
                "pure equilibrium found, payoff " + ordered_json(rat_list(w->payoff)).dump());
  }
  return emit("solve pure", "no", payload, "no pure equilibrium in the box");
}

int cmd_solve_positional(const Options& o) {
  Game g = load_game(o.game);
  auto x = parse_thresholds(o.lower, g.player_count);
  auto y = parse_thresholds(o.upper, g.player_count);
  auto w = decide_pos_ne(g, require_initial(g), x, y, o.budget);
  ordered_json payload;
  if (w) {
    payload["payoff"] = rat_list(w->payoff);
    payload["deviation"] = rat_list(w->deviation);
    if (!o.witness.empty()) {
      ordered_json wit;
      wit["payoff"] = rat_list(w->payoff);
      wit["deviation"] = rat_list(w->deviation);
      wit["profile"] = profile_to_json(g, w->profile);
      write_witness(o.witness, wit);
    }
    return emit("solve positional", "yes", payload,
                "positional equilibrium found, payoff " +
                    ordered_json(rat_list(w->payoff)).dump());
  }
  return emit("solve positional", "no", payload,
              "no positional equilibrium in the box");
}

int cmd_verify_stationary(const Options& o) {
  Game g = load_game(o.game);
  auto x = parse_thresholds(o.lower, g.player_count);
  auto y = parse_thresholds(o.upper, g.player_count);
  auto prof = profile_from_json(g, json::parse(read_file(o.profile)));
  StationaryProfile sp;
  if (auto* pp = std::get_if<PositionalProfile>(&prof)) {
    sp.dist.resize(g.states.size());
    for (std::size_t s = 0; s < g.states.size(); ++s) {
      sp.dist[s].resize(static_cast<std::size_t>(g.player_count));
      for (int i = 0; i < g.player_count; ++i) {
        sp.dist[s][static_cast<std::size_t>(i)].assign(
            g.states[s].actions[static_cast<std::size_t>(i)].size(), Rational(0));
        sp.dist[s][static_cast<std::size_t>(i)]
                  [static_cast<std::size_t>(pp->choice[s][static_cast<std::size_t>(i)])] =
            Rational(1);
      }
    }
  } else {
    sp = std::get<StationaryProfile>(prof);
  }
  auto v = verify_stationary_ne(g, require_initial(g), sp, x, y);
  ordered_json payload;
  payload["payoff"] = rat_list(v.payoff);
  payload["bestResponse"] = rat_list(v.best_response);
  payload["slack"] = rat_list(v.slack);
  payload["isNE"] = v.is_ne;
  payload["inBox"] = v.in_box;
  bool ok = v.is_ne && v.in_box;
  return emit("verify stationary", ok ? "verified" : "rejected", payload,
              ok ? "stationary equilibrium verified"
                 : (v.is_ne ? "equilibrium, but payoff outside the box"
                            : "profitable deviation exists"));
}

int cmd_pval(const Options& o) {
  Game g = load_game(o.game);
  auto pt = pval_table(g);
  ordered_json payload;
  auto rows = ordered_json::array();
  for (const auto& row : pt.pval) rows.push_back(rat_list(row));
  payload["pval"] = std::move(rows);
  auto punish = ordered_json::array();
  for (const auto& p : pt.punish) punish.push_back(profile_to_json(g, p));
  payload["punish"] = std::move(punish);
  std::cout << payload.dump() << "\n";
  std::cerr << "punishment values for " << g.player_count << " players\n";
  return kYes;
}

int cmd_mppath(const Options& o) {
  WeightedGraph g = graph_from_json(json::parse(read_file(o.graph)));
  auto x = parse_thresholds(o.lower, g.weight_count());
  auto y = parse_thresholds(o.upper, g.weight_count());
  int from = 0;
  if (!o.v0.empty()) {
    from = g.vertex_index(o.v0);
    if (from < 0) throw std::invalid_argument("unknown vertex: " + o.v0);
  }
  auto w = feasible_path(g, from, x, y);
  ordered_json payload;
  if (w) {
    payload["z"] = rat_list(w->flow.z);
    if (!o.witness.empty()) write_witness(o.witness, path_witness_json(g, *w));
    return emit("mppath", "yes", payload,
                "feasible path, limit average " +
                    ordered_json(rat_list(w->flow.z)).dump());
  }
  return emit("mppath", "no", payload, "no path meets the thresholds");
}

int cmd_export_smt(const Options& o) {
  Game g = load_game(o.game);
  auto x = parse_thresholds(o.lower, g.player_count);
  auto y = parse_thresholds(o.upper, g.player_count);
  std::cout << export_statne_constraints(g, require_initial(g), x, y);
  return kYes;
}

int print_game(const Game& g) {
  std::cout << game_to_json(g).dump(2) << "\n";
  return kYes;
}

int cmd_gen_sat(const Options& o) {
  return print_game(gen_sat_game(cnf_from_dimacs(read_file(o.dimacs))));
}

int cmd_gen_ham(const Options& o) {
  auto j = json::parse(read_file(o.graph));
  std::vector<std::string> vertices =
      j.at("vertices").get<std::vector<std::string>>();
  std::vector<std::vector<int>> out(vertices.size());
  auto index = [&](const std::string& name) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown vertex: " + name);
  };
  for (const auto& e : j.at("edges")) {
    int u = e.at(0).is_string() ? index(e.at(0).get<std::string>())
                                : e.at(0).get<int>();
    int v = e.at(1).is_string() ? index(e.at(1).get<std::string>())
                                : e.at(1).get<int>();
    out.at(static_cast<std::size_t>(u)).push_back(v);
  }
  return print_game(gen_hamiltonian_game(vertices, out, index(o.v0)));
}

int cmd_gen_sqrt(const Options& o) {
  auto gad = gen_sqrt_gadget(Rational::parse(o.p));
  if (!o.witness.empty()) {
    if (!gad.profile)
      throw std::invalid_argument("sqrt(p) is irrational: no profile to write");
    write_witness(o.witness, profile_to_json(gad.game, *gad.profile));
  }
  return print_game(gad.game);
}

int cmd_gen_sqrtsum(const Options& o) {
  std::vector<long> d;
  std::istringstream in(o.d);
  std::string part;
  while (std::getline(in, part, ',')) d.push_back(std::stol(part));
  auto sg = gen_sqrtsum_game(d, o.k);
  std::cerr << "threshold lower bounds: " << ext_list(sg.threshold.lower).dump()
            << "\n";
  if (!o.witness.empty()) {
    if (!sg.profile)
      throw std::invalid_argument("some d_i is not a square: no profile");
    write_witness(o.witness, profile_to_json(sg.game, *sg.profile));
  }
  return print_game(sg.game);
}

int cmd_gen_counter(const Options& o) {
  return print_game(gen_counter_game(counter_machine_from_text(read_file(o.machine))));
}

int cmd_example(const Options& o) { return print_game(builtin_example(o.name)); }

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Nash-equilibrium decision procedures for limit-average games"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto add_box = [&](CLI::App* cmd) {
    cmd->add_option("--lower", o.lower, "comma-separated lower thresholds")
        ->required();
    cmd->add_option("--upper", o.upper, "comma-separated upper thresholds")
        ->required();
  };

  auto* solve = app.add_subcommand("solve", "decide equilibrium existence");
  solve->require_subcommand(1);
  auto* pure = solve->add_subcommand("pure", "pure strategies, any memory");
  pure->add_option("--game", o.game)->required();
  add_box(pure);
  pure->add_option("--witness", o.witness);
  pure->callback([&] { o.command = "solve pure"; action = [&] { return cmd_solve_pure(o); }; });
  auto* pos = solve->add_subcommand("positional", "positional strategies");
  pos->add_option("--game", o.game)->required();
  add_box(pos);
  pos->add_option("--witness", o.witness);
  pos->add_option("--budget", o.budget);
  pos->callback([&] { o.command = "solve positional"; action = [&] { return cmd_solve_positional(o); }; });

  auto* verify = app.add_subcommand("verify", "check a candidate profile");
  verify->require_subcommand(1);
  auto* stat = verify->add_subcommand("stationary", "stationary profile");
  stat->add_option("--game", o.game)->required();
  stat->add_option("--profile", o.profile)->required();
  add_box(stat);
  stat->callback([&] { o.command = "verify stationary"; action = [&] { return cmd_verify_stationary(o); }; });

  auto* pval = app.add_subcommand("pval", "punishment values per player");
  pval->add_option("--game", o.game)->required();
  pval->callback([&] { o.command = "pval"; action = [&] { return cmd_pval(o); }; });

  auto* mpp = app.add_subcommand("mppath", "threshold path in a weighted graph");
  mpp->add_option("--graph", o.graph)->required();
  add_box(mpp);
  mpp->add_option("--from", o.v0, "start vertex (default: first)");
  mpp->add_option("--witness", o.witness);
  mpp->callback([&] { o.command = "mppath"; action = [&] { return cmd_mppath(o); }; });

  auto* exp = app.add_subcommand("export", "emit constraint systems");
  exp->require_subcommand(1);
  auto* smt = exp->add_subcommand("statne-smt", "stationary-NE QF_NRA system");
  smt->add_option("--game", o.game)->required();
  add_box(smt);
  smt->callback([&] { o.command = "export statne-smt"; action = [&] { return cmd_export_smt(o); }; });

  auto* gen = app.add_subcommand("gen", "reduction-game generators");
  gen->require_subcommand(1);
  auto* sat = gen->add_subcommand("sat", "from a DIMACS CNF");
  sat->add_option("--dimacs", o.dimacs)->required();
  sat->callback([&] { o.command = "gen sat"; action = [&] { return cmd_gen_sat(o); }; });
  auto* ham = gen->add_subcommand("ham", "from a digraph");
  ham->add_option("--graph", o.graph)->required();
  ham->add_option("--v0", o.v0)->required();
  ham->callback([&] { o.command = "gen ham"; action = [&] { return cmd_gen_ham(o); }; });
  auto* sqrt = gen->add_subcommand("sqrt", "square-root gadget");
  sqrt->add_option("--p", o.p)->required();
  sqrt->add_option("--profile", o.witness, "write the optimal profile here");
  sqrt->callback([&] { o.command = "gen sqrt"; action = [&] { return cmd_gen_sqrt(o); }; });
  auto* ssum = gen->add_subcommand("sqrtsum", "square-root-sum chain");
  ssum->add_option("--d", o.d)->required();
  ssum->add_option("--k", o.k)->required();
  ssum->add_option("--profile", o.witness, "write the assembled profile here");
  ssum->callback([&] { o.command = "gen sqrtsum"; action = [&] { return cmd_gen_sqrtsum(o); }; });
  auto* ctr = gen->add_subcommand("counter", "two-counter machine game");
  ctr->add_option("--machine", o.machine)->required();
  ctr->callback([&] { o.command = "gen counter"; action = [&] { return cmd_gen_counter(o); }; });

  auto* ex = app.add_subcommand("example", "built-in example games");
  ex->add_option("--name", o.name)->required();
  ex->callback([&] { o.command = "example"; action = [&] { return cmd_example(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kYes : kError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    ordered_json v;
    v["command"] = o.command;
    v["answer"] = "error";
    v["message"] = e.what();
    std::cout << v.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace negame
