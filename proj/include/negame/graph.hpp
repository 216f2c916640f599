#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "negame/rational.hpp"

namespace negame {

// Directed graph with k rational weight functions on vertices. The weight of
// an edge under function i is the weight of its source vertex.
struct WeightedGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<Rational>> weights;  // per vertex, k entries

  int weight_count() const {
    return weights.empty() ? 0 : static_cast<int>(weights[0].size());
  }
  int vertex_index(const std::string& name) const;  // -1 if absent

  // Out-neighbour lists indexed by vertex.
  std::vector<std::vector<int>> adjacency() const;
};

WeightedGraph graph_from_json(const nlohmann::json& j);
nlohmann::ordered_json graph_to_json(const WeightedGraph& g);

// Vertices with a directed path from v0 (v0 included), ascending.
std::vector<int> reachable(const WeightedGraph& g, int v0);

struct Scc {
  std::vector<int> vertices;  // ascending
  bool has_internal_edge = false;  // size >= 2 or self-loop
};

// Strongly connected components in reverse topological order.
std::vector<Scc> sccs(const WeightedGraph& g);

struct MeanCycle {
  Rational value;
  std::vector<int> cycle;  // vertex sequence; closes back to cycle.front()
};

// Extreme mean over all cycles reachable from `from`, weight function i.
// nullopt iff no cycle is reachable.
std::optional<MeanCycle> max_mean_cycle(const WeightedGraph& g, int i, int from);
std::optional<MeanCycle> min_mean_cycle(const WeightedGraph& g, int i, int from);

}  // namespace negame
