#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "negame/graph.hpp"
#include "negame/rational.hpp"

namespace negame {

// Solution of the per-SCC flow constraints: f_{i,e} is, per weight index i,
// the long-run frequency of edge e in the i-th phase of the witness path.
struct FlowSolution {
  std::vector<int> scc_vertices;              // ascending global vertex ids
  std::vector<std::pair<int, int>> edges;     // internal edges of the SCC
  std::vector<std::vector<Rational>> f;       // [weight index][edge]
  std::vector<Rational> z;                    // achieved vector, z_i = sum f_{i,e} r_i(e)
};

// Integer-scaled cycle families: c_{i,e} = f_{i,e} * d parallel copies of
// each edge decompose into Eulerian cycles, one family per weight index.
struct CycleWitness {
  mpz_class d;                                          // common denominator
  std::vector<std::vector<mpz_class>> multiplicity;     // [i][edge]
  std::vector<std::vector<std::vector<int>>> cycles;    // [i][cycle][vertex]
  std::string schedule;                                 // how to interleave them
};

// Feasibility of thresholds x <= payoff <= y inside one SCC. Entries of
// x/y may be infinite; those rows are dropped.
std::optional<FlowSolution> scc_lp(const WeightedGraph& g, const Scc& scc,
                                   const std::vector<ExtendedRational>& x,
                                   const std::vector<ExtendedRational>& y);

struct PathWitness {
  Scc scc;
  FlowSolution flow;
  CycleWitness witness;
};

// Is there an infinite path from v0 whose limit-average weight vector lies
// in [x, y]? Checks every reachable SCC with an internal edge.
std::optional<PathWitness> feasible_path(const WeightedGraph& g, int v0,
                                         const std::vector<ExtendedRational>& x,
                                         const std::vector<ExtendedRational>& y);

CycleWitness extract_cycle_witness(const WeightedGraph& g, const FlowSolution& f);

}  // namespace negame
