#pragma once

#include "siso/luks.hpp"
#include "siso/relational.hpp"

namespace siso {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges; // 0-indexed, u < v

  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);
  std::vector<std::vector<int>> adjacency() const;
  int max_degree() const;
  std::vector<std::vector<int>> components() const;
};

struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges; // sorted vertex subsets
  int max_edge_size() const;
};

// Luks-style layered reduction to string isomorphism; the returned coset is
// over vertex bijections (subgroup = Aut of the first graph).
IsoResult graph_iso_bounded_degree(Solver &solver, const Graph &g1, const Graph &g2);
StabChain graph_aut_bounded_degree(Solver &solver, const Graph &g);

// single-relation structures over equal domains, via the tuple action of the
// full symmetric group
IsoResult relational_structure_iso(Solver &solver, const RelStructure &a,
                                   const RelStructure &b);

IsoResult hypergraph_iso(Solver &solver, const Hypergraph &h1, const Hypergraph &h2);

} // namespace siso
