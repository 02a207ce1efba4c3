#pragma once

#include <vector>

#include "siso/coset.hpp"
#include "siso/perm.hpp"

namespace siso {

// Brute-force reference implementations. Everything here works on plain
// permutation lists produced by closure enumeration, so the verification
// channel never depends on the stabilizer-chain machinery it checks.
namespace oracle {

struct OracleConfig {
  uint128 element_cap = 10000000; // closure enumeration cap
  int graph_cap = 10;             // n! search cap for graphs
};

// all elements of <gens> by breadth-first closure under right products
std::vector<Perm> group_closure(const GenSet &g, uint128 cap = 10000000);

// exact filter {g in coset : x(a) = y(a^g) for all a in window}
std::vector<Perm> string_iso_elements(const std::vector<Perm> &coset_elements,
                                      const std::vector<int> &x,
                                      const std::vector<int> &y,
                                      const std::vector<int> &window);

Coset brute_string_iso(const GenSet &g, const std::vector<int> &x,
                       const std::vector<int> &y, const std::vector<int> &window,
                       const OracleConfig &cfg = {});

struct GraphView {
  int n = 0;
  std::vector<std::pair<int, int>> edges; // 0-indexed
};

Coset brute_graph_iso(const GraphView &g1, const GraphView &g2,
                      const OracleConfig &cfg = {});
StabChain brute_graph_aut(const GraphView &g, const OracleConfig &cfg = {});

bool coset_equal(const Coset &a, const Coset &b);

} // namespace oracle
} // namespace siso
