#pragma once

#include <vector>

#include "siso/coset.hpp"

namespace siso {

// A t-ary relational structure over an explicit domain (a subset of a larger
// point universe; tuples name universe points that must lie in the domain).
struct RelStructure {
  std::vector<int> domain; // sorted universe points
  int arity = 1;
  std::vector<std::vector<std::vector<int>>> relations; // tuple lists, sorted

  void normalize();
  bool operator==(const RelStructure &o) const;
};

// relabel every tuple entry through the map (universe-indexed)
RelStructure relabel(const RelStructure &a, const std::vector<int> &map);

// Isomorphisms A -> B as bijections of domain positions: the returned coset
// lives on {0,...,|domain|-1} via the sorted domain orderings of A and B.
// Exact backtracking; exponential worst case, guarded by a domain cap.
Coset structure_iso_cosets(const RelStructure &a, const RelStructure &b,
                           int domain_cap = 16);

} // namespace siso
