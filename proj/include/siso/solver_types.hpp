#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siso/coset.hpp"
#include "siso/partition.hpp"

namespace siso {

struct SolverConfig {
  uint128 brute_cap = 10000;         // base-case trigger and capacity
  uint128 enum_cap = 10000000;       // generic element-enumeration cap
  uint128 transversal_cap = 1000000; // Luks reduction coset bound
  int d_cap = 24;                    // setwise-stabilizer size guard
  double c1 = 1.0;                   // size_threshold(n, d) = n^(c1 log2 d + c2)
  double c2 = 10.0;
  int cert_t_override = 0;           // test-only: force the certificate t
  bool guard_override = false;       // test-only: relax aggregate guards
  std::uint64_t seed = 0x5150;
  uint128 structure_tuple_cap = 200000; // tuple-domain cap for structure iso
};

// One lemma-style recursion event: a node over domain size n spawning
// subproblems of the recorded sizes. half_branch marks nodes whose
// subproblems are promised to stay at or below n/2.
struct RecursionRecord {
  int n = 0;
  std::vector<int> subsizes;
  bool half_branch = false;
  std::string site;
};

struct SolverStats {
  long nodes = 0;
  long base_cases = 0;
  long luks_calls = 0;
  long lemma62_calls = 0;
  long giant_calls = 0;
  long aggregate_calls = 0;
  int max_depth = 0;
  std::string top_branch;
  std::vector<RecursionRecord> records;

  void clear() { *this = SolverStats{}; }
};

struct StringInstance {
  int n = 0;
  int alphabet_size = 0;
  std::vector<int> x, y;   // symbols in [0, alphabet_size)
  Coset group;             // group or shifted coset, never empty
  std::vector<int> window; // sorted; invariant under the subgroup part

  static StringInstance over_group(const StabChain &g, std::vector<int> x,
                                   std::vector<int> y, int alphabet_size);
  void check() const;
};

using IsoResult = Coset;

} // namespace siso
