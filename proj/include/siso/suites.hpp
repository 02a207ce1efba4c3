#pragma once

#include <string>

#include "siso/apps.hpp"
#include "siso/luks.hpp"

namespace siso {
namespace suites {

// random subgroup of S_n generated by up to max_gens elements
StabChain random_subgroup(Rng &rng, int n, int max_gens);
Perm random_perm(Rng &rng, int n);

// wreath-like embedding: `top` acting on blocks of size b, optionally with
// the full C_b bottom (flip = per-block cyclic shifts as extra generators)
StabChain block_double_group(const StabChain &top, int b, bool with_bottom);

// C_2 wr A_k plus a 2-point parity orbit (points 2k, 2k+1)
StabChain parity_wreath(int k);
// C_2 wr top  (top acting on k points); domain 2k
StabChain c2_wreath(const StabChain &top);

StabChain symmetric_group(int n);
StabChain alternating_group(int n);
StabChain cyclic_group(int n);
StabChain dihedral_group(int n); // on n points

// A_m acting on t-subsets of [m]
StabChain johnson_group(int m, int t, bool symmetric = false);

struct SweepInstance {
  std::string id;
  StringInstance inst;
  PartitionSequence seq;
};

// the string-isomorphism oracle sweep: mixed transitive/intransitive
// instances with |G| <= 10^4, n <= 10, alphabet <= 3
std::vector<SweepInstance> si_sweep(std::uint64_t seed, int count);

// all connected graphs with n <= nmax and max degree <= dmax, one
// representative per isomorphism class
std::vector<Graph> gi_corpus(int nmax, int dmax);

} // namespace suites
} // namespace siso
