#pragma once

#include <map>
#include <optional>

#include "siso/hom.hpp"
#include "siso/solver_types.hpp"

namespace siso {

// Socle via minimal normal closures; giants short-circuit, everything else
// enumerates under the cap.
StabChain socle(const StabChain &c, uint128 cap = 1000000);

struct JohnsonRecognition {
  int m = 0, t = 0;
  // per domain point, the t-subset of [m] (0-indexed) it corresponds to
  std::vector<std::vector<int>> rho;
};

// Recognize a permutational equivalence with A_m^(t) (or S_m^(t)); every
// candidate is verified by explicit conjugation before acceptance.
std::optional<JohnsonRecognition> johnson_recognize(const StabChain &c, int max_m);

// The unique sigma in S_m inducing gamma on t-subsets; subsets indexed
// lexicographically. Throws NotInduced / AmbiguousSmallM.
Perm johnson_induced_permutation(const Perm &gamma, int m, int t);

std::vector<std::vector<int>> t_subsets(int m, int t); // lexicographic
int subset_index(int m, int t, const std::vector<int> &x);
Perm perm_on_subsets(const Perm &sigma, int t); // induced action of sigma in S_m

struct PrimitiveClassification {
  enum Kind { SMALL, JOHNSON_TOWER } kind = SMALL;
  StabChain socle_group;
  std::vector<Partition> tower; // {Omega} = B_1 > ... > B_k = singletons, N-invariant
  int m = 0, t = 0;
};

double size_threshold_log2(int n, int d, const SolverConfig &cfg); // log2 n^(c1 log2 d + c2)
bool order_exceeds_threshold(uint128 order, int n, int d, const SolverConfig &cfg);

PrimitiveClassification classify_primitive(const StabChain &c, int d,
                                           const SolverConfig &cfg = {});

struct GiantRepData {
  bool too_small = false;
  StabChain n_subgroup; // N, normal of index <= d
  Partition blocks;     // ker(psi) = N_(blocks)
  GroupHom psi;         // N -> Sym([k])
  int k = 0;
};

GiantRepData compute_giant_representation(const StabChain &p, int d,
                                          const SolverConfig &cfg = {});

// ---------------------------------------------------------------------------
// change-of-action reductions

struct JohnsonLevel {
  int m = 0, t = 0;
  // per parent-block index in chain[i-1]: local sub-block index -> t-subset
  std::vector<std::vector<std::vector<int>>> rho;
};

class UnfoldGraph {
public:
  struct Vertex {
    int level = 0;            // distance layer is implicit via edges
    bool lattice = false;     // block vertex or (i, B, X) vertex
    int parent_block = -1;    // lattice: index of B in chain[level-1]
    int block = -1;           // block vertex: index of B in chain[level]
    std::vector<int> subset;  // lattice: X subseteq [m_i]
  };

  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> children; // sorted deterministically
  int root = 0;

  std::vector<std::vector<int>> maximal_branches() const; // vertex-id paths
  std::string to_dot(const std::vector<Partition> &chain) const;
};

UnfoldGraph build_unfold_graph(const std::vector<Partition> &chain,
                               const std::map<int, JohnsonLevel> &johnson);

struct AugmentedInstance {
  StringInstance inst;
  PartitionSequence seq;
  std::vector<int> origin;      // new point -> original point
  std::vector<Perm> gen_images; // star image per original strong generator
};

// Coset-augmentation pass: iterates the inductive step until the last
// partition is discrete; every output level is semi-regular or Johnson.
AugmentedInstance reduce_step_one(const StringInstance &inst, int d,
                                  const SolverConfig &cfg = {});

// Johnson unfolding pass over a sequence whose levels are each semi-regular
// or Johnson; the output sequence is almost d-ary.
AugmentedInstance reduce_step_two(const StringInstance &inst,
                                  const PartitionSequence &seq,
                                  const SolverConfig &cfg = {});

// per-level Johnson recognitions used by the unfolding
std::map<int, JohnsonLevel> detect_johnson_levels(const StabChain &g,
                                                  const PartitionSequence &seq);
UnfoldGraph unfold_graph_of(const StringInstance &inst,
                            const PartitionSequence &seq);

} // namespace siso
