#pragma once

#include <string>
#include <vector>

#include "siso/stabchain.hpp"

namespace siso {

// A partition of {0,...,n-1}. Blocks are kept sorted internally and ordered
// by minimum element, so equal partitions compare equal structurally.
class Partition {
public:
  Partition() = default;
  Partition(int n, std::vector<std::vector<int>> blocks);

  static Partition whole(int n);
  static Partition singletons(int n);
  static Partition from_block_of(int n, const std::vector<int> &block_of);

  int degree() const { return degree_; }
  const std::vector<std::vector<int>> &blocks() const { return blocks_; }
  int block_count() const { return int(blocks_.size()); }
  int block_index_of(int point) const { return block_of_[point]; }
  const std::vector<int> &block_of(int point) const { return blocks_[block_of_[point]]; }

  bool is_whole() const { return blocks_.size() == 1; }
  bool is_discrete() const { return int(blocks_.size()) == degree_; }

  bool operator==(const Partition &o) const {
    return degree_ == o.degree_ && blocks_ == o.blocks_;
  }

private:
  int degree_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

bool refines(const Partition &p, const Partition &q);
// max over q-blocks of the number of p-subblocks; requires p refines q
int partition_index(const Partition &p, const Partition &q);
// induced partition p[S] as blocks in the original point labels
std::vector<std::vector<int>> induced_blocks(const Partition &p,
                                             const std::vector<int> &s);
// induced partition with points renumbered along sorted(s)
Partition induced_renumbered(const Partition &p, const std::vector<int> &s);

bool invariant_under(const Partition &p, const Perm &g);
bool invariant_under(const Partition &p, const GenSet &g);

// Chain {Omega} = B_0 > ... > B_m = singletons of invariant partitions with
// the parameter d of the almost-d-ary condition.
struct PartitionSequence {
  StabChain group;
  std::vector<Partition> chain;
  int d = 1;

  static PartitionSequence trivial(const StabChain &g); // {Omega} > singletons, d = n
};

struct AlmostDAryViolation {
  int level;                 // i in [1..m]
  std::vector<int> block;    // B in B_{i-1}
  std::string reason;
};

struct AlmostDAryReport {
  bool valid = false;
  std::vector<AlmostDAryViolation> violations;
};

// Structural type invariants of a PartitionSequence; throws
// StructurallyInvalid when violated.
void check_sequence_structure(const PartitionSequence &s);

AlmostDAryReport validate_almost_d_ary(const PartitionSequence &s);

bool is_semi_regular(const StabChain &c);

// Restriction along Observation "subgroups and invariant subsets inherit
// the sequence": H <= s.group, delta H-invariant; duplicates collapsed,
// points renumbered along sorted(delta).
PartitionSequence restrict_sequence(const PartitionSequence &s, const StabChain &h,
                                    const std::vector<int> &delta);

} // namespace siso
