#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "siso/perm.hpp"
#include "siso/util.hpp"

namespace siso {

// Base and strong generating set. Transversals are kept as Schreier vectors
// so that large induced domains stay cheap; coset representatives are
// rebuilt on demand.
class StabChain {
public:
  struct Level {
    int base = -1;
    std::vector<Perm> gens;      // generators of this level's group
    std::vector<Perm> gen_invs;
    std::vector<int> orbit;      // discovery order, orbit[0] == base
    // Schreier vectors; left empty while the level has no generators so that
    // long forced bases on large domains stay cheap.
    std::vector<int> sv_gen;     // per point: generator index used to reach it, -1 root, -2 outside
    std::vector<int> sv_prev;    // per point: predecessor point

    int sv_gen_at(int point) const {
      if (sv_gen.empty()) return point == base ? -1 : -2;
      return sv_gen[point];
    }
  };

  StabChain() = default;

  // base_hint points are consumed first (in the given order); points the
  // current level group fixes are skipped. Remaining base points are the
  // lowest-numbered non-fixed points.
  static StabChain build(const GenSet &g, const std::vector<int> &base_hint = {},
                         std::uint64_t seed = 0x5150u);

  int degree() const { return degree_; }
  const std::vector<Level> &levels() const { return levels_; }
  const std::vector<Perm> &strong_gens() const { return strong_gens_; }
  GenSet gen_set() const { return GenSet(degree_, strong_gens_); }
  std::vector<int> base() const;

  uint128 order() const;
  bool is_trivial() const { return levels_.empty(); }
  bool contains(const Perm &p) const;

  // residue of sifting p through the chain; identity iff p in the group
  Perm sift(const Perm &p) const;
  // residue of sifting through the first n_levels levels only
  Perm sift_prefix(const Perm &p, int n_levels) const;

  // coset representative u with base^u == point at the given level
  Perm transversal(int level, int point) const;
  bool in_orbit(int level, int point) const;

  // element with base[i]^g == prescribed[i] for all prescribed prefix images
  std::optional<Perm> element_with_base_images(const std::vector<int> &prefix) const;

  std::vector<int> orbit(int point) const;
  std::vector<std::vector<int>> orbits() const;
  bool transitive() const;

  // {g in G : p^g = p for all p in pts}
  StabChain pointwise_stabilizer(const std::vector<int> &pts) const;
  // {g in G : T^g = T}, orbit-pruned backtracking over a T-first base
  StabChain setwise_stabilizer(const std::vector<int> &t) const;
  // some g with T1^g = T2, or nullopt
  std::optional<Perm> set_transporter(const std::vector<int> &t1,
                                      const std::vector<int> &t2) const;
  // some g whose restriction to pts is exactly the prescribed map, or nullopt
  std::optional<Perm> element_with_restriction(const std::vector<int> &pts,
                                               const std::vector<int> &images) const;

  // yields each element exactly once, ordered lexicographically by the
  // per-level transversal images; callback returns false to stop early
  void for_each_element(const std::function<bool(const Perm &)> &fn) const;
  std::vector<Perm> elements(uint128 cap) const;

  bool is_semi_regular() const;

private:
  int degree_ = 0;
  std::vector<Level> levels_;
  std::vector<Perm> strong_gens_;

  friend class ChainBuilder;
};

enum class GiantKind { SYM, ALT, NEITHER };

GiantKind is_giant(const StabChain &c);
// Alt(delta) <= G, decided by membership of the 3-cycle generators
bool contains_alt(const StabChain &c, const std::vector<int> &delta);

// Block system with primitive quotient for a transitive group; the singleton
// partition signals primitivity. Blocks sorted by minimum element.
std::vector<std::vector<int>> min_block_system(const GenSet &g);

// finest invariant partition merging a and b (Atkinson)
std::vector<std::vector<int>> finest_blocks_merging(const GenSet &g, int a, int b);

} // namespace siso
