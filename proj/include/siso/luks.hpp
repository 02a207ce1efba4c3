#pragma once

#include "siso/hom.hpp"
#include "siso/solver_types.hpp"

namespace siso {

// The String Isomorphism solver. Dispatches between orbit-by-orbit
// processing, standard Luks reduction and the giant-representation
// recursion, bottoming out in plain coset enumeration.
class Solver {
public:
  explicit Solver(SolverConfig cfg = {}) : cfg_(cfg) {}

  const SolverConfig &config() const { return cfg_; }
  SolverStats &stats() { return stats_; }

  // Iso over a shifted coset via Iso_{Gg}^W(x,y) = Iso_G^W(x, y^{g^-1}) g
  IsoResult iso_window_shift(const StringInstance &inst, const PartitionSequence &seq);
  // Algorithm "orbit by orbit": window must be a union of orbits
  IsoResult orbit_by_orbit(const StringInstance &inst, const PartitionSequence &seq);
  // union over a transversal of the blockwise stabilizer
  IsoResult standard_luks_reduction(const StringInstance &inst, const Partition &blocks,
                                    const PartitionSequence &seq);
  // recursion for transitive groups whose first partition has at most d blocks
  IsoResult lemma62_recursion(const StringInstance &inst, const PartitionSequence &seq);
  // the full solver; seq must validate almost-d-ary for inst.group
  IsoResult string_iso_main(const StringInstance &inst, const PartitionSequence &seq);
  // recursion floor: plain enumeration filter
  IsoResult base_case(const StringInstance &inst);

  // internal entry used by the certificate layer: windowed solve over an
  // explicit chain + shift, sequence taken over the same domain
  IsoResult solve_windowed(const StabChain &g, const Perm &shift,
                           const std::vector<int> &window, const std::vector<int> &x,
                           const std::vector<int> &y, const PartitionSequence &seq,
                           int depth = 0);

private:
  SolverConfig cfg_;
  SolverStats stats_;

  IsoResult iso_orbit(const StabChain &g, const Perm &shift,
                      const std::vector<int> &orbit, const std::vector<int> &x,
                      const std::vector<int> &y, const PartitionSequence &seq,
                      int depth);
  IsoResult solve_full(const StabChain &g, const std::vector<int> &x,
                       const std::vector<int> &y, const PartitionSequence &seq,
                       int depth);
  IsoResult solve_transitive(const StabChain &g, const std::vector<int> &x,
                             const std::vector<int> &y, const PartitionSequence &seq,
                             int depth);
  IsoResult luks_over_blocks(const StabChain &g, const std::vector<int> &x,
                             const std::vector<int> &y, const Partition &blocks,
                             const PartitionSequence &seq, int depth);
  IsoResult lemma62(const StabChain &g, const std::vector<int> &x,
                    const std::vector<int> &y, const PartitionSequence &seq, int depth);
  IsoResult giant_path(const StabChain &gprime, const GroupHom &phi,
                       const Partition &kernel_blocks, const std::vector<int> &x,
                       const std::vector<int> &y, const PartitionSequence &seq,
                       int t_param, int depth);
  IsoResult enumerate_filter(const StabChain &g, const Perm &shift,
                             const std::vector<int> &window, const std::vector<int> &x,
                             const std::vector<int> &y);

  void note_depth(int depth);
};

// numeric lemma check: binom(m,k)^log2(m) >= m^k, equivalent to
// binom(m,k) >= 2^k for 1 <= k <= m/2
bool approx_binom_holds(int m, int k);

// Lemma-style trace check over recorded recursion events.
struct TraceCheck {
  bool all_half = true;         // every recorded subsize <= n/2
  bool lemma_inequality = true; // sum (n_i/n)^(k_rec+1) <= 1
  int checked = 0;
};
TraceCheck check_recursion_trace(const SolverStats &stats);

} // namespace siso
