#pragma once

#include <optional>

#include "siso/luks.hpp"
#include "siso/relational.hpp"

namespace siso {

// A homomorphism phi: G -> Sym([k]) whose image contains Alt([k]).
struct GiantRep {
  GroupHom hom;
  int k = 0;

  void check() const; // image must be a giant
};

// {alpha : stabilizer image does not contain Alt([k])}; always a union of
// orbits of h.
std::vector<int> affected_points(const StabChain &h, const GiantRep &rep);

struct CertOutcome {
  bool full = false;
  StabChain fullness_group;            // FULL: K <= Aut_{G_T}(x), (K^phi)^T >= Alt(T)
  StabChain nonfullness_group;         // NONFULL: non-giant M <= Sym(T) (T renumbered)
  std::vector<int> window_trace;       // final window W
};

// Algorithm "LocalCertificates" for the test set T (subset of [k]).
CertOutcome local_certificates(Solver &solver, const StringInstance &inst,
                               const GiantRep &rep, const std::vector<int> &t_set,
                               const PartitionSequence &seq);

// Bijections T1 -> T2 are encoded over positions of the sorted test sets.
struct CertComparison {
  bool no_map = false;    // no sigma_0 with T1^{sigma_0^phi} = T2
  bool collapsed = false; // the iso set vanished; containment holds vacuously
  StabChain m_group;      // non-giant on |T1| positions
  Perm sigma;             // positions of T1 -> positions of T2
};

CertComparison compare_local_certificates(Solver &solver, const std::vector<int> &x1,
                                          const std::vector<int> &x2,
                                          const GiantRep &rep,
                                          const std::vector<int> &t1,
                                          const std::vector<int> &t2,
                                          const PartitionSequence &seq);

// n - max{|Delta| : Alt(Delta) <= G}; exact via the pair closure
// {gamma : (a b gamma) in G}.
int symmetry_defect(const StabChain &c);

// orbit partition of the induced action on domain x domain; diagonal
// orbits listed first
RelStructure orbital_configuration(const StabChain &c, const std::vector<int> &domain);

struct AggregateOutcome {
  enum Kind { STRUCTURES, SYMMETRY, MISMATCH } kind = MISMATCH;
  // STRUCTURES: one family per string
  std::vector<RelStructure> structures1, structures2;
  // SYMMETRY: Delta_i and K_i <= Aut_{G_{Delta_i}}(x_i) with giant projection
  std::vector<int> delta1, delta2;
  StabChain k1, k2;
};

AggregateOutcome aggregate_certificates(Solver &solver, const std::vector<int> &x1,
                                        const std::vector<int> &x2, const GiantRep &rep,
                                        int t_param, const PartitionSequence &seq);

struct ReductionPart {
  StabChain subgroup;
  Perm shift;
};

using StructureIsoOracle =
    std::function<Coset(const RelStructure &, const RelStructure &)>;

// parts H_j h_j with Iso_G(x1,x2) the union of the per-part iso sets
std::vector<ReductionPart> find_structure(const AggregateOutcome &agg,
                                          const StabChain &g, const GiantRep &rep,
                                          const StructureIsoOracle &oracle = {});

struct SymmetryParts {
  bool empty = false; // Delta_1 cannot be mapped onto Delta_2
  StabChain subgroup; // H = pointwise stabilizer of Delta_1 under phi
  std::vector<Perm> shifts;
  StabChain k1;       // for reconstruction <K_1, G_j> g_j
};

SymmetryParts find_symmetry(const AggregateOutcome &agg, const StabChain &g,
                            const GiantRep &rep);

// default structure-iso binding: string-isomorphism reduction over the full
// symmetric group on tuples when small enough, exact backtracking otherwise
Coset default_structure_iso(Solver &solver, const RelStructure &a,
                            const RelStructure &b);

} // namespace siso
