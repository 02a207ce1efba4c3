#pragma once

#include <optional>
#include <vector>

#include "siso/stabchain.hpp"

namespace siso {

// A right coset H·rep, or the empty set. This is the return shape of every
// isomorphism operation: the subgroup part is the automorphism group, the
// representative one witness isomorphism.
class Coset {
public:
  Coset() = default; // empty

  Coset(StabChain subgroup, Perm rep)
      : empty_(false), subgroup_(std::move(subgroup)), rep_(std::move(rep)) {
    if (rep_.degree() != subgroup_.degree())
      throw Error("DomainMismatch", "coset representative degree");
  }

  static Coset empty_set() { return Coset(); }
  static Coset full_group(const StabChain &g) { return Coset(g, Perm(g.degree())); }

  bool empty() const { return empty_; }
  const StabChain &subgroup() const {
    if (empty_) throw Error("EmptyCoset", "subgroup of the empty coset");
    return subgroup_;
  }
  const Perm &rep() const {
    if (empty_) throw Error("EmptyCoset", "representative of the empty coset");
    return rep_;
  }

  int degree() const { return empty_ ? 0 : subgroup_.degree(); }
  uint128 size() const { return empty_ ? 0 : subgroup_.order(); }

  bool contains(const Perm &p) const {
    return !empty_ && subgroup_.contains(p.then(rep_.inverse()));
  }

  // normalizes the representative to the identity when it lies in the
  // subgroup (so automorphism groups print as plain groups)
  Coset normalized() const;

  void for_each_element(const std::function<bool(const Perm &)> &fn) const;

private:
  bool empty_ = true;
  StabChain subgroup_;
  Perm rep_;
};

// Union of cosets, all living inside one ambient group and each a coset of a
// subgroup of the same automorphism group; the union is again a coset.
Coset coset_union(const std::vector<Coset> &parts);

// Streaming version of coset_union for long transversal loops.
class CosetUnion {
public:
  void add(const Coset &part);
  Coset result() const;
  bool has_any() const { return !parts_empty_; }

private:
  bool parts_empty_ = true;
  std::vector<Perm> gens_;
  Perm first_rep_;
  std::optional<StabChain> acc_;
  int degree_ = 0;
};

} // namespace siso
