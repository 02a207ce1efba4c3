#pragma once

#include <optional>
#include <vector>

#include "siso/stabchain.hpp"

namespace siso {

// A homomorphism given by generator images. Evaluation, kernel and preimage
// all run over the diagonal action on the disjoint union of the two domains:
// a source-first base yields images, a target-first base yields preimages
// and the kernel.
class GroupHom {
public:
  GroupHom() = default;
  GroupHom(StabChain source, int target_degree, std::vector<Perm> gen_images);

  const StabChain &source() const { return source_; }
  int target_degree() const { return target_degree_; }
  const std::vector<Perm> &gen_images() const { return gen_images_; }

  Perm image(const Perm &g) const;           // g must lie in the source
  StabChain image_group() const;             // chain over the generator images
  StabChain kernel() const;
  std::optional<Perm> preimage(const Perm &target) const;
  // preimage of a subgroup of the image, given by generators on the target
  StabChain preimage_group(const std::vector<Perm> &target_gens) const;

  // consistency probe used by tests: image(gh) == image(g)image(h)
  bool respects_products(const Perm &g, const Perm &h) const;

private:
  StabChain source_;
  int target_degree_ = 0;
  std::vector<Perm> gen_images_;

  StabChain source_first_;  // combined domain, source points first in base
  StabChain target_first_;  // combined domain, target points first in base

  Perm combine(const Perm &src, const Perm &tgt) const;
  Perm src_part(const Perm &combined) const;
  Perm tgt_part(const Perm &combined) const;
};

// Natural action on an invariant partition; blocks indexed by minimum
// element. Throws NotInvariant when a generator breaks a block.
GroupHom induced_action(const StabChain &c,
                        const std::vector<std::vector<int>> &blocks);

Perm block_image(const Perm &g, const std::vector<std::vector<int>> &blocks);

// Restriction of the group to an invariant subset, renumbered along the
// sorted order of delta.
GroupHom restriction_hom(const StabChain &c, const std::vector<int> &delta);

StabChain hom_kernel(const GroupHom &h);
std::optional<Perm> hom_preimage(const GroupHom &h, const Perm &target);

} // namespace siso
