#include "siso/hom.hpp"

#include <algorithm>
#include <numeric>

namespace siso {

GroupHom::GroupHom(StabChain source, int target_degree, std::vector<Perm> gen_images)
    : source_(std::move(source)), target_degree_(target_degree),
      gen_images_(std::move(gen_images)) {
  if (gen_images_.size() != source_.strong_gens().size())
    throw Error("DomainMismatch", "one image per strong generator required");
  for (const Perm &p : gen_images_)
    if (p.degree() != target_degree_)
      throw Error("DomainMismatch", "homomorphism image degree");

  int ns = source_.degree();
  std::vector<Perm> combined;
  for (std::size_t i = 0; i < gen_images_.size(); ++i)
    combined.push_back(combine(source_.strong_gens()[i], gen_images_[i]));
  GenSet cg(ns + target_degree_, combined);

  std::vector<int> src_base(ns), tgt_base(target_degree_);
  std::iota(src_base.begin(), src_base.end(), 0);
  std::iota(tgt_base.begin(), tgt_base.end(), ns);
  source_first_ = StabChain::build(cg, src_base);
  target_first_ = StabChain::build(cg, tgt_base);
}

Perm GroupHom::combine(const Perm &src, const Perm &tgt) const {
  int ns = source_.degree();
  std::vector<int> im(ns + target_degree_);
  for (int i = 0; i < ns; ++i) im[i] = src[i];
  for (int i = 0; i < target_degree_; ++i) im[ns + i] = ns + tgt[i];
  return Perm(std::move(im));
}

Perm GroupHom::src_part(const Perm &combined) const {
  int ns = source_.degree();
  std::vector<int> im(ns);
  for (int i = 0; i < ns; ++i) im[i] = combined[i];
  return Perm(std::move(im));
}

Perm GroupHom::tgt_part(const Perm &combined) const {
  int ns = source_.degree();
  std::vector<int> im(target_degree_);
  for (int i = 0; i < target_degree_; ++i) im[i] = combined[ns + i] - ns;
  return Perm(std::move(im));
}

Perm GroupHom::image(const Perm &g) const {
  // strip the source part through the source-first prefix; the residue is
  // then combine(id, image(g)^{-1})
  Perm want = combine(g, Perm(target_degree_));
  Perm residue = source_first_.sift_prefix(want, source_.degree());
  if (!src_part(residue).is_identity())
    throw Error("NotInSource", "image of element outside the source group");
  return tgt_part(residue).inverse();
}

StabChain GroupHom::image_group() const {
  return StabChain::build(GenSet(target_degree_, gen_images_));
}

StabChain GroupHom::kernel() const {
  int ns = source_.degree();
  const auto &levels = target_first_.levels();
  std::vector<Perm> kgens;
  if (int(levels.size()) > target_degree_)
    for (const Perm &g : levels[target_degree_].gens) kgens.push_back(src_part(g));
  return StabChain::build(GenSet(ns, std::move(kgens)));
}

std::optional<Perm> GroupHom::preimage(const Perm &target) const {
  if (target.degree() != target_degree_)
    throw Error("DomainMismatch", "preimage target degree");
  int ns = source_.degree();
  std::vector<int> pts, imgs;
  for (int i = 0; i < target_degree_; ++i) {
    pts.push_back(ns + i);
    imgs.push_back(ns + target[i]);
  }
  // walk the target-first chain prescribing the target block of the image
  Perm outer(ns + target_degree_), outer_inv(ns + target_degree_);
  const auto &levels = target_first_.levels();
  for (int i = 0; i < target_degree_; ++i) {
    int gamma = outer_inv[imgs[i]];
    const auto &lvl = levels[i];
    if (lvl.sv_gen_at(gamma) == -2) return std::nullopt;
    Perm u = target_first_.transversal(i, gamma);
    outer = u.then(outer);
    outer_inv = outer.inverse();
  }
  return src_part(outer);
}

StabChain GroupHom::preimage_group(const std::vector<Perm> &target_gens) const {
  std::vector<Perm> gens = kernel().strong_gens();
  for (const Perm &t : target_gens) {
    auto p = preimage(t);
    if (!p) throw Error("NotInImage", "preimage_group: generator outside image");
    gens.push_back(*p);
  }
  return StabChain::build(GenSet(source_.degree(), std::move(gens)));
}

bool GroupHom::respects_products(const Perm &g, const Perm &h) const {
  return image(g.then(h)) == image(g).then(image(h));
}

Perm block_image(const Perm &g, const std::vector<std::vector<int>> &blocks) {
  int m = int(blocks.size());
  int n = g.degree();
  std::vector<int> block_of(n, -1);
  for (int bi = 0; bi < m; ++bi)
    for (int v : blocks[bi]) block_of[v] = bi;
  std::vector<int> im(m, -1);
  for (int bi = 0; bi < m; ++bi) {
    int target = block_of[g[blocks[bi][0]]];
    for (int v : blocks[bi])
      if (block_of[g[v]] != target)
        throw Error("NotInvariant", "generator maps a block to a non-block");
    im[bi] = target;
  }
  return Perm(std::move(im));
}

GroupHom induced_action(const StabChain &c,
                        const std::vector<std::vector<int>> &blocks) {
  std::vector<std::vector<int>> sorted(blocks);
  for (auto &b : sorted) std::sort(b.begin(), b.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto &a, const auto &b) { return a[0] < b[0]; });
  std::vector<Perm> images;
  for (const Perm &g : c.strong_gens()) images.push_back(block_image(g, sorted));
  return GroupHom(c, int(sorted.size()), std::move(images));
}

GroupHom restriction_hom(const StabChain &c, const std::vector<int> &delta) {
  std::vector<int> d(delta);
  std::sort(d.begin(), d.end());
  std::vector<int> pos(c.degree(), -1);
  for (std::size_t i = 0; i < d.size(); ++i) pos[d[i]] = int(i);
  std::vector<Perm> images;
  for (const Perm &g : c.strong_gens()) {
    std::vector<int> im(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      int q = g[d[i]];
      if (pos[q] == -1)
        throw Error("NotInvariant", "restriction: subset not invariant");
      im[i] = pos[q];
    }
    images.push_back(Perm(std::move(im)));
  }
  return GroupHom(c, int(d.size()), std::move(images));
}

StabChain hom_kernel(const GroupHom &h) { return h.kernel(); }

std::optional<Perm> hom_preimage(const GroupHom &h, const Perm &target) {
  return h.preimage(target);
}

} // namespace siso
