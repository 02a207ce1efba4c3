#include "siso/coset.hpp"

namespace siso {

Coset Coset::normalized() const {
  if (empty_) return *this;
  if (subgroup_.contains(rep_)) return Coset(subgroup_, Perm(subgroup_.degree()));
  return *this;
}

void Coset::for_each_element(const std::function<bool(const Perm &)> &fn) const {
  if (empty_) return;
  subgroup_.for_each_element([&](const Perm &h) { return fn(h.then(rep_)); });
}

void CosetUnion::add(const Coset &part) {
  if (part.empty()) return;
  if (parts_empty_) {
    parts_empty_ = false;
    degree_ = part.degree();
    first_rep_ = part.rep();
    gens_ = part.subgroup().strong_gens();
    acc_ = StabChain::build(GenSet(degree_, gens_));
    return;
  }
  if (part.degree() != degree_)
    throw Error("InconsistentAmbient", "coset union over mixed domains");
  auto absorb = [&](const Perm &g) {
    if (!acc_->contains(g)) {
      gens_.push_back(g);
      acc_ = StabChain::build(GenSet(degree_, gens_));
    }
  };
  for (const Perm &g : part.subgroup().strong_gens()) absorb(g);
  absorb(part.rep().then(first_rep_.inverse()));
}

Coset CosetUnion::result() const {
  if (parts_empty_) return Coset::empty_set();
  return Coset(*acc_, first_rep_).normalized();
}

Coset coset_union(const std::vector<Coset> &parts) {
  CosetUnion u;
  for (const Coset &c : parts) u.add(c);
  return u.result();
}

} // namespace siso
