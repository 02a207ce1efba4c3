#include "siso/relational.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace siso {

void RelStructure::normalize() {
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  for (auto &rel : relations) {
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  }
}

bool RelStructure::operator==(const RelStructure &o) const {
  return domain == o.domain && arity == o.arity && relations == o.relations;
}

RelStructure relabel(const RelStructure &a, const std::vector<int> &map) {
  RelStructure out;
  out.arity = a.arity;
  for (int v : a.domain) out.domain.push_back(map[v]);
  for (const auto &rel : a.relations) {
    std::vector<std::vector<int>> r2;
    for (const auto &tup : rel) {
      std::vector<int> t2;
      for (int v : tup) t2.push_back(map[v]);
      r2.push_back(std::move(t2));
    }
    out.relations.push_back(std::move(r2));
  }
  out.normalize();
  return out;
}

namespace {

struct IsoSearch {
  int q = 0;
  std::vector<int> pos_a; // universe -> position, -1 outside
  std::vector<int> pos_b;
  std::vector<std::set<std::vector<int>>> b_rel; // position tuples per relation
  std::vector<std::vector<std::vector<std::vector<int>>>> a_by_max;
  // a_by_max[r][p]: position-tuples of relation r whose max position is p

  std::vector<int> f;       // position map a -> b, -1 unassigned
  std::vector<bool> used;
  std::vector<Perm> found;

  bool tuple_ok(const std::vector<int> &tup, int rel) const {
    std::vector<int> img(tup.size());
    for (std::size_t i = 0; i < tup.size(); ++i) {
      if (f[tup[i]] < 0) return true; // not yet decidable
      img[i] = f[tup[i]];
    }
    return b_rel[rel].count(img) > 0;
  }

  void dfs(int depth) {
    if (depth == q) {
      found.push_back(Perm(f));
      return;
    }
    for (int cand = 0; cand < q; ++cand) {
      if (used[cand]) continue;
      f[depth] = cand;
      used[cand] = true;
      bool ok = true;
      for (std::size_t r = 0; r < a_by_max.size() && ok; ++r)
        for (const auto &tup : a_by_max[r][depth])
          if (!tuple_ok(tup, int(r))) {
            ok = false;
            break;
          }
      if (ok) dfs(depth + 1);
      f[depth] = -1;
      used[cand] = false;
    }
  }
};

} // namespace

Coset structure_iso_cosets(const RelStructure &a, const RelStructure &b,
                           int domain_cap) {
  if (a.domain.size() != b.domain.size() || a.arity != b.arity ||
      a.relations.size() != b.relations.size())
    return Coset::empty_set();
  for (std::size_t r = 0; r < a.relations.size(); ++r)
    if (a.relations[r].size() != b.relations[r].size()) return Coset::empty_set();
  int q = int(a.domain.size());
  if (q > domain_cap) throw cap_exceeded("structure iso above domain cap");
  if (q == 0) return Coset::empty_set();

  int umax = 0;
  for (int v : a.domain) umax = std::max(umax, v + 1);
  for (int v : b.domain) umax = std::max(umax, v + 1);

  IsoSearch s;
  s.q = q;
  s.pos_a.assign(umax, -1);
  s.pos_b.assign(umax, -1);
  for (int i = 0; i < q; ++i) {
    s.pos_a[a.domain[i]] = i;
    s.pos_b[b.domain[i]] = i;
  }
  s.b_rel.resize(b.relations.size());
  s.a_by_max.assign(a.relations.size(),
                    std::vector<std::vector<std::vector<int>>>(q));
  for (std::size_t r = 0; r < b.relations.size(); ++r)
    for (const auto &tup : b.relations[r]) {
      std::vector<int> pt;
      for (int v : tup) pt.push_back(s.pos_b[v]);
      s.b_rel[r].insert(std::move(pt));
    }
  for (std::size_t r = 0; r < a.relations.size(); ++r)
    for (const auto &tup : a.relations[r]) {
      std::vector<int> pt;
      int mx = 0;
      for (int v : tup) {
        pt.push_back(s.pos_a[v]);
        mx = std::max(mx, s.pos_a[v]);
      }
      s.a_by_max[r][mx].push_back(std::move(pt));
    }
  s.f.assign(q, -1);
  s.used.assign(q, false);
  s.dfs(0);

  if (s.found.empty()) return Coset::empty_set();
  std::sort(s.found.begin(), s.found.end());
  Perm rep = s.found.front();
  Perm rep_inv = rep.inverse();
  std::vector<Perm> aut;
  for (const Perm &p : s.found) aut.push_back(p.then(rep_inv));
  return Coset(StabChain::build(GenSet(q, std::move(aut))), rep);
}

} // namespace siso
