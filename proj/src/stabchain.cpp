#include "siso/stabchain.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace siso {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b); // keep lowest point as representative
    parent[b] = a;
    return true;
  }
};

std::vector<std::vector<int>> uf_blocks(UnionFind &uf, int n) {
  std::vector<std::vector<int>> by_rep(n);
  for (int i = 0; i < n; ++i) by_rep[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto &b : by_rep)
    if (!b.empty()) out.push_back(std::move(b));
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// construction

class ChainBuilder {
public:
  ChainBuilder(int degree, std::vector<int> hint, std::uint64_t seed)
      : degree_(degree), hint_(std::move(hint)), rng_(seed) {
    chain_.degree_ = degree;
    for (int h : hint_) force_level(h);
  }

  void run(const std::vector<Perm> &gens) {
    for (const Perm &g : gens) add_strong_generator(g);
    randomized_fill(gens);
    verify_closure();
    chain_.strong_gens_.clear();
    if (!chain_.levels_.empty())
      chain_.strong_gens_ = chain_.levels_[0].gens;
  }

  StabChain take() { return std::move(chain_); }

private:
  int degree_;
  std::vector<int> hint_;
  Rng rng_;
  StabChain chain_;

  void force_level(int base) {
    StabChain::Level lvl;
    lvl.base = base;
    lvl.orbit = {base};
    chain_.levels_.push_back(std::move(lvl));
  }

  void extend_orbit(int li) {
    auto &lvl = chain_.levels_[li];
    if (lvl.sv_gen.empty()) {
      lvl.sv_gen.assign(degree_, -2);
      lvl.sv_prev.assign(degree_, -1);
      lvl.sv_gen[lvl.base] = -1;
    }
    for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
      int p = lvl.orbit[i];
      for (std::size_t gi = 0; gi < lvl.gens.size(); ++gi) {
        int q = lvl.gens[gi][p];
        if (lvl.sv_gen[q] == -2) {
          lvl.sv_gen[q] = int(gi);
          lvl.sv_prev[q] = p;
          lvl.orbit.push_back(q);
        }
      }
    }
  }

  // residue after stripping, plus the level where stripping stopped
  std::pair<Perm, int> strip(Perm g, int from = 0) const {
    for (int i = from; i < int(chain_.levels_.size()); ++i) {
      const auto &lvl = chain_.levels_[i];
      int beta = g[lvl.base];
      if (beta == lvl.base) continue;
      if (lvl.sv_gen_at(beta) == -2) return {std::move(g), i};
      // multiply by u(beta)^{-1}, walking the Schreier tree
      int b = beta;
      while (b != lvl.base) {
        g = g.then(lvl.gen_invs[lvl.sv_gen[b]]);
        b = lvl.sv_prev[b];
      }
    }
    return {std::move(g), int(chain_.levels_.size())};
  }

  void add_strong_generator(const Perm &g0) {
    std::vector<Perm> pending{g0};
    while (!pending.empty()) {
      Perm g = std::move(pending.back());
      pending.pop_back();
      auto [h, stop] = strip(std::move(g), 0);
      if (h.is_identity()) continue;
      if (stop == int(chain_.levels_.size())) {
        int moved = -1;
        for (int p = 0; p < degree_; ++p)
          if (h[p] != p) { moved = p; break; }
        force_level(moved);
      }
      // h fixes the bases of every level it strips through; register it on
      // each level whose base prefix it fixes
      Perm hinv = h.inverse();
      for (int i = 0; i <= stop && i < int(chain_.levels_.size()); ++i) {
        bool fixes_prefix = true;
        for (int j = 0; j < i; ++j)
          if (h[chain_.levels_[j].base] != chain_.levels_[j].base) {
            fixes_prefix = false;
            break;
          }
        if (!fixes_prefix) break;
        chain_.levels_[i].gens.push_back(h);
        chain_.levels_[i].gen_invs.push_back(hinv);
        extend_orbit(i);
      }
    }
  }

  void randomized_fill(const std::vector<Perm> &gens) {
    if (gens.size() < 2) return;
    Perm acc(degree_);
    for (int round = 0; round < 16; ++round) {
      acc = acc.then(gens[rng_.below(gens.size())]);
      if (rng_.below(2)) acc = acc.then(gens[rng_.below(gens.size())]);
      auto [h, stop] = strip(acc, 0);
      (void)stop;
      if (!h.is_identity()) add_strong_generator(h);
    }
  }

  // Deterministic Sims verification: every Schreier generator must strip to
  // the identity. Residues are inserted and the scan restarts until a
  // fixpoint certifies the chain. No references into levels_ may be held
  // across add_strong_generator, which reallocates.
  void verify_closure() {
    bool stable = false;
    while (!stable) {
      stable = true;
      for (int li = 0; li < int(chain_.levels_.size()) && stable; ++li) {
        for (std::size_t oi = 0; oi < chain_.levels_[li].orbit.size() && stable;
             ++oi) {
          int beta = chain_.levels_[li].orbit[oi];
          Perm u = chain_.transversal(li, beta);
          for (std::size_t gi = 0; gi < chain_.levels_[li].gens.size() && stable;
               ++gi) {
            Perm s = chain_.levels_[li].gens[gi];
            Perm us = u.then(s);
            int target = us[chain_.levels_[li].base];
            Perm schreier = us.then(chain_.transversal(li, target).inverse());
            auto [h, stop] = strip(std::move(schreier), li + 1);
            (void)stop;
            if (!h.is_identity()) {
              add_strong_generator(h);
              stable = false;
            }
          }
        }
      }
    }
  }
};

StabChain StabChain::build(const GenSet &g, const std::vector<int> &base_hint,
                           std::uint64_t seed) {
  if (g.degree <= 0) throw Error("InvalidDomain", "empty domain");
  for (int h : base_hint)
    if (h < 0 || h >= g.degree) throw Error("PointOutOfRange", "base hint");
  ChainBuilder b(g.degree, base_hint, seed);
  b.run(g.gens);
  return b.take();
}

// ---------------------------------------------------------------------------
// queries

std::vector<int> StabChain::base() const {
  std::vector<int> b;
  for (const auto &l : levels_) b.push_back(l.base);
  return b;
}

uint128 StabChain::order() const {
  uint128 o = 1;
  for (const auto &l : levels_) o = mul_checked(o, uint128(l.orbit.size()));
  return o;
}

Perm StabChain::transversal(int level, int point) const {
  const auto &lvl = levels_[level];
  if (lvl.sv_gen_at(point) == -2)
    throw Error("Internal", "transversal: point outside fundamental orbit");
  std::vector<int> path;
  int b = point;
  while (b != lvl.base) {
    path.push_back(lvl.sv_gen[b]);
    b = lvl.sv_prev[b];
  }
  Perm u(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = u.then(lvl.gens[*it]);
  return u;
}

bool StabChain::in_orbit(int level, int point) const {
  return levels_[level].sv_gen_at(point) != -2;
}

Perm StabChain::sift(const Perm &p) const {
  if (p.degree() != degree_) throw Error("DomainMismatch", "sift degree");
  Perm g = p;
  for (const auto &lvl : levels_) {
    int beta = g[lvl.base];
    if (beta == lvl.base) continue;
    if (lvl.sv_gen_at(beta) == -2) return g;
    int b = beta;
    while (b != lvl.base) {
      g = g.then(lvl.gen_invs[lvl.sv_gen[b]]);
      b = lvl.sv_prev[b];
    }
  }
  return g;
}

Perm StabChain::sift_prefix(const Perm &p, int n_levels) const {
  Perm g = p;
  for (int i = 0; i < n_levels && i < int(levels_.size()); ++i) {
    const auto &lvl = levels_[i];
    int beta = g[lvl.base];
    if (beta == lvl.base) continue;
    if (lvl.sv_gen_at(beta) == -2) return g;
    int b = beta;
    while (b != lvl.base) {
      g = g.then(lvl.gen_invs[lvl.sv_gen[b]]);
      b = lvl.sv_prev[b];
    }
  }
  return g;
}

bool StabChain::contains(const Perm &p) const { return sift(p).is_identity(); }

std::optional<Perm> StabChain::element_with_base_images(
    const std::vector<int> &prefix) const {
  if (prefix.size() > levels_.size()) return std::nullopt;
  Perm outer(degree_), outer_inv(degree_);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    int gamma = outer_inv[prefix[i]];
    if (levels_[i].sv_gen_at(gamma) == -2) return std::nullopt;
    Perm u = transversal(int(i), gamma);
    outer = u.then(outer);
    outer_inv = outer.inverse();
  }
  return outer;
}

std::vector<int> StabChain::orbit(int point) const {
  return orbit_of(gen_set(), point);
}

std::vector<std::vector<int>> StabChain::orbits() const {
  return all_orbits(gen_set());
}

bool StabChain::transitive() const {
  return degree_ > 0 && int(orbit(0).size()) == degree_;
}

StabChain StabChain::pointwise_stabilizer(const std::vector<int> &pts) const {
  for (int p : pts)
    if (p < 0 || p >= degree_) throw Error("PointOutOfRange", "pointwise stabilizer");
  StabChain tmp = build(gen_set(), pts);
  std::vector<Perm> gens;
  if (int(tmp.levels_.size()) > int(pts.size()))
    gens = tmp.levels_[pts.size()].gens;
  return build(GenSet(degree_, std::move(gens)));
}

namespace {

// DFS over prescribed images of a T-first base; used for setwise
// stabilizers, transporters and restriction searches.
struct PrefixSearch {
  const StabChain &chain;
  int prefix_len;
  // allowed images for slot i (already deduplicated choice handled by caller)
  std::function<bool(int slot, int image)> allowed;
  std::function<bool(const Perm &)> on_found; // return false to stop

  std::vector<bool> used;

  void run() {
    used.assign(chain.degree(), false);
    Perm id(chain.degree());
    dfs(0, id, id);
  }

  bool dfs(int slot, const Perm &outer, const Perm &outer_inv) {
    if (slot == prefix_len) return on_found(outer);
    const auto &lvl = chain.levels()[slot];
    // iterate candidate images in ascending order for determinism
    for (int img = 0; img < chain.degree(); ++img) {
      if (used[img] || !allowed(slot, img)) continue;
      int gamma = outer_inv[img];
      if (lvl.sv_gen_at(gamma) == -2) continue;
      Perm u = chain.transversal(slot, gamma);
      Perm nouter = u.then(outer);
      used[img] = true;
      bool cont = dfs(slot + 1, nouter, nouter.inverse());
      used[img] = false;
      if (!cont) return false;
    }
    return true;
  }
};

} // namespace

StabChain StabChain::setwise_stabilizer(const std::vector<int> &t) const {
  for (int p : t)
    if (p < 0 || p >= degree_) throw Error("PointOutOfRange", "setwise stabilizer");
  std::vector<int> ts(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (ts.empty() || int(ts.size()) == degree_) return *this;

  StabChain re = build(gen_set(), ts);
  std::vector<bool> in_t(degree_, false);
  for (int p : ts) in_t[p] = true;

  std::vector<Perm> gens;
  if (int(re.levels_.size()) > int(ts.size()))
    gens = re.levels_[ts.size()].gens; // pointwise stabilizer part

  StabChain acc = build(GenSet(degree_, gens));
  PrefixSearch search{re, int(ts.size()),
                      [&](int, int img) { return in_t[img]; },
                      [&](const Perm &g) {
                        if (!acc.contains(g)) {
                          gens.push_back(g);
                          acc = build(GenSet(degree_, gens));
                        }
                        return true;
                      },
                      {}};
  search.run();
  return acc;
}

std::optional<Perm> StabChain::set_transporter(const std::vector<int> &t1,
                                               const std::vector<int> &t2) const {
  if (t1.size() != t2.size()) return std::nullopt;
  std::vector<int> a(t1), b(t2);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a == b && a.empty()) return Perm(degree_);

  StabChain re = build(gen_set(), a);
  std::vector<bool> in_b(degree_, false);
  for (int p : b) in_b[p] = true;

  std::optional<Perm> found;
  PrefixSearch search{re, int(a.size()),
                      [&](int, int img) { return in_b[img]; },
                      [&](const Perm &g) {
                        found = g;
                        return false;
                      },
                      {}};
  search.run();
  return found;
}

std::optional<Perm> StabChain::element_with_restriction(
    const std::vector<int> &pts, const std::vector<int> &images) const {
  if (pts.size() != images.size())
    throw Error("DomainMismatch", "restriction arity");
  // sort by point for a deterministic base order
  std::vector<std::pair<int, int>> m;
  for (std::size_t i = 0; i < pts.size(); ++i) m.push_back({pts[i], images[i]});
  std::sort(m.begin(), m.end());
  std::vector<int> base, img;
  for (auto &[p, q] : m) {
    base.push_back(p);
    img.push_back(q);
  }
  StabChain re = build(gen_set(), base);
  Perm outer(degree_), outer_inv(degree_);
  for (std::size_t i = 0; i < base.size(); ++i) {
    int gamma = outer_inv[img[i]];
    const auto &lvl = re.levels_[i];
    if (lvl.sv_gen_at(gamma) == -2) return std::nullopt;
    Perm u = re.transversal(int(i), gamma);
    outer = u.then(outer);
    outer_inv = outer.inverse();
  }
  return outer;
}

void StabChain::for_each_element(const std::function<bool(const Perm &)> &fn) const {
  std::vector<std::vector<int>> sorted_orbits;
  for (const auto &l : levels_) {
    auto o = l.orbit;
    std::sort(o.begin(), o.end());
    sorted_orbits.push_back(std::move(o));
  }
  // elements are built as u_{k-1} . ... . u_0 with level-0 choice outermost
  std::function<bool(int, const Perm &)> rec = [&](int level,
                                                   const Perm &acc) -> bool {
    if (level == int(levels_.size())) return fn(acc);
    for (int beta : sorted_orbits[level]) {
      Perm u = transversal(level, beta);
      if (!rec(level + 1, u.then(acc))) return false;
    }
    return true;
  };
  rec(0, Perm(degree_));
}

std::vector<Perm> StabChain::elements(uint128 cap) const {
  if (order() > cap) throw cap_exceeded("element enumeration above cap");
  std::vector<Perm> out;
  out.reserve(std::size_t(order()));
  for_each_element([&](const Perm &p) {
    out.push_back(p);
    return true;
  });
  return out;
}

bool StabChain::is_semi_regular() const {
  uint128 o = order();
  for (const auto &orb : orbits())
    if (uint128(orb.size()) != o) return false;
  return true;
}

// ---------------------------------------------------------------------------
// giants and blocks

GiantKind is_giant(const StabChain &c) {
  int k = c.degree();
  if (k <= 33) {
    uint128 o = c.order();
    uint128 full = factorial128(unsigned(k));
    if (o == full) return GiantKind::SYM;
    if (o * 2 == full && c.transitive()) return GiantKind::ALT;
    return GiantKind::NEITHER;
  }
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  if (!contains_alt(c, all)) return GiantKind::NEITHER;
  return c.contains(Perm::from_two_cycle(k, 0, 1)) ? GiantKind::SYM : GiantKind::ALT;
}

bool contains_alt(const StabChain &c, const std::vector<int> &delta) {
  if (delta.size() <= 2) return true;
  std::vector<int> d(delta);
  std::sort(d.begin(), d.end());
  for (std::size_t i = 2; i < d.size(); ++i)
    if (!c.contains(Perm::from_three_cycle(c.degree(), d[0], d[1], d[i])))
      return false;
  return true;
}

std::vector<std::vector<int>> finest_blocks_merging(const GenSet &g, int a, int b) {
  UnionFind uf(g.degree);
  uf.unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Perm &p : g.gens) {
      // class representatives must have consistently merged images
      std::vector<int> img_of_class(g.degree, -1);
      for (int x = 0; x < g.degree; ++x) {
        int c = uf.find(x);
        int y = uf.find(p[x]);
        if (img_of_class[c] == -1)
          img_of_class[c] = y;
        else if (img_of_class[c] != y) {
          uf.unite(img_of_class[c], y);
          img_of_class[c] = uf.find(y);
          changed = true;
        }
      }
    }
  }
  return uf_blocks(uf, g.degree);
}

std::vector<std::vector<int>> min_block_system(const GenSet &g) {
  if (!is_transitive(g)) throw Error("NotTransitive", "min_block_system");
  int n = g.degree;
  std::vector<std::vector<int>> singletons;
  for (int i = 0; i < n; ++i) singletons.push_back({i});
  if (n == 1) return singletons;

  std::vector<std::vector<int>> current;
  for (int beta = 1; beta < n; ++beta) {
    auto p = finest_blocks_merging(g, 0, beta);
    if (int(p.size()) > 1 && int(p.size()) < n) {
      current = std::move(p);
      break;
    }
  }
  if (current.empty()) return singletons; // primitive

  // coarsen until the quotient action is primitive
  for (;;) {
    int m = int(current.size());
    std::vector<int> block_of(n, -1);
    for (int bi = 0; bi < m; ++bi)
      for (int v : current[bi]) block_of[v] = bi;
    std::vector<Perm> qgens;
    for (const Perm &p : g.gens) {
      std::vector<int> im(m);
      for (int bi = 0; bi < m; ++bi) im[bi] = block_of[p[current[bi][0]]];
      qgens.push_back(Perm(std::move(im)));
    }
    auto qsys = min_block_system(GenSet(m, std::move(qgens)));
    if (int(qsys.size()) == m) return current; // quotient primitive
    std::vector<std::vector<int>> lifted;
    for (const auto &qb : qsys) {
      std::vector<int> blk;
      for (int bi : qb) blk.insert(blk.end(), current[bi].begin(), current[bi].end());
      std::sort(blk.begin(), blk.end());
      lifted.push_back(std::move(blk));
    }
    std::sort(lifted.begin(), lifted.end(),
              [](const auto &x, const auto &y) { return x[0] < y[0]; });
    current = std::move(lifted);
  }
}

} // namespace siso
