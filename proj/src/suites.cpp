#include "siso/suites.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "siso/oracle.hpp"
#include "siso/reduction.hpp"

namespace siso {
namespace suites {

Perm random_perm(Rng &rng, int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  rng.shuffle(im);
  return Perm(std::move(im));
}

StabChain random_subgroup(Rng &rng, int n, int max_gens) {
  int count = 1 + rng.below_int(max_gens);
  std::vector<Perm> gens;
  for (int i = 0; i < count; ++i) gens.push_back(random_perm(rng, n));
  return StabChain::build(GenSet(n, std::move(gens)));
}

StabChain symmetric_group(int n) {
  std::vector<Perm> gens;
  if (n >= 2) gens.push_back(Perm::from_two_cycle(n, 0, 1));
  if (n >= 3) {
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    gens.push_back(Perm(std::move(cyc)));
  }
  return StabChain::build(GenSet(n, std::move(gens)));
}

StabChain alternating_group(int n) {
  std::vector<Perm> gens;
  for (int i = 2; i < n; ++i) gens.push_back(Perm::from_three_cycle(n, 0, 1, i));
  return StabChain::build(GenSet(std::max(1, n), std::move(gens)));
}

StabChain cyclic_group(int n) {
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return StabChain::build(GenSet(n, {Perm(std::move(cyc))}));
}

StabChain dihedral_group(int n) {
  std::vector<int> cyc(n), flip(n);
  for (int i = 0; i < n; ++i) {
    cyc[i] = (i + 1) % n;
    flip[i] = (n - i) % n;
  }
  return StabChain::build(GenSet(n, {Perm(std::move(cyc)), Perm(std::move(flip))}));
}

StabChain block_double_group(const StabChain &top, int b, bool with_bottom) {
  int k = top.degree();
  int n = k * b;
  std::vector<Perm> gens;
  for (const Perm &g : top.strong_gens()) {
    std::vector<int> im(n);
    for (int blk = 0; blk < k; ++blk)
      for (int off = 0; off < b; ++off) im[blk * b + off] = g[blk] * b + off;
    gens.push_back(Perm(std::move(im)));
  }
  if (with_bottom) {
    for (int blk = 0; blk < k; ++blk) {
      std::vector<int> im(n);
      std::iota(im.begin(), im.end(), 0);
      for (int off = 0; off < b; ++off)
        im[blk * b + off] = blk * b + (off + 1) % b;
      gens.push_back(Perm(std::move(im)));
    }
  }
  return StabChain::build(GenSet(n, std::move(gens)));
}

StabChain c2_wreath(const StabChain &top) {
  return block_double_group(top, 2, true);
}

StabChain parity_wreath(int k) {
  int n = 2 * k + 2;
  std::vector<Perm> gens;
  StabChain alt = alternating_group(k);
  for (const Perm &g : alt.strong_gens()) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    for (int blk = 0; blk < k; ++blk)
      for (int off = 0; off < 2; ++off) im[blk * 2 + off] = g[blk] * 2 + off;
    gens.push_back(Perm(std::move(im)));
  }
  for (int blk = 0; blk < k; ++blk) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::swap(im[blk * 2], im[blk * 2 + 1]);
    std::swap(im[2 * k], im[2 * k + 1]); // parity markers flip with each swap
    gens.push_back(Perm(std::move(im)));
  }
  return StabChain::build(GenSet(n, std::move(gens)));
}

StabChain johnson_group(int m, int t, bool symmetric) {
  StabChain base = symmetric ? symmetric_group(m) : alternating_group(m);
  std::vector<Perm> gens;
  for (const Perm &g : base.strong_gens()) gens.push_back(perm_on_subsets(g, t));
  int n = int(binom128(unsigned(m), unsigned(t)));
  return StabChain::build(GenSet(n, std::move(gens)));
}

std::vector<SweepInstance> si_sweep(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<SweepInstance> out;
  const uint128 order_cap = 10000;

  auto random_string = [&](int n, int alphabet) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = rng.below_int(alphabet);
    return s;
  };

  auto push = [&](const std::string &id, const StabChain &g,
                  const PartitionSequence &seq, int alphabet) {
    int n = g.degree();
    std::vector<int> x = random_string(n, alphabet);
    std::vector<int> y;
    switch (rng.below_int(3)) {
    case 0: { // G-isomorphic copy
      // a haphazard group element: product of a few strong generators
      Perm g_elem(n);
      const auto &gens = g.strong_gens();
      if (!gens.empty())
        for (int i = 0; i < 3; ++i) g_elem = g_elem.then(gens[rng.below(gens.size())]);
      y.assign(n, 0);
      Perm inv = g_elem.inverse();
      for (int a = 0; a < n; ++a) y[a] = x[inv[a]];
      break;
    }
    case 1:
      y = x;
      break;
    default:
      y = random_string(n, alphabet);
    }
    SweepInstance si;
    si.id = id;
    si.inst = StringInstance::over_group(g, std::move(x), std::move(y), alphabet);
    si.seq = seq;
    out.push_back(std::move(si));
  };

  int made = 0;
  int round = 0;
  while (made < count) {
    ++round;
    int kind = made % 8;
    switch (kind) {
    case 0:
    case 1:
    case 2: { // random subgroup, trivial sequence
      int n = 4 + rng.below_int(7); // 4..10
      StabChain g = random_subgroup(rng, n, 3);
      if (g.order() > order_cap || g.order() < 2) continue;
      push("rand-" + std::to_string(made), g, PartitionSequence::trivial(g),
           2 + rng.below_int(2));
      break;
    }
    case 3: { // S_2 wr S_5 truncation family with the block tower
      StabChain top = symmetric_group(3 + rng.below_int(3)); // S_3..S_5
      StabChain g = c2_wreath(top);
      if (g.order() > order_cap) continue;
      PartitionSequence seq;
      seq.group = g;
      int k = top.degree();
      seq.d = std::max(2, k);
      std::vector<int> block_of(2 * k);
      for (int i = 0; i < 2 * k; ++i) block_of[i] = i / 2;
      seq.chain = {Partition::whole(2 * k),
                   Partition::from_block_of(2 * k, block_of),
                   Partition::singletons(2 * k)};
      push("wreath-" + std::to_string(made), g, seq, 2);
      break;
    }
    case 4: { // C_2 wr A_k truncations
      int k = 4 + rng.below_int(2); // A_4, A_5
      StabChain g = c2_wreath(alternating_group(k));
      if (g.order() > order_cap) continue;
      PartitionSequence seq;
      seq.group = g;
      seq.d = std::max(2, k);
      std::vector<int> block_of(2 * k);
      for (int i = 0; i < 2 * k; ++i) block_of[i] = i / 2;
      seq.chain = {Partition::whole(2 * k),
                   Partition::from_block_of(2 * k, block_of),
                   Partition::singletons(2 * k)};
      push("wreathalt-" + std::to_string(made), g, seq, 2);
      break;
    }
    case 5: { // rigid block doubling of S_k: giant quotient path
      int k = 5 + rng.below_int(2); // S_5, S_6
      StabChain g = block_double_group(symmetric_group(k), 2, false);
      if (g.order() > order_cap) continue;
      PartitionSequence seq;
      seq.group = g;
      seq.d = k;
      std::vector<int> block_of(2 * k);
      for (int i = 0; i < 2 * k; ++i) block_of[i] = i / 2;
      seq.chain = {Partition::whole(2 * k),
                   Partition::from_block_of(2 * k, block_of),
                   Partition::singletons(2 * k)};
      push("rigid-" + std::to_string(made), g, seq, 3);
      break;
    }
    case 6: { // intransitive: direct sum of two small groups
      int n1 = 3 + rng.below_int(3), n2 = 3 + rng.below_int(3);
      StabChain g1 = random_subgroup(rng, n1, 2);
      StabChain g2 = random_subgroup(rng, n2, 2);
      int n = n1 + n2;
      std::vector<Perm> gens;
      for (const Perm &p : g1.strong_gens()) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        for (int i = 0; i < n1; ++i) im[i] = p[i];
        gens.push_back(Perm(std::move(im)));
      }
      for (const Perm &p : g2.strong_gens()) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        for (int i = 0; i < n2; ++i) im[n1 + i] = n1 + p[i];
        gens.push_back(Perm(std::move(im)));
      }
      StabChain g = StabChain::build(GenSet(n, std::move(gens)));
      if (g.order() > order_cap) continue;
      push("sum-" + std::to_string(made), g, PartitionSequence::trivial(g), 3);
      break;
    }
    default: { // cyclic / dihedral with their block towers
      int n = 4 + 2 * rng.below_int(4); // 4, 6, 8, 10
      StabChain g = rng.below(2) ? cyclic_group(n) : dihedral_group(n);
      push("cyc-" + std::to_string(made), g, PartitionSequence::trivial(g), 2);
      break;
    }
    }
    ++made;
    if (round > 50 * count) throw Error("Internal", "sweep generation stalled");
  }
  return out;
}

namespace {

std::uint64_t graph_key(const Graph &g) {
  std::uint64_t k = g.n;
  for (auto [u, v] : g.edges) k = k * 1000003u + std::uint64_t(u * 29 + v + 1);
  return k;
}

std::vector<int> graph_invariant(const Graph &g) {
  auto adj = g.adjacency();
  std::vector<int> inv{g.n, int(g.edges.size())};
  std::vector<int> degs;
  for (const auto &a : adj) degs.push_back(int(a.size()));
  std::sort(degs.begin(), degs.end());
  inv.insert(inv.end(), degs.begin(), degs.end());
  int triangles = 0;
  for (auto [u, v] : g.edges)
    for (int w = 0; w < g.n; ++w)
      if (std::binary_search(adj[u].begin(), adj[u].end(), w) &&
          std::binary_search(adj[v].begin(), adj[v].end(), w))
        ++triangles;
  inv.push_back(triangles);
  return inv;
}

} // namespace

std::vector<Graph> gi_corpus(int nmax, int dmax) {
  std::vector<Graph> classes{Graph::from_edges(1, {})};
  std::vector<Graph> all(classes);
  for (int n = 2; n <= nmax; ++n) {
    std::map<std::vector<int>, std::vector<Graph>> buckets;
    auto try_add = [&](const Graph &g) {
      auto inv = graph_invariant(g);
      auto &bucket = buckets[inv];
      oracle::GraphView view{g.n, g.edges};
      for (const Graph &h : bucket) {
        oracle::GraphView hv{h.n, h.edges};
        if (!oracle::brute_graph_iso(view, hv).empty()) return;
      }
      bucket.push_back(g);
    };
    for (const Graph &base : all) {
      if (base.n != n - 1) continue;
      auto adj = base.adjacency();
      // attach a new vertex to 1..dmax old vertices of degree < dmax
      std::vector<int> candidates;
      for (int v = 0; v < base.n; ++v)
        if (int(adj[v].size()) < dmax) candidates.push_back(v);
      int c = int(candidates.size());
      for (int mask = 1; mask < (1 << c); ++mask) {
        if (__builtin_popcount(unsigned(mask)) > dmax) continue;
        auto edges = base.edges;
        for (int b = 0; b < c; ++b)
          if (mask & (1 << b)) edges.push_back({candidates[b], n - 1});
        try_add(Graph::from_edges(n, std::move(edges)));
      }
    }
    for (auto &[inv, bucket] : buckets)
      for (Graph &g : bucket) all.push_back(std::move(g));
  }
  std::vector<Graph> out;
  for (const Graph &g : all)
    if (g.n <= nmax) out.push_back(g);
  std::sort(out.begin(), out.end(), [](const Graph &a, const Graph &b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return graph_key(a) < graph_key(b);
  });
  return out;
}

} // namespace suites
} // namespace siso
