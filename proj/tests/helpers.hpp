#pragma once

#include <set>

#include "siso/certificates.hpp"
#include "siso/oracle.hpp"
#include "siso/reduction.hpp"
#include "siso/suites.hpp"

namespace siso::testing {

inline GiantRep identity_rep(const StabChain &g) {
  std::vector<Perm> imgs = g.strong_gens();
  return GiantRep{GroupHom(g, g.degree(), std::move(imgs)), g.degree()};
}

// the top-block projection of a b-block wreath-like group on b*k points
inline GiantRep top_projection(const StabChain &g, int b, int k) {
  std::vector<Perm> imgs;
  for (const Perm &p : g.strong_gens()) {
    std::vector<int> im(k);
    for (int blk = 0; blk < k; ++blk) im[blk] = p[blk * b] / b;
    imgs.push_back(Perm(std::move(im)));
  }
  return GiantRep{GroupHom(g, k, std::move(imgs)), k};
}

inline std::vector<int> full_window(int n) {
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  return w;
}

inline bool same_iso_set(const Coset &a, const Coset &b) {
  return oracle::coset_equal(a, b);
}

// all partitions of {0..n-1}, for exhaustive minimality checks (n <= 8)
inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> block_of(n, 0);
  std::function<void(int, int)> rec = [&](int v, int max_used) {
    if (v == n) {
      out.push_back(Partition::from_block_of(n, block_of));
      return;
    }
    for (int b = 0; b <= max_used + 1 && b < n; ++b) {
      block_of[v] = b;
      rec(v + 1, std::max(max_used, b));
    }
  };
  rec(0, -1);
  return out;
}

inline std::vector<int> random_string(Rng &rng, int n, int alphabet) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = rng.below_int(alphabet);
  return s;
}

// a pseudo-random element of the group, via random base images
inline Perm random_element(Rng &rng, const StabChain &g) {
  Perm acc(g.degree());
  for (const auto &lvl : g.levels()) {
    int beta = lvl.orbit[rng.below(lvl.orbit.size())];
    acc = g.transversal(int(&lvl - &g.levels()[0]), beta).then(acc);
  }
  return acc;
}

} // namespace siso::testing
