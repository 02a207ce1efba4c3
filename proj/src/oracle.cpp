#include "siso/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace siso {
namespace oracle {

std::vector<Perm> group_closure(const GenSet &g, uint128 cap) {
  std::vector<Perm> elems{Perm(g.degree)};
  std::unordered_set<Perm, PermHash> seen{elems[0]};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const Perm &s : g.gens) {
      Perm q = elems[i].then(s);
      if (seen.insert(q).second) {
        if (uint128(elems.size()) + 1 > cap)
          throw cap_exceeded("group closure above element cap");
        elems.push_back(std::move(q));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<Perm> string_iso_elements(const std::vector<Perm> &coset_elements,
                                      const std::vector<int> &x,
                                      const std::vector<int> &y,
                                      const std::vector<int> &window) {
  std::vector<Perm> out;
  for (const Perm &g : coset_elements) {
    bool ok = true;
    for (int a : window)
      if (x[a] != y[g[a]]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

namespace {

Coset coset_from_elements(int degree, const std::vector<Perm> &isos) {
  if (isos.empty()) return Coset::empty_set();
  const Perm &rep = isos.front(); // sorted order makes this canonical
  Perm rep_inv = rep.inverse();
  std::vector<Perm> aut_gens;
  for (const Perm &g : isos) aut_gens.push_back(g.then(rep_inv));
  return Coset(StabChain::build(GenSet(degree, std::move(aut_gens))), rep);
}

} // namespace

Coset brute_string_iso(const GenSet &g, const std::vector<int> &x,
                       const std::vector<int> &y, const std::vector<int> &window,
                       const OracleConfig &cfg) {
  auto elems = group_closure(g, cfg.element_cap);
  auto isos = string_iso_elements(elems, x, y, window);
  return coset_from_elements(g.degree, isos);
}

namespace {

// edge counts are equal, so edge-to-edge suffices
bool maps_graph(const GraphView &g1, const std::vector<int> &f,
                const std::vector<std::vector<bool>> &adj2) {
  for (auto [u, v] : g1.edges)
    if (!adj2[f[u]][f[v]]) return false;
  return true;
}

std::vector<std::vector<bool>> adjacency(const GraphView &g) {
  std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
  for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = true;
  return adj;
}

std::vector<Perm> all_graph_isos(const GraphView &g1, const GraphView &g2,
                                 const OracleConfig &cfg) {
  if (g1.n != g2.n || g1.edges.size() != g2.edges.size()) return {};
  if (g1.n > cfg.graph_cap) throw cap_exceeded("graph brute force above cap");
  auto adj2 = adjacency(g2);
  std::vector<int> f(g1.n);
  std::iota(f.begin(), f.end(), 0);
  std::vector<Perm> out;
  do {
    if (maps_graph(g1, f, adj2)) out.push_back(Perm(f));
  } while (std::next_permutation(f.begin(), f.end()));
  return out;
}

} // namespace

Coset brute_graph_iso(const GraphView &g1, const GraphView &g2,
                      const OracleConfig &cfg) {
  auto isos = all_graph_isos(g1, g2, cfg);
  return coset_from_elements(g1.n, isos);
}

StabChain brute_graph_aut(const GraphView &g, const OracleConfig &cfg) {
  auto isos = all_graph_isos(g, g, cfg);
  return StabChain::build(GenSet(g.n, std::move(isos)));
}

bool coset_equal(const Coset &a, const Coset &b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  if (a.degree() != b.degree()) return false;
  if (a.subgroup().order() != b.subgroup().order()) return false;
  if (!a.contains(b.rep()) || !b.contains(a.rep())) return false;
  for (const Perm &g : a.subgroup().strong_gens())
    if (!b.subgroup().contains(g)) return false;
  for (const Perm &g : b.subgroup().strong_gens())
    if (!a.subgroup().contains(g)) return false;
  return true;
}

} // namespace oracle
} // namespace siso
