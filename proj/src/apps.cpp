#include "siso/apps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "siso/certificates.hpp"

namespace siso {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.n = n;
  std::set<std::pair<int, int>> dedup;
  for (auto [u, v] : edges) {
    if (u == v) throw Error("InvalidGraph", "loops are not allowed");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error("PointOutOfRange", "edge endpoint");
    dedup.insert({std::min(u, v), std::max(u, v)});
  }
  g.edges.assign(dedup.begin(), dedup.end());
  return g;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto &a : adj) std::sort(a.begin(), a.end());
  return adj;
}

int Graph::max_degree() const {
  auto adj = adjacency();
  int d = 0;
  for (const auto &a : adj) d = std::max(d, int(a.size()));
  return d;
}

std::vector<std::vector<int>> Graph::components() const {
  auto adj = adjacency();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int v = 0; v < n; ++v) {
    if (comp[v] != -1) continue;
    int id = int(out.size());
    std::vector<int> stack{v}, members;
    comp[v] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (int w : adj[u])
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

int Hypergraph::max_edge_size() const {
  std::size_t t = 0;
  for (const auto &e : edges) t = std::max(t, e.size());
  return int(t);
}

// ---------------------------------------------------------------------------
// bounded-degree graph isomorphism

namespace {

PartitionSequence trivial_seq(const StabChain &g) {
  return PartitionSequence::trivial(g);
}

struct LayerCoset {
  bool dead = false;
  std::vector<int> verts1, verts2; // sorted vertex lists of the balls
  StabChain aut;                   // on positions of verts1
  std::vector<int> repmap;         // position of verts1 -> position of verts2
};

// solve Iso_{A}^{Z}(x, y) for an induced action of `aut` on an auxiliary
// finite object space; objects are closed under the action
template <typename Obj>
Coset object_string_iso(Solver &solver, const StabChain &aut,
                        const std::vector<Obj> &objects,
                        const std::function<Obj(const Obj &, const Perm &)> &apply_obj,
                        const std::vector<int> &x, const std::vector<int> &y) {
  std::map<Obj, int> index;
  for (std::size_t i = 0; i < objects.size(); ++i) index[objects[i]] = int(i);
  std::vector<Perm> images;
  for (const Perm &g : aut.strong_gens()) {
    std::vector<int> im(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
      auto it = index.find(apply_obj(objects[i], g));
      if (it == index.end()) throw Error("Internal", "object space not closed");
      im[i] = it->second;
    }
    images.push_back(Perm(std::move(im)));
  }
  GroupHom act(aut, int(objects.size()), std::move(images));
  StabChain obj_group = act.image_group();
  std::vector<int> window(objects.size());
  std::iota(window.begin(), window.end(), 0);
  IsoResult sub = solver.solve_windowed(obj_group, Perm(int(objects.size())), window,
                                        x, y, trivial_seq(obj_group), 0);
  if (sub.empty()) return Coset::empty_set();
  StabChain back = act.preimage_group(sub.subgroup().strong_gens());
  auto rep = act.preimage(sub.rep());
  if (!rep) throw Error("Internal", "object pullback");
  return Coset(back, *rep);
}

// one ball-growing run for a fixed rooted-edge correspondence
Coset connected_edge_branch(Solver &solver, const Graph &g1, const Graph &g2,
                            std::pair<int, int> e1, std::pair<int, int> e2) {
  auto adj1 = g1.adjacency(), adj2 = g2.adjacency();
  LayerCoset cur;
  cur.verts1 = {std::min(e1.first, e1.second), std::max(e1.first, e1.second)};
  cur.verts2 = {std::min(e2.first, e2.second), std::max(e2.first, e2.second)};
  {
    // the oriented correspondence e1 -> e2 as a position map
    std::vector<int> rm(2);
    int p1 = int(std::find(cur.verts1.begin(), cur.verts1.end(), e1.first) -
                 cur.verts1.begin());
    int q1 = int(std::find(cur.verts2.begin(), cur.verts2.end(), e2.first) -
                 cur.verts2.begin());
    rm[p1] = q1;
    rm[1 - p1] = 1 - q1;
    cur.repmap = rm;
    cur.aut = StabChain::build(GenSet(2, {}));
  }

  for (;;) {
    // next layers
    std::vector<char> in1(g1.n, 0), in2(g2.n, 0);
    for (int v : cur.verts1) in1[v] = 1;
    for (int v : cur.verts2) in2[v] = 1;
    std::vector<int> new1, new2;
    for (int v : cur.verts1)
      for (int w : adj1[v])
        if (!in1[w]) {
          in1[w] = 1;
          new1.push_back(w);
        }
    for (int v : cur.verts2)
      for (int w : adj2[v])
        if (!in2[w]) {
          in2[w] = 1;
          new2.push_back(w);
        }
    std::sort(new1.begin(), new1.end());
    std::sort(new2.begin(), new2.end());
    if (new1.size() != new2.size()) return Coset::empty_set();
    if (new1.empty()) break;

    std::vector<int> pos1(g1.n, -1), pos2(g2.n, -1);
    for (std::size_t i = 0; i < cur.verts1.size(); ++i) pos1[cur.verts1[i]] = int(i);
    for (std::size_t i = 0; i < cur.verts2.size(); ++i) pos2[cur.verts2[i]] = int(i);

    // attachment profiles: positions of ball-neighbors
    auto profile = [&](int w, const std::vector<std::vector<int>> &adj,
                       const std::vector<int> &pos) {
      std::vector<int> p;
      for (int u : adj[w])
        if (pos[u] != -1) p.push_back(pos[u]);
      std::sort(p.begin(), p.end());
      return p;
    };
    std::map<std::vector<int>, std::vector<int>> groups1, groups2;
    for (int w : new1) groups1[profile(w, adj1, pos1)].push_back(w);
    for (int w : new2) groups2[profile(w, adj2, pos2)].push_back(w);

    // first refinement: multiplicities per profile must correspond
    std::set<std::vector<int>> objset;
    for (auto &[p, _] : groups1) objset.insert(p);
    {
      std::vector<int> inv(cur.verts2.size());
      for (std::size_t i = 0; i < cur.repmap.size(); ++i) inv[cur.repmap[i]] = int(i);
      for (auto &[q, _] : groups2) {
        std::vector<int> pulled;
        for (int v : q) pulled.push_back(inv[v]);
        std::sort(pulled.begin(), pulled.end());
        objset.insert(pulled);
      }
    }
    // close under the automorphism part
    {
      std::vector<std::vector<int>> frontier(objset.begin(), objset.end());
      while (!frontier.empty()) {
        auto obj = frontier.back();
        frontier.pop_back();
        for (const Perm &g : cur.aut.strong_gens()) {
          std::vector<int> img;
          for (int v : obj) img.push_back(g[v]);
          std::sort(img.begin(), img.end());
          if (objset.insert(img).second) frontier.push_back(img);
        }
      }
    }
    std::vector<std::vector<int>> objects(objset.begin(), objset.end());
    std::vector<int> xs(objects.size()), ys(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
      auto it1 = groups1.find(objects[i]);
      xs[i] = it1 == groups1.end() ? 0 : int(it1->second.size());
      std::vector<int> pushed;
      for (int v : objects[i]) pushed.push_back(cur.repmap[v]);
      std::sort(pushed.begin(), pushed.end());
      auto it2 = groups2.find(pushed);
      ys[i] = it2 == groups2.end() ? 0 : int(it2->second.size());
    }
    Coset refined = object_string_iso<std::vector<int>>(
        solver, cur.aut, objects,
        [](const std::vector<int> &obj, const Perm &g) {
          std::vector<int> img;
          for (int v : obj) img.push_back(g[v]);
          std::sort(img.begin(), img.end());
          return img;
        },
        xs, ys);
    if (refined.empty()) return Coset::empty_set();
    StabChain aut_ref = refined.subgroup();
    std::vector<int> repmap_ref(cur.repmap.size());
    for (std::size_t i = 0; i < cur.repmap.size(); ++i)
      repmap_ref[i] = cur.repmap[refined.rep()[int(i)]];

    // extend to the new layer: per-profile symmetric blocks
    std::vector<int> verts1n(cur.verts1), verts2n(cur.verts2);
    verts1n.insert(verts1n.end(), new1.begin(), new1.end());
    verts2n.insert(verts2n.end(), new2.begin(), new2.end());
    std::sort(verts1n.begin(), verts1n.end());
    std::sort(verts2n.begin(), verts2n.end());
    std::vector<int> npos1(g1.n, -1), npos2(g2.n, -1);
    for (std::size_t i = 0; i < verts1n.size(); ++i) npos1[verts1n[i]] = int(i);
    for (std::size_t i = 0; i < verts2n.size(); ++i) npos2[verts2n[i]] = int(i);
    int old_sz = int(cur.verts1.size());
    int new_sz = int(verts1n.size());

    auto lift_old = [&](const Perm &a) {
      // extend a position permutation of the old ball to the new ball:
      // new vertices move with their profile classes, order-preserving
      std::vector<int> im(new_sz, -1);
      for (int i = 0; i < old_sz; ++i)
        im[npos1[cur.verts1[i]]] = npos1[cur.verts1[a[i]]];
      for (auto &[p, members] : groups1) {
        std::vector<int> img_profile;
        for (int v : p) img_profile.push_back(a[v]);
        std::sort(img_profile.begin(), img_profile.end());
        auto it = groups1.find(img_profile);
        if (it == groups1.end() || it->second.size() != members.size())
          throw Error("Internal", "profile class mismatch in lift");
        for (std::size_t j = 0; j < members.size(); ++j)
          im[npos1[members[j]]] = npos1[it->second[j]];
      }
      return Perm(std::move(im));
    };

    std::vector<Perm> ext_gens;
    for (const Perm &a : aut_ref.strong_gens()) ext_gens.push_back(lift_old(a));
    for (auto &[p, members] : groups1) {
      if (members.size() < 2) continue;
      for (std::size_t j = 0; j + 1 < members.size(); ++j) {
        Perm sw = Perm::from_two_cycle(new_sz, npos1[members[j]],
                                       npos1[members[j + 1]]);
        ext_gens.push_back(sw);
      }
    }
    StabChain ext_aut = StabChain::build(GenSet(new_sz, std::move(ext_gens)));
    std::vector<int> ext_rep(new_sz, -1);
    for (int i = 0; i < old_sz; ++i)
      ext_rep[npos1[cur.verts1[i]]] = npos2[cur.verts2[repmap_ref[i]]];
    for (auto &[p, members] : groups1) {
      std::vector<int> pushed;
      for (int v : p) pushed.push_back(repmap_ref[v]);
      std::sort(pushed.begin(), pushed.end());
      auto it = groups2.find(pushed);
      if (it == groups2.end() || it->second.size() != members.size())
        return Coset::empty_set();
      for (std::size_t j = 0; j < members.size(); ++j)
        ext_rep[npos1[members[j]]] = npos2[it->second[j]];
    }

    // second refinement: edges inside the new layer
    std::vector<std::vector<int>> pairs;
    for (std::size_t i = 0; i < new1.size(); ++i)
      for (std::size_t j = i + 1; j < new1.size(); ++j)
        pairs.push_back({npos1[new1[i]], npos1[new1[j]]});
    if (!pairs.empty()) {
      std::set<std::pair<int, int>> e1set, e2set;
      for (auto [u, v] : g1.edges)
        if (npos1[u] != -1 && npos1[v] != -1)
          e1set.insert({std::min(npos1[u], npos1[v]), std::max(npos1[u], npos1[v])});
      for (auto [u, v] : g2.edges)
        if (npos2[u] != -1 && npos2[v] != -1)
          e2set.insert({std::min(npos2[u], npos2[v]), std::max(npos2[u], npos2[v])});
      std::vector<int> xs2(pairs.size()), ys2(pairs.size());
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        xs2[i] = e1set.count({pairs[i][0], pairs[i][1]}) ? 1 : 0;
        std::pair<int, int> mapped{ext_rep[pairs[i][0]], ext_rep[pairs[i][1]]};
        if (mapped.first > mapped.second) std::swap(mapped.first, mapped.second);
        ys2[i] = e2set.count(mapped) ? 1 : 0;
      }
      Coset ref2 = object_string_iso<std::vector<int>>(
          solver, ext_aut, pairs,
          [](const std::vector<int> &obj, const Perm &g) {
            std::vector<int> img{g[obj[0]], g[obj[1]]};
            std::sort(img.begin(), img.end());
            return img;
          },
          xs2, ys2);
      if (ref2.empty()) return Coset::empty_set();
      ext_aut = ref2.subgroup();
      std::vector<int> rep2(new_sz);
      for (int i = 0; i < new_sz; ++i) rep2[i] = ext_rep[ref2.rep()[i]];
      ext_rep = std::move(rep2);
    }

    cur.verts1 = std::move(verts1n);
    cur.verts2 = std::move(verts2n);
    cur.aut = std::move(ext_aut);
    cur.repmap = std::move(ext_rep);
  }

  if (int(cur.verts1.size()) != g1.n || int(cur.verts2.size()) != g2.n)
    throw Error("Internal", "branch did not exhaust a connected graph");
  // positions coincide with vertices once the ball is the whole graph
  std::vector<Perm> gens = cur.aut.strong_gens();
  return Coset(StabChain::build(GenSet(g1.n, gens)), Perm(cur.repmap));
}

Coset connected_graph_iso(Solver &solver, const Graph &g1, const Graph &g2) {
  if (g1.n != g2.n || g1.edges.size() != g2.edges.size()) return Coset::empty_set();
  if (g1.n == 1)
    return Coset::full_group(StabChain::build(GenSet(1, {})));
  if (g1.edges.empty()) return Coset::empty_set(); // connected with n >= 2
  auto e1 = g1.edges.front();
  CosetUnion acc;
  for (auto e2 : g2.edges) {
    acc.add(connected_edge_branch(solver, g1, g2, e1, e2));
    acc.add(connected_edge_branch(solver, g1, g2, e1, {e2.second, e2.first}));
  }
  return acc.result();
}

Graph induced_subgraph(const Graph &g, const std::vector<int> &verts,
                       std::vector<int> &back) {
  std::vector<int> pos(g.n, -1);
  back = verts;
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = int(i);
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges)
    if (pos[u] != -1 && pos[v] != -1) edges.push_back({pos[u], pos[v]});
  return Graph::from_edges(int(verts.size()), std::move(edges));
}

} // namespace

IsoResult graph_iso_bounded_degree(Solver &solver, const Graph &g1, const Graph &g2) {
  if (g1.n != g2.n || g1.edges.size() != g2.edges.size()) return Coset::empty_set();
  // degree sequences
  {
    auto d1 = g1.adjacency(), d2 = g2.adjacency();
    std::vector<int> s1, s2;
    for (auto &a : d1) s1.push_back(int(a.size()));
    for (auto &a : d2) s2.push_back(int(a.size()));
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return Coset::empty_set();
  }
  auto comps1 = g1.components(), comps2 = g2.components();
  if (comps1.size() != comps2.size()) return Coset::empty_set();
  if (comps1.size() == 1) return connected_graph_iso(solver, g1, g2);

  // match components up to isomorphism
  int c = int(comps1.size());
  std::vector<Graph> sub1(c), sub2(c);
  std::vector<std::vector<int>> back1(c), back2(c);
  for (int i = 0; i < c; ++i) {
    sub1[i] = induced_subgraph(g1, comps1[i], back1[i]);
    sub2[i] = induced_subgraph(g2, comps2[i], back2[i]);
  }
  // classes among comps1
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < c; ++i) {
    bool placed = false;
    for (std::size_t k = 0; k < classes.size() && !placed; ++k)
      if (!connected_graph_iso(solver, sub1[classes[k][0]], sub1[i]).empty()) {
        classes[k].push_back(i);
        placed = true;
      }
    if (!placed) classes.push_back({i});
  }
  // match comps2 to classes
  std::vector<std::vector<int>> matched(classes.size());
  std::vector<Coset> iso2(c);
  for (int j = 0; j < c; ++j) {
    bool placed = false;
    for (std::size_t k = 0; k < classes.size() && !placed; ++k) {
      Coset iso = connected_graph_iso(solver, sub1[classes[k][0]], sub2[j]);
      if (!iso.empty()) {
        matched[k].push_back(j);
        iso2[j] = iso;
        placed = true;
      }
    }
    if (!placed) return Coset::empty_set();
  }
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (matched[k].size() != classes[k].size()) return Coset::empty_set();

  // assemble generators of Aut(g1) and one global representative
  std::vector<Perm> gens;
  auto lift_component_perm = [&](const std::vector<int> &verts, const Perm &p) {
    std::vector<int> im(g1.n);
    std::iota(im.begin(), im.end(), 0);
    for (std::size_t a = 0; a < verts.size(); ++a) im[verts[a]] = verts[p[int(a)]];
    return Perm(std::move(im));
  };
  for (std::size_t k = 0; k < classes.size(); ++k) {
    // within-component automorphisms
    for (std::size_t idx = 0; idx < classes[k].size(); ++idx) {
      int i = classes[k][idx];
      StabChain aut_i = connected_graph_iso(solver, sub1[i], sub1[i]).subgroup();
      for (const Perm &a : aut_i.strong_gens())
        gens.push_back(lift_component_perm(back1[i], a));
    }
    // swaps between consecutive class members
    for (std::size_t idx = 0; idx + 1 < classes[k].size(); ++idx) {
      int i = classes[k][idx], j = classes[k][idx + 1];
      Coset iso = connected_graph_iso(solver, sub1[i], sub1[j]);
      // i -> j forward, j -> i backward, identity elsewhere
      std::vector<int> im(g1.n);
      std::iota(im.begin(), im.end(), 0);
      for (std::size_t a = 0; a < back1[i].size(); ++a)
        im[back1[i][a]] = back1[j][iso.rep()[int(a)]];
      Perm inv = iso.rep().inverse();
      for (std::size_t a = 0; a < back1[j].size(); ++a)
        im[back1[j][a]] = back1[i][inv[int(a)]];
      gens.push_back(Perm(std::move(im)));
    }
  }
  std::vector<int> rep_im(g1.n, -1);
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (std::size_t idx = 0; idx < classes[k].size(); ++idx) {
      int i = classes[k][idx];
      int j = matched[k][idx];
      // map component i of g1 onto component j of g2 through the class rep
      Coset to_i = connected_graph_iso(solver, sub1[classes[k][0]], sub1[i]);
      Perm via = to_i.rep().inverse().then(iso2[j].rep());
      for (std::size_t a = 0; a < back1[i].size(); ++a)
        rep_im[back1[i][a]] = back2[j][via[int(a)]];
    }
  return Coset(StabChain::build(GenSet(g1.n, std::move(gens))), Perm(rep_im))
      .normalized();
}

StabChain graph_aut_bounded_degree(Solver &solver, const Graph &g) {
  IsoResult r = graph_iso_bounded_degree(solver, g, g);
  if (r.empty()) throw Error("Internal", "self-isomorphism cannot be empty");
  return r.subgroup();
}

IsoResult relational_structure_iso(Solver &solver, const RelStructure &a,
                                   const RelStructure &b) {
  if (a.domain.size() != b.domain.size() || a.arity != b.arity)
    return Coset::empty_set();
  double tuples = std::pow(double(a.domain.size()), double(a.arity));
  if (tuples > double(solver.config().structure_tuple_cap))
    throw cap_exceeded("relational structure tuple domain");
  return default_structure_iso(solver, a, b);
}

IsoResult hypergraph_iso(Solver &solver, const Hypergraph &h1, const Hypergraph &h2) {
  if (h1.n != h2.n || h1.edges.size() != h2.edges.size()) return Coset::empty_set();
  {
    std::vector<int> s1, s2;
    for (const auto &e : h1.edges) s1.push_back(int(e.size()));
    for (const auto &e : h2.edges) s2.push_back(int(e.size()));
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return Coset::empty_set();
  }
  int t = std::max(1, std::max(h1.max_edge_size(), h2.max_edge_size()));
  auto encode = [&](const Hypergraph &h) {
    RelStructure s;
    s.domain.resize(h.n);
    std::iota(s.domain.begin(), s.domain.end(), 0);
    s.arity = t;
    std::set<std::vector<int>> edge_set;
    for (const auto &e : h.edges) {
      std::vector<int> se(e);
      std::sort(se.begin(), se.end());
      edge_set.insert(se);
    }
    // all t-tuples whose set of distinct entries is a hyperedge
    std::vector<std::vector<int>> rel;
    std::vector<int> tup(t, 0);
    for (;;) {
      std::vector<int> entries(tup);
      std::sort(entries.begin(), entries.end());
      entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
      if (edge_set.count(entries)) rel.push_back(tup);
      int pos = t - 1;
      while (pos >= 0 && tup[pos] == h.n - 1) {
        tup[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++tup[pos];
    }
    s.relations.push_back(std::move(rel));
    s.normalize();
    return s;
  };
  return relational_structure_iso(solver, encode(h1), encode(h2));
}

} // namespace siso
