#include <doctest.h>

#include "helpers.hpp"
#include "siso/io.hpp"

#include <nlohmann/json.hpp>

using namespace siso;
using namespace siso::testing;

namespace {

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, std::move(e));
}

Graph petersen() {
  return Graph::from_edges(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                                {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
}

} // namespace

TEST_CASE("graph isomorphism basics") {
  Solver solver;
  Graph c6 = cycle_graph(6);
  IsoResult self = graph_iso_bounded_degree(solver, c6, c6);
  REQUIRE_FALSE(self.empty());
  CHECK(self.subgroup().order() == 12);

  Graph two_triangles =
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  CHECK(graph_iso_bounded_degree(solver, c6, two_triangles).empty());
  CHECK(graph_iso_bounded_degree(solver, two_triangles, two_triangles)
            .subgroup()
            .order() == 72);

  CHECK(graph_aut_bounded_degree(solver, petersen()).order() == 120);

  // returned automorphisms compose into automorphisms (closure sampling)
  Rng rng(3);
  StabChain aut = self.subgroup();
  auto adj = c6.adjacency();
  for (int i = 0; i < 40; ++i) {
    Perm a = random_element(rng, aut).then(random_element(rng, aut));
    for (auto [u, v] : c6.edges)
      CHECK(std::binary_search(adj[a[u]].begin(), adj[a[u]].end(), a[v]));
  }
}

TEST_CASE("graph isomorphism matches brute force on the small corpus") {
  Solver solver;
  auto corpus = suites::gi_corpus(6, 3);
  // generator cross-check: for n <= 5 enumerate all labeled graphs directly
  for (int n = 2; n <= 5; ++n) {
    std::vector<Graph> labeled;
    int pairs = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) all_edges.push_back({u, v});
    int classes_here = 0;
    std::vector<Graph> reps;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (int b = 0; b < pairs; ++b)
        if (mask & (1 << b)) edges.push_back(all_edges[b]);
      Graph g = Graph::from_edges(n, edges);
      if (g.max_degree() > 3) continue;
      if (int(g.components().size()) != 1) continue;
      bool fresh = true;
      oracle::GraphView gv{g.n, g.edges};
      for (const Graph &r : reps) {
        oracle::GraphView rv{r.n, r.edges};
        if (!oracle::brute_graph_iso(gv, rv).empty()) {
          fresh = false;
          break;
        }
      }
      if (fresh) {
        reps.push_back(g);
        ++classes_here;
      }
    }
    int in_corpus = 0;
    for (const Graph &g : corpus)
      if (g.n == n) ++in_corpus;
    CHECK(in_corpus == classes_here);
  }

  int checked = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i; j < corpus.size(); ++j) {
      if (corpus[i].n != corpus[j].n || corpus[i].n < 4) continue;
      Solver s;
      IsoResult got = graph_iso_bounded_degree(s, corpus[i], corpus[j]);
      oracle::GraphView v1{corpus[i].n, corpus[i].edges};
      oracle::GraphView v2{corpus[j].n, corpus[j].edges};
      Coset want = oracle::brute_graph_iso(v1, v2);
      CHECK(got.empty() == want.empty());
      if (!got.empty()) CHECK(oracle::coset_equal(got, want));
      ++checked;
    }
  CHECK(checked > 400);
}

TEST_CASE("isomorphism is invariant under relabeling") {
  Solver solver;
  Rng rng(17);
  auto corpus = suites::gi_corpus(6, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph &g = corpus[rng.below(corpus.size())];
    Perm relab = suites::random_perm(rng, g.n);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges) edges.push_back({relab[u], relab[v]});
    Graph h = Graph::from_edges(g.n, edges);
    IsoResult res = graph_iso_bounded_degree(solver, g, h);
    REQUIRE_FALSE(res.empty());
    CHECK(res.contains(relab));
  }
}

TEST_CASE("relational structure isomorphism") {
  Solver solver;
  // a full relation is preserved by everything
  RelStructure full;
  full.domain = {0, 1, 2};
  full.arity = 2;
  std::vector<std::vector<int>> rel;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rel.push_back({i, j});
  full.relations = {rel};
  full.normalize();
  CHECK(relational_structure_iso(solver, full, full).subgroup().order() == 6);

  // directed 3-cycle vs its reverse
  RelStructure a, b;
  a.domain = b.domain = {0, 1, 2};
  a.arity = b.arity = 2;
  a.relations = {{{0, 1}, {1, 2}, {2, 0}}};
  b.relations = {{{1, 0}, {2, 1}, {0, 2}}};
  a.normalize();
  b.normalize();
  CHECK_FALSE(relational_structure_iso(solver, a, b).empty());

  // random binary relations against the exact backtracker
  Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + rng.below_int(4);
    RelStructure r1, r2;
    r1.domain.resize(n);
    r2.domain.resize(n);
    for (int i = 0; i < n; ++i) r1.domain[i] = r2.domain[i] = i;
    r1.arity = r2.arity = 2;
    std::vector<std::vector<int>> t1, t2;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (rng.below(2)) t1.push_back({i, j});
        if (rng.below(2)) t2.push_back({i, j});
      }
    r1.relations = {t1};
    r2.relations = {t2};
    r1.normalize();
    r2.normalize();
    Coset got = relational_structure_iso(solver, r1, r2);
    Coset want = structure_iso_cosets(r1, r2);
    CHECK(got.empty() == want.empty());
    if (!got.empty()) CHECK(oracle::coset_equal(got, want));
  }
}

TEST_CASE("hypergraph isomorphism") {
  Solver solver;
  Hypergraph h1, h2;
  h1.n = h2.n = 5;
  for (int i = 0; i < 5; ++i) {
    h1.edges.push_back({i});
    h2.edges.push_back({i});
  }
  CHECK(hypergraph_iso(solver, h1, h2).subgroup().order() == 120);

  // fano plane vs fano with one line removed
  Hypergraph f1, f2;
  f1.n = f2.n = 7;
  std::vector<std::vector<int>> lines = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                         {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  f1.edges = lines;
  f2.edges = std::vector<std::vector<int>>(lines.begin(), lines.end() - 1);
  CHECK(hypergraph_iso(solver, f1, f2).empty());

  // random 3-uniform hypergraphs on 5 vertices against full enumeration
  Rng rng(31);
  auto subs = t_subsets(5, 3);
  StabChain s5 = suites::symmetric_group(5);
  for (int trial = 0; trial < 12; ++trial) {
    Hypergraph a, b;
    a.n = b.n = 5;
    for (const auto &s : subs) {
      if (rng.below(2)) a.edges.push_back(s);
      if (rng.below(2)) b.edges.push_back(s);
    }
    if (a.edges.empty() || b.edges.empty()) continue;
    Coset got = hypergraph_iso(solver, a, b);
    bool want = false;
    std::set<std::vector<int>> bset(b.edges.begin(), b.edges.end());
    s5.for_each_element([&](const Perm &p) {
      std::set<std::vector<int>> mapped;
      for (const auto &e : a.edges) {
        std::vector<int> im;
        for (int v : e) im.push_back(p[v]);
        std::sort(im.begin(), im.end());
        mapped.insert(im);
      }
      if (mapped == bset) {
        want = true;
        return false;
      }
      return true;
    });
    CHECK(got.empty() != want);
  }
}

TEST_CASE("graph file formats") {
  Graph g1 = io::graph_from_text("1 2\n2 3\n3 1\n");
  CHECK(g1.n == 3);
  CHECK(g1.edges.size() == 3);

  Graph g2 = io::graph_from_text("p edge 4 2\ne 1 2\ne 3 4\n");
  CHECK(g2.n == 4);
  CHECK(g2.edges.size() == 2);

  Graph g3 = io::graph_from_text(R"({"n": 3, "edges": [[1,2],[2,3]]})");
  CHECK(g3.n == 3);
  CHECK(g3.edges.size() == 2);

  nlohmann::json j = io::graph_to_json(g3);
  CHECK(j["n"] == 3);
}
