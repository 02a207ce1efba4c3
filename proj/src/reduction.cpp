#include "siso/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace siso {

// ---------------------------------------------------------------------------
// subsets

std::vector<std::vector<int>> t_subsets(int m, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (int(cur.size()) == t) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < m; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int subset_index(int m, int t, const std::vector<int> &x) {
  // rank in the lexicographic order of sorted t-subsets
  int rank = 0, prev = -1;
  for (int i = 0; i < t; ++i) {
    for (int v = prev + 1; v < x[i]; ++v)
      rank += int(binom128(unsigned(m - v - 1), unsigned(t - i - 1)));
    prev = x[i];
  }
  return rank;
}

Perm perm_on_subsets(const Perm &sigma, int t) {
  int m = sigma.degree();
  auto subs = t_subsets(m, t);
  std::vector<int> im(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    std::vector<int> mapped;
    for (int v : subs[i]) mapped.push_back(sigma[v]);
    std::sort(mapped.begin(), mapped.end());
    im[i] = subset_index(m, t, mapped);
  }
  return Perm(std::move(im));
}

Perm johnson_induced_permutation(const Perm &gamma, int m, int t) {
  if (t == 1) return gamma;
  auto subs = t_subsets(m, t);
  if (int(subs.size()) != gamma.degree())
    throw Error("DomainMismatch", "johnson_induced_permutation domain");
  // sigma(a) is the unique point contained in every image of a subset
  // containing a
  std::vector<int> sigma_im(m, -1);
  for (int a = 0; a < m; ++a) {
    std::vector<int> count(m, 0);
    int total = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!std::binary_search(subs[i].begin(), subs[i].end(), a)) continue;
      ++total;
      for (int v : subs[gamma[int(i)]]) ++count[v];
    }
    int found = -1;
    for (int v = 0; v < m; ++v)
      if (count[v] == total) {
        if (found != -1) {
          if (m <= 6) throw Error("AmbiguousSmallM", "several candidates");
          throw Error("NotInduced", "no unique induced point");
        }
        found = v;
      }
    if (found == -1) throw Error("NotInduced", "no induced point image");
    sigma_im[a] = found;
  }
  Perm sigma(sigma_im);
  if (!(perm_on_subsets(sigma, t) == gamma))
    throw Error("NotInduced", "verification failed");
  return sigma;
}

// ---------------------------------------------------------------------------
// socle

StabChain socle(const StabChain &c, uint128 cap) {
  int n = c.degree();
  if (n >= 5) {
    GiantKind gk = is_giant(c);
    if (gk == GiantKind::ALT) return c;
    if (gk == GiantKind::SYM) {
      std::vector<Perm> gens;
      for (int i = 2; i < n; ++i) gens.push_back(Perm::from_three_cycle(n, 0, 1, i));
      return StabChain::build(GenSet(n, std::move(gens)));
    }
  }
  if (c.order() > cap) throw cap_exceeded("socle enumeration");
  if (c.order() == 1) return c;

  auto elems = c.elements(cap);
  // conjugacy classes via closure under generator conjugation
  std::unordered_map<Perm, int, PermHash> class_of;
  std::vector<std::vector<Perm>> classes;
  for (const Perm &e : elems) {
    if (e.is_identity() || class_of.count(e)) continue;
    int id = int(classes.size());
    std::vector<Perm> cls{e};
    class_of[e] = id;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (const Perm &g : c.strong_gens()) {
        Perm conj = cls[i].conjugate(g);
        if (!class_of.count(conj)) {
          class_of[conj] = id;
          cls.push_back(std::move(conj));
        }
      }
    classes.push_back(std::move(cls));
  }
  // normal closures of class representatives; keep the inclusion-minimal ones
  std::vector<StabChain> closures;
  for (const auto &cls : classes)
    closures.push_back(StabChain::build(GenSet(n, cls)));
  std::vector<int> minimal;
  for (std::size_t i = 0; i < closures.size(); ++i) {
    bool is_min = true;
    for (std::size_t j = 0; j < closures.size() && is_min; ++j) {
      if (i == j || closures[j].order() >= closures[i].order()) continue;
      bool contained = true;
      for (const Perm &g : closures[j].strong_gens())
        if (!closures[i].contains(g)) {
          contained = false;
          break;
        }
      if (contained) is_min = false; // a smaller normal subgroup sits inside
    }
    if (is_min) minimal.push_back(int(i));
  }
  std::vector<Perm> gens;
  for (int idx : minimal)
    for (const Perm &g : closures[idx].strong_gens()) gens.push_back(g);
  return StabChain::build(GenSet(n, std::move(gens)));
}

// ---------------------------------------------------------------------------
// Johnson recognition

namespace {

// find the m "stars" of the Johnson graph J(m,2) given its adjacency
std::optional<std::vector<std::vector<int>>> johnson2_stars(
    const std::vector<std::vector<char>> &adj, int m) {
  int n = int(adj.size());
  std::set<std::vector<int>> stars;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (!adj[x][y]) continue;
      std::vector<int> s{x, y};
      for (int z = 0; z < n; ++z)
        if (z != x && z != y && adj[x][z] && adj[y][z]) s.push_back(z);
      // peel vertices that are not adjacent to everything else in s
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
          int bad = 0;
          for (std::size_t j = 0; j < s.size(); ++j)
            if (i != j && !adj[s[i]][s[j]]) ++bad;
          if (bad > 0) {
            // remove the vertex with the most conflicts, lowest index first
            std::size_t worst = i;
            int worst_bad = bad;
            for (std::size_t u = 0; u < s.size(); ++u) {
              int ub = 0;
              for (std::size_t j = 0; j < s.size(); ++j)
                if (u != j && !adj[s[u]][s[j]]) ++ub;
              if (ub > worst_bad) {
                worst = u;
                worst_bad = ub;
              }
            }
            s.erase(s.begin() + long(worst));
            changed = true;
            break;
          }
        }
      }
      if (int(s.size()) == m - 1) {
        std::sort(s.begin(), s.end());
        stars.insert(s);
      }
    }
  if (int(stars.size()) != m) return std::nullopt;
  return std::vector<std::vector<int>>(stars.begin(), stars.end());
}

std::vector<int> pair_classes(const StabChain &c, int &classes) {
  int n = c.degree();
  std::vector<int> pair_class(std::size_t(n) * n, -1);
  classes = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q || pair_class[p * n + q] != -1) continue;
      int id = classes++;
      std::vector<std::pair<int, int>> frontier{{p, q}};
      pair_class[p * n + q] = id;
      while (!frontier.empty()) {
        auto [u, v] = frontier.back();
        frontier.pop_back();
        for (const Perm &g : c.strong_gens()) {
          int u2 = g[u], v2 = g[v];
          if (pair_class[u2 * n + v2] == -1) {
            pair_class[u2 * n + v2] = id;
            frontier.push_back({u2, v2});
          }
        }
      }
    }
  return pair_class;
}

std::optional<JohnsonRecognition> try_recognize(const StabChain &c, int m, int t,
                                                const std::vector<int> &pair_class) {
  int n = c.degree();
  JohnsonRecognition rec;
  rec.m = m;
  rec.t = t;

  if (t == 1) {
    if (is_giant(c) == GiantKind::NEITHER) return std::nullopt;
    rec.rho.resize(n);
    for (int i = 0; i < n; ++i) rec.rho[i] = {i};
    return rec;
  }

  long long want_valency = (long long)t * (m - t);
  int classes = 0;
  for (int v : pair_class) classes = std::max(classes, v + 1);
  for (int cls = 0; cls < classes; ++cls) {
    // adjacency of this orbital
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    long long valency = 0;
    bool symmetric = true;
    for (int p = 0; p < n && symmetric; ++p)
      for (int q = 0; q < n; ++q) {
        if (p == q) continue;
        if (pair_class[p * n + q] == cls) {
          adj[p][q] = 1;
          if (pair_class[q * n + p] != cls) {
            symmetric = false;
            break;
          }
        }
      }
    if (!symmetric) continue;
    for (int q = 0; q < n; ++q) valency += adj[0][q];
    if (valency != want_valency) continue;

    std::vector<std::vector<int>> point_sets; // per recon point: its vertices
    if (t == 2) {
      auto stars = johnson2_stars(adj, m);
      if (!stars) continue;
      point_sets = *stars;
    } else {
      continue; // higher t handled by the generic search below
    }
    // rho: each vertex belongs to exactly t point-sets
    JohnsonRecognition cand;
    cand.m = m;
    cand.t = t;
    cand.rho.assign(n, {});
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      for (int a = 0; a < m; ++a)
        if (std::binary_search(point_sets[a].begin(), point_sets[a].end(), v))
          cand.rho[v].push_back(a);
      if (int(cand.rho[v].size()) != t) ok = false;
    }
    if (ok) return cand;
  }

  // generic backtracking fallback for small domains
  if (n <= 120) {
    auto subs = t_subsets(m, t);
    // group pairs by intersection size in the model, by orbital in c; the
    // assignment must send orbital classes into single intersection sizes
    std::vector<int> assign(n, -1);
    std::vector<bool> used(subs.size(), false);
    std::function<bool(int)> dfs = [&](int v) -> bool {
      if (v == n) return true;
      for (std::size_t s = 0; s < subs.size(); ++s) {
        if (used[s]) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) {
          // consistency: same orbital class pairs must have the same
          // intersection size, in both directions
          for (int w = 0; w < v; ++w) {
            if (pair_class[u * n + w] == pair_class[u * n + v] ||
                pair_class[w * n + u] == pair_class[v * n + u]) {
              std::vector<int> inter;
              std::set_intersection(subs[assign[u]].begin(), subs[assign[u]].end(),
                                    subs[assign[w]].begin(), subs[assign[w]].end(),
                                    std::back_inserter(inter));
              std::vector<int> inter2;
              std::set_intersection(subs[assign[u]].begin(), subs[assign[u]].end(),
                                    subs[s].begin(), subs[s].end(),
                                    std::back_inserter(inter2));
              if ((pair_class[u * n + w] == pair_class[u * n + v] &&
                   inter.size() != inter2.size())) {
                ok = false;
                break;
              }
            }
          }
        }
        if (!ok) continue;
        assign[v] = int(s);
        used[s] = true;
        if (dfs(v + 1)) return true;
        used[s] = false;
        assign[v] = -1;
      }
      return false;
    };
    if (dfs(0)) {
      JohnsonRecognition cand;
      cand.m = m;
      cand.t = t;
      cand.rho.resize(n);
      for (int v = 0; v < n; ++v) cand.rho[v] = subs[assign[v]];
      return cand;
    }
  }
  return std::nullopt;
}

bool verify_recognition(const StabChain &c, const JohnsonRecognition &rec) {
  int n = c.degree();
  // rho must be a bijection onto the t-subsets
  std::set<std::vector<int>> images(rec.rho.begin(), rec.rho.end());
  if (int(images.size()) != n ||
      uint128(n) != binom128(unsigned(rec.m), unsigned(rec.t)))
    return false;
  std::unordered_map<long long, int> idx_of;
  for (int v = 0; v < n; ++v)
    idx_of[subset_index(rec.m, rec.t, rec.rho[v])] = v;
  std::vector<Perm> induced;
  try {
    for (const Perm &g : c.strong_gens()) {
      // conjugate by rho into the lexicographic subset indexing
      std::vector<int> relabeled(n);
      for (int v = 0; v < n; ++v)
        relabeled[subset_index(rec.m, rec.t, rec.rho[v])] =
            subset_index(rec.m, rec.t, rec.rho[g[v]]);
      Perm gamma(relabeled);
      induced.push_back(johnson_induced_permutation(gamma, rec.m, rec.t));
    }
  } catch (const Error &) {
    return false;
  }
  StabChain image = StabChain::build(GenSet(rec.m, induced));
  std::vector<int> all(rec.m);
  std::iota(all.begin(), all.end(), 0);
  if (!contains_alt(image, all)) return false;
  // A_m^{(t)} must pull back into c
  for (int i = 2; i < std::min(rec.m, 5); ++i) {
    Perm three = Perm::from_three_cycle(rec.m, 0, 1, i);
    Perm on_subs = perm_on_subsets(three, rec.t);
    std::vector<int> pulled(n);
    for (int v = 0; v < n; ++v) {
      int from = subset_index(rec.m, rec.t, rec.rho[v]);
      int to = on_subs[from];
      // find the vertex whose rho has index `to`
      pulled[v] = idx_of[to];
    }
    if (!c.contains(Perm(pulled))) return false;
  }
  return true;
}

} // namespace

std::optional<JohnsonRecognition> johnson_recognize(const StabChain &c, int max_m) {
  if (!c.transitive()) return std::nullopt;
  int n = c.degree();
  if (n > 10000) throw cap_exceeded("johnson recognition domain");
  std::vector<int> pair_class;
  for (int t = 1; t <= std::max(1, max_m / 2); ++t)
    for (int m = std::max(2 * t, 2); m <= max_m; ++m) {
      if (binom128(unsigned(m), unsigned(t)) != uint128(n)) continue;
      if (m <= 33) {
        uint128 half = factorial128(unsigned(m)) / 2;
        if (c.order() != half && c.order() != half * 2) continue;
      }
      if (t >= 2 && pair_class.empty()) {
        if (n > 2000) continue; // pair matrix too large
        int classes = 0;
        pair_class = pair_classes(c, classes);
      }
      auto cand = try_recognize(c, m, t, pair_class);
      if (cand && verify_recognition(c, *cand)) return cand;
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// classification

double size_threshold_log2(int n, int d, const SolverConfig &cfg) {
  return (cfg.c1 * std::log2(double(std::max(2, d))) + cfg.c2) *
         std::log2(double(std::max(2, n)));
}

bool order_exceeds_threshold(uint128 order, int n, int d, const SolverConfig &cfg) {
  double lo = std::log2(static_cast<double>(order));
  return lo > size_threshold_log2(n, d, cfg);
}

PrimitiveClassification classify_primitive(const StabChain &c, int d,
                                           const SolverConfig &cfg) {
  int n = c.degree();
  if (!c.transitive()) throw Error("NotTransitive", "classify_primitive");
  if (int(min_block_system(c.gen_set()).size()) != n)
    throw Error("NotPrimitive", "classify_primitive");

  PrimitiveClassification out;
  if (!order_exceeds_threshold(c.order(), n, d, cfg)) {
    out.kind = PrimitiveClassification::SMALL;
    return out;
  }

  StabChain n_grp = socle(c, cfg.enum_cap);
  // tower of N-invariant partitions with Johnson quotients
  std::vector<Partition> tower{Partition::whole(n)};
  int m = 0, t = 0;
  Partition cur = tower.back();
  while (!cur.is_discrete()) {
    const auto &block = cur.blocks()[0];
    StabChain n_b = int(block.size()) == n ? n_grp : n_grp.setwise_stabilizer(block);
    GroupHom res = restriction_hom(n_b, block);
    StabChain local = res.image_group();
    auto mbs = min_block_system(local.gen_set());
    // lift the first maximal block back to original labels
    std::vector<int> sorted_block(block);
    std::sort(sorted_block.begin(), sorted_block.end());
    std::vector<int> bprime;
    for (int idx : mbs[0]) bprime.push_back(sorted_block[idx]);
    // orbit of bprime under N gives the next partition
    std::set<std::vector<int>> blocks_set;
    std::vector<std::vector<int>> frontier{bprime};
    std::sort(frontier[0].begin(), frontier[0].end());
    blocks_set.insert(frontier[0]);
    while (!frontier.empty()) {
      auto bl = frontier.back();
      frontier.pop_back();
      for (const Perm &g : n_grp.strong_gens()) {
        std::vector<int> img;
        for (int v : bl) img.push_back(g[v]);
        std::sort(img.begin(), img.end());
        if (blocks_set.insert(img).second) frontier.push_back(img);
      }
    }
    std::vector<std::vector<int>> nb(blocks_set.begin(), blocks_set.end());
    {
      std::size_t covered = 0;
      for (const auto &b : nb) covered += b.size();
      if (covered != std::size_t(n))
        throw Error("ClassificationFailed", "socle block orbit does not tile");
    }
    Partition next(n, nb);
    // recognize the quotient inside one block
    std::vector<std::vector<int>> subs;
    for (const auto &sb : next.blocks())
      if (cur.block_index_of(sb[0]) == cur.block_index_of(block[0]))
        subs.push_back(sb);
    GroupHom qact = induced_action(n_b, subs);
    auto rec = johnson_recognize(qact.image_group(), d);
    if (!rec)
      throw Error("ClassificationFailed", "quotient is not a Johnson action");
    if (m == 0) {
      m = rec->m;
      t = rec->t;
    } else if (m != rec->m || t != rec->t) {
      throw Error("ClassificationFailed", "mixed Johnson parameters in tower");
    }
    tower.push_back(next);
    cur = next;
  }
  // the theorem's guard: m > 4 log2 binom(m,t); failing it means the group
  // is small after all
  double s_log = std::log2(static_cast<double>(binom128(unsigned(m), unsigned(t))));
  uint128 index = c.order() / n_grp.order();
  double index_log = std::log2(static_cast<double>(std::max<uint128>(index, 1)));
  if (double(m) <= 4.0 * s_log ||
      index_log > (1.0 + std::log2(double(std::max(2, d)))) * std::log2(double(n))) {
    out.kind = PrimitiveClassification::SMALL;
    return out;
  }
  out.kind = PrimitiveClassification::JOHNSON_TOWER;
  out.socle_group = n_grp;
  out.tower = tower;
  out.m = m;
  out.t = t;
  return out;
}

GiantRepData compute_giant_representation(const StabChain &p, int d,
                                          const SolverConfig &cfg) {
  GiantRepData out;
  double need = (1.0 + std::log2(double(std::max(2, d)))) * std::log2(double(std::max(2, d)));
  if (std::log2(static_cast<double>(p.order())) < need) {
    out.too_small = true;
    return out;
  }
  int n = p.degree();
  GiantKind gk = is_giant(p);
  if (gk != GiantKind::NEITHER) {
    out.n_subgroup = p;
    out.blocks = Partition::singletons(n);
    std::vector<Perm> imgs = p.strong_gens();
    out.psi = GroupHom(p, n, std::move(imgs));
    out.k = n;
  } else {
    StabChain soc = socle(p, cfg.enum_cap);
    auto rec = johnson_recognize(soc, std::max(d, 2 * int(std::sqrt(double(n))) + 4));
    if (!rec) throw Error("RecognitionFailed", "socle is not a Johnson action");
    std::vector<Perm> imgs;
    std::unordered_map<long long, int> idx_of;
    for (int v = 0; v < n; ++v)
      idx_of[subset_index(rec->m, rec->t, rec->rho[v])] = v;
    for (const Perm &g : soc.strong_gens()) {
      std::vector<int> relabeled(n);
      for (int v = 0; v < n; ++v)
        relabeled[subset_index(rec->m, rec->t, rec->rho[v])] =
            subset_index(rec->m, rec->t, rec->rho[g[v]]);
      imgs.push_back(johnson_induced_permutation(Perm(relabeled), rec->m, rec->t));
    }
    out.n_subgroup = soc;
    out.blocks = Partition::singletons(n);
    out.psi = GroupHom(soc, rec->m, std::move(imgs));
    out.k = rec->m;
  }
  // verify the advertised contract before returning
  uint128 index = p.order() / out.n_subgroup.order();
  if (index > uint128(unsigned(d)))
    throw Error("RecognitionFailed", "normal subgroup index above d");
  if (out.k < int(std::floor(std::log2(double(std::max(2, d))))))
    throw Error("RecognitionFailed", "giant representation arity too small");
  if (is_giant(out.psi.image_group()) == GiantKind::NEITHER)
    throw Error("RecognitionFailed", "image is not a giant");
  {
    StabChain blockwise = induced_action(out.n_subgroup, out.blocks.blocks()).kernel();
    StabChain ker = out.psi.kernel();
    bool same = ker.order() == blockwise.order();
    for (const Perm &g : ker.strong_gens())
      same = same && blockwise.contains(g);
    if (!same)
      throw Error("RecognitionFailed", "kernel is not the block stabilizer");
  }
  return out;
}

// ---------------------------------------------------------------------------
// unfolding graph

UnfoldGraph build_unfold_graph(const std::vector<Partition> &chain,
                               const std::map<int, JohnsonLevel> &johnson) {
  if (chain.empty()) throw Error("InvalidPartition", "empty chain");
  UnfoldGraph g;
  // block vertices per level, then lattice vertices per Johnson level
  std::vector<std::vector<int>> block_vertex(chain.size());
  for (std::size_t lv = 0; lv < chain.size(); ++lv) {
    block_vertex[lv].resize(chain[lv].block_count());
    for (int b = 0; b < chain[lv].block_count(); ++b) {
      UnfoldGraph::Vertex v;
      v.level = int(lv);
      v.lattice = false;
      v.block = b;
      block_vertex[lv][b] = int(g.vertices.size());
      g.vertices.push_back(std::move(v));
    }
  }
  g.root = block_vertex[0][0];
  g.children.resize(g.vertices.size());

  auto add_child = [&](int from, int to) { g.children[from].push_back(to); };

  for (std::size_t lv = 1; lv < chain.size(); ++lv) {
    auto jl = johnson.find(int(lv));
    if (jl == johnson.end()) {
      // plain refinement edges B -> B'
      for (int b = 0; b < chain[lv].block_count(); ++b) {
        int parent = chain[lv - 1].block_index_of(chain[lv].blocks()[b][0]);
        add_child(block_vertex[lv - 1][parent], block_vertex[lv][b]);
      }
      continue;
    }
    const JohnsonLevel &info = jl->second;
    auto subsets_le = [&](int m, int t) {
      std::vector<std::vector<int>> all{{}};
      for (int size = 1; size <= t; ++size) {
        auto part = t_subsets(m, size);
        all.insert(all.end(), part.begin(), part.end());
      }
      std::sort(all.begin(), all.end(),
                [](const auto &a, const auto &b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
                });
      return all;
    };
    for (int parent = 0; parent < chain[lv - 1].block_count(); ++parent) {
      // local sub-blocks of this parent, ordered by minimum element
      std::vector<int> local; // global sub-block ids
      for (int b = 0; b < chain[lv].block_count(); ++b)
        if (chain[lv - 1].block_index_of(chain[lv].blocks()[b][0]) == parent)
          local.push_back(b);
      const auto &rho = info.rho[parent];
      if (rho.size() != local.size())
        throw Error("DomainMismatch", "johnson level rho arity");
      std::map<std::vector<int>, int> target; // full subset -> sub-block vertex
      for (std::size_t i = 0; i < local.size(); ++i)
        target[rho[i]] = block_vertex[lv][local[i]];

      auto subsets = subsets_le(info.m, info.t);
      std::map<std::vector<int>, int> lattice_id;
      for (const auto &x : subsets) {
        UnfoldGraph::Vertex v;
        v.level = int(lv);
        v.lattice = true;
        v.parent_block = parent;
        v.subset = x;
        lattice_id[x] = int(g.vertices.size());
        g.vertices.push_back(std::move(v));
        g.children.push_back({});
      }
      add_child(block_vertex[lv - 1][parent], lattice_id[{}]);
      for (const auto &x : subsets) {
        int from = lattice_id[x];
        if (int(x.size()) < info.t) {
          for (int v = 0; v < info.m; ++v) {
            if (std::binary_search(x.begin(), x.end(), v)) continue;
            auto bigger = x;
            bigger.push_back(v);
            std::sort(bigger.begin(), bigger.end());
            add_child(from, lattice_id[bigger]);
          }
        } else {
          auto it = target.find(x);
          if (it != target.end()) add_child(from, it->second);
        }
      }
    }
  }
  for (auto &ch : g.children) std::sort(ch.begin(), ch.end());
  return g;
}

std::vector<std::vector<int>> UnfoldGraph::maximal_branches() const {
  std::vector<std::vector<int>> out;
  std::vector<int> path{root};
  std::function<void()> dfs = [&] {
    int v = path.back();
    if (children[v].empty()) {
      out.push_back(path);
      return;
    }
    for (int w : children[v]) {
      path.push_back(w);
      dfs();
      path.pop_back();
    }
  };
  dfs();
  return out;
}

std::string UnfoldGraph::to_dot(const std::vector<Partition> &chain) const {
  std::ostringstream os;
  os << "digraph unfold {\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto &v = vertices[i];
    os << "  v" << i << " [label=\"";
    if (!v.lattice) {
      const auto &blk = chain[v.level].blocks()[v.block];
      os << "{";
      for (std::size_t j = 0; j < blk.size(); ++j)
        os << (j ? " " : "") << blk[j] + 1;
      os << "}";
    } else {
      os << "(" << v.level << ",B" << v.parent_block << ",{";
      for (std::size_t j = 0; j < v.subset.size(); ++j)
        os << (j ? " " : "") << v.subset[j] + 1;
      os << "})";
    }
    os << "\"];\n";
  }
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (int w : children[i]) os << "  v" << i << " -> v" << w << ";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// step one: coset augmentation

namespace {

// transversal of a normal-ish subgroup inside a group known by chains,
// discovered by breadth-first coset search over the group's generators
std::vector<Perm> coset_transversal(const StabChain &sub, const StabChain &grp,
                                    uint128 cap) {
  std::vector<Perm> reps{Perm(grp.degree())};
  std::vector<Perm> frontier{Perm(grp.degree())};
  auto known = [&](const Perm &cand) {
    for (const Perm &r : reps)
      if (sub.contains(cand.then(r.inverse()))) return true;
    return false;
  };
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm &r : frontier)
      for (const Perm &s : grp.strong_gens()) {
        Perm cand = r.then(s);
        if (!known(cand)) {
          if (uint128(reps.size()) + 1 > cap)
            throw cap_exceeded("coset transversal");
          reps.push_back(cand);
          next.push_back(cand);
        }
      }
    frontier = std::move(next);
  }
  return reps;
}

struct StepOneState {
  StabChain group;
  std::vector<int> x, y;
  std::vector<Partition> partitions;
  std::vector<int> origin;      // current point -> original point
  std::vector<Perm> gen_images; // per original strong generator
};

} // namespace

AugmentedInstance reduce_step_one(const StringInstance &inst0, int d,
                                  const SolverConfig &cfg) {
  inst0.check();
  if (!inst0.group.rep().is_identity())
    throw Error("PreconditionViolated", "reduce_step_one expects a group");
  if (!inst0.group.subgroup().transitive())
    throw Error("NotTransitive", "reduce_step_one");

  StepOneState st;
  st.group = inst0.group.subgroup();
  st.x = inst0.x;
  st.y = inst0.y;
  st.partitions = {Partition::whole(inst0.n)};
  st.origin.resize(inst0.n);
  std::iota(st.origin.begin(), st.origin.end(), 0);
  st.gen_images = st.group.strong_gens();

  const uint128 omega_cap = 200000;

  while (!st.partitions.back().is_discrete()) {
    int n = st.group.degree();
    const Partition &cur = st.partitions.back();

    // next finer invariant partition with primitive per-block quotients
    GroupHom blk_act = induced_action(st.group, cur.blocks());
    StabChain blk_img = blk_act.image_group();
    StabChain g_b0 =
        cur.block_count() == 1
            ? st.group
            : blk_act.preimage_group(
                  blk_img.pointwise_stabilizer({0}).strong_gens());
    const auto &b0 = cur.blocks()[0];
    GroupHom res0 = restriction_hom(g_b0, b0);
    auto mbs = min_block_system(res0.image_group().gen_set());
    std::vector<int> b0_sorted(b0);
    std::sort(b0_sorted.begin(), b0_sorted.end());
    std::vector<int> bprime;
    for (int idx : mbs[0]) bprime.push_back(b0_sorted[idx]);
    std::set<std::vector<int>> blocks_set;
    {
      std::sort(bprime.begin(), bprime.end());
      std::vector<std::vector<int>> frontier{bprime};
      blocks_set.insert(bprime);
      while (!frontier.empty()) {
        auto bl = frontier.back();
        frontier.pop_back();
        for (const Perm &g : st.group.strong_gens()) {
          std::vector<int> img;
          for (int v : bl) img.push_back(g[v]);
          std::sort(img.begin(), img.end());
          if (blocks_set.insert(img).second) frontier.push_back(img);
        }
      }
    }
    Partition next(n, std::vector<std::vector<int>>(blocks_set.begin(),
                                                    blocks_set.end()));

    int s = cur.block_count();
    // per parent block: local sub-block domains, ordered by minimum element
    std::vector<std::vector<int>> local_subs(s); // parent -> global sub ids
    for (int b = 0; b < next.block_count(); ++b)
      local_subs[cur.block_index_of(next.blocks()[b][0])].push_back(b);
    int b_count = int(local_subs[0].size());

    // sigma_{0->i}: group elements carrying block 0 to block i
    std::vector<Perm> sigma(s, Perm(n));
    for (int i = 1; i < s; ++i) {
      Perm img = blk_img.transversal(0, i); // block-index map with 0 -> i
      auto pre = blk_act.preimage(img);
      if (!pre) throw Error("Internal", "step-one block transporter");
      sigma[i] = *pre;
    }
    // local index maps sigma_bar_{0->i} : D_0 -> D_i as index permutations
    auto local_index_map = [&](const Perm &g, int from_block,
                               int to_block) {
      std::vector<int> map(b_count);
      for (int a = 0; a < b_count; ++a) {
        int sub = local_subs[from_block][a];
        int image_sub = next.block_index_of(g[next.blocks()[sub][0]]);
        const auto &tolist = local_subs[to_block];
        auto it = std::find(tolist.begin(), tolist.end(), image_sub);
        if (it == tolist.end())
          throw Error("Internal", "step-one local map outside target block");
        map[a] = int(it - tolist.begin());
      }
      return Perm(std::move(map));
    };
    std::vector<Perm> sigma_bar(s, Perm(b_count));
    for (int i = 1; i < s; ++i) sigma_bar[i] = local_index_map(sigma[i], 0, i);

    // quotient group on the local domain of block 0
    std::vector<std::vector<int>> sub_sets0;
    for (int sub : local_subs[0]) sub_sets0.push_back(next.blocks()[sub]);
    GroupHom q_act0 = induced_action(g_b0, sub_sets0);
    StabChain q0 = q_act0.image_group();

    PrimitiveClassification cls = classify_primitive(q0, d, cfg);

    // local socle and coset labels per block
    StabChain n0 = cls.kind == PrimitiveClassification::JOHNSON_TOWER
                       ? cls.socle_group
                       : StabChain::build(GenSet(b_count, {}));
    std::vector<StabChain> n_i(s, n0);
    for (int i = 1; i < s; ++i) {
      std::vector<Perm> gens;
      for (const Perm &g : n0.strong_gens()) gens.push_back(g.conjugate(sigma_bar[i]));
      n_i[i] = StabChain::build(GenSet(b_count, std::move(gens)));
    }
    std::vector<StabChain> q_i(s, q0);
    for (int i = 1; i < s; ++i) {
      std::vector<Perm> gens;
      for (const Perm &g : q0.strong_gens()) gens.push_back(g.conjugate(sigma_bar[i]));
      q_i[i] = StabChain::build(GenSet(b_count, std::move(gens)));
    }
    std::vector<std::vector<Perm>> reps(s);
    std::vector<std::unordered_map<std::size_t, int>> rep_lookup(s);
    for (int i = 0; i < s; ++i) {
      reps[i] = coset_transversal(n_i[i], q_i[i], omega_cap);
      for (std::size_t c2 = 0; c2 < reps[i].size(); ++c2)
        rep_lookup[i][reps[i][c2].hash()] = int(c2);
    }
    std::size_t csize = reps[0].size();

    // flat indexing of the augmented points (i, c, alpha in B_i)
    std::vector<std::vector<int>> block_points(s);
    std::vector<int> point_pos(n, -1);
    for (int i = 0; i < s; ++i) {
      block_points[i] = cur.blocks()[i];
      for (std::size_t a = 0; a < block_points[i].size(); ++a)
        point_pos[block_points[i][a]] = int(a);
    }
    std::vector<std::size_t> offset(s + 1, 0);
    for (int i = 0; i < s; ++i)
      offset[i + 1] = offset[i] + csize * block_points[i].size();
    std::size_t n_star = offset[s];
    if (uint128(n_star) > omega_cap) throw cap_exceeded("augmented domain");

    auto flat = [&](int i, int c2, int alpha) {
      return offset[i] + std::size_t(c2) * block_points[i].size() +
             std::size_t(point_pos[alpha]);
    };

    // action of a group element on the augmented points
    auto act_star = [&](const Perm &g) {
      std::vector<int> im(n_star);
      // local quotient map per source block
      std::vector<Perm> gbar(s, Perm(b_count));
      std::vector<int> to_block(s);
      for (int i = 0; i < s; ++i) {
        int j = cur.block_index_of(g[cur.blocks()[i][0]]);
        to_block[i] = j;
        gbar[i] = local_index_map(g, i, j);
      }
      for (int i = 0; i < s; ++i) {
        int j = to_block[i];
        Perm carry = sigma_bar[i].then(sigma_bar[j].inverse()); // sigma_{i->j}^{-1}
        for (std::size_t c2 = 0; c2 < csize; ++c2) {
          Perm v = carry.then(reps[i][c2]).then(gbar[i]);
          // coset label of v in block j
          int cj = -1;
          auto it = rep_lookup[j].find(v.hash());
          if (it != rep_lookup[j].end() &&
              n_i[j].contains(v.then(reps[j][it->second].inverse())))
            cj = it->second;
          if (cj == -1) {
            for (std::size_t r = 0; r < reps[j].size(); ++r)
              if (n_i[j].contains(v.then(reps[j][r].inverse()))) {
                cj = int(r);
                break;
              }
          }
          if (cj == -1) throw Error("Internal", "step-one coset label");
          for (int alpha : block_points[i])
            im[flat(i, int(c2), alpha)] = int(flat(j, cj, g[alpha]));
        }
      }
      return Perm(std::move(im));
    };

    std::vector<Perm> star_gens;
    for (const Perm &g : st.group.strong_gens()) star_gens.push_back(act_star(g));
    StabChain g_star = StabChain::build(GenSet(int(n_star), star_gens));
    std::vector<Perm> tracked;
    for (const Perm &g : st.gen_images) tracked.push_back(act_star(g));

    // strings and origin
    std::vector<int> x_star(n_star), y_star(n_star), origin_star(n_star);
    for (int i = 0; i < s; ++i)
      for (std::size_t c2 = 0; c2 < csize; ++c2)
        for (int alpha : block_points[i]) {
          std::size_t id = flat(i, int(c2), alpha);
          x_star[id] = st.x[alpha];
          y_star[id] = st.y[alpha];
          origin_star[id] = st.origin[alpha];
        }

    // partitions: existing levels group by the block of alpha
    std::vector<Partition> parts_star;
    for (const Partition &p : st.partitions) {
      std::vector<int> block_of(n_star);
      for (int i = 0; i < s; ++i)
        for (std::size_t c2 = 0; c2 < csize; ++c2)
          for (int alpha : block_points[i])
            block_of[flat(i, int(c2), alpha)] = p.block_index_of(alpha);
      parts_star.push_back(Partition::from_block_of(int(n_star), block_of));
    }
    if (cls.kind == PrimitiveClassification::SMALL) {
      // one new level: singleton coset tag x sub-block
      std::vector<int> block_of(n_star);
      for (int i = 0; i < s; ++i)
        for (std::size_t c2 = 0; c2 < csize; ++c2)
          for (int alpha : block_points[i])
            block_of[flat(i, int(c2), alpha)] =
                int((std::size_t(i) * csize + c2) * next.block_count() +
                    next.block_index_of(alpha));
      parts_star.push_back(Partition::from_block_of(int(n_star), block_of));
    } else {
      // coset level, then the socle tower transported into each block
      {
        std::vector<int> block_of(n_star);
        for (int i = 0; i < s; ++i)
          for (std::size_t c2 = 0; c2 < csize; ++c2)
            for (int alpha : block_points[i])
              block_of[flat(i, int(c2), alpha)] = int(std::size_t(i) * csize + c2);
        parts_star.push_back(Partition::from_block_of(int(n_star), block_of));
      }
      for (std::size_t lvl = 1; lvl < cls.tower.size(); ++lvl) {
        const Partition &pt = cls.tower[lvl]; // partition of D_0 indices
        std::vector<int> block_of(n_star);
        long counter_base = long(s) * long(csize) * pt.block_count();
        (void)counter_base;
        for (int i = 0; i < s; ++i) {
          Perm carry = sigma_bar[i].inverse(); // D_i -> D_0
          for (std::size_t c2 = 0; c2 < csize; ++c2)
            for (int alpha : block_points[i]) {
              int sub = next.block_index_of(alpha);
              const auto &loc = local_subs[i];
              int a = int(std::find(loc.begin(), loc.end(), sub) - loc.begin());
              int klass = pt.block_index_of(carry[a]);
              block_of[flat(i, int(c2), alpha)] =
                  int((std::size_t(i) * csize + c2) * pt.block_count() + klass);
            }
        }
        parts_star.push_back(Partition::from_block_of(int(n_star), block_of));
      }
    }

    // restrict to the orbit of the smallest point and renumber
    std::vector<int> orb = g_star.orbit(0);
    std::sort(orb.begin(), orb.end());
    GroupHom orb_res = restriction_hom(g_star, orb);
    StepOneState nxt;
    nxt.group = orb_res.image_group();
    {
      std::vector<int> pos(n_star, -1);
      for (std::size_t idx = 0; idx < orb.size(); ++idx) pos[orb[idx]] = int(idx);
      for (const Perm &g : tracked) {
        std::vector<int> im(orb.size());
        for (std::size_t idx = 0; idx < orb.size(); ++idx)
          im[idx] = pos[g[orb[idx]]];
        nxt.gen_images.push_back(Perm(std::move(im)));
      }
    }
    nxt.x.resize(orb.size());
    nxt.y.resize(orb.size());
    nxt.origin.resize(orb.size());
    for (std::size_t idx = 0; idx < orb.size(); ++idx) {
      nxt.x[idx] = x_star[orb[idx]];
      nxt.y[idx] = y_star[orb[idx]];
      nxt.origin[idx] = origin_star[orb[idx]];
    }
    for (const Partition &p : parts_star) {
      Partition q = induced_renumbered(p, orb);
      if (nxt.partitions.empty() || !(nxt.partitions.back() == q))
        nxt.partitions.push_back(q);
    }
    st = std::move(nxt);
  }

  AugmentedInstance out;
  out.inst = StringInstance::over_group(st.group, st.x, st.y, inst0.alphabet_size);
  out.seq.group = st.group;
  out.seq.chain = st.partitions;
  out.seq.d = d;
  out.origin = st.origin;
  out.gen_images = st.gen_images;
  return out;
}

// ---------------------------------------------------------------------------
// step two: Johnson unfolding

std::map<int, JohnsonLevel> detect_johnson_levels(const StabChain &g,
                                                  const PartitionSequence &seq) {
  std::map<int, JohnsonLevel> johnson;
  for (std::size_t lv = 1; lv < seq.chain.size(); ++lv) {
    const Partition &coarse = seq.chain[lv - 1];
    const Partition &fine = seq.chain[lv];
    // sub-blocks of the first coarse block
    std::vector<std::vector<int>> subs0;
    for (const auto &sb : fine.blocks())
      if (coarse.block_index_of(sb[0]) == 0) subs0.push_back(sb);
    StabChain g_b = coarse.block_count() == 1
                        ? g
                        : g.setwise_stabilizer(coarse.blocks()[0]);
    GroupHom act = induced_action(g_b, subs0);
    if (act.image_group().is_semi_regular()) continue;
    auto rec = johnson_recognize(act.image_group(), seq.d);
    if (!rec)
      throw Error("PreconditionViolated",
                  "level " + std::to_string(lv) +
                      " is neither semi-regular nor Johnson");
    JohnsonLevel info;
    info.m = rec->m;
    info.t = rec->t;
    info.rho.resize(coarse.block_count());
    info.rho[0] = rec->rho;
    for (int pb = 1; pb < coarse.block_count(); ++pb) {
      std::vector<std::vector<int>> subs;
      for (const auto &sb : fine.blocks())
        if (coarse.block_index_of(sb[0]) == pb) subs.push_back(sb);
      StabChain g_b2 = g.setwise_stabilizer(coarse.blocks()[pb]);
      GroupHom act2 = induced_action(g_b2, subs);
      auto rec2 = johnson_recognize(act2.image_group(), seq.d);
      if (!rec2 || rec2->m != rec->m || rec2->t != rec->t)
        throw Error("PreconditionViolated", "inconsistent Johnson level");
      info.rho[pb] = rec2->rho;
    }
    johnson[int(lv)] = std::move(info);
  }
  return johnson;
}

UnfoldGraph unfold_graph_of(const StringInstance &inst,
                            const PartitionSequence &seq) {
  return build_unfold_graph(seq.chain,
                            detect_johnson_levels(inst.group.subgroup(), seq));
}

AugmentedInstance reduce_step_two(const StringInstance &inst,
                                  const PartitionSequence &seq,
                                  const SolverConfig &cfg) {
  inst.check();
  check_sequence_structure(seq);
  const StabChain &g = inst.group.subgroup();
  if (!inst.group.rep().is_identity())
    throw Error("PreconditionViolated", "reduce_step_two expects a group");

  std::map<int, JohnsonLevel> johnson = detect_johnson_levels(g, seq);
  UnfoldGraph graph = build_unfold_graph(seq.chain, johnson);
  auto branches = graph.maximal_branches();
  int n_star = int(branches.size());
  std::map<std::vector<int>, int> branch_index;
  for (int i = 0; i < n_star; ++i) branch_index[branches[i]] = i;

  // sigma(branch): the point of the final singleton block
  std::vector<int> origin(n_star);
  for (int i = 0; i < n_star; ++i) {
    const auto &v = graph.vertices[branches[i].back()];
    origin[i] = seq.chain[v.level].blocks()[v.block][0];
  }

  // g^Gamma per generator, then the branch action
  auto act_star = [&](const Perm &p) {
    // vertex map
    std::vector<int> vmap(graph.vertices.size());
    for (std::size_t vi = 0; vi < graph.vertices.size(); ++vi) {
      const auto &v = graph.vertices[vi];
      if (!v.lattice) {
        const auto &blk = seq.chain[v.level].blocks()[v.block];
        int target = seq.chain[v.level].block_index_of(p[blk[0]]);
        // find the vertex id of (level, target)
        // block vertices were created level-major, block-minor, first
        int base = 0;
        for (int lv = 0; lv < v.level; ++lv) base += seq.chain[lv].block_count();
        vmap[vi] = base + target;
      } else {
        const auto &info = johnson.at(v.level);
        const Partition &coarse = seq.chain[v.level - 1];
        const Partition &fine = seq.chain[v.level];
        int pb = v.parent_block;
        int qb = coarse.block_index_of(p[coarse.blocks()[pb][0]]);
        // f : subsets -> subsets through rho_{pb}^{-1} . p . rho_{qb}
        std::vector<int> local_from, local_to;
        for (int b = 0; b < fine.block_count(); ++b) {
          if (coarse.block_index_of(fine.blocks()[b][0]) == pb)
            local_from.push_back(b);
          if (coarse.block_index_of(fine.blocks()[b][0]) == qb)
            local_to.push_back(b);
        }
        int nsub = int(local_from.size());
        std::vector<int> f(nsub);
        std::map<std::vector<int>, int> from_subset_pos, to_subset_pos;
        for (int a = 0; a < nsub; ++a) {
          from_subset_pos[info.rho[pb][a]] = a;
          to_subset_pos[info.rho[qb][a]] = a;
        }
        for (int a = 0; a < nsub; ++a) {
          int sub = local_from[a];
          int image_sub = fine.block_index_of(p[fine.blocks()[sub][0]]);
          int b = int(std::find(local_to.begin(), local_to.end(), image_sub) -
                      local_to.begin());
          f[subset_index(info.m, info.t, info.rho[pb][a])] =
              subset_index(info.m, info.t, info.rho[qb][b]);
        }
        Perm pi = johnson_induced_permutation(Perm(f), info.m, info.t);
        std::vector<int> mapped;
        for (int e : v.subset) mapped.push_back(pi[e]);
        std::sort(mapped.begin(), mapped.end());
        // locate the lattice vertex (level, qb, mapped)
        // lattice vertices are appended after all block vertices, grouped by
        // (level, parent); do a reverse lookup
        vmap[vi] = -1;
        for (std::size_t wi = 0; wi < graph.vertices.size(); ++wi) {
          const auto &w = graph.vertices[wi];
          if (w.lattice && w.level == v.level && w.parent_block == qb &&
              w.subset == mapped) {
            vmap[vi] = int(wi);
            break;
          }
        }
        if (vmap[vi] == -1) throw Error("Internal", "lattice vertex image");
      }
    }
    std::vector<int> im(n_star);
    for (int i = 0; i < n_star; ++i) {
      std::vector<int> moved;
      for (int vtx : branches[i]) moved.push_back(vmap[vtx]);
      auto it = branch_index.find(moved);
      if (it == branch_index.end()) throw Error("Internal", "branch image");
      im[i] = it->second;
    }
    return Perm(std::move(im));
  };

  std::vector<Perm> star_gens;
  for (const Perm &p : g.strong_gens()) star_gens.push_back(act_star(p));
  StabChain g_star = StabChain::build(GenSet(n_star, star_gens));
  std::vector<Perm> tracked(star_gens);

  std::vector<int> x_star(n_star), y_star(n_star);
  for (int i = 0; i < n_star; ++i) {
    x_star[i] = inst.x[origin[i]];
    y_star[i] = inst.y[origin[i]];
  }

  // levels: group branches by their prefixes
  PartitionSequence seq_star;
  seq_star.group = g_star;
  seq_star.d = seq.d;
  std::size_t max_len = 0;
  for (const auto &b : branches) max_len = std::max(max_len, b.size());
  for (std::size_t pre = 1; pre <= max_len; ++pre) {
    std::map<std::vector<int>, int> cls;
    std::vector<int> block_of(n_star);
    for (int i = 0; i < n_star; ++i) {
      std::vector<int> prefix(branches[i].begin(),
                              branches[i].begin() +
                                  std::min(pre, branches[i].size()));
      auto it = cls.find(prefix);
      if (it == cls.end()) it = cls.emplace(prefix, int(cls.size())).first;
      block_of[i] = it->second;
    }
    Partition p = Partition::from_block_of(n_star, block_of);
    if (seq_star.chain.empty() || !(seq_star.chain.back() == p))
      seq_star.chain.push_back(p);
  }
  (void)cfg;

  AugmentedInstance out;
  out.inst = StringInstance::over_group(g_star, x_star, y_star, inst.alphabet_size);
  out.seq = std::move(seq_star);
  out.origin = origin;
  out.gen_images = std::move(tracked);
  return out;
}

} // namespace siso
