#include "siso/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "siso/reduction.hpp"

namespace siso {

namespace {

// image of g under phi restricted to the sorted test set, as a permutation
// of test-set positions (target positions relative to `to`)
Perm restricted_position_map(const GroupHom &hom, const Perm &g,
                             const std::vector<int> &from,
                             const std::vector<int> &to) {
  Perm img = hom.image(g);
  std::vector<int> pos_to(hom.target_degree(), -1);
  for (std::size_t i = 0; i < to.size(); ++i) pos_to[to[i]] = int(i);
  std::vector<int> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    int q = img[from[i]];
    if (q < 0 || pos_to[q] == -1)
      throw Error("NotInvariant", "restriction leaves the test set");
    out[i] = pos_to[q];
  }
  return Perm(std::move(out));
}

// chain of the phi-image of h, restricted to positions of t_set
StabChain image_on_positions(const GroupHom &hom, const StabChain &h,
                             const std::vector<int> &t_set) {
  std::vector<Perm> gens;
  for (const Perm &g : h.strong_gens())
    gens.push_back(restricted_position_map(hom, g, t_set, t_set));
  return StabChain::build(GenSet(int(t_set.size()), std::move(gens)));
}

std::vector<int> all_positions(int t) {
  std::vector<int> p(t);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool giant_on_positions(const GroupHom &hom, const StabChain &h,
                        const std::vector<int> &t_set) {
  StabChain img = image_on_positions(hom, h, t_set);
  return contains_alt(img, all_positions(int(t_set.size())));
}

int cert_t_floor(int d) {
  return std::max(8, int(std::floor(2.0 + std::log2(double(d)))));
}

struct UnionFindFlat {
  std::vector<int> parent;
  explicit UnionFindFlat(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

} // namespace

void GiantRep::check() const {
  if (hom.target_degree() != k) throw Error("DomainMismatch", "giant rep arity");
  if (is_giant(hom.image_group()) == GiantKind::NEITHER)
    throw Error("NotGiant", "image does not contain the alternating group");
}

std::vector<int> affected_points(const StabChain &h, const GiantRep &rep) {
  std::vector<int> out;
  std::vector<int> target(rep.k);
  std::iota(target.begin(), target.end(), 0);
  std::vector<char> seen(h.degree(), 0);
  for (const auto &orb : h.orbits()) {
    StabChain stab = h.pointwise_stabilizer({orb[0]});
    bool affected = !giant_on_positions(rep.hom, stab, target);
    if (affected)
      for (int v : orb) seen[v] = 1;
  }
  for (int v = 0; v < h.degree(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

namespace {

// shared loop of LocalCertificates / CompareLocalCertificates.
// Runs the growing-window iteration for strings x (and y; x == y for the
// certificate itself), against the restriction of phi to t_set.
struct WindowLoop {
  Solver &solver;
  const GroupHom &hom;       // phi on the full group
  std::vector<int> t_set;    // sorted subset of [k]
  const PartitionSequence &seq;

  // computes Aff(H, psi) for the restricted representation
  std::vector<int> affected(const StabChain &h) const {
    std::vector<int> out;
    std::vector<char> mark(h.degree(), 0);
    for (const auto &orb : h.orbits()) {
      StabChain stab = h.pointwise_stabilizer({orb[0]});
      if (!giant_on_positions(hom, stab, t_set))
        for (int v : orb) mark[v] = 1;
    }
    for (int v = 0; v < h.degree(); ++v)
      if (mark[v]) out.push_back(v);
    return out;
  }

  // union over the kernel cosets of psi restricted to h
  Coset kernel_union(const StabChain &h, const Perm &shift,
                     const std::vector<int> &window, const std::vector<int> &x,
                     const std::vector<int> &y) const {
    std::vector<Perm> psi_images;
    for (const Perm &g : h.strong_gens())
      psi_images.push_back(restricted_position_map(hom, g, t_set, t_set));
    GroupHom psi(h, int(t_set.size()), std::move(psi_images));
    StabChain kernel = psi.kernel();
    StabChain image = psi.image_group();
    if (image.order() > solver.config().enum_cap)
      throw cap_exceeded("kernel-union image enumeration");

    // record kernel orbit sizes inside the window: the affected-orbit bound
    // promises they stay small
    {
      RecursionRecord rec;
      rec.n = h.degree();
      rec.site = "local_certificates_kernel";
      rec.half_branch = true;
      for (const auto &orb : kernel.orbits())
        if (std::binary_search(window.begin(), window.end(), orb[0]))
          rec.subsizes.push_back(int(orb.size()));
      solver.stats().records.push_back(std::move(rec));
    }

    std::vector<Perm> kernel_elements;
    bool enumerable = kernel.order() <= solver.config().brute_cap;
    if (enumerable) kernel_elements = kernel.elements(solver.config().brute_cap);

    CosetUnion acc;
    image.for_each_element([&](const Perm &q) {
      auto pre = psi.preimage(q);
      if (!pre) throw Error("Internal", "kernel union preimage");
      Perm rep = pre->then(shift);
      if (enumerable) {
        std::vector<Perm> isos;
        for (const Perm &ke : kernel_elements) {
          Perm cand = ke.then(rep);
          bool ok = true;
          for (int a : window)
            if (x[a] != y[cand[a]]) {
              ok = false;
              break;
            }
          if (ok) isos.push_back(std::move(cand));
        }
        if (!isos.empty()) {
          std::sort(isos.begin(), isos.end());
          Perm r0 = isos.front();
          Perm r0i = r0.inverse();
          std::vector<Perm> aut;
          for (const Perm &p : isos) aut.push_back(p.then(r0i));
          acc.add(Coset(StabChain::build(GenSet(h.degree(), std::move(aut))), r0));
        }
      } else {
        acc.add(solver.solve_windowed(kernel, rep, window, x, y, seq, 1));
      }
      return true;
    });
    return acc.result();
  }
};

} // namespace

CertOutcome local_certificates(Solver &solver, const StringInstance &inst,
                               const GiantRep &rep, const std::vector<int> &t_raw,
                               const PartitionSequence &seq) {
  inst.check();
  std::vector<int> t_set(t_raw);
  std::sort(t_set.begin(), t_set.end());
  int t = int(t_set.size());
  if (!solver.config().guard_override && t <= cert_t_floor(seq.d))
    throw Error("PreconditionViolated",
                "test set size " + std::to_string(t) + " too small for d = " +
                    std::to_string(seq.d));
  const StabChain &g = inst.group.subgroup();
  if (!inst.group.rep().is_identity())
    throw Error("PreconditionViolated", "local certificates expect a group");

  // G_T = phi^{-1}((G^phi)_T)
  StabChain g_t = g;
  if (t != rep.k) {
    StabChain image = rep.hom.image_group();
    StabChain im_stab = image.setwise_stabilizer(t_set);
    g_t = rep.hom.preimage_group(im_stab.strong_gens());
  }

  WindowLoop loop{solver, rep.hom, t_set, seq};

  StabChain cur = g_t;
  std::vector<int> window; // W_i, sorted
  for (;;) {
    if (!giant_on_positions(rep.hom, cur, t_set)) {
      CertOutcome out;
      out.full = false;
      out.nonfullness_group = image_on_positions(rep.hom, cur, t_set);
      out.window_trace = window;
      return out;
    }
    std::vector<int> next = loop.affected(cur);
    if (next == window) break; // window stalled while still giant: full
    std::vector<int> fresh;
    std::set_difference(next.begin(), next.end(), window.begin(), window.end(),
                        std::back_inserter(fresh));
    if (2 * int(fresh.size()) <= cur.degree()) {
      RecursionRecord rec;
      rec.n = cur.degree();
      rec.site = "local_certificates";
      rec.half_branch = true;
      rec.subsizes = {int(fresh.size())};
      solver.stats().records.push_back(std::move(rec));
      IsoResult aut =
          solver.solve_windowed(cur, Perm(cur.degree()), fresh, inst.x, inst.x, seq, 1);
      cur = aut.subgroup(); // x-vs-x is never empty
    } else {
      Coset aut = loop.kernel_union(cur, Perm(cur.degree()), fresh, inst.x, inst.x);
      cur = aut.normalized().subgroup();
    }
    window = std::move(next);
  }

  CertOutcome out;
  out.full = true;
  std::vector<int> complement;
  for (int v = 0; v < cur.degree(); ++v)
    if (!std::binary_search(window.begin(), window.end(), v)) complement.push_back(v);
  out.fullness_group = cur.pointwise_stabilizer(complement);
  out.window_trace = window;
  return out;
}

CertComparison compare_local_certificates(Solver &solver, const std::vector<int> &x1,
                                          const std::vector<int> &x2,
                                          const GiantRep &rep,
                                          const std::vector<int> &t1_raw,
                                          const std::vector<int> &t2_raw,
                                          const PartitionSequence &seq) {
  std::vector<int> t1(t1_raw), t2(t2_raw);
  std::sort(t1.begin(), t1.end());
  std::sort(t2.begin(), t2.end());
  if (t1.size() != t2.size())
    throw Error("PreconditionViolated", "test sets of different size");
  int t = int(t1.size());
  if (!solver.config().guard_override && t <= cert_t_floor(seq.d))
    throw Error("PreconditionViolated", "test set too small");

  const StabChain &g = rep.hom.source();
  StabChain image = rep.hom.image_group();

  auto tau0 = image.set_transporter(t1, t2);
  if (!tau0) {
    CertComparison out;
    out.no_map = true;
    return out;
  }
  auto sigma0 = rep.hom.preimage(*tau0);
  if (!sigma0) throw Error("Internal", "transporter preimage");

  StabChain g_t1 = g;
  if (t != rep.k) {
    StabChain im_stab = image.setwise_stabilizer(t1);
    g_t1 = rep.hom.preimage_group(im_stab.strong_gens());
  }

  WindowLoop loop{solver, rep.hom, t1, seq};

  StabChain cur = g_t1;
  Perm sigma = *sigma0;
  std::vector<int> window;
  bool emptied = false;
  while (giant_on_positions(rep.hom, cur, t1)) {
    std::vector<int> next = loop.affected(cur);
    if (next == window)
      throw Error("T1FullViolation",
                  "window stalled on a giant group; T1 must not be full");
    std::vector<int> fresh;
    std::set_difference(next.begin(), next.end(), window.begin(), window.end(),
                        std::back_inserter(fresh));
    Coset iso;
    if (2 * int(fresh.size()) <= cur.degree()) {
      RecursionRecord rec;
      rec.n = cur.degree();
      rec.site = "compare_local_certificates";
      rec.half_branch = true;
      rec.subsizes = {int(fresh.size())};
      solver.stats().records.push_back(std::move(rec));
      iso = solver.solve_windowed(cur, sigma, fresh, x1, x2, seq, 1);
    } else {
      iso = loop.kernel_union(cur, sigma, fresh, x1, x2);
    }
    if (iso.empty()) {
      emptied = true;
      break;
    }
    cur = iso.subgroup();
    sigma = iso.rep();
    window = std::move(next);
  }

  CertComparison out;
  if (emptied) {
    out.collapsed = true;
    out.m_group = StabChain::build(GenSet(t, {}));
  } else {
    out.m_group = image_on_positions(rep.hom, cur, t1);
  }
  out.sigma = restricted_position_map(rep.hom, sigma, t1, t2);
  return out;
}

int symmetry_defect(const StabChain &c) {
  int n = c.degree();
  int best = std::min(n, 2);
  // Alt(Delta) <= G iff Delta is contained in the closure
  // {a, b} cup {c : (a b c) in G} for any two a, b in Delta
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int size = 2;
      for (int cpt = 0; cpt < n; ++cpt) {
        if (cpt == a || cpt == b) continue;
        if (c.contains(Perm::from_three_cycle(n, a, b, cpt))) ++size;
      }
      if (size >= 3) best = std::max(best, size);
    }
  return n - best;
}

RelStructure orbital_configuration(const StabChain &c,
                                   const std::vector<int> &domain) {
  std::vector<int> dom(domain);
  std::sort(dom.begin(), dom.end());
  int q = int(dom.size());
  std::vector<int> pos(c.degree(), -1);
  for (int i = 0; i < q; ++i) pos[dom[i]] = i;

  std::vector<int> cls(q * q, -1);
  std::vector<std::vector<std::vector<int>>> rels;
  std::vector<bool> diagonal_class;
  for (int p0 = 0; p0 < q; ++p0)
    for (int q0 = 0; q0 < q; ++q0) {
      if (cls[p0 * q + q0] != -1) continue;
      int id = int(rels.size());
      std::vector<std::pair<int, int>> frontier{{p0, q0}};
      cls[p0 * q + q0] = id;
      std::vector<std::vector<int>> tuples{{dom[p0], dom[q0]}};
      while (!frontier.empty()) {
        auto [u, v] = frontier.back();
        frontier.pop_back();
        for (const Perm &g : c.strong_gens()) {
          int u2 = pos[g[dom[u]]], v2 = pos[g[dom[v]]];
          if (u2 < 0 || v2 < 0)
            throw Error("NotInvariant", "orbital domain not invariant");
          if (cls[u2 * q + v2] == -1) {
            cls[u2 * q + v2] = id;
            tuples.push_back({dom[u2], dom[v2]});
            frontier.push_back({u2, v2});
          }
        }
      }
      rels.push_back(std::move(tuples));
      diagonal_class.push_back(p0 == q0);
    }
  // diagonal orbits first, then by minimal pair
  std::vector<int> order(rels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (diagonal_class[a] != diagonal_class[b]) return bool(diagonal_class[a]);
    return false;
  });
  RelStructure out;
  out.domain = dom;
  out.arity = 2;
  for (int idx : order) out.relations.push_back(std::move(rels[idx]));
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// aggregation

namespace {

// pad a tuple to the requested arity by repeating the last entry
std::vector<int> pad_tuple(std::vector<int> tup, int arity) {
  while (int(tup.size()) < arity) tup.push_back(tup.back());
  return tup;
}

RelStructure coloring_structure(const std::vector<int> &domain,
                                const std::vector<std::vector<int>> &classes,
                                int arity) {
  RelStructure s;
  s.domain = domain;
  s.arity = arity;
  for (const auto &cls : classes) {
    std::vector<std::vector<int>> rel;
    for (int v : cls) rel.push_back(pad_tuple({v}, arity));
    s.relations.push_back(std::move(rel));
  }
  s.normalize();
  return s;
}

// encode a partition canonically as one same-class pair relation
RelStructure partition_structure(const std::vector<int> &domain,
                                 const std::vector<std::vector<int>> &classes,
                                 int arity) {
  RelStructure s;
  s.domain = domain;
  s.arity = arity;
  std::vector<std::vector<int>> rel;
  for (const auto &cls : classes)
    for (int a : cls)
      for (int b : cls) rel.push_back(pad_tuple({a, b}, arity));
  s.relations.push_back(std::move(rel));
  s.normalize();
  return s;
}

RelStructure pair_relation_structure(const std::vector<int> &domain,
                                     const std::vector<std::vector<int>> &marks,
                                     const std::vector<std::vector<int>> &pairs,
                                     int arity) {
  RelStructure s;
  s.domain = domain;
  s.arity = arity;
  for (const auto &m : marks) {
    std::vector<std::vector<int>> rel;
    for (int v : m) rel.push_back(pad_tuple({v}, arity));
    s.relations.push_back(std::move(rel));
  }
  std::vector<std::vector<int>> rel;
  for (const auto &p : pairs) rel.push_back(pad_tuple(p, arity));
  s.relations.push_back(std::move(rel));
  s.normalize();
  return s;
}

int degree_of_transitivity(const StabChain &c, const std::vector<int> &domain,
                           int cap = 6) {
  // largest t such that the action on distinct t-tuples of domain is
  // transitive
  int q = int(domain.size());
  for (int t = 1; t <= std::min(cap, q); ++t) {
    // count the orbit of the first t-tuple under a BFS on tuples
    std::vector<int> first(domain.begin(), domain.begin() + t);
    std::set<std::vector<int>> seen{first};
    std::vector<std::vector<int>> frontier{first};
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto &tup : frontier)
        for (const Perm &g : c.strong_gens()) {
          std::vector<int> img;
          for (int v : tup) img.push_back(g[v]);
          if (seen.insert(img).second) next.push_back(img);
        }
      frontier = std::move(next);
    }
    uint128 want = 1;
    for (int i = 0; i < t; ++i) want = mul_checked(want, uint128(q - i));
    if (uint128(seen.size()) != want) return t - 1;
  }
  return std::min(cap, q);
}

struct SideData {
  StabChain fullness; // F_i
  std::vector<int> support;
  std::vector<std::vector<int>> nonfull_sets; // sorted test sets
};

} // namespace

AggregateOutcome aggregate_certificates(Solver &solver, const std::vector<int> &x1,
                                        const std::vector<int> &x2,
                                        const GiantRep &rep, int t_param,
                                        const PartitionSequence &seq) {
  int k = rep.k;
  if (!solver.config().guard_override) {
    if (t_param <= cert_t_floor(seq.d) || 10 * t_param >= k)
      throw Error("PreconditionViolated", "aggregate guard on t");
  }
  const StabChain &g = rep.hom.source();

  std::vector<int> kdom(k);
  std::iota(kdom.begin(), kdom.end(), 0);
  auto tsets = t_subsets(k, t_param);

  const std::vector<int> *strings[2] = {&x1, &x2};
  SideData side[2];
  for (int i = 0; i < 2; ++i) {
    std::vector<Perm> fgens;
    StringInstance inst = StringInstance::over_group(
        g, *strings[i], *strings[i],
        1 + *std::max_element(strings[i]->begin(), strings[i]->end()));
    for (const auto &ts : tsets) {
      CertOutcome cert = local_certificates(solver, inst, rep, ts, seq);
      if (cert.full) {
        for (const Perm &p : cert.fullness_group.strong_gens()) fgens.push_back(p);
      } else {
        side[i].nonfull_sets.push_back(ts);
      }
    }
    side[i].fullness = StabChain::build(GenSet(g.degree(), std::move(fgens)));
    StabChain fimg = StabChain::build(GenSet(
        k, [&] {
          std::vector<Perm> im;
          for (const Perm &p : side[i].fullness.strong_gens())
            im.push_back(rep.hom.image(p));
          return im;
        }()));
    for (int v = 0; v < k; ++v) {
      bool moved = false;
      for (const Perm &p : fimg.strong_gens())
        if (p[v] != v) {
          moved = true;
          break;
        }
      if (moved) side[i].support.push_back(v);
    }
  }

  auto classify = [&](int i) {
    int s = int(side[i].support.size());
    if (4 * s >= k && 4 * s <= 3 * k) return 0; // coloring case
    if (4 * s > 3 * k) return 1;                // large support
    return 2;                                   // small support
  };
  if (classify(0) != classify(1)) return AggregateOutcome{};
  int mode = classify(0);

  AggregateOutcome out;
  if (mode == 0) {
    out.kind = AggregateOutcome::STRUCTURES;
    for (int i = 0; i < 2; ++i) {
      std::vector<int> rest;
      std::set_difference(kdom.begin(), kdom.end(), side[i].support.begin(),
                          side[i].support.end(), std::back_inserter(rest));
      auto &target = i == 0 ? out.structures1 : out.structures2;
      target.push_back(
          coloring_structure(kdom, {side[i].support, rest}, t_param));
    }
    return out;
  }

  if (mode == 1) {
    // orbits of F_i^phi decide the subcase
    StabChain fimg[2];
    for (int i = 0; i < 2; ++i) {
      std::vector<Perm> im;
      for (const Perm &p : side[i].fullness.strong_gens())
        im.push_back(rep.hom.image(p));
      fimg[i] = StabChain::build(GenSet(k, std::move(im)));
    }
    bool big_orbit[2];
    std::vector<int> orbit_c[2];
    for (int i = 0; i < 2; ++i) {
      big_orbit[i] = false;
      for (const auto &orb : fimg[i].orbits())
        if (4 * int(orb.size()) >= 3 * k) {
          big_orbit[i] = true;
          orbit_c[i] = orb;
        }
    }
    if (big_orbit[0] != big_orbit[1]) return AggregateOutcome{};
    if (!big_orbit[0]) {
      out.kind = AggregateOutcome::STRUCTURES;
      for (int i = 0; i < 2; ++i) {
        auto &target = i == 0 ? out.structures1 : out.structures2;
        target.push_back(partition_structure(kdom, fimg[i].orbits(), t_param));
      }
      return out;
    }
    bool giant_orbit[2];
    for (int i = 0; i < 2; ++i)
      giant_orbit[i] = contains_alt(fimg[i], orbit_c[i]);
    if (giant_orbit[0] != giant_orbit[1]) return AggregateOutcome{};
    if (giant_orbit[0]) {
      out.kind = AggregateOutcome::SYMMETRY;
      out.delta1 = orbit_c[0];
      out.delta2 = orbit_c[1];
      out.k1 = side[0].fullness;
      out.k2 = side[1].fullness;
      return out;
    }
    // non-giant large orbit: individualize and expose an orbital relation
    out.kind = AggregateOutcome::STRUCTURES;
    for (int i = 0; i < 2; ++i) {
      auto &target = i == 0 ? out.structures1 : out.structures2;
      const auto &c_orb = orbit_c[i];
      int dt = degree_of_transitivity(fimg[i], c_orb);
      int isize = std::max(0, dt - 1);
      // iterate ordered tuples of distinct points of C
      std::vector<std::vector<int>> tuples{{}};
      for (int step = 0; step < isize; ++step) {
        std::vector<std::vector<int>> next;
        for (const auto &tup : tuples)
          for (int v : c_orb) {
            if (std::find(tup.begin(), tup.end(), v) != tup.end()) continue;
            auto t2 = tup;
            t2.push_back(v);
            next.push_back(std::move(t2));
          }
        tuples = std::move(next);
      }
      for (const auto &iset : tuples) {
        StabChain stab = fimg[i].pointwise_stabilizer(iset);
        std::vector<int> cprime;
        for (int v : c_orb)
          if (std::find(iset.begin(), iset.end(), v) == iset.end())
            cprime.push_back(v);
        RelStructure conf = orbital_configuration(stab, cprime);
        std::vector<std::vector<int>> marks;
        for (int v : iset) marks.push_back({v});
        // relation 0 is the diagonal; branch over the others
        for (std::size_t rj = 1; rj < conf.relations.size(); ++rj) {
          const auto &relj = conf.relations[rj];
          std::set<std::pair<int, int>> edge_set;
          for (const auto &tup : relj) edge_set.insert({tup[0], tup[1]});
          bool symmetric = true;
          for (auto [u, v] : edge_set)
            if (!edge_set.count({v, u})) {
              symmetric = false;
              break;
            }
          long out_deg = long(edge_set.size()) / std::max<std::size_t>(1, cprime.size());
          if (symmetric || 2 * out_deg < int(cprime.size()) - 1) {
            std::vector<std::vector<int>> pairs;
            for (auto [u, v] : edge_set) {
              pairs.push_back({u, v});
              if (!symmetric) pairs.push_back({v, u});
            }
            target.push_back(pair_relation_structure(c_orb, marks, pairs, t_param));
          } else {
            // individualize one vertex and color by in/out neighborhood
            for (int v0 : cprime) {
              std::vector<int> inn, outn, rest;
              for (int u : cprime) {
                if (u == v0) continue;
                bool o = edge_set.count({v0, u}), in = edge_set.count({u, v0});
                if (o)
                  outn.push_back(u);
                else if (in)
                  inn.push_back(u);
                else
                  rest.push_back(u);
              }
              auto m2 = marks;
              m2.push_back({v0});
              m2.push_back(inn);
              m2.push_back(outn);
              m2.push_back(rest);
              target.push_back(coloring_structure(c_orb, m2, t_param));
            }
          }
        }
      }
    }
    return out;
  }

  // small support: category of non-full test sets over D_i = [k] \ S_i
  std::vector<int> dset[2];
  for (int i = 0; i < 2; ++i)
    std::set_difference(kdom.begin(), kdom.end(), side[i].support.begin(),
                        side[i].support.end(), std::back_inserter(dset[i]));
  if (dset[0].size() != dset[1].size()) return AggregateOutcome{};

  // ordered t-tuples with distinct entries over each side's D
  struct TupleSpace {
    std::vector<std::vector<int>> tuples;
    std::map<std::vector<int>, int> index;
  };
  TupleSpace space[2];
  for (int i = 0; i < 2; ++i) {
    std::vector<std::vector<int>> cur{{}};
    for (int step = 0; step < t_param; ++step) {
      std::vector<std::vector<int>> next;
      for (const auto &tup : cur)
        for (int v : dset[i]) {
          if (std::find(tup.begin(), tup.end(), v) != tup.end()) continue;
          auto t2 = tup;
          t2.push_back(v);
          next.push_back(std::move(t2));
        }
      cur = std::move(next);
    }
    space[i].tuples = std::move(cur);
    for (std::size_t idx = 0; idx < space[i].tuples.size(); ++idx)
      space[i].index[space[i].tuples[idx]] = int(idx);
  }

  UnionFindFlat uf(int(space[0].tuples.size() + space[1].tuples.size()));
  auto global_id = [&](int sidx, int tidx) {
    return sidx == 0 ? tidx : int(space[0].tuples.size()) + tidx;
  };
  auto subsets_of = [&](int i) {
    std::set<std::vector<int>> out;
    for (const auto &ts : side[i].nonfull_sets)
      if (std::includes(dset[i].begin(), dset[i].end(), ts.begin(), ts.end()))
        out.insert(ts);
    return std::vector<std::vector<int>>(out.begin(), out.end());
  };
  std::vector<std::vector<int>> sets1 = subsets_of(0), sets2 = subsets_of(1);
  const std::vector<std::vector<int>> *sets[2] = {&sets1, &sets2};

  auto apply_posmap = [&](const std::vector<int> &tup, const std::vector<int> &from,
                          const std::vector<int> &to, const Perm &posmap) {
    std::vector<int> out(tup.size());
    std::vector<int> posof(k, -1);
    for (std::size_t i = 0; i < from.size(); ++i) posof[from[i]] = int(i);
    for (std::size_t i = 0; i < tup.size(); ++i)
      out[i] = to[posmap[posof[tup[i]]]];
    return out;
  };

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto &ta : *sets[i])
        for (const auto &tb : *sets[j]) {
          CertComparison cmp = compare_local_certificates(
              solver, *strings[i], *strings[j], rep, ta, tb, seq);
          if (cmp.no_map || cmp.collapsed) continue;
          // merge tuples over ta with their images under gens of M and sigma
          for (const auto &tup : space[i].tuples) {
            std::vector<int> sorted_t(tup);
            std::sort(sorted_t.begin(), sorted_t.end());
            if (sorted_t != ta) continue;
            int from_id = global_id(i, space[i].index.at(tup));
            for (const Perm &m : cmp.m_group.strong_gens()) {
              auto img = apply_posmap(tup, ta, ta, m);
              uf.unite(from_id, global_id(i, space[i].index.at(img)));
            }
            auto img = apply_posmap(tup, ta, tb, cmp.sigma);
            uf.unite(from_id, global_id(j, space[j].index.at(img)));
          }
        }

  // classes sorted by minimal member (side, tuple) in lexicographic order
  std::map<int, std::vector<std::pair<int, int>>> classes;
  for (int i = 0; i < 2; ++i)
    for (std::size_t idx = 0; idx < space[i].tuples.size(); ++idx)
      classes[uf.find(global_id(i, int(idx)))].push_back({i, int(idx)});

  out.kind = AggregateOutcome::STRUCTURES;
  RelStructure a1, a2;
  a1.domain = dset[0];
  a2.domain = dset[1];
  a1.arity = a2.arity = t_param;
  for (auto &[root, members] : classes) {
    std::vector<std::vector<int>> r1, r2;
    for (auto [sidx, tidx] : members)
      (sidx == 0 ? r1 : r2).push_back(space[sidx].tuples[tidx]);
    a1.relations.push_back(std::move(r1));
    a2.relations.push_back(std::move(r2));
  }
  a1.normalize();
  a2.normalize();
  out.structures1.push_back(std::move(a1));
  out.structures2.push_back(std::move(a2));
  return out;
}

std::vector<ReductionPart> find_structure(const AggregateOutcome &agg,
                                          const StabChain &g, const GiantRep &rep,
                                          const StructureIsoOracle &oracle) {
  (void)g;
  if (agg.kind != AggregateOutcome::STRUCTURES)
    throw Error("PreconditionViolated", "find_structure needs STRUCTURES");
  if (agg.structures1.empty() || agg.structures2.empty() ||
      agg.structures1.size() != agg.structures2.size())
    return {};
  StructureIsoOracle iso = oracle;
  if (!iso)
    iso = [](const RelStructure &a, const RelStructure &b) {
      return structure_iso_cosets(a, b);
    };

  const RelStructure &a1 = agg.structures1.front();
  StabChain image = rep.hom.image_group();
  if (image.order() > uint128(10000000))
    throw cap_exceeded("find_structure image enumeration");

  std::vector<ReductionPart> parts;
  for (const RelStructure &a2 : agg.structures2) {
    if (a2.domain.size() != a1.domain.size()) continue;
    Coset iso_set = iso(a1, a2);
    if (iso_set.empty()) continue;
    // {gamma in image : D1^gamma = D2 and gamma|_{D1} in iso_set}
    auto tau = image.set_transporter(a1.domain, a2.domain);
    if (!tau) continue;
    StabChain setstab = image.setwise_stabilizer(a1.domain);
    std::vector<int> pos2(rep.k, -1);
    for (std::size_t i = 0; i < a2.domain.size(); ++i) pos2[a2.domain[i]] = int(i);
    std::vector<Perm> gammas;
    setstab.for_each_element([&](const Perm &p) {
      Perm cand = p.then(*tau);
      std::vector<int> posmap(a1.domain.size());
      for (std::size_t i = 0; i < a1.domain.size(); ++i)
        posmap[i] = pos2[cand[a1.domain[i]]];
      if (iso_set.contains(Perm(std::move(posmap)))) gammas.push_back(cand);
      return true;
    });
    if (gammas.empty()) continue;
    std::sort(gammas.begin(), gammas.end());
    Perm grep = gammas.front();
    Perm grep_inv = grep.inverse();
    std::vector<Perm> aut;
    for (const Perm &p : gammas) aut.push_back(p.then(grep_inv));
    StabChain h_img = StabChain::build(GenSet(rep.k, std::move(aut)));
    ReductionPart part;
    part.subgroup = rep.hom.preimage_group(h_img.strong_gens());
    auto pre = rep.hom.preimage(grep);
    if (!pre) throw Error("Internal", "find_structure representative preimage");
    part.shift = *pre;
    parts.push_back(std::move(part));
  }
  return parts;
}

SymmetryParts find_symmetry(const AggregateOutcome &agg, const StabChain &g,
                            const GiantRep &rep) {
  if (agg.kind != AggregateOutcome::SYMMETRY)
    throw Error("PreconditionViolated", "find_symmetry needs SYMMETRY");
  (void)g;
  StabChain image = rep.hom.image_group();
  SymmetryParts out;
  auto tau = image.set_transporter(agg.delta1, agg.delta2);
  if (!tau) {
    out.empty = true;
    return out;
  }
  auto gmap = rep.hom.preimage(*tau);
  if (!gmap) throw Error("Internal", "find_symmetry transporter preimage");

  StabChain im_pt = image.pointwise_stabilizer(agg.delta1);
  out.subgroup = rep.hom.preimage_group(im_pt.strong_gens());
  out.k1 = agg.k1;
  out.shifts.push_back(*gmap);

  // an element whose phi-image restricted to Delta_1 is a transposition
  std::vector<int> d1(agg.delta1);
  std::sort(d1.begin(), d1.end());
  if (d1.size() >= 2) {
    std::vector<int> images(d1.begin(), d1.end());
    std::swap(images[0], images[1]);
    auto t_img = image.element_with_restriction(d1, images);
    if (t_img) {
      auto tpre = rep.hom.preimage(*t_img);
      if (tpre) out.shifts.push_back(tpre->then(*gmap));
    }
  }
  return out;
}

namespace {

// String-isomorphism reduction over the induced action of Sym(D) on the
// tuple space D^t; symbols encode per-tuple relation membership profiles.
Coset tuple_string_structure_iso(Solver &solver, const RelStructure &a,
                                 const RelStructure &b) {
  int q = int(a.domain.size());
  int t = a.arity;
  if (q == 1) {
    // single-point domains: isomorphic iff the profiles coincide
    return (a.relations == relabel(b, [&] {
             std::vector<int> m(std::max(a.domain[0], b.domain[0]) + 1);
             m[b.domain[0]] = a.domain[0];
             return m;
           }()).relations)
               ? Coset::full_group(StabChain::build(GenSet(1, {})))
               : Coset::empty_set();
  }
  long long nt = 1;
  for (int i = 0; i < t; ++i) nt *= q;

  auto tuple_index = [&](const std::vector<int> &pos_tuple) {
    long long idx = 0;
    for (int v : pos_tuple) idx = idx * q + v;
    return int(idx);
  };

  // symbol strings over position tuples
  std::map<std::vector<int>, int> symbol_table;
  auto build_string = [&](const RelStructure &s) {
    std::vector<int> pos(*std::max_element(s.domain.begin(), s.domain.end()) + 1, -1);
    for (int i = 0; i < q; ++i) pos[s.domain[i]] = i;
    std::vector<std::vector<int>> profile(nt);
    for (std::size_t r = 0; r < s.relations.size(); ++r)
      for (const auto &tup : s.relations[r]) {
        std::vector<int> pt;
        for (int v : tup) pt.push_back(pos[v]);
        profile[tuple_index(pt)].push_back(int(r));
      }
    std::vector<int> str(nt);
    for (long long i = 0; i < nt; ++i) {
      auto it = symbol_table.find(profile[i]);
      if (it == symbol_table.end())
        it = symbol_table.emplace(profile[i], int(symbol_table.size())).first;
      str[i] = it->second;
    }
    return str;
  };
  std::vector<int> xs = build_string(a), ys = build_string(b);

  // Sym(q) and its tuple action
  std::vector<Perm> qgens;
  qgens.push_back(Perm::from_two_cycle(q, 0, 1));
  {
    std::vector<int> cyc(q);
    for (int i = 0; i < q; ++i) cyc[i] = (i + 1) % q;
    qgens.push_back(Perm(std::move(cyc)));
  }
  StabChain sym_q = StabChain::build(GenSet(q, qgens));
  auto induced_tuple_perm = [&](const Perm &s) {
    std::vector<int> im(nt);
    std::vector<int> digits(t);
    for (long long idx = 0; idx < nt; ++idx) {
      long long rest = idx;
      for (int i = t - 1; i >= 0; --i) {
        digits[i] = int(rest % q);
        rest /= q;
      }
      std::vector<int> mapped(t);
      for (int i = 0; i < t; ++i) mapped[i] = s[digits[i]];
      im[idx] = tuple_index(mapped);
    }
    return Perm(std::move(im));
  };
  std::vector<Perm> act_images;
  for (const Perm &s : sym_q.strong_gens()) act_images.push_back(induced_tuple_perm(s));
  GroupHom act(sym_q, int(nt), std::move(act_images));
  StabChain tuple_group = act.image_group();

  // d-ary sequence: refine by tuple prefixes
  PartitionSequence seq;
  seq.group = tuple_group;
  seq.d = q;
  for (int lv = 0; lv <= t; ++lv) {
    long long stride = 1;
    for (int i = lv; i < t; ++i) stride *= q;
    std::vector<int> block_of(nt);
    for (long long idx = 0; idx < nt; ++idx) block_of[idx] = int(idx / stride);
    Partition p = Partition::from_block_of(int(nt), block_of);
    if (seq.chain.empty() || !(seq.chain.back() == p)) seq.chain.push_back(p);
  }

  std::vector<int> window(nt);
  std::iota(window.begin(), window.end(), 0);
  IsoResult res =
      solver.solve_windowed(tuple_group, Perm(int(nt)), window, xs, ys, seq, 0);
  if (res.empty()) return res;
  StabChain back = act.preimage_group(res.subgroup().strong_gens());
  auto rep = act.preimage(res.rep());
  if (!rep) throw Error("Internal", "tuple-action pullback");
  return Coset(back, *rep).normalized();
}

} // namespace

Coset default_structure_iso(Solver &solver, const RelStructure &a,
                            const RelStructure &b) {
  if (a.domain.size() != b.domain.size() || a.arity != b.arity ||
      a.relations.size() != b.relations.size())
    return Coset::empty_set();
  int q = int(a.domain.size());
  double tuple_count = std::pow(double(q), double(a.arity));
  if (q >= 1 && tuple_count <= double(solver.config().structure_tuple_cap))
    return tuple_string_structure_iso(solver, a, b);
  return structure_iso_cosets(a, b);
}

} // namespace siso
