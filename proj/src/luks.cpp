#include "siso/luks.hpp"

#include <algorithm>
#include <cmath>

#include "siso/certificates.hpp"
#include "siso/reduction.hpp"

namespace siso {

StringInstance StringInstance::over_group(const StabChain &g, std::vector<int> x,
                                          std::vector<int> y, int alphabet_size) {
  StringInstance inst;
  inst.n = g.degree();
  inst.alphabet_size = alphabet_size;
  inst.x = std::move(x);
  inst.y = std::move(y);
  inst.group = Coset::full_group(g);
  inst.window.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) inst.window[i] = i;
  inst.check();
  return inst;
}

void StringInstance::check() const {
  if (group.empty()) throw Error("EmptyCoset", "instance group must be nonempty");
  if (int(x.size()) != n || int(y.size()) != n)
    throw Error("DomainMismatch", "string length");
  for (int v : x)
    if (v < 0 || v >= alphabet_size) throw Error("InvalidSymbol", "x");
  for (int v : y)
    if (v < 0 || v >= alphabet_size) throw Error("InvalidSymbol", "y");
  for (int w : window)
    if (w < 0 || w >= n) throw Error("PointOutOfRange", "window");
  if (!std::is_sorted(window.begin(), window.end()))
    throw Error("InvalidWindow", "window must be sorted");
  for (const Perm &g : group.subgroup().strong_gens())
    for (int w : window)
      if (!std::binary_search(window.begin(), window.end(), g[w]))
        throw Error("NotInvariant", "window not invariant");
}

namespace {

std::vector<int> full_window(int n) {
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  return w;
}

std::vector<int> shift_string(const std::vector<int> &y, const Perm &shift) {
  // y^{g^-1}(a) = y(a^g)
  std::vector<int> out(y.size());
  for (std::size_t a = 0; a < y.size(); ++a) out[a] = y[shift[int(a)]];
  return out;
}

double order_log2(uint128 o) { return std::log2(static_cast<double>(o)); }

Coset coset_from_isos(int degree, std::vector<Perm> isos) {
  if (isos.empty()) return Coset::empty_set();
  std::sort(isos.begin(), isos.end());
  Perm rep = isos.front();
  Perm rep_inv = rep.inverse();
  std::vector<Perm> aut;
  aut.reserve(isos.size());
  for (const Perm &p : isos) aut.push_back(p.then(rep_inv));
  return Coset(StabChain::build(GenSet(degree, std::move(aut))), rep).normalized();
}

} // namespace

void Solver::note_depth(int depth) {
  stats_.max_depth = std::max(stats_.max_depth, depth);
}

IsoResult Solver::enumerate_filter(const StabChain &g, const Perm &shift,
                                   const std::vector<int> &window,
                                   const std::vector<int> &x,
                                   const std::vector<int> &y) {
  if (g.order() > cfg_.brute_cap && g.degree() > 2)
    throw cap_exceeded("base case above brute cap");
  ++stats_.base_cases;
  std::vector<Perm> isos;
  g.for_each_element([&](const Perm &h) {
    Perm cand = h.then(shift);
    for (int a : window)
      if (x[a] != y[cand[a]]) return true;
    isos.push_back(std::move(cand));
    return true;
  });
  return coset_from_isos(g.degree(), std::move(isos));
}

IsoResult Solver::solve_windowed(const StabChain &g, const Perm &shift,
                                 const std::vector<int> &window,
                                 const std::vector<int> &x, const std::vector<int> &y,
                                 const PartitionSequence &seq, int depth) {
  ++stats_.nodes;
  note_depth(depth);
  if (window.empty()) return Coset(g, shift);
  if (g.order() <= cfg_.brute_cap || g.degree() <= 2) {
    if (stats_.top_branch.empty()) stats_.top_branch = "base";
    return enumerate_filter(g, shift, window, x, y);
  }

  std::vector<int> ycur = shift_string(y, shift);

  IsoResult res;
  bool fullw = int(window.size()) == g.degree();
  if (fullw && g.transitive()) {
    if (stats_.top_branch.empty()) stats_.top_branch = "transitive";
    res = solve_transitive(g, x, ycur, seq, depth);
  } else {
    if (stats_.top_branch.empty()) stats_.top_branch = "orbits";
    Coset acc = Coset::full_group(g);
    for (const auto &orb : g.orbits()) {
      if (!std::binary_search(window.begin(), window.end(), orb[0])) continue;
      acc = iso_orbit(acc.subgroup(), acc.rep(), orb, x, ycur, seq, depth);
      if (acc.empty()) break;
    }
    res = acc;
  }
  if (res.empty()) return res;
  return Coset(res.subgroup(), res.rep().then(shift)).normalized();
}

IsoResult Solver::iso_orbit(const StabChain &g, const Perm &shift,
                            const std::vector<int> &orbit, const std::vector<int> &x,
                            const std::vector<int> &y, const PartitionSequence &seq,
                            int depth) {
  std::vector<int> ycur = shift_string(y, shift);
  std::vector<int> o(orbit);
  std::sort(o.begin(), o.end());

  GroupHom res_hom = restriction_hom(g, o);
  StabChain sub_group = res_hom.image_group();
  std::vector<int> xs, ys;
  xs.reserve(o.size());
  ys.reserve(o.size());
  for (int p : o) {
    xs.push_back(x[p]);
    ys.push_back(ycur[p]);
  }
  PartitionSequence sub_seq = restrict_sequence(seq, g, o);

  IsoResult sub = solve_full(sub_group, xs, ys, sub_seq, depth + 1);
  if (sub.empty()) return Coset::empty_set();

  StabChain lifted = res_hom.preimage_group(sub.subgroup().strong_gens());
  auto rep = res_hom.preimage(sub.rep());
  if (!rep) throw Error("Internal", "orbit pullback lost the representative");
  return Coset(lifted, rep->then(shift)).normalized();
}

IsoResult Solver::solve_full(const StabChain &g, const std::vector<int> &x,
                             const std::vector<int> &y, const PartitionSequence &seq,
                             int depth) {
  if (g.degree() <= 2 || g.order() <= cfg_.brute_cap)
    return enumerate_filter(g, Perm(g.degree()), full_window(g.degree()), x, y);
  if (!g.transitive())
    return solve_windowed(g, Perm(g.degree()), full_window(g.degree()), x, y, seq,
                          depth);
  return solve_transitive(g, x, y, seq, depth);
}

IsoResult Solver::solve_transitive(const StabChain &g, const std::vector<int> &x,
                                   const std::vector<int> &y,
                                   const PartitionSequence &seq, int depth) {
  ++stats_.nodes;
  note_depth(depth);
  const Partition &b1 = seq.chain.at(1);
  GroupHom act = induced_action(g, b1.blocks());
  if (act.image_group().is_semi_regular())
    return luks_over_blocks(g, x, y, b1, seq, depth);
  return lemma62(g, x, y, seq, depth);
}

IsoResult Solver::luks_over_blocks(const StabChain &g, const std::vector<int> &x,
                                   const std::vector<int> &y, const Partition &blocks,
                                   const PartitionSequence &seq, int depth) {
  ++stats_.luks_calls;
  GroupHom act = induced_action(g, blocks.blocks());
  StabChain quotient = act.image_group();
  if (quotient.order() > cfg_.transversal_cap)
    throw Error("TransversalCapExceeded",
                "quotient order " + u128_str(quotient.order()));
  StabChain kernel = act.kernel();
  std::vector<int> window = full_window(g.degree());

  // the kernel is shared by every coset; reuse its element list when small
  std::vector<Perm> kernel_elements;
  bool enumerable = kernel.order() <= cfg_.brute_cap;
  if (enumerable) kernel_elements = kernel.elements(cfg_.brute_cap);

  CosetUnion acc;
  quotient.for_each_element([&](const Perm &q) {
    auto rep = act.preimage(q);
    if (!rep) throw Error("Internal", "transversal preimage");
    if (enumerable) {
      ++stats_.base_cases;
      std::vector<Perm> isos;
      for (const Perm &h : kernel_elements) {
        Perm cand = h.then(*rep);
        bool ok = true;
        for (int a : window)
          if (x[a] != y[cand[a]]) {
            ok = false;
            break;
          }
        if (ok) isos.push_back(std::move(cand));
      }
      acc.add(coset_from_isos(g.degree(), std::move(isos)));
    } else {
      acc.add(solve_windowed(kernel, *rep, window, x, y, seq, depth + 1));
    }
    return true;
  });
  return acc.result();
}

IsoResult Solver::lemma62(const StabChain &g, const std::vector<int> &x,
                          const std::vector<int> &y, const PartitionSequence &seq,
                          int depth) {
  ++stats_.lemma62_calls;
  int d = seq.d;
  Partition blocks = seq.chain.at(1);
  GroupHom act = induced_action(g, blocks.blocks());
  StabChain p = act.image_group();
  // the quotient must be primitive; coarsen while it is not
  for (;;) {
    auto sys = min_block_system(p.gen_set());
    if (int(sys.size()) == p.degree()) break;
    std::vector<std::vector<int>> merged;
    for (const auto &qb : sys) {
      std::vector<int> blk;
      for (int bi : qb) {
        const auto &b = blocks.blocks()[bi];
        blk.insert(blk.end(), b.begin(), b.end());
      }
      merged.push_back(std::move(blk));
    }
    blocks = Partition(g.degree(), std::move(merged));
    act = induced_action(g, blocks.blocks());
    p = act.image_group();
  }
  if (blocks.block_count() > d)
    throw Error("StructurallyInvalid",
                "lemma62 requires |B_1| <= d blocks, got " +
                    std::to_string(blocks.block_count()));

  double threshold_log2 = (1.0 + std::log2(double(d))) * std::log2(double(d));
  if (order_log2(p.order()) <= threshold_log2)
    return luks_over_blocks(g, x, y, blocks, seq, depth);

  GiantRepData giant;
  try {
    giant = compute_giant_representation(p, d, cfg_);
    if (giant.too_small) return luks_over_blocks(g, x, y, blocks, seq, depth);
  } catch (const Error &) {
    if (g.order() <= cfg_.brute_cap)
      return enumerate_filter(g, Perm(g.degree()), full_window(g.degree()), x, y);
    throw Error("OracleUnavailable", "giant representation unavailable");
  }

  StabChain gprime = act.preimage_group(giant.n_subgroup.strong_gens());

  // lift the kernel partition of psi to the string domain
  std::vector<std::vector<int>> lifted;
  for (const auto &cls : giant.blocks.blocks()) {
    std::vector<int> blk;
    for (int bi : cls) {
      const auto &b = blocks.blocks()[bi];
      blk.insert(blk.end(), b.begin(), b.end());
    }
    lifted.push_back(std::move(blk));
  }
  Partition cprime(g.degree(), std::move(lifted));

  // phi : G' -> Sym([k]), g -> psi(g^blocks)
  std::vector<Perm> phi_images;
  for (const Perm &gen : gprime.strong_gens())
    phi_images.push_back(giant.psi.image(act.image(gen)));
  GroupHom phi(gprime, giant.k, std::move(phi_images));

  int t_param = cfg_.cert_t_override > 0
                    ? cfg_.cert_t_override
                    : std::max(9, int(std::ceil(3.0 + std::log2(double(d)))));

  // transversal of G' in G by breadth-first coset discovery
  std::vector<Perm> reps{Perm(g.degree())};
  {
    std::vector<Perm> frontier{Perm(g.degree())};
    auto known = [&](const Perm &cand) {
      for (const Perm &r : reps)
        if (gprime.contains(cand.then(r.inverse()))) return true;
      return false;
    };
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const Perm &r : frontier)
        for (const Perm &s : g.strong_gens()) {
          Perm cand = r.then(s);
          if (!known(cand)) {
            reps.push_back(cand);
            next.push_back(cand);
          }
        }
      frontier = std::move(next);
    }
  }

  CosetUnion acc;
  for (const Perm &t : reps) {
    std::vector<int> yt = shift_string(y, t);
    IsoResult part = giant_path(gprime, phi, cprime, x, yt, seq, t_param, depth + 1);
    if (!part.empty()) acc.add(Coset(part.subgroup(), part.rep().then(t)));
  }
  return acc.result();
}

IsoResult Solver::giant_path(const StabChain &gprime, const GroupHom &phi,
                             const Partition &kernel_blocks, const std::vector<int> &x,
                             const std::vector<int> &y, const PartitionSequence &seq,
                             int t_param, int depth) {
  ++stats_.nodes;
  ++stats_.giant_calls;
  note_depth(depth);
  int k = phi.target_degree();
  if (k <= 10 * t_param && !cfg_.guard_override)
    return luks_over_blocks(gprime, x, y, kernel_blocks, seq, depth);
  ++stats_.aggregate_calls;

  GiantRep rep{phi, k};
  AggregateOutcome agg = aggregate_certificates(*this, x, y, rep, t_param, seq);
  if (agg.kind == AggregateOutcome::MISMATCH) return Coset::empty_set();

  std::vector<int> window = full_window(gprime.degree());
  CosetUnion acc;
  if (agg.kind == AggregateOutcome::STRUCTURES) {
    auto parts = find_structure(agg, gprime, rep,
                                [this](const RelStructure &a, const RelStructure &b) {
                                  return default_structure_iso(*this, a, b);
                                });
    for (const auto &part : parts)
      acc.add(solve_windowed(part.subgroup, part.shift, window, x, y, seq, depth + 1));
  } else {
    auto parts = find_symmetry(agg, gprime, rep);
    if (parts.empty) return Coset::empty_set();
    for (const Perm &h : parts.shifts) {
      IsoResult sub = solve_windowed(parts.subgroup, h, window, x, y, seq, depth + 1);
      if (sub.empty()) continue;
      std::vector<Perm> gens = parts.k1.strong_gens();
      for (const Perm &sg : sub.subgroup().strong_gens()) gens.push_back(sg);
      acc.add(Coset(StabChain::build(GenSet(gprime.degree(), gens)), sub.rep()));
    }
  }
  return acc.result();
}

// ---------------------------------------------------------------------------
// public surface

IsoResult Solver::iso_window_shift(const StringInstance &inst,
                                   const PartitionSequence &seq) {
  inst.check();
  return solve_windowed(inst.group.subgroup(), inst.group.rep(), inst.window, inst.x,
                        inst.y, seq, 0);
}

IsoResult Solver::orbit_by_orbit(const StringInstance &inst,
                                 const PartitionSequence &seq) {
  return iso_window_shift(inst, seq);
}

IsoResult Solver::standard_luks_reduction(const StringInstance &inst,
                                          const Partition &blocks,
                                          const PartitionSequence &seq) {
  inst.check();
  if (!invariant_under(blocks, inst.group.subgroup().gen_set()))
    throw Error("NotInvariant", "Luks reduction blocks");
  const StabChain &g = inst.group.subgroup();
  const Perm &shift = inst.group.rep();
  std::vector<int> ycur = shift_string(inst.y, shift);
  IsoResult res = luks_over_blocks(g, inst.x, ycur, blocks, seq, 0);
  if (res.empty()) return res;
  return Coset(res.subgroup(), res.rep().then(shift)).normalized();
}

IsoResult Solver::lemma62_recursion(const StringInstance &inst,
                                    const PartitionSequence &seq) {
  inst.check();
  if (!inst.group.subgroup().transitive())
    throw Error("NotTransitive", "lemma62 requires a transitive group");
  const StabChain &g = inst.group.subgroup();
  const Perm &shift = inst.group.rep();
  std::vector<int> ycur = shift_string(inst.y, shift);
  IsoResult res = lemma62(g, inst.x, ycur, seq, 0);
  if (res.empty()) return res;
  return Coset(res.subgroup(), res.rep().then(shift)).normalized();
}

IsoResult Solver::string_iso_main(const StringInstance &inst,
                                  const PartitionSequence &seq) {
  inst.check();
  auto report = validate_almost_d_ary(seq);
  if (!report.valid)
    throw Error("StructurallyInvalid", "sequence is not almost d-ary");
  return iso_window_shift(inst, seq);
}

IsoResult Solver::base_case(const StringInstance &inst) {
  inst.check();
  return enumerate_filter(inst.group.subgroup(), inst.group.rep(), inst.window,
                          inst.x, inst.y);
}

// ---------------------------------------------------------------------------
// numeric lemma helpers

bool approx_binom_holds(int m, int k) {
  // binom(m,k)^log2(m) >= m^k  <=>  binom(m,k) >= 2^k when m >= 2
  if (m < 2 || k < 1 || k > m / 2) return true;
  uint128 b = binom128(unsigned(m), unsigned(k));
  uint128 p = 1;
  for (int i = 0; i < k; ++i) p = mul_checked(p, 2);
  return b >= p;
}

TraceCheck check_recursion_trace(const SolverStats &stats) {
  TraceCheck out;
  for (const auto &rec : stats.records) {
    if (!rec.half_branch || rec.subsizes.empty() || rec.n <= 0) continue;
    ++out.checked;
    double total = 0;
    for (int s : rec.subsizes) {
      if (2 * s > rec.n) out.all_half = false;
      total += s;
    }
    double ratio = total / rec.n;
    int k_rec = ratio <= 1.0 ? 0 : int(std::ceil(std::log2(ratio)));
    double sum = 0;
    for (int s : rec.subsizes) sum += std::pow(double(s) / rec.n, k_rec + 1);
    if (sum > 1.0 + 1e-9) out.lemma_inequality = false;
  }
  return out;
}

} // namespace siso
