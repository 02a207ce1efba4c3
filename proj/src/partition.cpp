#include "siso/partition.hpp"

#include <algorithm>

#include "siso/hom.hpp"

namespace siso {

Partition::Partition(int n, std::vector<std::vector<int>> blocks)
    : degree_(n), blocks_(std::move(blocks)) {
  block_of_.assign(n, -1);
  for (auto &b : blocks_) {
    if (b.empty()) throw Error("InvalidPartition", "empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto &a, const auto &b) { return a[0] < b[0]; });
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
    for (int v : blocks_[bi]) {
      if (v < 0 || v >= n || block_of_[v] != -1)
        throw Error("InvalidPartition", "blocks must partition the domain");
      block_of_[v] = int(bi);
    }
  for (int v = 0; v < n; ++v)
    if (block_of_[v] == -1)
      throw Error("InvalidPartition", "blocks must cover the domain");
}

Partition Partition::whole(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return Partition(n, {all});
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> b;
  for (int i = 0; i < n; ++i) b.push_back({i});
  return Partition(n, std::move(b));
}

Partition Partition::from_block_of(int n, const std::vector<int> &block_of) {
  int max_id = 0;
  for (int v : block_of) max_id = std::max(max_id, v);
  std::vector<std::vector<int>> by_id(max_id + 1);
  for (int v = 0; v < n; ++v) by_id[block_of[v]].push_back(v);
  std::vector<std::vector<int>> blocks;
  for (auto &b : by_id)
    if (!b.empty()) blocks.push_back(std::move(b));
  return Partition(n, std::move(blocks));
}

bool refines(const Partition &p, const Partition &q) {
  if (p.degree() != q.degree())
    throw Error("DomainMismatch", "refines over different domains");
  for (const auto &b : p.blocks()) {
    int qb = q.block_index_of(b[0]);
    for (int v : b)
      if (q.block_index_of(v) != qb) return false;
  }
  return true;
}

int partition_index(const Partition &p, const Partition &q) {
  if (!refines(p, q)) throw Error("NotRefinement", "index requires p to refine q");
  std::vector<int> count(q.block_count(), 0);
  for (const auto &b : p.blocks()) ++count[q.block_index_of(b[0])];
  return *std::max_element(count.begin(), count.end());
}

std::vector<std::vector<int>> induced_blocks(const Partition &p,
                                             const std::vector<int> &s) {
  if (s.empty()) throw Error("EmptySubset", "induced partition of the empty set");
  std::vector<std::vector<int>> parts(p.block_count());
  for (int v : s) parts[p.block_index_of(v)].push_back(v);
  std::vector<std::vector<int>> blocks;
  for (auto &b : parts)
    if (!b.empty()) {
      std::sort(b.begin(), b.end());
      blocks.push_back(std::move(b));
    }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto &a, const auto &b) { return a[0] < b[0]; });
  return blocks;
}

Partition induced_renumbered(const Partition &p, const std::vector<int> &s) {
  auto blocks = induced_blocks(p, s);
  std::vector<int> sorted(s);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> pos(p.degree(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) pos[sorted[i]] = int(i);
  for (auto &b : blocks)
    for (int &v : b) v = pos[v];
  return Partition(int(sorted.size()), std::move(blocks));
}

bool invariant_under(const Partition &p, const Perm &g) {
  for (const auto &b : p.blocks()) {
    int target = p.block_index_of(g[b[0]]);
    for (int v : b)
      if (p.block_index_of(g[v]) != target) return false;
  }
  return true;
}

bool invariant_under(const Partition &p, const GenSet &g) {
  for (const Perm &x : g.gens)
    if (!invariant_under(p, x)) return false;
  return true;
}

PartitionSequence PartitionSequence::trivial(const StabChain &g) {
  PartitionSequence s;
  s.group = g;
  int n = g.degree();
  s.chain.push_back(Partition::whole(n));
  if (n > 1) s.chain.push_back(Partition::singletons(n));
  s.d = n;
  return s;
}

void check_sequence_structure(const PartitionSequence &s) {
  int n = s.group.degree();
  if (s.chain.empty()) throw Error("StructurallyInvalid", "empty chain");
  if (!(s.chain.front() == Partition::whole(n)))
    throw Error("StructurallyInvalid", "chain must start at {Omega}");
  if (!(s.chain.back() == Partition::singletons(n)))
    throw Error("StructurallyInvalid", "chain must end at singletons");
  GenSet gens = s.group.gen_set();
  for (std::size_t i = 0; i < s.chain.size(); ++i) {
    if (s.chain[i].degree() != n)
      throw Error("StructurallyInvalid", "partition domain mismatch");
    if (!invariant_under(s.chain[i], gens))
      throw Error("StructurallyInvalid", "partition not invariant");
    if (i > 0) {
      if (!refines(s.chain[i], s.chain[i - 1]) || s.chain[i] == s.chain[i - 1])
        throw Error("StructurallyInvalid", "chain must strictly refine");
    }
  }
  if (s.d < 1) throw Error("StructurallyInvalid", "d must be positive");
}

bool is_semi_regular(const StabChain &c) { return c.is_semi_regular(); }

AlmostDAryReport validate_almost_d_ary(const PartitionSequence &s) {
  check_sequence_structure(s);
  AlmostDAryReport report;
  for (std::size_t i = 1; i < s.chain.size(); ++i) {
    const Partition &fine = s.chain[i];
    const Partition &coarse = s.chain[i - 1];
    for (const auto &block : coarse.blocks()) {
      // sub-blocks of B_i inside B
      std::vector<std::vector<int>> subs;
      {
        std::vector<int> seen(fine.block_count(), 0);
        for (int v : block)
          if (!seen[fine.block_index_of(v)]) {
            seen[fine.block_index_of(v)] = 1;
            subs.push_back(fine.blocks()[fine.block_index_of(v)]);
          }
      }
      if (int(subs.size()) <= s.d) continue;
      StabChain g_b = block.size() == std::size_t(s.group.degree())
                          ? s.group
                          : s.group.setwise_stabilizer(block);
      GroupHom act = induced_action(g_b, subs);
      if (act.image_group().is_semi_regular()) continue;
      report.violations.push_back(
          {int(i), block,
           "induced action is not semi-regular and has " +
               std::to_string(subs.size()) + " > d = " + std::to_string(s.d) +
               " blocks"});
    }
  }
  report.valid = report.violations.empty();
  return report;
}

PartitionSequence restrict_sequence(const PartitionSequence &s, const StabChain &h,
                                    const std::vector<int> &delta) {
  check_sequence_structure(s);
  if (h.degree() != s.group.degree())
    throw Error("DomainMismatch", "restrict_sequence subgroup degree");
  for (const Perm &g : h.strong_gens())
    if (!s.group.contains(g))
      throw Error("NotSubgroup", "restrict_sequence: H is not a subgroup");
  std::vector<int> d(delta);
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  if (d.empty()) throw Error("EmptySubset", "restrict_sequence: empty subset");
  {
    std::vector<bool> in(h.degree(), false);
    for (int v : d) in[v] = true;
    for (const Perm &g : h.strong_gens())
      for (int v : d)
        if (!in[g[v]]) throw Error("NotInvariant", "restrict_sequence: subset");
  }

  GroupHom res = restriction_hom(h, d);
  PartitionSequence out;
  out.group = res.image_group();
  out.d = s.d;
  for (const Partition &p : s.chain) {
    Partition q = induced_renumbered(p, d);
    if (out.chain.empty() || !(out.chain.back() == q)) out.chain.push_back(q);
  }
  return out;
}

} // namespace siso
