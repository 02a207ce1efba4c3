#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "siso/util.hpp"

namespace siso {

// A permutation of {0,...,n-1} stored as its image table. Points are
// 0-indexed internally; all textual I/O (cycle notation, JSON) is 1-indexed.
class Perm {
public:
  Perm() = default;
  explicit Perm(int n) : images_(n) {
    for (int i = 0; i < n; ++i) images_[i] = i;
  }
  explicit Perm(std::vector<int> images);

  int degree() const { return int(images_.size()); }
  int operator[](int p) const { return images_[p]; }
  const std::vector<int> &images() const { return images_; }

  bool is_identity() const;

  // this applied first, then other:  p^(a.then(b)) == (p^a)^b
  Perm then(const Perm &other) const;
  Perm inverse() const;
  Perm conjugate(const Perm &by) const { return by.inverse().then(*this).then(by); }

  bool operator==(const Perm &o) const { return images_ == o.images_; }
  bool operator<(const Perm &o) const { return images_ < o.images_; }

  std::size_t hash() const;

  std::vector<std::vector<int>> cycles() const; // nontrivial cycles, 0-indexed
  std::string cycle_string() const;             // "(1 2 3)(4 5)", identity "()"
  static Perm parse_cycles(const std::string &s, int n);

  static Perm from_two_cycle(int n, int a, int b);
  static Perm from_three_cycle(int n, int a, int b, int c);

private:
  std::vector<int> images_;
};

struct PermHash {
  std::size_t operator()(const Perm &p) const { return p.hash(); }
};

// A generating set with an explicit shared domain (the set may be empty).
struct GenSet {
  int degree = 0;
  std::vector<Perm> gens;

  GenSet() = default;
  GenSet(int n, std::vector<Perm> g);
};

Perm compose(const Perm &a, const Perm &b); // a then b
Perm invert(const Perm &a);
int apply(const Perm &a, int point);

std::vector<int> orbit_of(const GenSet &g, int point);
std::vector<std::vector<int>> all_orbits(const GenSet &g); // sorted by min element
bool is_transitive(const GenSet &g);

} // namespace siso
