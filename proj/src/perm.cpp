#include "siso/perm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace siso {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= int(images_.size()) || seen[v])
      throw Error("InvalidPermutation", "image table is not a bijection");
    seen[v] = true;
  }
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::then(const Perm &other) const {
  if (degree() != other.degree())
    throw Error("DomainMismatch", "compose over different domain sizes");
  Perm r;
  r.images_.resize(images_.size());
  for (int i = 0; i < degree(); ++i) r.images_[i] = other.images_[images_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.images_.resize(images_.size());
  for (int i = 0; i < degree(); ++i) r.images_[images_[i]] = i;
  return r;
}

std::size_t Perm::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (int v : images_) {
    h ^= std::size_t(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<int> cyc;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j);
      j = images_[j];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Perm::cycle_string() const {
  auto cyc = cycles();
  if (cyc.empty()) return "()";
  std::ostringstream os;
  for (const auto &c : cyc) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ' ';
      os << c[i] + 1;
    }
    os << ')';
  }
  return os.str();
}

Perm Perm::parse_cycles(const std::string &s, int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i;
  std::size_t pos = 0;
  auto skip_ws = [&] { while (pos < s.size() && std::isspace
(static_cast<unsigned char>(s[pos]))) ++pos; };
  skip_ws();
  while (pos < s.size()) {
    if (s[pos] != '(')
      throw Error("ParseError", "expected '(' in cycle notation: " + s);
    ++pos;
    std::vector<int> cyc;
    skip_ws();
    while (pos < s.size() && s[pos] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(s[pos])))
        throw Error("ParseError", "expected point in cycle notation: " + s);
      int v = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        v = v * 10 + (s[pos] - '0');
        ++pos;
      }
      if (v < 1 || v > n)
        throw Error("ParseError", "point out of range in cycle notation: " + s);
      cyc.push_back(v - 1);
      skip_ws();
      if (pos < s.size() && s[pos] == ',') { ++pos; skip_ws(); }
    }
    if (pos >= s.size())
      throw Error("ParseError", "unterminated cycle: " + s);
    ++pos; // ')'
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
      if (im[from] != from && cyc.size() > 1)
        throw Error("ParseError", "point repeated across cycles: " + s);
      if (cyc.size() > 1) im[from] = to;
    }
    skip_ws();
  }
  return Perm(std::move(im));
}

Perm Perm::from_two_cycle(int n, int a, int b) {
  Perm p(n);
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

Perm Perm::from_three_cycle(int n, int a, int b, int c) {
  Perm p(n);
  p.images_[a] = b;
  p.images_[b] = c;
  p.images_[c] = a;
  return p;
}

GenSet::GenSet(int n, std::vector<Perm> g) : degree(n), gens(std::move(g)) {
  for (const Perm &p : gens)
    if (p.degree() != n) throw Error("DomainMismatch", "generator degree mismatch");
}

Perm compose(const Perm &a, const Perm &b) { return a.then(b); }
Perm invert(const Perm &a) { return a.inverse(); }

int apply(const Perm &a, int point) {
  if (point < 0 || point >= a.degree())
    throw Error("PointOutOfRange", "apply: point not in domain");
  return a[point];
}

std::vector<int> orbit_of(const GenSet &g, int point) {
  if (point < 0 || point >= g.degree)
    throw Error("PointOutOfRange", "orbit: point not in domain");
  std::vector<int> orb{point};
  std::vector<bool> in(g.degree, false);
  in[point] = true;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const Perm &p : g.gens) {
      int q = p[orb[i]];
      if (!in[q]) {
        in[q] = true;
        orb.push_back(q);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<int>> all_orbits(const GenSet &g) {
  std::vector<bool> seen(g.degree, false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < g.degree; ++i) {
    if (seen[i]) continue;
    auto orb = orbit_of(g, i);
    for (int v : orb) seen[v] = true;
    out.push_back(std::move(orb));
  }
  return out;
}

bool is_transitive(const GenSet &g) {
  return g.degree > 0 && int(orbit_of(g, 0).size()) == g.degree;
}

} // namespace siso
