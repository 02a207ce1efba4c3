#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace siso {

// Group orders are exact; 128 bits cover everything this toolkit touches
// (up to ~33!). Anything beyond raises CapExceeded.
using uint128 = unsigned __int128;

class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string &kind() const { return kind_; }

private:
  std::string kind_;
};

inline Error cap_exceeded(const std::string &what) { return Error("CapExceeded", what); }

inline uint128 mul_checked(uint128 a, uint128 b) {
  uint128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw cap_exceeded("128-bit order overflow");
  return r;
}

inline uint128 factorial128(unsigned n) {
  uint128 r = 1;
  for (unsigned i = 2; i <= n; ++i) r = mul_checked(r, i);
  return r;
}

inline uint128 binom128(unsigned m, unsigned k) {
  if (k > m) return 0;
  if (k > m - k) k = m - k;
  uint128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = mul_checked(r, m - k + i) / i;
  return r;
}

inline std::string u128_str(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

// Deterministic RNG. mt19937_64 output is pinned by the standard; the
// bounded draw below avoids the library-defined distributions so that
// fixed seeds replay identically everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0x5150u) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw Error("Internal", "Rng::below(0)");
    std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do { v = eng_(); } while (v >= lim);
    return v % n;
  }

  int below_int(int n) { return int(below(std::uint64_t(n))); }

  template <typename T> void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 eng_;
};

inline double log2d(double x) { return std::log2(x); }

} // namespace siso
