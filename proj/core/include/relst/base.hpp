#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace relst {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using i32 = std::int32_t;

using Vec = std::vector<u64>;  // coordinates mod m

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

inline u64 add_mod(u64 a, u64 b, u64 m) { return (a + b) % m; }
inline u64 sub_mod(u64 a, u64 b, u64 m) { return (a + m - b % m) % m; }
inline u64 mul_mod(u64 a, u64 b, u64 m) { return (a * b) % m; }  // m < 2^32
inline u64 neg_mod(u64 a, u64 m) { return a % m == 0 ? 0 : m - a % m; }

// g = gcd(a, b) together with x, y such that a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline u64 inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 x, y;
  i64 g = ext_gcd(static_cast<i64>(a % m), static_cast<i64>(m), x, y);
  if (g != 1) throw Error("inv_mod: not invertible");
  i64 r = x % static_cast<i64>(m);
  if (r < 0) r += static_cast<i64>(m);
  return static_cast<u64>(r);
}

// FNV-1a, used for context fingerprints and seed derivation.
inline u64 fnv1a(u64 h, u64 v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}
inline u64 fnv1a_init() { return 14695981039346656037ull; }
inline u64 fnv1a_str(u64 h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}
inline u64 fnv1a_vec(u64 h, const Vec& v) {
  h = fnv1a(h, v.size());
  for (u64 x : v) h = fnv1a(h, x);
  return h;
}

}  // namespace relst
