#pragma once

#include <random>

#include "relst/base.hpp"

namespace relst {

// Seeded generator with rejection sampling so draws are exactly uniform and
// reproducible across platforms (mt19937_64 is fully specified).
class Rng {
 public:
  explicit Rng(u64 seed) : gen_(seed) {}

  u64 next() { return gen_(); }

  // Uniform draw from [0, n).
  u64 below(u64 n) {
    if (n == 0) throw Error("Rng::below(0)");
    if (n == 1) return 0;
    const u64 lim = UINT64_MAX - UINT64_MAX % n;
    u64 x;
    do {
      x = gen_();
    } while (x >= lim);
    return x % n;
  }

  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

// Stable per-instance seed so batch results do not depend on the worker that
// picks an instance up.
inline u64 derive_seed(u64 master, const std::string& tag, u64 index) {
  u64 h = fnv1a_init();
  h = fnv1a(h, master);
  h = fnv1a_str(h, tag);
  h = fnv1a(h, index);
  return h;
}

}  // namespace relst
