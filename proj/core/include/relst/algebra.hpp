#pragma once

#include "relst/ring.hpp"

namespace relst {

// Non-unital R-algebra. Elements are coordinate vectors over Z/m with respect
// to the algebra's own generators (same canonical-form convention as
// FiniteRing); the internal product and both bimodule actions are structure
// tables on generators.
struct Algebra {
  RingPtr ring;  // R
  u64 modulus = 0;
  std::size_t dim = 0;
  std::vector<u64> orders, scale;
  std::vector<std::vector<Vec>> prod;  // dim x dim -> A
  std::vector<std::vector<Vec>> lact;  // ring_dim x dim -> A
  std::vector<std::vector<Vec>> ract;  // dim x ring_dim -> A
  std::string name;

  Vec zero() const { return Vec(dim, 0); }
  Vec basis_elt(std::size_t s) const;
  bool canonical(const Vec& a) const;
  bool is_zero(const Vec& a) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec act_left(const Vec& r, const Vec& a) const;   // r in R coordinates
  Vec act_right(const Vec& a, const Vec& r) const;

  // Bimodule and associativity axioms on all generator triples.
  std::vector<std::string> validate() const;
};

struct CrossedModule {
  Algebra alg;
  std::vector<Vec> d_gen;  // image in R of each algebra generator

  Vec d(const Vec& a) const;

  // d is an algebra/bimodule map and ab = d(a) b = a d(b) on generator pairs.
  std::vector<std::string> validate() const;
};

CrossedModule zero_crossed_module(const RingPtr& ring);
CrossedModule identity_crossed_module(const RingPtr& ring);

// Two-sided ideal generated by the given ring elements, with d the inclusion.
CrossedModule ideal_crossed_module(const RingPtr& ring, const std::vector<Vec>& gens);

// Ring homotope R^(s) for central s: a*b = asb, d(a) = as.
CrossedModule homotope_crossed_module(const RingPtr& ring, const Vec& s);

// Mat(n, a) over Mat(n, K) for a scalar crossed module d: a -> K.
// mat must be matrix_ring(n, scalar.alg.ring).
CrossedModule matrix_crossed_module(std::size_t n, const CrossedModule& scalar,
                                    const RingPtr& mat);

// The ring A x| R together with the bookkeeping to move between the three
// coordinate spaces.
struct SemidirectRing {
  RingPtr ring;  // A x| R as a FiniteRing
  RingPtr base;  // R
  std::size_t dim_a = 0, dim_r = 0;

  Vec embed_a(const Vec& a) const;
  Vec embed_r(const Vec& r) const;
  Vec a_of(const Vec& s) const;  // A coordinates of the ideal part
  Vec r_of(const Vec& s) const;  // R coordinates
  bool pure_a(const Vec& s) const;
  bool pure_r(const Vec& s) const;
};

SemidirectRing semidirect(const CrossedModule& cm);

// b with a + b + ab = a + b + ba = 0, i.e. (1+a)^{-1} = 1+b in A x| R.
std::optional<Vec> quasi_inverse(const SemidirectRing& s, const CrossedModule& cm,
                                 const Vec& a);

}  // namespace relst
