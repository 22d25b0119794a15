#pragma once

#include <memory>
#include <optional>
#include <string>

#include "relst/base.hpp"
#include "relst/zlin.hpp"

namespace relst {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

// Finite unital ring presented by additive generators over Z/m with a
// structure-constant multiplication table. Generator s has additive order
// orders[s] dividing m; an element is a coordinate vector whose s-th entry is
// a multiple of m/orders[s], so vectors add componentwise mod m and the
// additive group is exactly the direct sum of the cyclic pieces.
class FiniteRing {
 public:
  FiniteRing(u64 modulus, std::vector<u64> orders,
             const std::vector<std::vector<Vec>>& table, Vec unit,
             std::string name);

  u64 modulus() const { return m_; }
  std::size_t dim() const { return dim_; }
  const std::vector<u64>& orders() const { return orders_; }
  u64 scale(std::size_t s) const { return scale_[s]; }
  const Vec& one() const { return one_; }
  Vec zero() const { return Vec(dim_, 0); }
  const std::string& name() const { return name_; }
  u64 fingerprint() const { return fp_; }

  bool canonical(const Vec& x) const;
  Vec basis_elt(std::size_t s) const;
  u64 coeff(const Vec& x, std::size_t s) const { return x[s] / scale_[s]; }

  bool is_zero(const Vec& x) const;
  Vec add(const Vec& x, const Vec& y) const;
  Vec sub(const Vec& x, const Vec& y) const;
  Vec neg(const Vec& x) const;
  Vec scalar_mul(u64 k, const Vec& x) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec mul(const Vec& x, const Vec& y, const Vec& z) const;

  // Two-sided inverse, if the element is a unit.
  std::optional<Vec> inverse(const Vec& x) const;

  // Associativity and unit laws on all generator triples/pairs.
  std::vector<std::string> validate() const;

 private:
  u64 m_;
  std::size_t dim_;
  std::vector<u64> orders_, scale_;
  std::vector<u32> off_;
  std::vector<u32> idx_;
  std::vector<u64> val_;
  Vec one_;
  std::string name_;
  u64 fp_;
};

RingPtr cyclic_ring(u64 modulus);

// Mat(n, base) with the generator layout ((i,j), s) -> (i*n + j)*base_dim + s.
RingPtr matrix_ring(std::size_t n, const RingPtr& base);

RingPtr opposite_ring(const RingPtr& ring);

Vec matrix_unit(const FiniteRing& mat, std::size_t n, const RingPtr& base,
                std::size_t i, std::size_t j, const Vec& base_elt);

struct IdempotentFamily {
  RingPtr ring;
  std::vector<Vec> idems;

  std::size_t size() const { return idems.size(); }
};

// Diagonal blocks of Mat(n, base) grouped by an index partition (1-based
// index sets in the config; here 0-based).
IdempotentFamily block_family(const RingPtr& mat, std::size_t n, const RingPtr& base,
                              const std::vector<std::vector<std::size_t>>& blocks);

struct FamilyReport {
  bool size_ok = false;       // n >= 3
  bool idempotent = false;
  bool orthogonal = false;
  bool complete = false;
  std::vector<bool> full;
  std::vector<std::string> failures;

  bool pass() const;
};

FamilyReport validate_idempotent_family(const IdempotentFamily& fam);

// e_i x e_j for members of a validated family.
Vec peirce(const IdempotentFamily& fam, std::size_t i, const Vec& x, std::size_t j);

}  // namespace relst
