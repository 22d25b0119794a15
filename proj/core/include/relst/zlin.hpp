#pragma once

#include <optional>

#include "relst/base.hpp"

namespace relst {

using IMat = std::vector<std::vector<i64>>;

// Additive span of vectors in (Z/m)^dim, kept in Howell form so that
// membership can be decided by greedy leading-entry reduction.
class ModSpan {
 public:
  ModSpan(u64 modulus, std::size_t dim);

  void insert(Vec v);
  bool contains(Vec v) const;
  bool is_full() const;
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  u64 modulus() const { return m_; }
  std::size_t dim() const { return dim_; }

 private:
  u64 m_;
  std::size_t dim_;
  std::vector<Vec> rows_;        // sorted by pivot column
  std::vector<std::size_t> pivot_col_;
  std::vector<u64> pivot_val_;   // divides m

  static std::size_t leading(const Vec& v);
  void place(Vec v, std::vector<Vec>& queue);
};

// Smith normal form over Z with accumulated transforms: u * input * v = diag.
// vinv is maintained alongside v so lattice bases can be read off directly.
struct SmithResult {
  std::vector<i64> diag;  // divisibility chain d1 | d2 | ..., nonnegative
  IMat u, v, vinv;
  std::size_t rows = 0, cols = 0;
};

SmithResult smith_normal_form(const IMat& m);

// One solution x of a*x = b (mod modulus), if any.
std::optional<Vec> solve_mod(const IMat& a, const std::vector<i64>& b, u64 modulus);

// Basis of the subgroup of (Z/m)^dim generated by the given vectors, as an
// internal direct sum: every element is uniquely sum_i c_i * basis[i] with
// 0 <= c_i < order[i].
struct SubgroupBasis {
  u64 modulus = 0;
  std::size_t ambient_dim = 0;
  std::vector<Vec> basis;
  std::vector<u64> orders;  // each > 1, dividing modulus

  std::size_t size_log2_bound() const { return basis.size(); }

  // Number of elements; throws if it does not fit in u64.
  u64 cardinality() const;

  // Unique coefficients of v in this basis; nullopt if v is not a member.
  std::optional<Vec> coords(const Vec& v) const;

  Vec from_coords(const Vec& coords) const;

 private:
  friend SubgroupBasis subgroup_basis(const std::vector<Vec>& gens, u64 modulus,
                                      std::size_t dim);
  mutable std::optional<SmithResult> solver_;  // lazy cache for coords()
  void ensure_solver() const;
};

SubgroupBasis subgroup_basis(const std::vector<Vec>& gens, u64 modulus,
                             std::size_t dim);

}  // namespace relst
