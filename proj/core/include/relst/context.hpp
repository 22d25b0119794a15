#pragma once

#include <map>
#include <mutex>

#include "relst/algebra.hpp"
#include "relst/rng.hpp"

namespace relst {

// Everything verification needs about one crossed module d: A -> R with a
// complete family of full orthogonal idempotents: the ambient ring S = A x| R,
// the lifted idempotents, and per-pair Peirce component bases for sampling and
// membership checks. Immutable after construction; safe to share between
// workers.
class LinearContext {
 public:
  static std::shared_ptr<const LinearContext> make(const RingPtr& ring, CrossedModule cm,
                                                   IdempotentFamily fam, std::string name);

  // Same ring data with idempotents merged along an index partition. Used by
  // root elimination; allows families of size >= 2.
  static std::shared_ptr<const LinearContext> merged(
      std::shared_ptr<const LinearContext> parent,
      const std::vector<std::vector<std::size_t>>& classes);

  const FiniteRing& S() const { return *sd_.ring; }
  const SemidirectRing& sd() const { return sd_; }
  const CrossedModule& cm() const { return cm_; }
  const RingPtr& R() const { return ring_; }
  const IdempotentFamily& family() const { return fam_; }
  std::size_t n() const { return E_.size(); }
  const Vec& idem(std::size_t i) const { return E_[i]; }  // in S coordinates
  const std::string& name() const { return name_; }
  u64 fingerprint() const { return fp_; }
  const std::shared_ptr<const LinearContext>& parent() const { return parent_; }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }

  const SubgroupBasis& comp_a(std::size_t i, std::size_t j) const;
  const SubgroupBasis& comp_r(std::size_t i, std::size_t j) const;
  const SubgroupBasis& comp_s(std::size_t i, std::size_t j) const;

  bool in_comp_a(std::size_t i, std::size_t j, const Vec& v) const;
  bool in_comp_r(std::size_t i, std::size_t j, const Vec& v) const;
  bool in_comp_s(std::size_t i, std::size_t j, const Vec& v) const;

  Vec sample_a(std::size_t i, std::size_t j, Rng& rng) const;
  Vec sample_r(std::size_t i, std::size_t j, Rng& rng) const;
  Vec sample_s(std::size_t i, std::size_t j, Rng& rng) const;

  // d applied to the ideal part, as an R-part vector of S.
  Vec d_of(const Vec& v) const;

  // Block-diagonal unit of R inside S, with its inverse.
  std::pair<Vec, Vec> sample_diag_unit(Rng& rng) const;

  // x in e_i A e_j as a sum of products u*v with u in e_i A e_k, v in e_k R e_j.
  std::vector<std::pair<Vec, Vec>> fullness_decomposition(std::size_t i, std::size_t j,
                                                          std::size_t k, const Vec& x) const;

  Vec mulS(const Vec& x, const Vec& y) const { return S().mul(x, y); }

 private:
  LinearContext() = default;

  RingPtr ring_;
  CrossedModule cm_;
  SemidirectRing sd_;
  IdempotentFamily fam_;
  std::vector<Vec> E_;
  std::string name_;
  u64 fp_ = 0;
  std::shared_ptr<const LinearContext> parent_;
  std::vector<std::vector<std::size_t>> classes_;

  std::vector<SubgroupBasis> comp_a_, comp_r_, comp_s_, diag_r_;
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  void build_components();

  mutable std::mutex cache_mu_;
  mutable std::map<std::tuple<std::size_t, std::size_t, std::size_t, Vec>,
                   std::vector<std::pair<Vec, Vec>>>
      fullness_cache_;
};

using CtxPtr = std::shared_ptr<const LinearContext>;

// Same data over R^op / A^op; the home of transposed words.
CtxPtr opposite_context(const CtxPtr& ctx);

Vec sample_subgroup(const SubgroupBasis& sub, Rng& rng);
std::vector<Vec> all_elements(const SubgroupBasis& sub, u64 cap);

}  // namespace relst
