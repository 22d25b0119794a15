#pragma once

#include "relst/chevalley.hpp"

namespace relst {

struct SNFResult {
  std::vector<i64> invariant_factors;  // the diagonal entries > 1, in chain order
  std::size_t free_rank = 0;
  bool certified = false;  // U * M * V was re-multiplied and compared with D
};

// Invariant factors with the transform product re-checked on every call.
SNFResult smith_normal_form_certified(const IMat& m);

struct FtGen {
  std::size_t i = 0, j = 0;  // component pair (linear scope)
  int root = -1;             // root (chevalley scope)
  std::size_t s = 0, t = 0;  // payload basis index, parameter basis index
};

struct AbelianPresentation {
  std::vector<FtGen> gens;
  IMat rows;
};

// The factor of the relative group by the unrelativized one, presented as an
// abelian group: generators indexed by component basis pairs (biadditivity is
// baked into the indexing), relation rows from torsion, the product rule, the
// d rule, and the parameter splitting rule.
class FtGroup {
 public:
  static FtGroup linear(const CtxPtr& ctx, std::size_t cap = 5000, u64 perm_seed = 0);
  static FtGroup chevalley(const ChevPtr& cctx, std::size_t cap = 5000, u64 perm_seed = 0);

  const AbelianPresentation& presentation() const { return pres_; }
  const SNFResult& snf() const { return snf_; }

  std::vector<i64> symbol_class(const GenSymbol& s) const;
  std::vector<i64> word_class(const Word& w) const;
  // Membership of a class vector in the relation lattice, i.e. vanishing in
  // the presented group.
  bool vanishes(const std::vector<i64>& cls) const;

 private:
  CtxPtr ctx_;
  ChevPtr cctx_;
  AbelianPresentation pres_;
  SNFResult snf_;
  SmithResult smith_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> gen_index_;
  std::map<std::pair<int, std::pair<std::size_t, std::size_t>>, std::size_t> gen_index_chev_;
  void finish(u64 perm_seed);
};

struct QuotientMapVerdict {
  bool pass = false;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

// Sampled defining-relation instances must map to zero in the FT group.
QuotientMapVerdict verify_quotient_map(const CtxPtr& ctx, const std::vector<RelationId>& ids,
                                       std::size_t samples, u64 seed);
QuotientMapVerdict verify_quotient_map_chev(const ChevPtr& cctx,
                                            const std::vector<RelationId>& ids,
                                            std::size_t samples, u64 seed);

}  // namespace relst
