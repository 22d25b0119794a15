#pragma once

#include "relst/words.hpp"

namespace relst {

// Unit of S = A x| R with its inverse cached.
struct Unit {
  Vec u, uinv;
};

Unit unit_one(const LinearContext& c);
Unit unit_mul(const LinearContext& c, const Unit& a, const Unit& b);
Unit unit_inv(const Unit& a);

// stmap composed with the defining conjugation: z_ij(a, p) evaluates to
// (1+p)(1+a)(1-p) in S^*; off-diagonal parameters square to zero, so the
// inverse is (1+p)(1-a)(1-p).
Unit eval_symbol(const LinearContext& c, const GenSymbol& s);
Unit eval_word(const LinearContext& c, const Word& w);

struct Verdict {
  bool pass = false;
  RelationId id = RelationId::St1;
  std::string note;
  Vec lhs_eval, rhs_eval;
};

Verdict verify_instance(const LinearContext& c, const RelationInstance& inst);

// ^r z_ij(a, p) = z_ij(r a r^{-1}, r p r^{-1}) for block-diagonal units r.
GenSymbol diag_act(const LinearContext& c, const Vec& r, const Vec& rinv,
                   const GenSymbol& s);

bool is_diagonal_unit(const LinearContext& c, const Vec& r);

// Payloads a_t with u = prod_t x_{order[t]}(a_t), taken in the declared
// order, or nullopt when u is not in the image of the product map. The roots
// must form a special closed set.
std::optional<std::vector<Vec>> unipotent_factorization(const LinearContext& c, const Vec& u,
                                                        const std::vector<IndexRoot>& order);

}  // namespace relst
