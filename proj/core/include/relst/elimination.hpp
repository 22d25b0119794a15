#pragma once

#include "relst/eval.hpp"

namespace relst {

// One root elimination step: the idempotents e_l and e_m of the parent family
// are merged into e_inf = e_l + e_m. Parent and child share the same ring
// S = A x| R, so words on both sides evaluate in the same unit group.
struct MergedContext {
  CtxPtr parent;
  CtxPtr child;
  std::size_t l = 0, m = 0;
  std::size_t inf = 0;                    // child index of the merged class
  std::vector<std::size_t> child_of;      // parent index -> child index
};

MergedContext merge_root(const CtxPtr& parent, std::size_t l, std::size_t m);

// F_alpha: child symbols/words to parent words. The merged index expands to
// the printed Z4 forms.
Word f_alpha(const MergedContext& mc, const GenSymbol& s);
Word f_alpha(const MergedContext& mc, const Word& w);

// Generator-level inverse: parent symbol to child word. For {i, j} = {l, m}
// the payload is split through fullness_decomposition along the least
// admissible auxiliary index.
Word g_alpha(const MergedContext& mc, const GenSymbol& s);

// A sequence of single-root eliminations; step t merges two indices of the
// context produced by step t-1.
struct EliminationChain {
  CtxPtr base;
  std::vector<MergedContext> steps;

  const CtxPtr& top() const { return steps.empty() ? base : steps.back().child; }
};

EliminationChain eliminate_chain(const CtxPtr& base,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& order);

// Word over the top (most merged) context -> word over the base context.
Word f_psi(const EliminationChain& chain, const Word& w);

// Relativization rewrites. zeta embeds a word over (R, A) into the model with
// parameters in A x| R (the identity on this representation, after checking);
// xi rewrites ideal parts of parameters into explicit conjugations, landing
// back in words whose z-parameters are pure R.
Word zeta_rewrite(const LinearContext& c, const Word& w);
Word xi_rewrite(const LinearContext& c, const Word& w);

}  // namespace relst
