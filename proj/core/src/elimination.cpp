#include "relst/elimination.hpp"

#include <algorithm>

namespace relst {

MergedContext merge_root(const CtxPtr& parent, std::size_t l, std::size_t m) {
  if (l >= parent->n() || m >= parent->n() || l == m)
    throw Error("merge_root: l, m must be distinct family indices");
  MergedContext mc;
  mc.parent = parent;
  mc.l = l;
  mc.m = m;
  std::vector<std::vector<std::size_t>> classes;
  mc.child_of.assign(parent->n(), 0);
  for (std::size_t i = 0; i < parent->n(); ++i) {
    if (i == m) continue;
    if (i == l) {
      mc.inf = classes.size();
      mc.child_of[l] = mc.child_of[m] = classes.size();
      classes.push_back({std::min(l, m), std::max(l, m)});
    } else {
      mc.child_of[i] = classes.size();
      classes.push_back({i});
    }
  }
  mc.child = LinearContext::merged(parent, classes);
  return mc;
}

namespace {

bool touches_inf(const MergedContext& mc, const GenSymbol& s) {
  return s.i == mc.inf || s.j == mc.inf;
}

}  // namespace

Word f_alpha(const MergedContext& mc, const GenSymbol& s) {
  const LinearContext& par = *mc.parent;
  const FiniteRing& r = par.S();
  const Vec& el = par.idem(mc.l);
  const Vec& em = par.idem(mc.m);

  auto parent_index = [&](std::size_t child_idx) {
    for (std::size_t i = 0; i < par.n(); ++i)
      if (i != mc.m && mc.child_of[i] == child_idx) return i;
    throw Error("f_alpha: bad child index");
  };

  if (s.kind == SymKind::LinZ) {
    if (!touches_inf(mc, s)) {
      Word w;
      w.push(zsym(par, parent_index(s.i), parent_index(s.j), s.payload, s.param), 1);
      return w;
    }
    if (s.i == mc.inf && s.j != mc.inf) {
      std::size_t j = parent_index(s.j);
      return z4_word(par, mc.l, mc.m, j, r.mul(el, s.payload), r.mul(em, s.payload),
                     r.mul(s.param, el), r.mul(s.param, em));
    }
    if (s.j == mc.inf && s.i != mc.inf) {
      std::size_t i = parent_index(s.i);
      return z4t_word(par, i, mc.l, mc.m, r.mul(s.payload, el), r.mul(s.payload, em),
                      r.mul(el, s.param), r.mul(em, s.param));
    }
    throw Error("f_alpha: symbol with both indices merged (internal)");
  }
  if (s.kind == SymKind::LinX) {
    Word w;
    if (!touches_inf(mc, s)) {
      w.push(rsym(par, parent_index(s.i), parent_index(s.j), s.payload), 1);
    } else if (s.i == mc.inf) {
      std::size_t j = parent_index(s.j);
      w.push(rsym(par, mc.l, j, r.mul(el, s.payload)), 1);
      w.push(rsym(par, mc.m, j, r.mul(em, s.payload)), 1);
    } else {
      std::size_t i = parent_index(s.i);
      w.push(rsym(par, i, mc.l, r.mul(s.payload, el)), 1);
      w.push(rsym(par, i, mc.m, r.mul(s.payload, em)), 1);
    }
    return w;
  }
  throw Error("f_alpha: chevalley symbols are not in the linear model");
}

Word f_alpha(const MergedContext& mc, const Word& w) {
  Word out;
  for (const auto& t : w.terms()) {
    Word piece = f_alpha(mc, t.sym);
    out *= t.exp == 1 ? piece : piece.inverse();
  }
  return out;
}

Word g_alpha(const MergedContext& mc, const GenSymbol& s) {
  const LinearContext& par = *mc.parent;
  const LinearContext& child = *mc.child;
  const FiniteRing& r = par.S();
  const std::size_t i = s.i, j = s.j;
  const bool il = (i == mc.l || i == mc.m);
  const bool jl = (j == mc.l || j == mc.m);

  if (s.kind == SymKind::LinX) {
    if (il && jl)
      throw Error(
          "g_alpha: x_lm(p) has no generator-level preimage (the unrelativized group "
          "is not elimination invariant)");
    Word w;
    w.push(rsym(child, mc.child_of[i], mc.child_of[j], s.payload), 1);
    return w;
  }
  if (s.kind != SymKind::LinZ)
    throw Error("g_alpha: chevalley symbols are not in the linear model");

  Word w;
  if (!(il && jl)) {
    w.push(zsym(child, mc.child_of[i], mc.child_of[j], s.payload, s.param), 1);
    return w;
  }

  // {i, j} = {l, m}: split the payload along the least admissible index.
  std::size_t k = 0;
  while (k == mc.l || k == mc.m) ++k;
  if (k >= par.n()) throw Error("g_alpha: needs a third index");
  const Vec& q = s.param;
  auto parts = par.fullness_decomposition(i, j, k, s.payload);
  const std::size_t ck = mc.child_of[k];
  for (const auto& [a, p] : parts) {
    // z_ij(a p, q) = F_alpha( z_{inf,k}(-a - q a, p - p q) x_{inf,k}(a + q a) )
    Vec aq = r.add(a, r.mul(q, a));
    Vec pq = r.sub(p, r.mul(p, q));
    w.push(zsym(child, mc.inf, ck, r.neg(aq), pq), 1);
    w.push(xsym(child, mc.inf, ck, aq), 1);
  }
  return w;
}

EliminationChain eliminate_chain(const CtxPtr& base,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  EliminationChain chain;
  chain.base = base;
  CtxPtr cur = base;
  for (const auto& [a, b] : order) {
    MergedContext mc = merge_root(cur, a, b);
    cur = mc.child;
    chain.steps.push_back(std::move(mc));
  }
  return chain;
}

Word f_psi(const EliminationChain& chain, const Word& w) {
  Word out = w;
  for (auto it = chain.steps.rbegin(); it != chain.steps.rend(); ++it) out = f_alpha(*it, out);
  return out;
}

Word zeta_rewrite(const LinearContext& c, const Word& w) {
  const SemidirectRing& sd = c.sd();
  for (const auto& t : w.terms())
    if (t.sym.kind == SymKind::LinZ && !sd.pure_r(t.sym.param))
      throw Error("zeta_rewrite: word already has ideal parameter parts");
  return w;
}

Word xi_rewrite(const LinearContext& c, const Word& w) {
  const FiniteRing& r = c.S();
  const SemidirectRing& sd = c.sd();
  Word out;
  for (const auto& t : w.terms()) {
    const GenSymbol& s = t.sym;
    if (s.kind == SymKind::LinZ) {
      Vec pa = sd.embed_a(sd.a_of(s.param));
      Vec pr = sd.embed_r(sd.r_of(s.param));
      if (r.is_zero(pa)) {
        out.push(s, t.exp);
        continue;
      }
      Word piece = word_of(zsym(c, s.j, s.i, pa, r.zero()));
      piece.push(zsym(c, s.i, s.j, s.payload, pr), 1);
      piece.push(zsym(c, s.j, s.i, r.neg(pa), r.zero()), 1);
      out *= t.exp == 1 ? piece : piece.inverse();
    } else if (s.kind == SymKind::LinX) {
      Vec pa = sd.embed_a(sd.a_of(s.payload));
      Vec pr = sd.embed_r(sd.r_of(s.payload));
      if (r.is_zero(pa)) {
        out.push(s, t.exp);
        continue;
      }
      Word piece = word_of(zsym(c, s.i, s.j, pa, r.zero()));
      piece.push(rsym(c, s.i, s.j, pr), 1);
      out *= t.exp == 1 ? piece : piece.inverse();
    } else {
      throw Error("xi_rewrite: chevalley symbols are not in the linear model");
    }
  }
  return out;
}

}  // namespace relst
