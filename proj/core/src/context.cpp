#include "relst/context.hpp"

#include <algorithm>

namespace relst {

Vec sample_subgroup(const SubgroupBasis& sub, Rng& rng) {
  Vec coords(sub.basis.size());
  for (std::size_t t = 0; t < sub.basis.size(); ++t) coords[t] = rng.below(sub.orders[t]);
  return sub.from_coords(coords);
}

std::vector<Vec> all_elements(const SubgroupBasis& sub, u64 cap) {
  u64 count = sub.cardinality();
  if (count > cap) throw Error("all_elements: subgroup too large to enumerate");
  std::vector<Vec> out;
  out.reserve(count);
  Vec coords(sub.basis.size(), 0);
  for (u64 k = 0; k < count; ++k) {
    out.push_back(sub.from_coords(coords));
    for (std::size_t t = 0; t < coords.size(); ++t) {
      if (++coords[t] < sub.orders[t]) break;
      coords[t] = 0;
    }
  }
  return out;
}

std::shared_ptr<const LinearContext> LinearContext::make(const RingPtr& ring, CrossedModule cm,
                                                         IdempotentFamily fam,
                                                         std::string name) {
  if (fam.ring->fingerprint() != ring->fingerprint())
    throw Error("LinearContext: family belongs to a different ring");
  auto rep = validate_idempotent_family(fam);
  if (!rep.pass()) {
    std::string msg = "LinearContext: idempotent family rejected";
    for (const auto& f : rep.failures) msg += "; " + f;
    throw Error(msg);
  }
  auto bad = ring->validate();
  if (!bad.empty()) throw Error("LinearContext: ring invalid: " + bad.front());

  auto ctx = std::shared_ptr<LinearContext>(new LinearContext());
  ctx->ring_ = ring;
  ctx->cm_ = std::move(cm);
  ctx->sd_ = semidirect(ctx->cm_);
  ctx->fam_ = std::move(fam);
  for (const Vec& e : ctx->fam_.idems) ctx->E_.push_back(ctx->sd_.embed_r(e));
  ctx->name_ = std::move(name);
  u64 h = fnv1a_init();
  h = fnv1a_str(h, ctx->name_);
  h = fnv1a(h, ctx->sd_.ring->fingerprint());
  for (const Vec& e : ctx->E_) h = fnv1a_vec(h, e);
  ctx->fp_ = h;
  ctx->build_components();
  return ctx;
}

std::shared_ptr<const LinearContext> LinearContext::merged(
    std::shared_ptr<const LinearContext> parent,
    const std::vector<std::vector<std::size_t>>& classes) {
  auto ctx = std::shared_ptr<LinearContext>(new LinearContext());
  ctx->ring_ = parent->ring_;
  ctx->cm_ = parent->cm_;
  ctx->sd_ = parent->sd_;
  ctx->fam_.ring = parent->ring_;
  std::vector<bool> seen(parent->n(), false);
  for (const auto& cls : classes) {
    if (cls.empty()) throw Error("merged: empty class");
    Vec e = parent->ring_->zero();
    for (std::size_t i : cls) {
      if (i >= parent->n() || seen[i]) throw Error("merged: bad partition");
      seen[i] = true;
      e = parent->ring_->add(e, parent->fam_.idems[i]);
    }
    ctx->fam_.idems.push_back(e);
  }
  for (bool s : seen)
    if (!s) throw Error("merged: partition does not cover all indices");
  if (classes.size() < 2) throw Error("merged: need at least two classes");
  for (const Vec& e : ctx->fam_.idems) ctx->E_.push_back(ctx->sd_.embed_r(e));
  ctx->parent_ = parent;
  ctx->classes_ = classes;
  ctx->name_ = parent->name_ + "/merge";
  u64 h = fnv1a_init();
  h = fnv1a(h, parent->fp_);
  for (const auto& cls : classes) {
    h = fnv1a(h, cls.size());
    for (std::size_t i : cls) h = fnv1a(h, i);
  }
  ctx->fp_ = h;
  ctx->build_components();
  return ctx;
}

std::size_t LinearContext::pair_index(std::size_t i, std::size_t j) const {
  if (i >= n() || j >= n()) throw Error("context: index out of range");
  return i * n() + j;
}

void LinearContext::build_components() {
  const std::size_t nn = n();
  const FiniteRing& s = S();
  comp_a_.resize(nn * nn);
  comp_r_.resize(nn * nn);
  comp_s_.resize(nn * nn);
  diag_r_.resize(nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) {
      std::vector<Vec> agens, rgens, sgens;
      for (std::size_t t = 0; t < sd_.dim_a; ++t) {
        Vec g = s.mul(E_[i], s.mul(s.basis_elt(t), E_[j]));
        if (!s.is_zero(g)) agens.push_back(g);
      }
      for (std::size_t t = 0; t < sd_.dim_r; ++t) {
        Vec g = s.mul(E_[i], s.mul(s.basis_elt(sd_.dim_a + t), E_[j]));
        if (!s.is_zero(g)) rgens.push_back(g);
      }
      sgens = agens;
      sgens.insert(sgens.end(), rgens.begin(), rgens.end());
      comp_a_[pair_index(i, j)] = subgroup_basis(agens, s.modulus(), s.dim());
      comp_r_[pair_index(i, j)] = subgroup_basis(rgens, s.modulus(), s.dim());
      comp_s_[pair_index(i, j)] = subgroup_basis(sgens, s.modulus(), s.dim());
      if (i == j) diag_r_[i] = comp_r_[pair_index(i, j)];
    }
}

const SubgroupBasis& LinearContext::comp_a(std::size_t i, std::size_t j) const {
  return comp_a_[pair_index(i, j)];
}
const SubgroupBasis& LinearContext::comp_r(std::size_t i, std::size_t j) const {
  return comp_r_[pair_index(i, j)];
}
const SubgroupBasis& LinearContext::comp_s(std::size_t i, std::size_t j) const {
  return comp_s_[pair_index(i, j)];
}

bool LinearContext::in_comp_a(std::size_t i, std::size_t j, const Vec& v) const {
  return comp_a(i, j).coords(v).has_value();
}
bool LinearContext::in_comp_r(std::size_t i, std::size_t j, const Vec& v) const {
  return comp_r(i, j).coords(v).has_value();
}
bool LinearContext::in_comp_s(std::size_t i, std::size_t j, const Vec& v) const {
  return comp_s(i, j).coords(v).has_value();
}

Vec LinearContext::sample_a(std::size_t i, std::size_t j, Rng& rng) const {
  return sample_subgroup(comp_a(i, j), rng);
}
Vec LinearContext::sample_r(std::size_t i, std::size_t j, Rng& rng) const {
  return sample_subgroup(comp_r(i, j), rng);
}
Vec LinearContext::sample_s(std::size_t i, std::size_t j, Rng& rng) const {
  return sample_subgroup(comp_s(i, j), rng);
}

Vec LinearContext::d_of(const Vec& v) const {
  Vec a = sd_.a_of(v);
  return sd_.embed_r(cm_.d(a));
}

CtxPtr opposite_context(const CtxPtr& ctx) {
  RingPtr rop = opposite_ring(ctx->R());
  const Algebra& a = ctx->cm().alg;
  CrossedModule op;
  op.alg.ring = rop;
  op.alg.modulus = a.modulus;
  op.alg.dim = a.dim;
  op.alg.orders = a.orders;
  op.alg.scale = a.scale;
  op.alg.name = a.name + "^op";
  op.alg.prod.assign(a.dim, std::vector<Vec>(a.dim));
  for (std::size_t s = 0; s < a.dim; ++s)
    for (std::size_t t = 0; t < a.dim; ++t) op.alg.prod[s][t] = a.prod[t][s];
  op.alg.lact.assign(rop->dim(), std::vector<Vec>(a.dim));
  op.alg.ract.assign(a.dim, std::vector<Vec>(rop->dim()));
  for (std::size_t p = 0; p < rop->dim(); ++p)
    for (std::size_t s = 0; s < a.dim; ++s) {
      op.alg.lact[p][s] = a.ract[s][p];
      op.alg.ract[s][p] = a.lact[p][s];
    }
  op.d_gen = ctx->cm().d_gen;
  IdempotentFamily fam;
  fam.ring = rop;
  fam.idems = ctx->family().idems;
  return LinearContext::make(rop, std::move(op), std::move(fam), ctx->name() + "^op");
}

std::pair<Vec, Vec> LinearContext::sample_diag_unit(Rng& rng) const {
  const FiniteRing& s = S();
  for (int attempt = 0; attempt < 256; ++attempt) {
    Vec r = s.zero();
    for (std::size_t i = 0; i < n(); ++i) r = s.add(r, sample_subgroup(diag_r_[i], rng));
    auto inv = s.inverse(r);
    if (inv) return {r, *inv};
  }
  return {s.one(), s.one()};
}

std::vector<std::pair<Vec, Vec>> LinearContext::fullness_decomposition(std::size_t i,
                                                                       std::size_t j,
                                                                       std::size_t k,
                                                                       const Vec& x) const {
  if (k == i || k == j || i == j) throw Error("fullness_decomposition: k must differ from i, j");
  if (!in_comp_a(i, j, x)) throw Error("fullness_decomposition: element not in e_i A e_j");
  if (S().is_zero(x)) return {};
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = fullness_cache_.find({i, j, k, x});
    if (it != fullness_cache_.end()) return it->second;
  }
  const SubgroupBasis& us = comp_a(i, k);
  const SubgroupBasis& vs = comp_r(k, j);
  const FiniteRing& s = S();
  const std::size_t nu = us.basis.size(), nv = vs.basis.size();
  IMat a(s.dim(), std::vector<i64>(nu * nv, 0));
  for (std::size_t su = 0; su < nu; ++su)
    for (std::size_t sv = 0; sv < nv; ++sv) {
      Vec p = s.mul(us.basis[su], vs.basis[sv]);
      for (std::size_t r = 0; r < s.dim(); ++r)
        a[r][su * nv + sv] = static_cast<i64>(p[r]);
    }
  std::vector<i64> b(s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r) b[r] = static_cast<i64>(x[r]);
  auto c = solve_mod(a, b, s.modulus());
  if (!c)
    throw Error("fullness_decomposition: no solution; e_" + std::to_string(k + 1) +
                " A/R data is inconsistent with fullness");
  std::vector<std::pair<Vec, Vec>> out;
  for (std::size_t su = 0; su < nu; ++su)
    for (std::size_t sv = 0; sv < nv; ++sv) {
      u64 coeff = (*c)[su * nv + sv] % s.modulus();
      if (coeff == 0) continue;
      out.emplace_back(s.scalar_mul(coeff, us.basis[su]), vs.basis[sv]);
    }
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    fullness_cache_.insert({{i, j, k, x}, out});
  }
  return out;
}

}  // namespace relst
