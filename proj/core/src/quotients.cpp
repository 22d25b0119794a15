#include "relst/quotients.hpp"

#include <algorithm>
#include <numeric>

namespace relst {

namespace {

i64 cmul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("overflow in exact integer arithmetic");
  return r;
}

i64 cadd(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("overflow in exact integer arithmetic");
  return r;
}

bool remultiply_matches(const SmithResult& s, const IMat& m) {
  // U * M * V == diag
  const std::size_t rows = s.rows, cols = s.cols;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      i64 acc = 0;
      for (std::size_t a = 0; a < rows; ++a) {
        if (s.u[i][a] == 0) continue;
        i64 part = 0;
        for (std::size_t b = 0; b < cols; ++b)
          if (m[a][b] != 0) part = cadd(part, cmul(m[a][b], s.v[b][j]));
        acc = cadd(acc, cmul(s.u[i][a], part));
      }
      i64 want = (i == j && i < s.diag.size()) ? s.diag[i] : 0;
      if (acc != want) return false;
    }
  return true;
}

SNFResult summarize(const SmithResult& s, const IMat& m) {
  SNFResult out;
  std::size_t nonzero = 0;
  for (i64 d : s.diag)
    if (d != 0) {
      ++nonzero;
      if (d != 1) out.invariant_factors.push_back(d);
    }
  out.free_rank = s.cols - nonzero;
  out.certified = remultiply_matches(s, m);
  if (!out.certified) throw Error("smith_normal_form: transform certification failed");
  return out;
}

}  // namespace

SNFResult smith_normal_form_certified(const IMat& m) {
  SmithResult s = smith_normal_form(m);
  return summarize(s, m);
}

// ---------------------------------------------------------------------------
// FT presentations

namespace {

std::vector<i64> coords_throw(const SubgroupBasis& sub, const Vec& v, const char* what) {
  auto c = sub.coords(v);
  if (!c) throw Error(std::string(what) + ": element outside its component");
  std::vector<i64> out(c->size());
  for (std::size_t t = 0; t < c->size(); ++t) out[t] = static_cast<i64>((*c)[t]);
  return out;
}

void permute_presentation(AbelianPresentation& p, u64 perm_seed) {
  if (perm_seed == 0) return;
  Rng rng(perm_seed);
  std::vector<std::size_t> perm(p.gens.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<FtGen> gens(p.gens.size());
  for (std::size_t i = 0; i < perm.size(); ++i) gens[perm[i]] = p.gens[i];
  for (auto& row : p.rows) {
    std::vector<i64> nr(row.size());
    for (std::size_t i = 0; i < perm.size(); ++i) nr[perm[i]] = row[i];
    row = std::move(nr);
  }
  p.gens = std::move(gens);
  for (std::size_t i = p.rows.size(); i > 1; --i) std::swap(p.rows[i - 1], p.rows[rng.below(i)]);
}

}  // namespace

void FtGroup::finish(u64 perm_seed) {
  permute_presentation(pres_, perm_seed);
  gen_index_.clear();
  gen_index_chev_.clear();
  for (std::size_t g = 0; g < pres_.gens.size(); ++g) {
    const FtGen& gen = pres_.gens[g];
    if (gen.root >= 0)
      gen_index_chev_[{gen.root, {gen.s, gen.t}}] = g;
    else
      gen_index_[{gen.i, gen.j, gen.s, gen.t}] = g;
  }
  smith_ = smith_normal_form(pres_.rows);
  snf_ = summarize(smith_, pres_.rows);
}

FtGroup FtGroup::linear(const CtxPtr& ctx, std::size_t cap, u64 perm_seed) {
  FtGroup ft;
  ft.ctx_ = ctx;
  const LinearContext& c = *ctx;
  const FiniteRing& s = c.S();
  const std::size_t n = c.n();

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const SubgroupBasis& ab = c.comp_a(i, j);
      const SubgroupBasis& rb = c.comp_r(j, i);
      for (std::size_t sA = 0; sA < ab.basis.size(); ++sA)
        for (std::size_t tR = 0; tR < rb.basis.size(); ++tR)
          ft.pres_.gens.push_back({i, j, -1, sA, tR});
    }
  if (ft.pres_.gens.size() > cap)
    throw ConfigError("ft_presentation: generator cap exceeded (" +
                      std::to_string(ft.pres_.gens.size()) + " > " + std::to_string(cap) + ")");

  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> pos;
  for (std::size_t g = 0; g < ft.pres_.gens.size(); ++g) {
    const FtGen& gen = ft.pres_.gens[g];
    pos[{gen.i, gen.j, gen.s, gen.t}] = g;
  }
  const std::size_t ng = ft.pres_.gens.size();
  auto row0 = [&] { return std::vector<i64>(ng, 0); };

  // torsion of the tensor pieces
  for (std::size_t g = 0; g < ng; ++g) {
    const FtGen& gen = ft.pres_.gens[g];
    u64 oa = c.comp_a(gen.i, gen.j).orders[gen.s];
    u64 orr = c.comp_r(gen.j, gen.i).orders[gen.t];
    auto row = row0();
    row[g] = static_cast<i64>(std::gcd(oa, orr));
    ft.pres_.rows.push_back(std::move(row));
  }

  // products vanish: z(ab, p) = 0 for a in e_i A, b in A e_j
  const std::size_t ka = c.sd().dim_a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const SubgroupBasis& ab = c.comp_a(i, j);
      const SubgroupBasis& rb = c.comp_r(j, i);
      if (ab.basis.empty() || rb.basis.empty()) continue;
      for (std::size_t u = 0; u < ka; ++u) {
        Vec left = s.mul(c.idem(i), s.basis_elt(u));
        if (s.is_zero(left)) continue;
        for (std::size_t v = 0; v < ka; ++v) {
          Vec right = s.mul(s.basis_elt(v), c.idem(j));
          if (s.is_zero(right)) continue;
          Vec prod = s.mul(left, right);
          if (s.is_zero(prod)) continue;
          auto cs = coords_throw(ab, prod, "FT3");
          for (std::size_t tR = 0; tR < rb.basis.size(); ++tR) {
            auto row = row0();
            for (std::size_t sA = 0; sA < cs.size(); ++sA)
              if (cs[sA] != 0) row[pos.at({i, j, sA, tR})] = cs[sA];
            ft.pres_.rows.push_back(std::move(row));
          }
        }
      }

      // parameters in the image of d vanish: z(a, d(b)) = 0
      const SubgroupBasis& ba = c.comp_a(j, i);
      for (const Vec& b : ba.basis) {
        Vec db = c.d_of(b);
        if (s.is_zero(db)) continue;
        auto ct = coords_throw(rb, db, "FT4");
        for (std::size_t sA = 0; sA < ab.basis.size(); ++sA) {
          auto row = row0();
          for (std::size_t tR = 0; tR < ct.size(); ++tR)
            if (ct[tR] != 0) row[pos.at({i, j, sA, tR})] = ct[tR];
          ft.pres_.rows.push_back(std::move(row));
        }
      }
    }

  // parameter splitting: z_ij(a, pq) = z_ik(ap, q) + z_kj(qa, p)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        const SubgroupBasis& ab = c.comp_a(i, j);
        const SubgroupBasis& pjk = c.comp_r(j, k);
        const SubgroupBasis& qki = c.comp_r(k, i);
        for (std::size_t sA = 0; sA < ab.basis.size(); ++sA)
          for (std::size_t u = 0; u < pjk.basis.size(); ++u)
            for (std::size_t v = 0; v < qki.basis.size(); ++v) {
              const Vec& a = ab.basis[sA];
              const Vec& p = pjk.basis[u];
              const Vec& q = qki.basis[v];
              auto row = row0();
              Vec pq = s.mul(p, q);
              if (!s.is_zero(pq)) {
                auto ct = coords_throw(c.comp_r(j, i), pq, "FT5");
                for (std::size_t tR = 0; tR < ct.size(); ++tR)
                  if (ct[tR] != 0)
                    row[pos.at({i, j, sA, tR})] = cadd(row[pos.at({i, j, sA, tR})], ct[tR]);
              }
              Vec apv = s.mul(a, p);
              if (!s.is_zero(apv)) {
                auto cs = coords_throw(c.comp_a(i, k), apv, "FT5");
                for (std::size_t sB = 0; sB < cs.size(); ++sB)
                  if (cs[sB] != 0)
                    row[pos.at({i, k, sB, v})] = cadd(row[pos.at({i, k, sB, v})], -cs[sB]);
              }
              Vec qav = s.mul(q, a);
              if (!s.is_zero(qav)) {
                auto cs = coords_throw(c.comp_a(k, j), qav, "FT5");
                for (std::size_t sB = 0; sB < cs.size(); ++sB)
                  if (cs[sB] != 0)
                    row[pos.at({k, j, sB, u})] = cadd(row[pos.at({k, j, sB, u})], -cs[sB]);
              }
              bool nonzero = false;
              for (i64 x : row)
                if (x != 0) nonzero = true;
              if (nonzero) ft.pres_.rows.push_back(std::move(row));
            }
      }

  ft.finish(perm_seed);
  return ft;
}

FtGroup FtGroup::chevalley(const ChevPtr& cctx, std::size_t cap, u64 perm_seed) {
  FtGroup ft;
  ft.cctx_ = cctx;
  const ChevContext& c = *cctx;
  const RootDatum& d = c.phi();
  const Algebra& sa = c.scalar().alg;
  const RingPtr& kr = sa.ring;
  const std::size_t cnt = d.count();

  for (std::size_t r = 0; r < cnt; ++r)
    for (std::size_t sA = 0; sA < sa.dim; ++sA)
      for (std::size_t tR = 0; tR < kr->dim(); ++tR)
        ft.pres_.gens.push_back({0, 0, static_cast<int>(r), sA, tR});
  if (ft.pres_.gens.size() > cap)
    throw ConfigError("ft_presentation: generator cap exceeded (" +
                      std::to_string(ft.pres_.gens.size()) + " > " + std::to_string(cap) + ")");

  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> pos;
  for (std::size_t g = 0; g < ft.pres_.gens.size(); ++g) {
    const FtGen& gen = ft.pres_.gens[g];
    pos[{gen.root, gen.s, gen.t}] = g;
  }
  const std::size_t ng = ft.pres_.gens.size();
  auto row0 = [&] { return std::vector<i64>(ng, 0); };

  auto a_coords = [&](const Vec& a) {
    std::vector<i64> out(sa.dim);
    for (std::size_t u = 0; u < sa.dim; ++u) out[u] = static_cast<i64>(a[u] / sa.scale[u]);
    return out;
  };
  auto k_coords = [&](const Vec& p) {
    std::vector<i64> out(kr->dim());
    for (std::size_t u = 0; u < kr->dim(); ++u) out[u] = static_cast<i64>(p[u] / kr->scale(u));
    return out;
  };

  for (std::size_t g = 0; g < ng; ++g) {
    const FtGen& gen = ft.pres_.gens[g];
    auto row = row0();
    row[g] = static_cast<i64>(std::gcd(sa.orders[gen.s], kr->orders()[gen.t]));
    ft.pres_.rows.push_back(std::move(row));
  }

  for (std::size_t r = 0; r < cnt; ++r) {
    // FT3: products of coefficients vanish
    for (std::size_t u = 0; u < sa.dim; ++u)
      for (std::size_t v = 0; v < sa.dim; ++v) {
        Vec prod = sa.mul(sa.basis_elt(u), sa.basis_elt(v));
        if (sa.is_zero(prod)) continue;
        auto cs = a_coords(prod);
        for (std::size_t tR = 0; tR < kr->dim(); ++tR) {
          auto row = row0();
          for (std::size_t sA = 0; sA < sa.dim; ++sA)
            if (cs[sA] != 0) row[pos.at({static_cast<int>(r), sA, tR})] = cs[sA];
          ft.pres_.rows.push_back(std::move(row));
        }
      }
    // FT4: d-image parameters vanish
    for (std::size_t b = 0; b < sa.dim; ++b) {
      Vec db = c.scalar().d(sa.basis_elt(b));
      if (kr->is_zero(db)) continue;
      auto ct = k_coords(db);
      for (std::size_t sA = 0; sA < sa.dim; ++sA) {
        auto row = row0();
        for (std::size_t tR = 0; tR < kr->dim(); ++tR)
          if (ct[tR] != 0) row[pos.at({static_cast<int>(r), sA, tR})] = ct[tR];
        ft.pres_.rows.push_back(std::move(row));
      }
    }
  }

  // FT5: z_{a+b}(x, pq) = z_a(xp, q) + z_b(qx, p); the structure constants drop out
  for (std::size_t ra = 0; ra < cnt; ++ra)
    for (std::size_t rb = 0; rb < cnt; ++rb) {
      auto sum = d.sum(static_cast<int>(ra), static_cast<int>(rb));
      if (!sum) continue;
      for (std::size_t sA = 0; sA < sa.dim; ++sA)
        for (std::size_t u = 0; u < kr->dim(); ++u)
          for (std::size_t v = 0; v < kr->dim(); ++v) {
            Vec a = sa.basis_elt(sA);
            Vec p = kr->basis_elt(u);
            Vec q = kr->basis_elt(v);
            auto row = row0();
            Vec pq = kr->mul(p, q);
            if (!kr->is_zero(pq)) {
              auto ct = k_coords(pq);
              for (std::size_t tR = 0; tR < kr->dim(); ++tR)
                if (ct[tR] != 0) row[pos.at({*sum, sA, tR})] = cadd(row[pos.at({*sum, sA, tR})], ct[tR]);
            }
            Vec ap = sa.act_right(a, p);
            if (!sa.is_zero(ap)) {
              auto cs = a_coords(ap);
              for (std::size_t sB = 0; sB < sa.dim; ++sB)
                if (cs[sB] != 0)
                  row[pos.at({static_cast<int>(ra), sB, v})] =
                      cadd(row[pos.at({static_cast<int>(ra), sB, v})], -cs[sB]);
            }
            Vec qa = sa.act_left(q, a);
            if (!sa.is_zero(qa)) {
              auto cs = a_coords(qa);
              for (std::size_t sB = 0; sB < sa.dim; ++sB)
                if (cs[sB] != 0)
                  row[pos.at({static_cast<int>(rb), sB, u})] =
                      cadd(row[pos.at({static_cast<int>(rb), sB, u})], -cs[sB]);
            }
            bool nonzero = false;
            for (i64 x : row)
              if (x != 0) nonzero = true;
            if (nonzero) ft.pres_.rows.push_back(std::move(row));
          }
    }

  ft.finish(perm_seed);
  return ft;
}

std::vector<i64> FtGroup::symbol_class(const GenSymbol& s) const {
  std::vector<i64> cls(pres_.gens.size(), 0);
  if (s.kind == SymKind::LinZ) {
    if (!ctx_) throw Error("FtGroup: linear symbol in a chevalley-scope group");
    const LinearContext& c = *ctx_;
    if (!c.sd().pure_r(s.param))
      throw Error("FtGroup: parameters of the relative presentation lie in R");
    auto ca = coords_throw(c.comp_a(s.i, s.j), s.payload, "symbol_class");
    auto cp = coords_throw(c.comp_r(s.j, s.i), s.param, "symbol_class");
    for (std::size_t sA = 0; sA < ca.size(); ++sA)
      for (std::size_t tR = 0; tR < cp.size(); ++tR) {
        if (ca[sA] == 0 || cp[tR] == 0) continue;
        cls[gen_index_.at({s.i, s.j, sA, tR})] = cadd(
            cls[gen_index_.at({s.i, s.j, sA, tR})], cmul(ca[sA], cp[tR]));
      }
    return cls;
  }
  if (s.kind == SymKind::ChevZ) {
    if (!cctx_) throw Error("FtGroup: chevalley symbol in a linear-scope group");
    const ChevContext& c = *cctx_;
    const Algebra& sa = c.scalar().alg;
    const RingPtr& kr = sa.ring;
    if (!c.ssc().pure_r(s.param))
      throw Error("FtGroup: parameters of the relative presentation lie in K");
    Vec a = c.ssc().a_of(s.payload);
    Vec p = c.ssc().r_of(s.param);
    for (std::size_t sA = 0; sA < sa.dim; ++sA)
      for (std::size_t tR = 0; tR < kr->dim(); ++tR) {
        i64 ca = static_cast<i64>(a[sA] / sa.scale[sA]);
        i64 cp = static_cast<i64>(p[tR] / kr->scale(tR));
        if (ca == 0 || cp == 0) continue;
        auto key = std::make_pair(s.root, std::make_pair(sA, tR));
        cls[gen_index_chev_.at(key)] = cadd(cls[gen_index_chev_.at(key)], cmul(ca, cp));
      }
    return cls;
  }
  if (s.kind == SymKind::LinX)
    throw Error("FtGroup: st(R) conjugators do not map to the transvection quotient");
  throw Error("FtGroup: unsupported symbol kind");
}

std::vector<i64> FtGroup::word_class(const Word& w) const {
  std::vector<i64> cls(pres_.gens.size(), 0);
  for (const auto& t : w.terms()) {
    auto sc = symbol_class(t.sym);
    for (std::size_t g = 0; g < cls.size(); ++g)
      cls[g] = cadd(cls[g], t.exp == 1 ? sc[g] : -sc[g]);
  }
  return cls;
}

bool FtGroup::vanishes(const std::vector<i64>& cls) const {
  // membership in the integer row span via x*V divisibility against the diagonal
  const std::size_t cols = smith_.cols;
  if (cls.size() != cols) throw Error("FtGroup::vanishes: size mismatch");
  for (std::size_t jcol = 0; jcol < cols; ++jcol) {
    i64 acc = 0;
    for (std::size_t t = 0; t < cols; ++t)
      if (cls[t] != 0) acc = cadd(acc, cmul(cls[t], smith_.v[t][jcol]));
    i64 dj = jcol < smith_.diag.size() ? smith_.diag[jcol] : 0;
    if (dj == 0) {
      if (acc != 0) return false;
    } else if (acc % dj != 0) {
      return false;
    }
  }
  return true;
}

QuotientMapVerdict verify_quotient_map(const CtxPtr& ctx, const std::vector<RelationId>& ids,
                                       std::size_t samples, u64 seed) {
  FtGroup ft = FtGroup::linear(ctx);
  QuotientMapVerdict v;
  v.pass = true;
  for (RelationId id : ids)
    for (std::size_t t = 0; t < samples; ++t) {
      Rng rng(derive_seed(seed, std::string("ftmap-") + relation_name(id), t));
      RelationInstance inst = sample_instance(*ctx, id, rng, false);
      auto lhs = ft.word_class(inst.lhs);
      auto rhs = ft.word_class(inst.rhs);
      for (std::size_t g = 0; g < lhs.size(); ++g) lhs[g] = cadd(lhs[g], -rhs[g]);
      ++v.checked;
      if (!ft.vanishes(lhs)) {
        v.pass = false;
        if (v.failures.size() < 8)
          v.failures.push_back(std::string(relation_name(id)) + " instance " +
                               std::to_string(t) + " does not vanish");
      }
    }
  return v;
}

QuotientMapVerdict verify_quotient_map_chev(const ChevPtr& cctx,
                                            const std::vector<RelationId>& ids,
                                            std::size_t samples, u64 seed) {
  FtGroup ft = FtGroup::chevalley(cctx);
  QuotientMapVerdict v;
  v.pass = true;
  for (RelationId id : ids)
    for (std::size_t t = 0; t < samples; ++t) {
      Rng rng(derive_seed(seed, std::string("ftmapc-") + relation_name(id), t));
      RelationInstance inst = sample_chevalley_instance(*cctx, id, rng);
      auto lhs = ft.word_class(inst.lhs);
      auto rhs = ft.word_class(inst.rhs);
      for (std::size_t g = 0; g < lhs.size(); ++g) lhs[g] = cadd(lhs[g], -rhs[g]);
      ++v.checked;
      if (!ft.vanishes(lhs)) {
        v.pass = false;
        if (v.failures.size() < 8)
          v.failures.push_back(std::string(relation_name(id)) + " instance " +
                               std::to_string(t) + " does not vanish");
      }
    }
  return v;
}

}  // namespace relst
