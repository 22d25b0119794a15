#include "relst/algebra.hpp"

namespace relst {

namespace {

// Bilinear extension of a generator-level table. Coefficients are recovered
// from canonical coordinates, so the result is well-defined as long as the
// table respects the generator orders (validated at construction).
Vec bilinear(const std::vector<std::vector<Vec>>& table, u64 m,
             const std::vector<u64>& lscale, const std::vector<u64>& rscale,
             std::size_t out_dim, const Vec& x, const Vec& y) {
  Vec r(out_dim, 0);
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x[s] == 0) continue;
    const u64 cs = x[s] / lscale[s];
    for (std::size_t t = 0; t < y.size(); ++t) {
      if (y[t] == 0) continue;
      const u64 c = (cs * (y[t] / rscale[t])) % m;
      if (c == 0) continue;
      const Vec& cell = table[s][t];
      for (std::size_t u = 0; u < out_dim; ++u)
        if (cell[u] != 0) r[u] = (r[u] + c * cell[u]) % m;
    }
  }
  return r;
}

void check_table(const std::vector<std::vector<Vec>>& table, u64 m,
                 const std::vector<u64>& lorders, const std::vector<u64>& rorders,
                 const std::vector<u64>& out_scale, const char* what) {
  for (std::size_t s = 0; s < table.size(); ++s)
    for (std::size_t t = 0; t < table[s].size(); ++t)
      for (std::size_t u = 0; u < table[s][t].size(); ++u) {
        u64 v = table[s][t][u] % m;
        if (v == 0) continue;
        if (v % out_scale[u] != 0) throw Error(std::string(what) + ": table entry not canonical");
        if ((v * (lorders[s] % m)) % m != 0 || (v * (rorders[t] % m)) % m != 0)
          throw Error(std::string(what) + ": table entry incompatible with generator orders");
      }
}

std::vector<u64> scales_of(u64 m, const std::vector<u64>& orders) {
  std::vector<u64> s(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) s[i] = m / orders[i];
  return s;
}

}  // namespace

Vec Algebra::basis_elt(std::size_t s) const {
  Vec v(dim, 0);
  v[s] = scale[s];
  return v;
}

bool Algebra::canonical(const Vec& a) const {
  if (a.size() != dim) return false;
  for (std::size_t s = 0; s < dim; ++s)
    if (a[s] >= modulus || a[s] % scale[s] != 0) return false;
  return true;
}

bool Algebra::is_zero(const Vec& a) const {
  for (u64 c : a)
    if (c != 0) return false;
  return true;
}

Vec Algebra::add(const Vec& a, const Vec& b) const {
  Vec r(dim);
  for (std::size_t s = 0; s < dim; ++s) r[s] = add_mod(a[s], b[s], modulus);
  return r;
}

Vec Algebra::sub(const Vec& a, const Vec& b) const {
  Vec r(dim);
  for (std::size_t s = 0; s < dim; ++s) r[s] = sub_mod(a[s], b[s], modulus);
  return r;
}

Vec Algebra::neg(const Vec& a) const {
  Vec r(dim);
  for (std::size_t s = 0; s < dim; ++s) r[s] = neg_mod(a[s], modulus);
  return r;
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  return bilinear(prod, modulus, scale, scale, dim, a, b);
}

Vec Algebra::act_left(const Vec& r, const Vec& a) const {
  std::vector<u64> rs(ring->dim());
  for (std::size_t s = 0; s < ring->dim(); ++s) rs[s] = ring->scale(s);
  return bilinear(lact, modulus, rs, scale, dim, r, a);
}

Vec Algebra::act_right(const Vec& a, const Vec& r) const {
  std::vector<u64> rs(ring->dim());
  for (std::size_t s = 0; s < ring->dim(); ++s) rs[s] = ring->scale(s);
  return bilinear(ract, modulus, scale, rs, dim, a, r);
}

std::vector<std::string> Algebra::validate() const {
  std::vector<std::string> bad;
  auto note = [&](const std::string& s) {
    if (bad.size() < 8) bad.push_back(s);
  };
  const std::size_t kr = ring->dim();
  for (std::size_t p = 0; p < kr; ++p) {
    Vec rp = ring->basis_elt(p);
    for (std::size_t s = 0; s < dim; ++s) {
      Vec as = basis_elt(s);
      if (act_left(ring->one(), as) != as) note("1*a != a");
      if (act_right(as, ring->one()) != as) note("a*1 != a");
      for (std::size_t t = 0; t < dim; ++t) {
        Vec at = basis_elt(t);
        if (act_left(rp, mul(as, at)) != mul(act_left(rp, as), at)) note("p(ab) != (pa)b");
        if (act_right(mul(as, at), rp) != mul(as, act_right(at, rp))) note("(ab)p != a(bp)");
        if (mul(act_right(as, rp), at) != mul(as, act_left(rp, at))) note("(ap)b != a(pb)");
        for (std::size_t u = 0; u < dim; ++u) {
          Vec au = basis_elt(u);
          if (mul(mul(as, at), au) != mul(as, mul(at, au))) note("(ab)c != a(bc)");
        }
      }
      for (std::size_t q = 0; q < kr; ++q) {
        Vec rq = ring->basis_elt(q);
        if (act_left(ring->mul(rp, rq), as) != act_left(rp, act_left(rq, as)))
          note("(pq)a != p(qa)");
        if (act_right(as, ring->mul(rp, rq)) != act_right(act_right(as, rp), rq))
          note("a(pq) != (ap)q");
        if (act_right(act_left(rp, as), rq) != act_left(rp, act_right(as, rq)))
          note("(pa)q != p(aq)");
      }
    }
  }
  return bad;
}

Vec CrossedModule::d(const Vec& a) const {
  const Algebra& al = alg;
  Vec r = al.ring->zero();
  for (std::size_t s = 0; s < al.dim; ++s) {
    if (a[s] == 0) continue;
    u64 c = a[s] / al.scale[s];
    r = al.ring->add(r, al.ring->scalar_mul(c, d_gen[s]));
  }
  return r;
}

std::vector<std::string> CrossedModule::validate() const {
  std::vector<std::string> bad = alg.validate();
  auto note = [&](const std::string& s) {
    if (bad.size() < 16) bad.push_back(s);
  };
  const FiniteRing& r = *alg.ring;
  for (std::size_t s = 0; s < alg.dim; ++s) {
    Vec as = alg.basis_elt(s);
    if ((d_gen[s].size() != r.dim()) || !r.canonical(d_gen[s])) {
      note("d image not canonical");
      continue;
    }
    if (r.scalar_mul(alg.orders[s] % alg.modulus, d_gen[s]) != r.zero())
      note("d incompatible with generator order");
    for (std::size_t t = 0; t < alg.dim; ++t) {
      Vec at = alg.basis_elt(t);
      if (d(alg.mul(as, at)) != r.mul(d(as), d(at))) note("d(ab) != d(a)d(b)");
      if (alg.mul(as, at) != alg.act_left(d(as), at)) note("ab != d(a) b");
      if (alg.mul(as, at) != alg.act_right(as, d(at))) note("ab != a d(b)");
    }
    for (std::size_t p = 0; p < r.dim(); ++p) {
      Vec rp = r.basis_elt(p);
      if (d(alg.act_left(rp, as)) != r.mul(rp, d(as))) note("d(pa) != p d(a)");
      if (d(alg.act_right(as, rp)) != r.mul(d(as), rp)) note("d(ap) != d(a) p");
    }
  }
  return bad;
}

namespace {

// Assemble an Algebra from a concrete realization inside an ambient
// coordinate space: a direct-sum carrier basis plus bilinear maps given as
// lambdas on ambient vectors.
template <typename Prod, typename Lact, typename Ract, typename Dmap>
CrossedModule realize(const RingPtr& ring, const SubgroupBasis& carrier, Prod&& pr,
                      Lact&& la, Ract&& ra, Dmap&& dm, const std::string& name) {
  CrossedModule cm;
  Algebra& a = cm.alg;
  a.ring = ring;
  a.modulus = ring->modulus();
  a.dim = carrier.basis.size();
  a.orders = carrier.orders;
  a.scale = scales_of(a.modulus, a.orders);
  a.name = name;

  auto coords_of = [&](const Vec& ambient, const char* what) {
    auto c = carrier.coords(ambient);
    if (!c) throw Error(std::string(what) + ": carrier is not closed");
    Vec out(a.dim);
    for (std::size_t s = 0; s < a.dim; ++s) out[s] = mul_mod((*c)[s], a.scale[s], a.modulus);
    return out;
  };

  a.prod.assign(a.dim, std::vector<Vec>(a.dim));
  for (std::size_t s = 0; s < a.dim; ++s)
    for (std::size_t t = 0; t < a.dim; ++t)
      a.prod[s][t] = coords_of(pr(carrier.basis[s], carrier.basis[t]), "algebra product");
  const std::size_t kr = ring->dim();
  a.lact.assign(kr, std::vector<Vec>(a.dim));
  a.ract.assign(a.dim, std::vector<Vec>(kr));
  for (std::size_t p = 0; p < kr; ++p)
    for (std::size_t s = 0; s < a.dim; ++s) {
      a.lact[p][s] = coords_of(la(ring->basis_elt(p), carrier.basis[s]), "left action");
      a.ract[s][p] = coords_of(ra(carrier.basis[s], ring->basis_elt(p)), "right action");
    }
  check_table(a.prod, a.modulus, a.orders, a.orders, a.scale, "algebra product");
  check_table(a.lact, a.modulus, ring->orders(), a.orders, a.scale, "left action");
  check_table(a.ract, a.modulus, a.orders, ring->orders(), a.scale, "right action");

  for (std::size_t s = 0; s < a.dim; ++s) cm.d_gen.push_back(dm(carrier.basis[s]));

  auto bad = cm.validate();
  if (!bad.empty()) throw Error(name + ": " + bad.front());
  return cm;
}

}  // namespace

CrossedModule zero_crossed_module(const RingPtr& ring) {
  CrossedModule cm;
  cm.alg.ring = ring;
  cm.alg.modulus = ring->modulus();
  cm.alg.dim = 0;
  cm.alg.name = "0";
  return cm;
}

CrossedModule identity_crossed_module(const RingPtr& ring) {
  std::vector<Vec> gens;
  for (std::size_t s = 0; s < ring->dim(); ++s) gens.push_back(ring->basis_elt(s));
  SubgroupBasis carrier = subgroup_basis(gens, ring->modulus(), ring->dim());
  auto mulr = [&ring](const Vec& x, const Vec& y) { return ring->mul(x, y); };
  return realize(ring, carrier, mulr, mulr, mulr, [](const Vec& x) { return x; },
                 ring->name() + " as ideal");
}

CrossedModule ideal_crossed_module(const RingPtr& ring, const std::vector<Vec>& gens) {
  ModSpan span(ring->modulus(), ring->dim());
  for (const Vec& g : gens) {
    if (!ring->canonical(g)) throw Error("ideal_crossed_module: generator not canonical");
    span.insert(g);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> rows = span.rows();
    for (const Vec& row : rows)
      for (std::size_t s = 0; s < ring->dim(); ++s) {
        Vec g = ring->basis_elt(s);
        for (Vec p : {ring->mul(g, row), ring->mul(row, g)})
          if (!span.contains(p)) {
            span.insert(p);
            grew = true;
          }
      }
  }
  SubgroupBasis carrier = subgroup_basis(span.rows(), ring->modulus(), ring->dim());
  auto mulr = [&ring](const Vec& x, const Vec& y) { return ring->mul(x, y); };
  return realize(ring, carrier, mulr, mulr, mulr, [](const Vec& x) { return x; },
                 "ideal in " + ring->name());
}

CrossedModule homotope_crossed_module(const RingPtr& ring, const Vec& s) {
  if (!ring->canonical(s)) throw Error("homotope: element not canonical");
  for (std::size_t t = 0; t < ring->dim(); ++t) {
    Vec g = ring->basis_elt(t);
    if (ring->mul(s, g) != ring->mul(g, s)) throw Error("homotope: s is not central");
  }
  std::vector<Vec> gens;
  for (std::size_t t = 0; t < ring->dim(); ++t) gens.push_back(ring->basis_elt(t));
  SubgroupBasis carrier = subgroup_basis(gens, ring->modulus(), ring->dim());
  return realize(
      ring, carrier,
      [&ring, &s](const Vec& x, const Vec& y) { return ring->mul(x, ring->mul(s, y)); },
      [&ring](const Vec& p, const Vec& x) { return ring->mul(p, x); },
      [&ring](const Vec& x, const Vec& p) { return ring->mul(x, p); },
      [&ring, &s](const Vec& x) { return ring->mul(x, s); }, ring->name() + "^(s)");
}

CrossedModule matrix_crossed_module(std::size_t n, const CrossedModule& scalar,
                                    const RingPtr& mat) {
  const Algebra& sa = scalar.alg;
  const RingPtr& base = sa.ring;
  const u64 m = sa.modulus;
  const std::size_t ka = sa.dim;
  const std::size_t kb = base->dim();
  if (mat->dim() != n * n * kb) throw Error("matrix_crossed_module: ring layout mismatch");

  CrossedModule cm;
  Algebra& a = cm.alg;
  a.ring = mat;
  a.modulus = m;
  a.dim = n * n * ka;
  a.name = "Mat(" + std::to_string(n) + "," + sa.name + ")";
  a.orders.resize(a.dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < ka; ++s) a.orders[(i * n + j) * ka + s] = sa.orders[s];
  a.scale = scales_of(m, a.orders);

  auto scatter_a = [&](std::size_t i, std::size_t l, const Vec& v) {
    Vec out(a.dim, 0);
    for (std::size_t u = 0; u < ka; ++u) out[(i * n + l) * ka + u] = v[u];
    return out;
  };

  a.prod.assign(a.dim, std::vector<Vec>(a.dim, Vec(a.dim, 0)));
  a.lact.assign(mat->dim(), std::vector<Vec>(a.dim, Vec(a.dim, 0)));
  a.ract.assign(a.dim, std::vector<Vec>(mat->dim(), Vec(a.dim, 0)));
  cm.d_gen.assign(a.dim, mat->zero());

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < ka; ++s) {
        const std::size_t aidx = (i * n + j) * ka + s;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            if (j != k) continue;
            for (std::size_t t = 0; t < ka; ++t)
              a.prod[aidx][(k * n + l) * ka + t] =
                  scatter_a(i, l, sa.mul(sa.basis_elt(s), sa.basis_elt(t)));
            for (std::size_t t = 0; t < kb; ++t)
              a.ract[aidx][(k * n + l) * kb + t] =
                  scatter_a(i, l, sa.act_right(sa.basis_elt(s), base->basis_elt(t)));
          }
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            if (l != i) continue;
            for (std::size_t t = 0; t < kb; ++t)
              a.lact[(k * n + l) * kb + t][aidx] =
                  scatter_a(k, j, sa.act_left(base->basis_elt(t), sa.basis_elt(s)));
          }
        Vec ds = scalar.d(sa.basis_elt(s));
        Vec dm = mat->zero();
        for (std::size_t u = 0; u < kb; ++u) dm[(i * n + j) * kb + u] = ds[u];
        cm.d_gen[aidx] = dm;
      }

  check_table(a.prod, m, a.orders, a.orders, a.scale, "algebra product");
  check_table(a.lact, m, mat->orders(), a.orders, a.scale, "left action");
  check_table(a.ract, m, a.orders, mat->orders(), a.scale, "right action");
  auto bad = cm.validate();
  if (!bad.empty()) throw Error(a.name + ": " + bad.front());
  return cm;
}

SemidirectRing semidirect(const CrossedModule& cm) {
  const Algebra& a = cm.alg;
  const RingPtr& r = a.ring;
  const std::size_t ka = a.dim, kr = r->dim();
  const std::size_t dim = ka + kr;
  const u64 m = r->modulus();

  std::vector<u64> orders(dim);
  for (std::size_t s = 0; s < ka; ++s) orders[s] = a.orders[s];
  for (std::size_t s = 0; s < kr; ++s) orders[ka + s] = r->orders()[s];

  auto a_out = [&](const Vec& v) {
    Vec out(dim, 0);
    for (std::size_t u = 0; u < ka; ++u) out[u] = v[u];
    return out;
  };
  auto r_out = [&](const Vec& v) {
    Vec out(dim, 0);
    for (std::size_t u = 0; u < kr; ++u) out[ka + u] = v[u];
    return out;
  };

  std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim));
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t t = 0; t < dim; ++t) {
      if (s < ka && t < ka)
        table[s][t] = a_out(a.prod[s][t]);
      else if (s < ka)
        table[s][t] = a_out(a.ract[s][t - ka]);
      else if (t < ka)
        table[s][t] = a_out(a.lact[s - ka][t]);
      else
        table[s][t] = r_out(r->mul(r->basis_elt(s - ka), r->basis_elt(t - ka)));
    }

  SemidirectRing sd;
  sd.dim_a = ka;
  sd.dim_r = kr;
  sd.base = r;
  sd.ring = std::make_shared<FiniteRing>(m, orders, table, r_out(r->one()),
                                         a.name + " x| " + r->name());
  return sd;
}

Vec SemidirectRing::embed_a(const Vec& a) const {
  Vec out(dim_a + dim_r, 0);
  for (std::size_t u = 0; u < dim_a; ++u) out[u] = a[u];
  return out;
}

Vec SemidirectRing::embed_r(const Vec& r) const {
  Vec out(dim_a + dim_r, 0);
  for (std::size_t u = 0; u < dim_r; ++u) out[dim_a + u] = r[u];
  return out;
}

Vec SemidirectRing::a_of(const Vec& s) const { return Vec(s.begin(), s.begin() + dim_a); }
Vec SemidirectRing::r_of(const Vec& s) const { return Vec(s.begin() + dim_a, s.end()); }

bool SemidirectRing::pure_a(const Vec& s) const {
  for (std::size_t u = 0; u < dim_r; ++u)
    if (s[dim_a + u] != 0) return false;
  return true;
}

bool SemidirectRing::pure_r(const Vec& s) const {
  for (std::size_t u = 0; u < dim_a; ++u)
    if (s[u] != 0) return false;
  return true;
}

std::optional<Vec> quasi_inverse(const SemidirectRing& s, const CrossedModule& cm,
                                 const Vec& a) {
  if (!cm.alg.canonical(a)) throw Error("quasi_inverse: element not canonical");
  Vec u = s.ring->add(s.ring->one(), s.embed_a(a));
  auto inv = s.ring->inverse(u);
  if (!inv) return std::nullopt;
  Vec w = s.ring->sub(*inv, s.ring->one());
  if (!s.pure_a(w)) return std::nullopt;
  return s.a_of(w);
}

}  // namespace relst
