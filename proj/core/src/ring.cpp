#include "relst/ring.hpp"

#include <algorithm>

namespace relst {

FiniteRing::FiniteRing(u64 modulus, std::vector<u64> orders,
                       const std::vector<std::vector<Vec>>& table, Vec unit,
                       std::string name)
    : m_(modulus), dim_(orders.size()), orders_(std::move(orders)), name_(std::move(name)) {
  if (m_ < 2) throw Error("FiniteRing: modulus must be >= 2");
  if (m_ >= (1ull << 31)) throw Error("FiniteRing: modulus too large");
  scale_.resize(dim_);
  for (std::size_t s = 0; s < dim_; ++s) {
    if (orders_[s] < 2 || m_ % orders_[s] != 0)
      throw Error("FiniteRing: generator order must divide the modulus");
    scale_[s] = m_ / orders_[s];
  }
  if (table.size() != dim_) throw Error("FiniteRing: table shape");
  off_.assign(dim_ * dim_ + 1, 0);
  for (std::size_t s = 0; s < dim_; ++s) {
    if (table[s].size() != dim_) throw Error("FiniteRing: table shape");
    for (std::size_t t = 0; t < dim_; ++t) {
      const Vec& p = table[s][t];
      if (p.size() != dim_) throw Error("FiniteRing: table entry shape");
      for (std::size_t u = 0; u < dim_; ++u) {
        u64 v = p[u] % m_;
        if (v == 0) continue;
        if (v % scale_[u] != 0) throw Error("FiniteRing: table entry not canonical");
        // products must be killed by the factors' orders
        if ((v * (orders_[s] % m_)) % m_ != 0 || (v * (orders_[t] % m_)) % m_ != 0)
          throw Error("FiniteRing: table entry incompatible with generator orders");
        idx_.push_back(static_cast<u32>(u));
        val_.push_back(v);
      }
      off_[s * dim_ + t + 1] = static_cast<u32>(idx_.size());
    }
  }
  if (unit.size() != dim_) throw Error("FiniteRing: unit shape");
  one_ = std::move(unit);
  for (auto& x : one_) x %= m_;
  if (!canonical(one_)) throw Error("FiniteRing: unit not canonical");

  u64 h = fnv1a_init();
  h = fnv1a_str(h, name_);
  h = fnv1a(h, m_);
  h = fnv1a(h, dim_);
  for (u64 o : orders_) h = fnv1a(h, o);
  h = fnv1a_vec(h, one_);
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    h = fnv1a(h, idx_[k]);
    h = fnv1a(h, val_[k]);
  }
  fp_ = h;
}

bool FiniteRing::canonical(const Vec& x) const {
  if (x.size() != dim_) return false;
  for (std::size_t s = 0; s < dim_; ++s)
    if (x[s] >= m_ || x[s] % scale_[s] != 0) return false;
  return true;
}

Vec FiniteRing::basis_elt(std::size_t s) const {
  Vec v(dim_, 0);
  v[s] = scale_[s];
  return v;
}

bool FiniteRing::is_zero(const Vec& x) const {
  for (u64 c : x)
    if (c != 0) return false;
  return true;
}

Vec FiniteRing::add(const Vec& x, const Vec& y) const {
  Vec r(dim_);
  for (std::size_t s = 0; s < dim_; ++s) r[s] = add_mod(x[s], y[s], m_);
  return r;
}

Vec FiniteRing::sub(const Vec& x, const Vec& y) const {
  Vec r(dim_);
  for (std::size_t s = 0; s < dim_; ++s) r[s] = sub_mod(x[s], y[s], m_);
  return r;
}

Vec FiniteRing::neg(const Vec& x) const {
  Vec r(dim_);
  for (std::size_t s = 0; s < dim_; ++s) r[s] = neg_mod(x[s], m_);
  return r;
}

Vec FiniteRing::scalar_mul(u64 k, const Vec& x) const {
  Vec r(dim_);
  k %= m_;
  for (std::size_t s = 0; s < dim_; ++s) r[s] = mul_mod(k, x[s], m_);
  return r;
}

Vec FiniteRing::mul(const Vec& x, const Vec& y) const {
  Vec r(dim_, 0);
  for (std::size_t s = 0; s < dim_; ++s) {
    if (x[s] == 0) continue;
    const u64 cs = x[s] / scale_[s];
    const std::size_t base = s * dim_;
    for (std::size_t t = 0; t < dim_; ++t) {
      if (y[t] == 0) continue;
      const u64 c = (cs * (y[t] / scale_[t])) % m_;
      if (c == 0) continue;
      for (u32 k = off_[base + t]; k < off_[base + t + 1]; ++k)
        r[idx_[k]] = (r[idx_[k]] + c * val_[k]) % m_;
    }
  }
  return r;
}

Vec FiniteRing::mul(const Vec& x, const Vec& y, const Vec& z) const {
  return mul(mul(x, y), z);
}

std::optional<Vec> FiniteRing::inverse(const Vec& x) const {
  if (!canonical(x)) throw Error("FiniteRing::inverse: element not canonical");
  IMat a(dim_, std::vector<i64>(dim_, 0));
  for (std::size_t t = 0; t < dim_; ++t) {
    Vec col = mul(x, basis_elt(t));
    for (std::size_t r = 0; r < dim_; ++r) a[r][t] = static_cast<i64>(col[r]);
  }
  std::vector<i64> b(dim_);
  for (std::size_t r = 0; r < dim_; ++r) b[r] = static_cast<i64>(one_[r]);
  auto c = solve_mod(a, b, m_);
  if (!c) return std::nullopt;
  Vec y(dim_, 0);
  for (std::size_t t = 0; t < dim_; ++t)
    y[t] = mul_mod((*c)[t] % orders_[t], scale_[t], m_);
  if (mul(x, y) != one_ || mul(y, x) != one_) return std::nullopt;
  return y;
}

std::vector<std::string> FiniteRing::validate() const {
  std::vector<std::string> bad;
  for (std::size_t s = 0; s < dim_ && bad.size() < 8; ++s) {
    Vec gs = basis_elt(s);
    if (mul(one_, gs) != gs || mul(gs, one_) != gs)
      bad.push_back("unit law fails at generator " + std::to_string(s));
    for (std::size_t t = 0; t < dim_; ++t) {
      Vec gt = basis_elt(t);
      Vec st = mul(gs, gt);
      for (std::size_t u = 0; u < dim_; ++u) {
        Vec gu = basis_elt(u);
        if (mul(st, gu) != mul(gs, mul(gt, gu))) {
          bad.push_back("associativity fails at generators (" + std::to_string(s) + "," +
                        std::to_string(t) + "," + std::to_string(u) + ")");
          if (bad.size() >= 8) return bad;
        }
      }
    }
  }
  return bad;
}

RingPtr cyclic_ring(u64 modulus) {
  std::vector<std::vector<Vec>> table{{Vec{1}}};
  return std::make_shared<FiniteRing>(modulus, std::vector<u64>{modulus}, table, Vec{1},
                                      "Z/" + std::to_string(modulus));
}

RingPtr matrix_ring(std::size_t n, const RingPtr& base) {
  if (n == 0) throw Error("matrix_ring: n must be positive");
  const std::size_t kb = base->dim();
  const std::size_t dim = n * n * kb;
  const u64 m = base->modulus();
  std::vector<u64> orders(dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < kb; ++s) orders[(i * n + j) * kb + s] = base->orders()[s];

  std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim, Vec(dim, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < kb; ++s) {
        const std::size_t a = (i * n + j) * kb + s;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l)
            for (std::size_t t = 0; t < kb; ++t) {
              if (j != k) continue;
              const std::size_t b = (k * n + l) * kb + t;
              Vec p = base->mul(base->basis_elt(s), base->basis_elt(t));
              Vec& cell = table[a][b];
              for (std::size_t u = 0; u < kb; ++u) cell[(i * n + l) * kb + u] = p[u];
            }
      }
  Vec unit(dim, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < kb; ++s) unit[(i * n + i) * kb + s] = base->one()[s];
  return std::make_shared<FiniteRing>(m, orders, table, unit,
                                      "Mat(" + std::to_string(n) + "," + base->name() + ")");
}

RingPtr opposite_ring(const RingPtr& ring) {
  const std::size_t dim = ring->dim();
  std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim));
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t t = 0; t < dim; ++t)
      table[s][t] = ring->mul(ring->basis_elt(t), ring->basis_elt(s));
  return std::make_shared<FiniteRing>(ring->modulus(), ring->orders(), table, ring->one(),
                                      ring->name() + "^op");
}

Vec matrix_unit(const FiniteRing& mat, std::size_t n, const RingPtr& base,
                std::size_t i, std::size_t j, const Vec& base_elt) {
  const std::size_t kb = base->dim();
  if (mat.dim() != n * n * kb) throw Error("matrix_unit: layout mismatch");
  Vec v = mat.zero();
  for (std::size_t s = 0; s < kb; ++s) v[(i * n + j) * kb + s] = base_elt[s] % mat.modulus();
  return v;
}

IdempotentFamily block_family(const RingPtr& mat, std::size_t n, const RingPtr& base,
                              const std::vector<std::vector<std::size_t>>& blocks) {
  IdempotentFamily fam;
  fam.ring = mat;
  for (const auto& block : blocks) {
    Vec e = mat->zero();
    for (std::size_t i : block) {
      if (i >= n) throw Error("block_family: index out of range");
      e = mat->add(e, matrix_unit(*mat, n, base, i, i, base->one()));
    }
    fam.idems.push_back(e);
  }
  return fam;
}

FamilyReport validate_idempotent_family(const IdempotentFamily& fam) {
  FamilyReport rep;
  const FiniteRing& r = *fam.ring;
  const std::size_t n = fam.idems.size();
  rep.size_ok = n >= 3;
  if (!rep.size_ok)
    rep.failures.push_back("family has " + std::to_string(n) + " idempotents, engine requires n >= 3");

  rep.idempotent = true;
  for (std::size_t i = 0; i < n; ++i)
    if (r.mul(fam.idems[i], fam.idems[i]) != fam.idems[i]) {
      rep.idempotent = false;
      rep.failures.push_back("e_" + std::to_string(i + 1) + " is not idempotent");
    }

  rep.orthogonal = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!r.is_zero(r.mul(fam.idems[i], fam.idems[j]))) {
        rep.orthogonal = false;
        rep.failures.push_back("e_" + std::to_string(i + 1) + " e_" + std::to_string(j + 1) + " != 0");
      }
    }

  Vec sum = r.zero();
  for (const auto& e : fam.idems) sum = r.add(sum, e);
  rep.complete = sum == r.one();
  if (!rep.complete) rep.failures.push_back("idempotents do not sum to 1");

  // fullness of e: the two-sided ideal generated by e must close to all of R
  rep.full.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    ModSpan span(r.modulus(), r.dim());
    span.insert(fam.idems[i]);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Vec> rows = span.rows();
      for (const Vec& row : rows)
        for (std::size_t s = 0; s < r.dim(); ++s) {
          Vec g = r.basis_elt(s);
          for (Vec p : {r.mul(g, row), r.mul(row, g)})
            if (!span.contains(p)) {
              span.insert(p);
              grew = true;
            }
        }
    }
    bool full = true;
    for (std::size_t s = 0; s < r.dim() && full; ++s)
      if (!span.contains(r.basis_elt(s))) full = false;
    rep.full[i] = full;
    if (!full) rep.failures.push_back("e_" + std::to_string(i + 1) + " is not full");
  }
  return rep;
}

bool FamilyReport::pass() const {
  if (!size_ok || !idempotent || !orthogonal || !complete) return false;
  for (bool f : full)
    if (!f) return false;
  return true;
}

Vec peirce(const IdempotentFamily& fam, std::size_t i, const Vec& x, std::size_t j) {
  if (i >= fam.idems.size() || j >= fam.idems.size())
    throw Error("peirce: index out of range");
  if (x.size() != fam.ring->dim()) throw Error("peirce: mismatched ring");
  return fam.ring->mul(fam.idems[i], fam.ring->mul(x, fam.idems[j]));
}

}  // namespace relst
