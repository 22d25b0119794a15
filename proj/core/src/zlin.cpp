#include "relst/zlin.hpp"

#include <algorithm>
#include <cstdlib>

namespace relst {

namespace {

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("overflow in exact integer arithmetic");
  return r;
}

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("overflow in exact integer arithmetic");
  return r;
}

i64 gcd_i64(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

IMat identity(std::size_t n) {
  IMat e(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
  return e;
}

// Unit w mod m with w*e = gcd(e, m) mod m, for 0 < e < m.
std::pair<u64, u64> unit_scale(u64 e, u64 m) {
  u64 g = std::gcd(e, m);
  u64 d = e / g;
  u64 mg = m / g;
  u64 w = inv_mod(d % mg, mg);
  if (w == 0) w = 1;  // mg == 1 cannot happen for e != 0, but keep w a unit
  while (std::gcd(w, m) != 1) {
    w += mg;
    if (w >= m + mg) throw Error("unit_scale: no unit found");
  }
  if (mul_mod(w, e, m) != g % m) throw Error("unit_scale: postcondition failed");
  return {w % m == 0 ? mg : w % m, g};
}

std::optional<Vec> solve_with(const SmithResult& s, const std::vector<i64>& b, u64 m) {
  const std::size_t rows = s.rows, cols = s.cols;
  if (b.size() != rows) throw Error("solve_mod: size mismatch");
  Vec ub(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    u64 acc = 0;
    for (std::size_t j = 0; j < rows; ++j) {
      i64 uij = s.u[i][j] % static_cast<i64>(m);
      if (uij < 0) uij += static_cast<i64>(m);
      i64 bj = b[j] % static_cast<i64>(m);
      if (bj < 0) bj += static_cast<i64>(m);
      acc = (acc + mul_mod(static_cast<u64>(uij), static_cast<u64>(bj), m)) % m;
    }
    ub[i] = acc;
  }
  Vec y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    u64 d = 0;
    if (i < cols && i < s.diag.size()) {
      i64 di = s.diag[i] % static_cast<i64>(m);
      d = static_cast<u64>(di < 0 ? di + static_cast<i64>(m) : di);
    }
    if (i >= cols) {
      if (ub[i] % m != 0) return std::nullopt;
      continue;
    }
    u64 g = std::gcd(d, m);  // gcd(0, m) = m
    if (ub[i] % g != 0) return std::nullopt;
    if (g == m) {
      y[i] = 0;
      continue;
    }
    u64 mg = m / g;
    y[i] = mul_mod(ub[i] / g, inv_mod((d / g) % mg, mg), mg);
  }
  Vec x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    u64 acc = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      i64 vij = s.v[i][j] % static_cast<i64>(m);
      if (vij < 0) vij += static_cast<i64>(m);
      acc = (acc + mul_mod(static_cast<u64>(vij), y[j], m)) % m;
    }
    x[i] = acc;
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModSpan

ModSpan::ModSpan(u64 modulus, std::size_t dim) : m_(modulus), dim_(dim) {
  if (modulus < 2) throw Error("ModSpan: modulus must be >= 2");
}

std::size_t ModSpan::leading(const Vec& v) {
  std::size_t j = 0;
  while (j < v.size() && v[j] == 0) ++j;
  return j;
}

void ModSpan::insert(Vec v) {
  if (v.size() != dim_) throw Error("ModSpan::insert: dimension mismatch");
  for (auto& x : v) x %= m_;
  std::vector<Vec> queue;
  queue.push_back(std::move(v));
  while (!queue.empty()) {
    Vec w = std::move(queue.back());
    queue.pop_back();
    place(std::move(w), queue);
  }
}

void ModSpan::place(Vec v, std::vector<Vec>& queue) {
  while (true) {
    std::size_t j = leading(v);
    if (j == dim_) return;
    std::size_t idx = 0;
    while (idx < rows_.size() && pivot_col_[idx] < j) ++idx;
    if (idx == rows_.size() || pivot_col_[idx] != j) {
      auto [w, g] = unit_scale(v[j], m_);
      Vec row(dim_);
      for (std::size_t c = 0; c < dim_; ++c) row[c] = mul_mod(w, v[c], m_);
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), row);
      pivot_col_.insert(pivot_col_.begin() + static_cast<std::ptrdiff_t>(idx), j);
      pivot_val_.insert(pivot_val_.begin() + static_cast<std::ptrdiff_t>(idx), g);
      if (g != 1) {
        Vec ann(dim_);
        u64 f = m_ / g;
        for (std::size_t c = 0; c < dim_; ++c) ann[c] = mul_mod(f, row[c], m_);
        queue.push_back(std::move(ann));
      }
      return;
    }
    u64 d = pivot_val_[idx];
    u64 e = v[j];
    if (e % d == 0) {
      u64 q = e / d;
      for (std::size_t c = 0; c < dim_; ++c)
        v[c] = sub_mod(v[c], mul_mod(q, rows_[idx][c], m_), m_);
      continue;
    }
    i64 x, y;
    i64 g = ext_gcd(static_cast<i64>(d), static_cast<i64>(e), x, y);
    u64 xm = static_cast<u64>(((x % static_cast<i64>(m_)) + static_cast<i64>(m_)) % static_cast<i64>(m_));
    u64 ym = static_cast<u64>(((y % static_cast<i64>(m_)) + static_cast<i64>(m_)) % static_cast<i64>(m_));
    u64 dg = d / static_cast<u64>(g);
    u64 eg = e / static_cast<u64>(g);
    Vec new_row(dim_), new_v(dim_);
    for (std::size_t c = 0; c < dim_; ++c) {
      new_row[c] = add_mod(mul_mod(xm, rows_[idx][c], m_), mul_mod(ym, v[c], m_), m_);
      new_v[c] = sub_mod(mul_mod(dg, v[c], m_), mul_mod(eg, rows_[idx][c], m_), m_);
    }
    rows_[idx] = new_row;
    pivot_val_[idx] = static_cast<u64>(g);
    if (static_cast<u64>(g) != 1) {
      Vec ann(dim_);
      u64 f = m_ / static_cast<u64>(g);
      for (std::size_t c = 0; c < dim_; ++c) ann[c] = mul_mod(f, new_row[c], m_);
      queue.push_back(std::move(ann));
    }
    v = std::move(new_v);
  }
}

bool ModSpan::contains(Vec v) const {
  if (v.size() != dim_) throw Error("ModSpan::contains: dimension mismatch");
  for (auto& x : v) x %= m_;
  while (true) {
    std::size_t j = leading(v);
    if (j == dim_) return true;
    std::size_t idx = 0;
    while (idx < rows_.size() && pivot_col_[idx] < j) ++idx;
    if (idx == rows_.size() || pivot_col_[idx] != j) return false;
    if (v[j] % pivot_val_[idx] != 0) return false;
    u64 q = v[j] / pivot_val_[idx];
    for (std::size_t c = 0; c < dim_; ++c)
      v[c] = sub_mod(v[c], mul_mod(q, rows_[idx][c], m_), m_);
  }
}

bool ModSpan::is_full() const {
  if (rows_.size() != dim_) return false;
  for (std::size_t i = 0; i < dim_; ++i)
    if (pivot_col_[i] != i || pivot_val_[i] != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithResult smith_normal_form(const IMat& m0) {
  SmithResult s;
  s.rows = m0.size();
  s.cols = s.rows ? m0[0].size() : 0;
  for (const auto& r : m0)
    if (r.size() != s.cols) throw Error("smith_normal_form: ragged matrix");
  IMat a = m0;
  s.u = identity(s.rows);
  s.v = identity(s.cols);
  s.vinv = identity(s.cols);

  auto row_addmul = [&](std::size_t r1, std::size_t r2, i64 k) {
    for (std::size_t c = 0; c < s.cols; ++c) a[r1][c] = checked_add(a[r1][c], checked_mul(k, a[r2][c]));
    for (std::size_t c = 0; c < s.rows; ++c) s.u[r1][c] = checked_add(s.u[r1][c], checked_mul(k, s.u[r2][c]));
  };
  auto row_swap = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    std::swap(a[r1], a[r2]);
    std::swap(s.u[r1], s.u[r2]);
  };
  auto row_neg = [&](std::size_t r) {
    for (auto& x : a[r]) x = -x;
    for (auto& x : s.u[r]) x = -x;
  };
  auto col_addmul = [&](std::size_t c1, std::size_t c2, i64 k) {
    for (std::size_t r = 0; r < s.rows; ++r) a[r][c1] = checked_add(a[r][c1], checked_mul(k, a[r][c2]));
    for (std::size_t r = 0; r < s.cols; ++r) s.v[r][c1] = checked_add(s.v[r][c1], checked_mul(k, s.v[r][c2]));
    for (std::size_t c = 0; c < s.cols; ++c) s.vinv[c2][c] = checked_add(s.vinv[c2][c], checked_mul(-k, s.vinv[c1][c]));
  };
  auto col_swap = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t r = 0; r < s.rows; ++r) std::swap(a[r][c1], a[r][c2]);
    for (std::size_t r = 0; r < s.cols; ++r) std::swap(s.v[r][c1], s.v[r][c2]);
    std::swap(s.vinv[c1], s.vinv[c2]);
  };

  const std::size_t nd = std::min(s.rows, s.cols);
  for (std::size_t t = 0; t < nd; ++t) {
    // smallest nonzero |entry| in the trailing submatrix
    std::size_t pr = t, pc = t;
    i64 best = 0;
    for (std::size_t r = t; r < s.rows; ++r)
      for (std::size_t c = t; c < s.cols; ++c) {
        i64 v = a[r][c] < 0 ? -a[r][c] : a[r][c];
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    if (best == 0) break;
    row_swap(t, pr);
    col_swap(t, pc);
    if (a[t][t] < 0) row_neg(t);

    bool again = true;
    while (again) {
      again = false;
      for (std::size_t r = t + 1; r < s.rows; ++r) {
        while (a[r][t] != 0) {
          i64 q = a[r][t] / a[t][t];
          row_addmul(r, t, -q);
          if (a[r][t] != 0) {
            row_swap(r, t);
            if (a[t][t] < 0) row_neg(t);
          }
        }
      }
      for (std::size_t c = t + 1; c < s.cols; ++c) {
        while (a[t][c] != 0) {
          i64 q = a[t][c] / a[t][t];
          col_addmul(c, t, -q);
          if (a[t][c] != 0) {
            col_swap(c, t);
            if (a[t][t] < 0) row_neg(t);
            again = true;  // column swap may reintroduce entries below the pivot
          }
        }
      }
      if (!again) {
        // pivot must divide the whole trailing block
        for (std::size_t r = t + 1; r < s.rows && !again; ++r)
          for (std::size_t c = t + 1; c < s.cols && !again; ++c)
            if (a[r][c] % a[t][t] != 0) {
              row_addmul(t, r, 1);
              again = true;
            }
      }
    }
  }

  // divisibility chain (zeros sink to the end)
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < nd; ++i) {
      i64 di = a[i][i], dj = a[i + 1][i + 1];
      if (di == 0 && dj != 0) {
        row_swap(i, i + 1);
        col_swap(i, i + 1);
        moved = true;
        continue;
      }
      if (di != 0 && dj % di != 0) {
        // repair the 2x2 block diag(di, dj) -> diag(gcd, lcm)
        col_addmul(i, i + 1, 1);
        while (a[i + 1][i] != 0) {
          i64 q = a[i + 1][i] / a[i][i];
          row_addmul(i + 1, i, -q);
          if (a[i + 1][i] != 0) {
            row_swap(i, i + 1);
            if (a[i][i] < 0) row_neg(i);
          }
        }
        while (a[i][i + 1] != 0) {
          i64 q = a[i][i + 1] / a[i][i];
          col_addmul(i + 1, i, -q);
        }
        if (a[i + 1][i + 1] < 0) row_neg(i + 1);
        moved = true;
      }
    }
  }
  for (std::size_t i = 0; i < nd; ++i)
    if (a[i][i] < 0) row_neg(i);

  s.diag.resize(nd);
  for (std::size_t i = 0; i < nd; ++i) s.diag[i] = a[i][i];
  return s;
}

std::optional<Vec> solve_mod(const IMat& a, const std::vector<i64>& b, u64 modulus) {
  SmithResult s = smith_normal_form(a);
  return solve_with(s, b, modulus);
}

// ---------------------------------------------------------------------------
// SubgroupBasis

SubgroupBasis subgroup_basis(const std::vector<Vec>& gens, u64 modulus, std::size_t dim) {
  SubgroupBasis out;
  out.modulus = modulus;
  out.ambient_dim = dim;
  if (dim == 0) return out;
  IMat m;
  for (const auto& g : gens) {
    if (g.size() != dim) throw Error("subgroup_basis: dimension mismatch");
    std::vector<i64> row(dim);
    for (std::size_t c = 0; c < dim; ++c) row[c] = static_cast<i64>(g[c] % modulus);
    m.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<i64> row(dim, 0);
    row[j] = static_cast<i64>(modulus);
    m.push_back(std::move(row));
  }
  SmithResult s = smith_normal_form(m);
  for (std::size_t i = 0; i < dim; ++i) {
    i64 d = s.diag[i];
    if (d <= 0) throw Error("subgroup_basis: lattice not of full rank");
    if (static_cast<i64>(modulus) % d != 0)
      throw Error("subgroup_basis: elementary divisor does not divide the modulus");
    u64 du = static_cast<u64>(d) % modulus;
    u64 order = modulus / static_cast<u64>(d);
    if (order <= 1) continue;
    Vec h(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      i64 vc = s.vinv[i][c] % static_cast<i64>(modulus);
      if (vc < 0) vc += static_cast<i64>(modulus);
      h[c] = mul_mod(du, static_cast<u64>(vc), modulus);
    }
    out.basis.push_back(std::move(h));
    out.orders.push_back(order);
  }
  return out;
}

u64 SubgroupBasis::cardinality() const {
  u64 n = 1;
  for (u64 o : orders) {
    if (n > UINT64_MAX / o) throw Error("SubgroupBasis::cardinality overflow");
    n *= o;
  }
  return n;
}

void SubgroupBasis::ensure_solver() const {
  if (solver_) return;
  IMat a(ambient_dim, std::vector<i64>(basis.size(), 0));
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < ambient_dim; ++r) a[r][c] = static_cast<i64>(basis[c][r]);
  solver_ = smith_normal_form(a);
}

std::optional<Vec> SubgroupBasis::coords(const Vec& v) const {
  if (v.size() != ambient_dim) throw Error("SubgroupBasis::coords: dimension mismatch");
  if (basis.empty()) {
    for (u64 x : v)
      if (x % modulus != 0) return std::nullopt;
    return Vec{};
  }
  ensure_solver();
  std::vector<i64> b(ambient_dim);
  for (std::size_t r = 0; r < ambient_dim; ++r) b[r] = static_cast<i64>(v[r] % modulus);
  auto c = solve_with(*solver_, b, modulus);
  if (!c) return std::nullopt;
  for (std::size_t i = 0; i < c->size(); ++i) (*c)[i] %= orders[i];
  return c;
}

Vec SubgroupBasis::from_coords(const Vec& coords) const {
  if (coords.size() != basis.size()) throw Error("SubgroupBasis::from_coords: size mismatch");
  Vec v(ambient_dim, 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t c = 0; c < ambient_dim; ++c)
      v[c] = add_mod(v[c], mul_mod(coords[i] % orders[i], basis[i][c], modulus), modulus);
  return v;
}

}  // namespace relst
