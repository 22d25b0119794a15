#include "relst/eval.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace relst {

Unit unit_one(const LinearContext& c) { return {c.S().one(), c.S().one()}; }

Unit unit_mul(const LinearContext& c, const Unit& a, const Unit& b) {
  return {c.S().mul(a.u, b.u), c.S().mul(b.uinv, a.uinv)};
}

Unit unit_inv(const Unit& a) { return {a.uinv, a.u}; }

Unit eval_symbol(const LinearContext& c, const GenSymbol& s) {
  const FiniteRing& r = c.S();
  const Vec one = r.one();
  switch (s.kind) {
    case SymKind::LinX:
      // p is off-diagonal, so p^2 = 0 and (1+p)^{-1} = 1-p
      return {r.add(one, s.payload), r.sub(one, s.payload)};
    case SymKind::LinZ: {
      Vec up = r.add(one, s.param);
      Vec um = r.sub(one, s.param);
      Vec u = r.mul(up, r.mul(r.add(one, s.payload), um));
      Vec uinv = r.mul(up, r.mul(r.sub(one, s.payload), um));
      return {u, uinv};
    }
    default:
      throw Error("eval_symbol: chevalley symbols evaluate through a subsystem embedding");
  }
}

Unit eval_word(const LinearContext& c, const Word& w) {
  Unit acc = unit_one(c);
  for (const auto& t : w.terms()) {
    Unit u = eval_symbol(c, t.sym);
    if (t.exp == -1) u = unit_inv(u);
    acc = unit_mul(c, acc, u);
  }
  return acc;
}

Verdict verify_instance(const LinearContext& c, const RelationInstance& inst) {
  Verdict v;
  v.id = inst.id;
  Unit l = eval_word(c, inst.lhs);
  Unit r = eval_word(c, inst.rhs);
  v.lhs_eval = l.u;
  v.rhs_eval = r.u;
  v.pass = l.u == r.u;
  if (!v.pass) v.note = "evaluations differ";
  return v;
}

bool is_diagonal_unit(const LinearContext& c, const Vec& r) {
  const FiniteRing& s = c.S();
  for (std::size_t i = 0; i < c.n(); ++i)
    for (std::size_t j = 0; j < c.n(); ++j) {
      if (i == j) continue;
      if (!s.is_zero(s.mul(c.idem(i), s.mul(r, c.idem(j))))) return false;
    }
  return s.inverse(r).has_value();
}

GenSymbol diag_act(const LinearContext& c, const Vec& r, const Vec& rinv,
                   const GenSymbol& s) {
  const FiniteRing& ring = c.S();
  if (ring.mul(r, rinv) != ring.one()) throw Error("diag_act: not an inverse pair");
  if (!is_diagonal_unit(c, r)) throw Error("diag_act: unit is not block diagonal");
  Vec pay = ring.mul(r, ring.mul(s.payload, rinv));
  switch (s.kind) {
    case SymKind::LinZ:
      return zsym(c, s.i, s.j, pay, ring.mul(r, ring.mul(s.param, rinv)));
    case SymKind::LinX:
      return rsym(c, s.i, s.j, pay);
    default:
      throw Error("diag_act: chevalley symbols are not in the linear model");
  }
}

std::optional<std::vector<Vec>> unipotent_factorization(const LinearContext& c, const Vec& u,
                                                        const std::vector<IndexRoot>& order) {
  const FiniteRing& s = c.S();
  RootSet sigma;
  for (const auto& r : order) {
    if (r.i >= c.n() || r.j >= c.n() || r.i == r.j)
      throw Error("unipotent_factorization: bad root");
    if (!sigma.insert(r).second) throw Error("unipotent_factorization: repeated root");
  }
  if (!is_special_closed(sigma))
    throw Error("unipotent_factorization: roots are not special closed");

  const std::size_t cnt = order.size();
  if (cnt == 0) {
    if (u != s.one()) return std::nullopt;
    return std::vector<Vec>{};
  }

  // Topological position of each index: every root (i, j) must point forward.
  const std::size_t n = c.n();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& r : sigma) ++indeg[r.j];
  std::vector<std::size_t> pos(n, 0);
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && indeg[i] == 0) {
        pick = i;
        break;
      }
    if (pick == n) throw Error("unipotent_factorization: cyclic root set (internal)");
    done[pick] = true;
    pos[pick] = step;
    for (const auto& r : sigma)
      if (r.i == pick && !done[r.j]) --indeg[r.j];
  }
  auto height = [&](IndexRoot r) { return pos[r.j] - pos[r.i]; };
  for (const auto& r : sigma)
    if (pos[r.j] <= pos[r.i])
      throw Error("unipotent_factorization: order not positive (internal)");

  Vec diff = s.sub(u, s.one());
  std::vector<Vec> entry(cnt), payload(cnt, s.zero());
  std::vector<bool> known(cnt, false);
  for (std::size_t t = 0; t < cnt; ++t)
    entry[t] = s.mul(c.idem(order[t].i), s.mul(diff, c.idem(order[t].j)));

  // Solve by increasing height: a chain of two or more factors lands at a
  // root of strictly larger height than any of its factors.
  std::vector<std::size_t> by_height(cnt);
  std::iota(by_height.begin(), by_height.end(), 0);
  std::stable_sort(by_height.begin(), by_height.end(), [&](std::size_t a, std::size_t b) {
    return height(order[a]) < height(order[b]);
  });

  for (std::size_t t : by_height) {
    Vec corr = s.zero();
    // chains: positions t1 < t2 < ... telescoping from order[t].i to order[t].j
    std::function<void(std::size_t, std::size_t, const Vec&, std::size_t)> walk =
        [&](std::size_t from_pos, std::size_t col, const Vec& prod, std::size_t len) {
          if (col == order[t].j && len >= 2) {
            corr = s.add(corr, prod);
            return;  // a chain cannot revisit its endpoint
          }
          for (std::size_t nxt = from_pos + 1; nxt < cnt; ++nxt) {
            if (order[nxt].i != col) continue;
            if (!known[nxt]) continue;  // larger heights cannot occur in a chain to t
            walk(nxt, order[nxt].j, s.mul(prod, payload[nxt]), len + 1);
          }
        };
    for (std::size_t first = 0; first < cnt; ++first) {
      if (order[first].i != order[t].i || !known[first]) continue;
      walk(first, order[first].j, payload[first], 1);
    }
    payload[t] = s.sub(entry[t], corr);
    known[t] = true;
  }

  Vec check = s.one();
  for (std::size_t t = 0; t < cnt; ++t) check = s.mul(check, s.add(s.one(), payload[t]));
  if (check != u) return std::nullopt;
  return payload;
}

}  // namespace relst
