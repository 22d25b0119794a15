#include "relst/roots.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace relst {

std::optional<IndexRoot> root_add(IndexRoot a, IndexRoot b) {
  if (a.j == b.i && a.i != b.j) return IndexRoot{a.i, b.j};
  if (b.j == a.i && b.i != a.j) return IndexRoot{b.i, a.j};
  return std::nullopt;
}

int root_inner(IndexRoot a, IndexRoot b) {
  int v = 0;
  v += (a.i == b.i) ? 1 : 0;
  v -= (a.i == b.j) ? 1 : 0;
  v -= (a.j == b.i) ? 1 : 0;
  v += (a.j == b.j) ? 1 : 0;
  return v;
}

std::vector<IndexRoot> all_index_roots(std::size_t n) {
  std::vector<IndexRoot> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

bool is_closed(const RootSet& sigma) {
  for (const auto& a : sigma)
    for (const auto& b : sigma)
      if (auto s = root_add(a, b); s && !sigma.count(*s)) return false;
  return true;
}

bool is_special_closed(const RootSet& sigma) {
  for (const auto& a : sigma)
    if (sigma.count(root_neg(a))) return false;
  return is_closed(sigma);
}

std::vector<IndexRoot> extreme_roots(const RootSet& sigma) {
  if (!is_special_closed(sigma)) throw Error("extreme_roots: set is not special closed");
  std::vector<IndexRoot> out;
  for (const auto& a : sigma) {
    bool is_sum = false;
    for (const auto& b : sigma) {
      for (const auto& c : sigma) {
        auto s = root_add(b, c);
        if (s && *s == a) {
          is_sum = true;
          break;
        }
      }
      if (is_sum) break;
    }
    if (!is_sum) out.push_back(a);
  }
  return out;
}

RootSet special_closure(RootSet sigma) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IndexRoot> cur(sigma.begin(), sigma.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (auto s = root_add(a, b); s && !sigma.count(*s)) {
          sigma.insert(*s);
          grew = true;
        }
  }
  return sigma;
}

RootSet random_special_closed(std::size_t n, Rng& rng, std::size_t seeds) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[perm[i]] = i;

  RootSet sigma;
  for (std::size_t s = 0; s < seeds; ++s) {
    std::size_t i = rng.below(n), j = rng.below(n);
    if (i == j) continue;
    if (pos[i] < pos[j])
      sigma.insert({i, j});
    else
      sigma.insert({j, i});
  }
  return special_closure(std::move(sigma));
}

Rank2Type rank2_type(IndexRoot a, IndexRoot b) {
  int v = root_inner(a, b);
  if (v == 2 || v == -2) return Rank2Type::Collinear;
  if (v == 0) return Rank2Type::A1xA1;
  return Rank2Type::A2;
}

bool is_subsystem(std::size_t n, const RootSet& psi) {
  for (const auto& r : psi) {
    if (r.i >= n || r.j >= n || r.i == r.j) return false;
    if (!psi.count(root_neg(r))) return false;
  }
  return is_closed(psi);
}

std::optional<IndexRoot> SubsystemQuotient::project(IndexRoot r) const {
  std::size_t ci = class_of[r.i], cj = class_of[r.j];
  if (ci == cj) return std::nullopt;
  return IndexRoot{ci, cj};
}

SubsystemQuotient quotient(std::size_t n, const RootSet& psi) {
  if (!is_subsystem(n, psi)) throw Error("quotient: psi is not a subsystem");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : psi) {
    std::size_t a = find(r.i), b = find(r.j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  SubsystemQuotient q;
  q.parent_n = n;
  q.psi = psi;
  q.class_of.assign(n, 0);
  std::map<std::size_t, std::size_t> label;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = find(i);
    auto [it, fresh] = label.try_emplace(root, q.classes.size());
    if (fresh) q.classes.emplace_back();
    q.class_of[i] = it->second;
    q.classes[it->second].push_back(i);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Simply laced data

int RootDatum::index_of(const std::vector<i64>& v) const {
  auto it = index.find(v);
  return it == index.end() ? -1 : it->second;
}

std::optional<int> RootDatum::sum(int a, int b) const {
  int s = sum_tab[a][b];
  if (s < 0) return std::nullopt;
  return s;
}

int RootDatum::neg(int a) const {
  std::vector<i64> v = roots[a];
  for (auto& c : v) c = -c;
  return index_of(v);
}

bool RootDatum::positive(int a) const {
  for (i64 c : roots[a])
    if (c != 0) return c > 0;
  return false;
}

std::vector<std::pair<int, int>> RootDatum::dynkin_edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j)
      if (gram[i][j] == -1) edges.emplace_back(i, j);
  return edges;
}

DatumPtr build_root_datum(char type, int rank) {
  auto d = std::make_shared<RootDatum>();
  d->type = type;
  d->rank = rank;
  std::vector<std::pair<int, int>> edges;
  if (type == 'A') {
    if (rank < 1) throw Error("A_l needs rank >= 1");
    for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
  } else if (type == 'D') {
    if (rank < 3) throw Error("D_l needs rank >= 3");
    for (int i = 0; i + 2 < rank; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(rank - 3, rank - 1);
  } else if (type == 'E') {
    if (rank < 6 || rank > 8) throw Error("E_l needs rank in {6,7,8}");
    edges.emplace_back(0, 2);
    for (int i = 2; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(1, 3);
  } else {
    throw Error("unsupported root system type (engine covers simply laced A/D/E)");
  }
  d->gram.assign(rank, std::vector<i64>(rank, 0));
  for (int i = 0; i < rank; ++i) d->gram[i][i] = 2;
  for (auto [i, j] : edges) d->gram[i][j] = d->gram[j][i] = -1;

  auto norm = [&](const std::vector<i64>& v) {
    i64 s = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) s += v[i] * d->gram[i][j] * v[j];
    return s;
  };

  // all lattice vectors of norm 2, grown from the simples
  std::vector<std::vector<i64>> frontier;
  for (int i = 0; i < rank; ++i) {
    std::vector<i64> v(rank, 0);
    v[i] = 1;
    d->index.emplace(v, -1);
    frontier.push_back(v);
    for (auto& c : v) c = -c;
    d->index.emplace(v, -1);
    frontier.push_back(v);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<i64>> next;
    for (const auto& v : frontier)
      for (int i = 0; i < rank; ++i)
        for (i64 dir : {i64{1}, i64{-1}}) {
          std::vector<i64> w = v;
          w[i] += dir;
          if (norm(w) != 2 || d->index.count(w)) continue;
          d->index.emplace(w, -1);
          next.push_back(w);
        }
    frontier = std::move(next);
  }
  for (auto& [v, idx] : d->index) {
    idx = static_cast<int>(d->roots.size());
    d->roots.push_back(v);
  }

  const std::size_t cnt = d->roots.size();
  std::size_t expect = 0;
  if (type == 'A') expect = static_cast<std::size_t>(rank) * (rank + 1);
  if (type == 'D') expect = 2 * static_cast<std::size_t>(rank) * (rank - 1);
  if (type == 'E') expect = rank == 6 ? 72 : rank == 7 ? 126 : 240;
  if (cnt != expect) throw Error("root count does not match the classification");

  d->inner_tab.assign(cnt, std::vector<i64>(cnt, 0));
  d->sum_tab.assign(cnt, std::vector<int>(cnt, -1));
  for (std::size_t a = 0; a < cnt; ++a)
    for (std::size_t b = 0; b < cnt; ++b) {
      i64 s = 0;
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) s += d->roots[a][i] * d->gram[i][j] * d->roots[b][j];
      d->inner_tab[a][b] = s;
      std::vector<i64> sum(rank);
      for (int i = 0; i < rank; ++i) sum[i] = d->roots[a][i] + d->roots[b][i];
      d->sum_tab[a][b] = d->index_of(sum);
    }
  return d;
}

DatumPtr root_datum_by_name(const std::string& name) {
  if (name.size() < 2) throw ConfigError("bad root system selector: " + name);
  char type = name[0];
  int rank = 0;
  try {
    rank = std::stoi(name.substr(1));
  } catch (...) {
    throw ConfigError("bad root system selector: " + name);
  }
  return build_root_datum(type, rank);
}

Rank2Type rank2_type(const RootDatum& d, int a, int b) {
  i64 v = d.inner(a, b);
  if (v == 2 || v == -2) return Rank2Type::Collinear;
  if (v == 1 || v == -1) return Rank2Type::A2;
  if (v != 0) throw Error("rank2_type: inner product outside simply laced range");
  return Rank2Type::A1xA1;
}

std::vector<int> subsystem_closure(const RootDatum& d, std::vector<int> seed) {
  std::set<int> s;
  for (int a : seed) {
    s.insert(a);
    s.insert(d.neg(a));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur)
        if (auto c = d.sum(a, b); c && !s.count(*c)) {
          s.insert(*c);
          grew = true;
        }
  }
  return std::vector<int>(s.begin(), s.end());
}

int subsystem_rank(const RootDatum& d, const std::vector<int>& roots) {
  // fraction-free row echelon over Z
  IMat m;
  for (int r : roots) {
    std::vector<i64> row(d.roots[r].begin(), d.roots[r].end());
    m.push_back(row);
  }
  int rank = 0;
  std::size_t col = 0;
  while (col < static_cast<std::size_t>(d.rank) && rank < static_cast<int>(m.size())) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) {
      ++col;
      continue;
    }
    std::swap(m[rank], m[piv]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      while (m[r][col] != 0) {
        i64 q = m[r][col] / m[rank][col];
        for (std::size_t c = col; c < static_cast<std::size_t>(d.rank); ++c)
          m[r][c] -= q * m[rank][c];
        if (m[r][col] != 0) std::swap(m[r], m[rank]);
      }
    }
    ++rank;
    ++col;
  }
  return rank;
}

std::string classify_subsystem(const RootDatum& d, const std::vector<int>& roots) {
  const std::size_t cnt = roots.size();
  int rank = subsystem_rank(d, roots);
  // connectivity of the non-orthogonality graph
  std::vector<int> comp(cnt, -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < cnt; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < cnt; ++b)
        if (comp[b] < 0 && d.inner(roots[a], roots[b]) != 0) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
    }
    ++ncomp;
  }
  if (rank == 1 && cnt == 2) return "A1";
  if (rank == 2 && cnt == 4 && ncomp == 2) return "A1xA1";
  if (rank == 2 && cnt == 6 && ncomp == 1) return "A2";
  if (rank == 3 && cnt == 12 && ncomp == 1) return "A3";
  return "?";
}

std::vector<std::vector<int>> subsystem_family_g(const RootDatum& d) {
  std::set<std::vector<int>> members;
  const int cnt = static_cast<int>(d.count());
  for (int a = 0; a < cnt; ++a) {
    std::vector<int> s{std::min(a, d.neg(a)), std::max(a, d.neg(a))};
    members.insert(s);
  }
  // A3 subsystems from simple chains a - b - c
  for (int a = 0; a < cnt; ++a)
    for (int b = 0; b < cnt; ++b) {
      if (b == a || d.inner(a, b) != -1) continue;
      for (int c = 0; c < cnt; ++c) {
        if (c == a || c == b) continue;
        if (d.inner(b, c) != -1 || d.inner(a, c) != 0) continue;
        std::vector<int> cl = subsystem_closure(d, {a, b, c});
        if (classify_subsystem(d, cl) == "A3") members.insert(cl);
      }
    }
  return std::vector<std::vector<int>>(members.begin(), members.end());
}

std::optional<std::vector<int>> ambient_a_subsystem(const RootDatum& d,
                                                    const std::vector<int>& support) {
  if (support.empty()) return std::vector<int>{};
  std::vector<int> cl = subsystem_closure(d, support);
  std::string t = classify_subsystem(d, cl);
  if (t == "A1" || t == "A2" || t == "A3") return cl;
  if (t == "A1xA1") {
    const int cnt = static_cast<int>(d.count());
    for (int g = 0; g < cnt; ++g) {
      std::vector<int> seed = cl;
      seed.push_back(g);
      std::vector<int> big = subsystem_closure(d, seed);
      if (classify_subsystem(d, big) == "A3") return big;
    }
  }
  return std::nullopt;
}

}  // namespace relst
