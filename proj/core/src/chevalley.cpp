#include "relst/chevalley.hpp"

#include <algorithm>
#include <functional>

namespace relst {

int StructureConstants::eps(int a, int b) const {
  const auto& ra = datum->roots[a];
  const auto& rb = datum->roots[b];
  unsigned e = 0;
  for (int i = 0; i < datum->rank; ++i)
    for (int j = 0; j < datum->rank; ++j)
      if (eps_exp[i][j]) e += static_cast<unsigned>(std::abs(ra[i] * rb[j]));
  return (e & 1u) ? -1 : 1;
}

namespace {

int eta(const RootDatum& d, int a) { return d.positive(a) ? 1 : -1; }

}  // namespace

int StructureConstants::N(int a, int b) const {
  auto s = datum->sum(a, b);
  if (!s) throw Error("structure constant N_{ab} needs a + b to be a root");
  return eta(*datum, a) * eta(*datum, b) * eta(*datum, *s) * eps(a, b);
}

StructureConstants build_constants(const DatumPtr& datum,
                                   std::vector<std::pair<int, int>> orientation) {
  StructureConstants sc;
  sc.datum = datum;
  auto edges = datum->dynkin_edges();
  if (orientation.empty())
    for (auto [i, j] : edges) orientation.emplace_back(i, j);
  // each Dynkin edge must appear exactly once, in one direction
  if (orientation.size() != edges.size())
    throw Error("build_constants: orientation must cover every Dynkin edge once");
  for (auto [a, b] : orientation) {
    bool found = false;
    for (auto [i, j] : edges)
      if ((a == i && b == j) || (a == j && b == i)) found = true;
    if (!found) throw Error("build_constants: oriented pair is not a Dynkin edge");
  }
  sc.orientation = orientation;
  sc.eps_exp.assign(datum->rank, std::vector<unsigned char>(datum->rank, 0));
  for (int i = 0; i < datum->rank; ++i) sc.eps_exp[i][i] = 1;
  for (auto [from, to] : orientation) sc.eps_exp[from][to] = 1;

  NRelReport rep = verify_n_rel(sc);
  if (!rep.pass)
    throw Error("build_constants: sign identities failed (internal): " + rep.failures.front());
  return sc;
}

NRelReport verify_n_rel_fn(const RootDatum& d, const std::function<int(int, int)>& n) {
  NRelReport rep;
  rep.pass = true;
  auto note = [&](int a, int b, const char* what) {
    rep.pass = false;
    if (rep.failures.size() < 8)
      rep.failures.push_back(std::string(what) + " fails at pair (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
  };
  const int cnt = static_cast<int>(d.count());
  for (int a = 0; a < cnt; ++a)
    for (int b = 0; b < cnt; ++b) {
      auto s = d.sum(a, b);
      if (!s) continue;
      ++rep.pairs_checked;
      int v = n(a, b);
      if (v != 1 && v != -1) note(a, b, "N outside {-1, +1}");
      if (n(b, a) != -v) note(a, b, "N_ab = -N_ba");
      if (n(d.neg(a), d.neg(b)) != -v) note(a, b, "N_ab = -N_{-a,-b}");
      if (n(d.neg(b), d.neg(a)) != v) note(a, b, "N_ab = N_{-b,-a}");
      if (n(b, d.neg(*s)) != v) note(a, b, "N_ab = N_{b,-a-b}");
      if (n(d.neg(*s), a) != v) note(a, b, "N_ab = N_{-a-b,a}");
    }
  return rep;
}

NRelReport verify_n_rel(const StructureConstants& sc) {
  return verify_n_rel_fn(*sc.datum, [&](int a, int b) { return sc.N(a, b); });
}

// ---------------------------------------------------------------------------
// Subsystem embeddings

SubsystemEmbedding embed_subsystem(const StructureConstants& sc, const std::vector<int>& delta) {
  const RootDatum& d = *sc.datum;
  SubsystemEmbedding emb;
  emb.delta = delta;
  std::sort(emb.delta.begin(), emb.delta.end());
  std::string type = classify_subsystem(d, emb.delta);
  if (type == "A1")
    emb.arank = 1;
  else if (type == "A2")
    emb.arank = 2;
  else if (type == "A3")
    emb.arank = 3;
  else
    throw Error("embed_subsystem: subsystem is not of type A1/A2/A3 (got " + type + ")");

  auto functional = [&](int r) {
    i64 f = 0, base = 1;
    for (int t = 0; t < d.rank; ++t) {
      f += d.roots[r][t] * base;
      base *= 64;
    }
    return f;
  };
  std::vector<int> positives, simples;
  for (int r : emb.delta)
    if (functional(r) > 0) positives.push_back(r);
  for (int r : positives) {
    bool is_sum = false;
    for (int a : positives)
      for (int b : positives)
        if (auto s = d.sum(a, b); s && *s == r) is_sum = true;
    if (!is_sum) simples.push_back(r);
  }
  if (simples.size() != emb.arank) throw Error("embed_subsystem: bad simple count (internal)");

  // order the simples along the chain
  std::vector<int> chain;
  if (emb.arank == 1) {
    chain = simples;
  } else {
    auto degree = [&](int r) {
      int deg = 0;
      for (int o : simples)
        if (o != r && d.inner(r, o) == -1) ++deg;
      return deg;
    };
    int start = -1;
    for (int r : simples)
      if (degree(r) == 1 && (start < 0 || r < start)) start = r;
    if (start < 0) throw Error("embed_subsystem: chain has no endpoint (internal)");
    chain.push_back(start);
    while (chain.size() < simples.size()) {
      int cur = chain.back();
      int nxt = -1;
      for (int o : simples) {
        if (std::find(chain.begin(), chain.end(), o) != chain.end()) continue;
        if (d.inner(cur, o) == -1) nxt = o;
      }
      if (nxt < 0) throw Error("embed_subsystem: chain is disconnected (internal)");
      chain.push_back(nxt);
    }
  }

  // positive root delta_u + ... + delta_v  ->  pair (u, v+1)
  for (std::size_t u = 0; u < chain.size(); ++u) {
    std::vector<i64> acc(d.rank, 0);
    for (std::size_t v = u; v < chain.size(); ++v) {
      for (int t = 0; t < d.rank; ++t) acc[t] += d.roots[chain[v]][t];
      int r = d.index_of(acc);
      if (r < 0) throw Error("embed_subsystem: interval sum is not a root (internal)");
      emb.pair_of[r] = {u, v + 1};
      emb.pair_of[d.neg(r)] = {v + 1, u};
    }
  }
  if (emb.pair_of.size() != emb.delta.size())
    throw Error("embed_subsystem: labeling does not cover the subsystem (internal)");

  // sign twists over GF(2)
  std::map<int, std::size_t> var;
  for (int r : emb.delta) var[r] = var.size();
  const std::size_t nv = var.size();
  std::vector<std::vector<unsigned char>> rows;  // nv coefficients + rhs
  for (int a : emb.delta)
    for (int b : emb.delta) {
      auto s = d.sum(a, b);
      if (!s) continue;
      auto [u, v] = emb.pair_of.at(a);
      auto [w, z] = emb.pair_of.at(b);
      int sigma;
      std::pair<std::size_t, std::size_t> target;
      if (v == w) {
        sigma = 1;
        target = {u, z};
      } else if (z == u) {
        sigma = -1;
        target = {w, v};
      } else {
        throw Error("embed_subsystem: additive labeling broken (internal)");
      }
      if (emb.pair_of.at(*s) != target)
        throw Error("embed_subsystem: labeling is not additive (internal)");
      std::vector<unsigned char> row(nv + 1, 0);
      row[var[a]] ^= 1;
      row[var[b]] ^= 1;
      row[var[*s]] ^= 1;
      row[nv] = (sc.N(a, b) * sigma) < 0 ? 1 : 0;
      rows.push_back(std::move(row));
    }

  // Gaussian elimination mod 2, free variables fixed to 0
  std::vector<int> pivot_of(nv, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nv && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel][col]) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][col])
        for (std::size_t t = 0; t <= nv; ++t) rows[r][t] ^= rows[rank][t];
    pivot_of[col] = static_cast<int>(rank);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][nv])
      throw Error("embed_subsystem: sign system unsolvable; the constants table is not "
                  "Chevalley-compatible");
  std::vector<unsigned char> x(nv, 0);
  for (std::size_t col = nv; col-- > 0;) {
    if (pivot_of[col] < 0) continue;
    const auto& row = rows[static_cast<std::size_t>(pivot_of[col])];
    unsigned char v = row[nv];
    for (std::size_t t = col + 1; t < nv; ++t) v ^= static_cast<unsigned char>(row[t] & x[t]);
    x[col] = v;
  }
  for (int r : emb.delta) emb.chi[r] = x[var[r]] ? -1 : 1;

  for (int a : emb.delta)
    for (int b : emb.delta) {
      auto s = d.sum(a, b);
      if (!s) continue;
      auto [u, v] = emb.pair_of.at(a);
      auto [w, z] = emb.pair_of.at(b);
      int sigma = (v == w) ? 1 : -1;
      if (emb.chi.at(a) * emb.chi.at(b) * sigma != sc.N(a, b) * emb.chi.at(*s))
        throw Error("embed_subsystem: sign solution check failed (internal)");
    }
  return emb;
}

// ---------------------------------------------------------------------------
// Context

std::shared_ptr<const ChevContext> ChevContext::make(const DatumPtr& datum, CrossedModule scalar,
                                                     std::vector<std::pair<int, int>> orientation) {
  const RingPtr kr = scalar.alg.ring;  // keep alive across the move below
  for (std::size_t s = 0; s < kr->dim(); ++s)
    for (std::size_t t = 0; t < kr->dim(); ++t)
      if (kr->mul(kr->basis_elt(s), kr->basis_elt(t)) != kr->mul(kr->basis_elt(t), kr->basis_elt(s)))
        throw Error("ChevContext: the base ring must be commutative");
  for (std::size_t s = 0; s < scalar.alg.dim; ++s)
    for (std::size_t t = 0; t < kr->dim(); ++t)
      if (scalar.alg.act_left(kr->basis_elt(t), scalar.alg.basis_elt(s)) !=
          scalar.alg.act_right(scalar.alg.basis_elt(s), kr->basis_elt(t)))
        throw Error("ChevContext: the coefficient algebra must be commutative over K");

  auto ctx = std::shared_ptr<ChevContext>(new ChevContext());
  ctx->constants_ = build_constants(datum, std::move(orientation));
  ctx->scalar_ = std::move(scalar);
  ctx->ssc_ = semidirect(ctx->scalar_);

  RingPtr mat = matrix_ring(4, kr);
  CrossedModule mat_cm = matrix_crossed_module(4, ctx->scalar_, mat);
  IdempotentFamily fam = block_family(mat, 4, kr, {{0}, {1}, {2}, {3}});
  std::string tchar(1, datum->type);
  ctx->name_ = tchar + std::to_string(datum->rank) + "(" + ctx->scalar_.alg.name + ")";
  ctx->host_ = LinearContext::make(mat, std::move(mat_cm), std::move(fam), ctx->name_ + "-host");

  u64 h = fnv1a_init();
  h = fnv1a_str(h, ctx->name_);
  h = fnv1a(h, ctx->host_->fingerprint());
  for (auto [a, b] : ctx->constants_.orientation) {
    h = fnv1a(h, static_cast<u64>(a));
    h = fnv1a(h, static_cast<u64>(b));
  }
  ctx->fp_ = h;
  return ctx;
}

Vec ChevContext::sample_a(Rng& rng) const {
  const Algebra& a = scalar_.alg;
  Vec coords(a.dim);
  for (std::size_t s = 0; s < a.dim; ++s)
    coords[s] = mul_mod(rng.below(a.orders[s]), a.scale[s], a.modulus);
  return ssc_.embed_a(coords);
}

Vec ChevContext::sample_k(Rng& rng) const {
  const RingPtr& kr = scalar_.alg.ring;
  Vec coords(kr->dim());
  for (std::size_t s = 0; s < kr->dim(); ++s)
    coords[s] = mul_mod(rng.below(kr->orders()[s]), kr->scale(s), kr->modulus());
  return ssc_.embed_r(coords);
}

Vec ChevContext::d_of(const Vec& v) const {
  return ssc_.embed_r(scalar_.d(ssc_.a_of(v)));
}

const SubsystemEmbedding& ChevContext::embedding_for(const std::vector<int>& delta) const {
  std::vector<int> key = delta;
  std::sort(key.begin(), key.end());
  std::lock_guard<std::mutex> lock(mu_);
  auto it = embeddings_.find(key);
  if (it == embeddings_.end()) it = embeddings_.emplace(key, embed_subsystem(constants_, key)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Symbols and words

GenSymbol chev_z(const ChevContext& c, int root, Vec a, Vec p) {
  if (root < 0 || root >= static_cast<int>(c.phi().count()))
    throw Error("chev_z: root out of range");
  const FiniteRing& s = *c.ssc().ring;
  if (!s.canonical(a) || !s.canonical(p)) throw Error("chev_z: element not canonical");
  if (!c.ssc().pure_a(a)) throw Error("chev_z: payload must lie in the coefficient algebra");
  GenSymbol out;
  out.kind = SymKind::ChevZ;
  out.root = root;
  out.payload = std::move(a);
  out.param = std::move(p);
  return out;
}

GenSymbol chev_x(const ChevContext& c, int root, Vec a) {
  return chev_z(c, root, std::move(a), c.ssc().ring->zero());
}

GenSymbol chev_k(const ChevContext& c, int root, Vec p) {
  if (root < 0 || root >= static_cast<int>(c.phi().count()))
    throw Error("chev_k: root out of range");
  const FiniteRing& s = *c.ssc().ring;
  if (!s.canonical(p)) throw Error("chev_k: element not canonical");
  if (!c.ssc().pure_r(p)) throw Error("chev_k: parameter must lie in K");
  GenSymbol out;
  out.kind = SymKind::ChevX;
  out.root = root;
  out.payload = std::move(p);
  return out;
}

namespace {

Vec sgn(const FiniteRing& s, int sign, Vec v) { return sign < 0 ? s.neg(std::move(v)) : v; }

}  // namespace

Word z2c_word(const ChevContext& c, int alpha, int beta, const Vec& a, const Vec& b,
              const Vec& p) {
  const RootDatum& d = c.phi();
  auto gamma = d.sum(beta, d.neg(alpha));
  if (!gamma) throw Error("z2c: requires alpha - beta to be a root");
  const FiniteRing& s = *c.ssc().ring;
  Word w = word_of(chev_z(c, alpha, a, p));
  w.push(chev_x(c, beta, b), 1);
  w.push(chev_x(c, *gamma, sgn(s, c.constants().N(d.neg(alpha), beta), s.mul(b, p))), 1);
  return w;
}

Word z4c_word(const ChevContext& c, int alpha, int beta, const Vec& a, const Vec& b,
              const Vec& p, const Vec& q) {
  const RootDatum& d = c.phi();
  auto diff = d.sum(alpha, d.neg(beta));
  if (!diff) throw Error("z4c: requires alpha - beta to be a root");
  const FiniteRing& s = *c.ssc().ring;
  Word w = z2c_word(c, alpha, *diff, a,
                    sgn(s, c.constants().N(d.neg(beta), alpha), s.mul(a, q)), p);
  w *= z2c_word(c, beta, d.neg(*diff), b,
                sgn(s, c.constants().N(d.neg(alpha), beta), s.mul(b, p)), q);
  return w;
}

std::vector<RelationId> chevalley_catalog() {
  return {RelationId::Add1, RelationId::Add2,  RelationId::Add3, RelationId::Conj1,
          RelationId::Mult, RelationId::Dis,   RelationId::Sym,  RelationId::Conj2,
          RelationId::Conj2p, RelationId::HW,  RelationId::Rel4};
}

RelationInstance chevalley_instance(const ChevContext& c, RelationId id,
                                    const InstanceArgs& args) {
  const RootDatum& d = c.phi();
  const FiniteRing& s = *c.ssc().ring;
  auto mul = [&](const Vec& x, const Vec& y) { return s.mul(x, y); };
  auto mul3 = [&](const Vec& x, const Vec& y, const Vec& z) { return s.mul(s.mul(x, y), z); };
  auto mul4 = [&](const Vec& x, const Vec& y, const Vec& z, const Vec& w) {
    return s.mul(s.mul(s.mul(x, y), z), w);
  };
  auto add = [&](const Vec& x, const Vec& y) { return s.add(x, y); };
  auto sub = [&](const Vec& x, const Vec& y) { return s.sub(x, y); };
  auto neg = [&](const Vec& x) { return s.neg(x); };

  auto root_at = [&](std::size_t pos, std::size_t need, const char* what) {
    if (args.idx.size() != need) throw Error(std::string(what) + ": wrong root count");
    int r = static_cast<int>(args.idx[pos]);
    if (r < 0 || r >= static_cast<int>(d.count())) throw Error(std::string(what) + ": bad root");
    return r;
  };
  auto arg2 = [&](const char* name) -> const Vec& {
    auto it = args.elts.find(name);
    if (it == args.elts.end())
      throw Error(std::string("chevalley_instance: missing argument ") + name);
    return it->second;
  };

  RelationInstance inst;
  inst.id = id;
  inst.args = args;
  Word& lhs = inst.lhs;
  Word& rhs = inst.rhs;

  switch (id) {
    case RelationId::Add1: {
      int alpha = root_at(0, 1, "Add1");
      const Vec &a = arg2("a"), &a2 = arg2("a'"), &p = arg2("p");
      lhs.push(chev_z(c, alpha, add(a, a2), p), 1);
      rhs.push(chev_z(c, alpha, a, p), 1);
      rhs.push(chev_z(c, alpha, a2, p), 1);
      break;
    }
    case RelationId::Add2: {
      int alpha = root_at(0, 2, "Add2"), beta = root_at(1, 2, "Add2");
      const Vec &a = arg2("a"), &a2 = arg2("a'"), &b = arg2("b"), &b2 = arg2("b'"),
                &p = arg2("p");
      lhs = z2c_word(c, alpha, beta, add(a, a2), add(b, b2), p);
      rhs = z2c_word(c, alpha, beta, a, b, p);
      rhs *= z2c_word(c, alpha, beta, a2, b2, p);
      break;
    }
    case RelationId::Add3: {
      int alpha = root_at(0, 2, "Add3"), beta = root_at(1, 2, "Add3");
      const Vec &a = arg2("a"), &a2 = arg2("a'"), &b = arg2("b"), &b2 = arg2("b'"),
                &p = arg2("p"), &q = arg2("q");
      lhs = z4c_word(c, alpha, beta, add(a, a2), add(b, b2), p, q);
      rhs = z4c_word(c, alpha, beta, a, b, p, q);
      rhs *= z4c_word(c, alpha, beta, a2, b2, p, q);
      break;
    }
    case RelationId::Conj1: {
      int alpha = root_at(0, 2, "Conj1"), beta = root_at(1, 2, "Conj1");
      auto ab = d.sum(alpha, beta);
      if (!ab) throw Error("Conj1: requires alpha + beta to be a root");
      int e = c.constants().N(alpha, beta);
      const Vec &cc = arg2("c"), &r = arg2("r"), &a = arg2("a"), &b = arg2("b");
      Word inner = word_of(chev_x(c, *ab, a));
      inner.push(chev_x(c, beta, b), 1);
      lhs = Word::conjugate(word_of(chev_z(c, alpha, cc, r)), inner);
      rhs.push(chev_x(c, *ab, sub(add(a, sgn(s, e, mul(b, cc))), mul3(a, cc, r))), 1);
      rhs.push(chev_x(c, beta, sub(add(b, mul3(b, cc, r)), sgn(s, e, mul4(a, cc, r, r)))), 1);
      break;
    }
    case RelationId::Mult: {
      int alpha = root_at(0, 2, "Mult"), beta = root_at(1, 2, "Mult");
      auto ab = d.sum(alpha, beta);
      if (!ab) throw Error("Mult: requires alpha + beta to be a root");
      int e = c.constants().N(alpha, beta);
      const Vec &a = arg2("a"), &b = arg2("b"), &p = arg2("p");
      Word u = word_of(chev_x(c, d.neg(beta), sgn(s, e, mul(a, p))));
      u.push(chev_x(c, alpha, a), 1);
      Word v = word_of(chev_x(c, beta, b));
      v.push(chev_x(c, d.neg(alpha), neg(sgn(s, e, mul(b, p)))), 1);
      lhs = Word::commutator(u, v);
      rhs.push(chev_z(c, *ab, mul(a, b), p), 1);
      break;
    }
    case RelationId::Dis: {
      int alpha = root_at(0, 2, "Dis"), beta = root_at(1, 2, "Dis");
      if (d.inner(alpha, beta) != 0) throw Error("Dis: requires alpha perpendicular to beta");
      lhs = Word::commutator(word_of(chev_z(c, alpha, arg2("a"), arg2("p"))),
                             word_of(chev_z(c, beta, arg2("b"), arg2("q"))));
      break;
    }
    case RelationId::Sym: {
      int alpha = root_at(0, 2, "Sym"), beta = root_at(1, 2, "Sym");
      const Vec &a = arg2("a"), &b = arg2("b"), &p = arg2("p"), &q = arg2("q");
      lhs = z4c_word(c, alpha, beta, a, b, p, q);
      rhs = z4c_word(c, beta, alpha, b, a, q, p);
      break;
    }
    case RelationId::Conj2:
    case RelationId::Conj2p: {
      const char* what = id == RelationId::Conj2 ? "Conj2" : "Conj2'";
      int alpha = root_at(0, 2, what), beta = root_at(1, 2, what);
      auto ab = d.sum(alpha, beta);
      if (!ab) throw Error(std::string(what) + ": requires alpha + beta to be a root");
      int e = c.constants().N(alpha, beta);
      const Vec &cc = arg2("c"), &r = arg2("r"), &a = arg2("a"), &b = arg2("b"),
                &p = arg2("p"), &q = arg2("q");
      lhs = Word::conjugate(word_of(chev_z(c, alpha, cc, r)),
                            z4c_word(c, *ab, beta, a, b, p, q));
      Vec na = sub(add(a, sgn(s, e, mul(b, cc))), mul3(a, cc, r));
      Vec nb = sub(add(b, mul3(b, cc, r)), sgn(s, e, mul4(a, cc, r, r)));
      Vec u = add(mul3(cc, p, r), sgn(s, e, mul4(cc, q, r, r)));
      Vec v = add(sgn(s, e, mul(cc, p)), mul3(cc, q, r));
      if (id == RelationId::Conj2) {
        Word outer = word_of(chev_x(c, d.neg(*ab), u));
        outer.push(chev_x(c, d.neg(beta), neg(v)), 1);
        rhs = Word::conjugate(outer, z4c_word(c, *ab, beta, na, nb, p, q));
      } else {
        rhs = z4c_word(c, *ab, beta, na, nb, add(p, c.d_of(u)), sub(q, c.d_of(v)));
      }
      break;
    }
    case RelationId::HW: {
      int alpha = root_at(0, 2, "HW"), beta = root_at(1, 2, "HW");
      auto ab = d.sum(alpha, beta);
      if (!ab) throw Error("HW: requires alpha + beta to be a root");
      int e = c.constants().N(alpha, beta);
      const Vec &a = arg2("a"), &p = arg2("p"), &q = arg2("q"), &r = arg2("r");
      lhs = z4c_word(c, *ab, beta, a, sgn(s, e, mul(a, q)), sub(r, sgn(s, e, mul(p, q))), p);
      rhs = z4c_word(c, alpha, *ab, neg(sgn(s, e, mul(a, p))), a, q, r);
      break;
    }
    case RelationId::Rel4: {
      int alpha = root_at(0, 1, "Rel4");
      const Vec &a = arg2("a"), &p = arg2("p"), &b = arg2("b");
      lhs.push(chev_z(c, alpha, a, add(p, c.d_of(b))), 1);
      rhs.push(chev_x(c, d.neg(alpha), b), 1);
      rhs.push(chev_z(c, alpha, a, p), 1);
      rhs.push(chev_x(c, d.neg(alpha), neg(b)), 1);
      break;
    }
    default:
      throw Error(std::string("chevalley_instance: ") + relation_name(id) +
                  " is not in the simply laced catalog");
  }
  return inst;
}

RelationInstance sample_chevalley_instance(const ChevContext& c, RelationId id, Rng& rng) {
  const RootDatum& d = c.phi();
  const std::size_t cnt = d.count();
  InstanceArgs a;
  auto A = [&] { return c.sample_a(rng); };
  auto K = [&] { return c.sample_k(rng); };

  auto pick_pair = [&](auto&& ok) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      int x = static_cast<int>(rng.below(cnt));
      int y = static_cast<int>(rng.below(cnt));
      if (ok(x, y)) return std::pair<int, int>(x, y);
    }
    throw Error("sample_chevalley_instance: no admissible root pair");
  };
  auto sum_pair = [&] {
    return pick_pair([&](int x, int y) { return d.sum(x, y).has_value(); });
  };
  auto diff_pair = [&] {
    return pick_pair([&](int x, int y) { return d.sum(x, d.neg(y)).has_value(); });
  };
  auto perp_pair = [&] {
    return pick_pair([&](int x, int y) { return d.inner(x, y) == 0; });
  };

  switch (id) {
    case RelationId::Add1: {
      a.idx = {rng.below(cnt)};
      a.elts["a"] = A();
      a.elts["a'"] = A();
      a.elts["p"] = K();
      break;
    }
    case RelationId::Add2: {
      auto [x, y] = diff_pair();
      a.idx = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
      a.elts["a"] = A();
      a.elts["a'"] = A();
      a.elts["b"] = A();
      a.elts["b'"] = A();
      a.elts["p"] = K();
      break;
    }
    case RelationId::Add3:
    case RelationId::Sym: {
      auto [x, y] = diff_pair();
      a.idx = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
      a.elts["a"] = A();
      a.elts["b"] = A();
      a.elts["p"] = K();
      a.elts["q"] = K();
      if (id == RelationId::Add3) {
        a.elts["a'"] = A();
        a.elts["b'"] = A();
      }
      break;
    }
    case RelationId::Conj1: {
      auto [x, y] = sum_pair();
      a.idx = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
      a.elts["c"] = A();
      a.elts["r"] = K();
      a.elts["a"] = A();
      a.elts["b"] = A();
      break;
    }
    case RelationId::Mult: {
      auto [x, y] = sum_pair();
      a.idx = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
      a.elts["a"] = A();
      a.elts["b"] = A();
      a.elts["p"] = K();
      break;
    }
    case RelationId::Dis: {
      auto [x, y] = perp_pair();
      a.idx = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
      a.elts["a"] = A();
      a.elts["p"] = K();
      a.elts["b"] = A();
      a.elts["q"] = K();
      break;
    }
    case RelationId::Conj2:
    case RelationId::Conj2p: {
      auto [x, y] = sum_pair();
      a.idx = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
      a.elts["c"] = A();
      a.elts["r"] = K();
      a.elts["a"] = A();
      a.elts["b"] = A();
      a.elts["p"] = K();
      a.elts["q"] = K();
      break;
    }
    case RelationId::HW: {
      auto [x, y] = sum_pair();
      a.idx = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
      a.elts["a"] = A();
      a.elts["p"] = K();
      a.elts["q"] = K();
      a.elts["r"] = K();
      break;
    }
    case RelationId::Rel4: {
      a.idx = {rng.below(cnt)};
      a.elts["a"] = A();
      a.elts["p"] = K();
      a.elts["b"] = A();
      break;
    }
    default:
      throw Error(std::string("sample_chevalley_instance: cannot sample ") + relation_name(id));
  }
  return chevalley_instance(c, id, a);
}

// ---------------------------------------------------------------------------
// Transport and verification

namespace {

Vec place_scalar_a(const ChevContext& c, const Vec& scalar_coords, std::size_t u,
                   std::size_t v, int sign) {
  const Algebra& sa = c.scalar().alg;
  const Algebra& ha = c.host()->cm().alg;
  Vec coords = sign < 0 ? sa.neg(scalar_coords) : scalar_coords;
  Vec out(ha.dim, 0);
  for (std::size_t s = 0; s < sa.dim; ++s) out[(u * 4 + v) * sa.dim + s] = coords[s];
  return c.host()->sd().embed_a(out);
}

Vec place_scalar_r(const ChevContext& c, const Vec& k_coords, std::size_t u, std::size_t v,
                   int sign) {
  const RingPtr& kr = c.scalar().alg.ring;
  const FiniteRing& hr = *c.host()->R();
  Vec coords = sign < 0 ? kr->neg(k_coords) : k_coords;
  Vec out(hr.dim(), 0);
  for (std::size_t s = 0; s < kr->dim(); ++s) out[(u * 4 + v) * kr->dim() + s] = coords[s];
  return c.host()->sd().embed_r(out);
}

}  // namespace

Word transport(const ChevContext& c, const SubsystemEmbedding& emb, const Word& w) {
  const LinearContext& host = *c.host();
  const RootDatum& d = c.phi();
  Word out;
  for (const auto& t : w.terms()) {
    const GenSymbol& s = t.sym;
    auto it = emb.pair_of.find(s.root);
    if (it == emb.pair_of.end())
      throw Error("transport: symbol root outside the embedded subsystem");
    auto [u, v] = it->second;
    if (s.kind == SymKind::ChevZ) {
      int chi = emb.chi.at(s.root);
      int chi_m = emb.chi.at(d.neg(s.root));
      Vec pay = place_scalar_a(c, c.ssc().a_of(s.payload), u, v, chi);
      Vec par = host.S().add(place_scalar_a(c, c.ssc().a_of(s.param), v, u, chi_m),
                             place_scalar_r(c, c.ssc().r_of(s.param), v, u, chi_m));
      out.push(zsym(host, u, v, pay, par), t.exp);
    } else if (s.kind == SymKind::ChevX) {
      int chi = emb.chi.at(s.root);
      out.push(rsym(host, u, v, place_scalar_r(c, c.ssc().r_of(s.payload), u, v, chi)), t.exp);
    } else {
      throw Error("transport: word already lives in the linear model");
    }
  }
  return out;
}

ChevVerdict verify_chevalley_instance(const ChevContext& c, const RelationInstance& inst) {
  ChevVerdict v;
  v.id = inst.id;
  std::set<int> support;
  for (const Word* w : {&inst.lhs, &inst.rhs})
    for (const auto& t : w->terms()) support.insert(t.sym.root);

  const RootDatum& d = c.phi();
  std::vector<int> sup(support.begin(), support.end());
  if (sup.empty()) {
    v.pass = true;
    v.support_type = "A1";
    v.support_rank_le2 = true;
    return v;
  }
  std::vector<int> closure = subsystem_closure(d, sup);
  v.support_type = classify_subsystem(d, closure);
  v.support_rank_le2 = subsystem_rank(d, closure) <= 2 &&
                       (v.support_type == "A1" || v.support_type == "A1xA1" ||
                        v.support_type == "A2");

  auto delta = ambient_a_subsystem(d, sup);
  if (!delta) {
    v.pass = false;
    v.note = "no A-type subsystem of rank <= 3 contains the support";
    return v;
  }
  v.delta = *delta;
  const SubsystemEmbedding& emb = c.embedding_for(*delta);
  Word lhs = transport(c, emb, inst.lhs);
  Word rhs = transport(c, emb, inst.rhs);
  Unit l = eval_word(*c.host(), lhs);
  Unit r = eval_word(*c.host(), rhs);
  v.pass = l.u == r.u;
  if (!v.pass) v.note = "transported evaluations differ";
  return v;
}

}  // namespace relst
