#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relst/eval.hpp"

using namespace relst;

namespace {

// Independent oracle: dense matrices over Z/m, multiplied entry by entry.
struct Dense {
  std::size_t n = 0;
  u64 m = 0;
  std::vector<u64> e;  // row major

  static Dense zero(std::size_t n, u64 m) { return {n, m, std::vector<u64>(n * n, 0)}; }
  static Dense one(std::size_t n, u64 m) {
    Dense d = zero(n, m);
    for (std::size_t i = 0; i < n; ++i) d.e[i * n + i] = 1;
    return d;
  }
  u64& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
  u64 at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
  Dense mul(const Dense& o) const {
    Dense r = zero(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
          r.e[i * n + j] = (r.e[i * n + j] + e[i * n + k] * o.e[k * n + j]) % m;
    return r;
  }
  Dense add(const Dense& o) const {
    Dense r = *this;
    for (std::size_t t = 0; t < e.size(); ++t) r.e[t] = (r.e[t] + o.e[t]) % m;
    return r;
  }
  Dense sub(const Dense& o) const {
    Dense r = *this;
    for (std::size_t t = 0; t < e.size(); ++t) r.e[t] = (r.e[t] + m - o.e[t] % m) % m;
    return r;
  }
  friend bool operator==(const Dense&, const Dense&) = default;
};

struct Fixture {
  std::size_t n;
  u64 m;
  RingPtr base, mat;
  CtxPtr ctx;

  Fixture(std::size_t n_, u64 m_, u64 ideal_scalar) : n(n_), m(m_) {
    base = cyclic_ring(m);
    mat = matrix_ring(n, base);
    CrossedModule cm = ideal_crossed_module(mat, {mat->scalar_mul(ideal_scalar, mat->one())});
    IdempotentFamily fam;
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
    fam = block_family(mat, n, base, blocks);
    ctx = LinearContext::make(mat, std::move(cm), std::move(fam), "fixture");
  }

  // the honest matrix image of an element of S = A x| R (d is an inclusion)
  Dense dense_of(const Vec& s) const {
    const SemidirectRing& sd = ctx->sd();
    Vec r = ctx->R()->add(ctx->cm().d(sd.a_of(s)), sd.r_of(s));
    Dense d = Dense::zero(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d.at(i, j) = r[(i * n + j)];
    return d;
  }

  Vec embed_r_entry(std::size_t i, std::size_t j, u64 v) const {
    Vec r = ctx->R()->zero();
    r[i * n + j] = v % m;
    return ctx->sd().embed_r(r);
  }

  // the A-part element whose matrix image has a single entry v at (i, j)
  Vec embed_a_entry(std::size_t i, std::size_t j, u64 v) const {
    Dense want = Dense::zero(n, m);
    want.at(i, j) = v % m;
    for (const Vec& cand : all_elements(ctx->comp_a(i, j), 1u << 20)) {
      if (dense_of(cand) == want) return cand;
    }
    throw Error("embed_a_entry: no ideal element with that image");
  }
};

}  // namespace

TEST_CASE("eval_symbol against the dense matrix oracle") {
  Fixture f(3, 4, 2);  // Mat(3, Z/4), A = 2 Mat(3, Z/4)
  const LinearContext& c = *f.ctx;

  SUBCASE("zero payload evaluates to 1") {
    Vec p = f.embed_r_entry(1, 0, 3);
    Unit u = eval_symbol(c, zsym(c, 0, 1, c.S().zero(), p));
    CHECK(u.u == c.S().one());
  }
  SUBCASE("x-generator evaluates to 1 + a") {
    Vec a = f.embed_a_entry(0, 1, 2);
    Unit u = eval_symbol(c, xsym(c, 0, 1, a));
    CHECK(f.dense_of(u.u) == Dense::one(3, 4).add(f.dense_of(a)));
  }
  SUBCASE("a = 2E_12, p = E_21 gives the corner block [[3,2],[2,3]]") {
    Vec a = f.embed_a_entry(0, 1, 2);
    Vec p = f.embed_r_entry(1, 0, 1);
    Unit u = eval_symbol(c, zsym(c, 0, 1, a, p));
    Dense got = f.dense_of(u.u);
    Dense want = Dense::one(3, 4);
    want.at(0, 0) = 3;
    want.at(0, 1) = 2;
    want.at(1, 0) = 2;
    want.at(1, 1) = 3;
    CHECK(got == want);
    // the same unit through the dense oracle: (1+E_21)(1+2E_12)(1-E_21)
    Dense e21 = Dense::zero(3, 4);
    e21.at(1, 0) = 1;
    Dense a12 = Dense::zero(3, 4);
    a12.at(0, 1) = 2;
    Dense lhs = Dense::one(3, 4).add(e21).mul(Dense::one(3, 4).add(a12)).mul(
        Dense::one(3, 4).sub(e21));
    CHECK(got == lhs);
  }
  SUBCASE("the result lies in 1 + A") {
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
      std::size_t i = rng.below(3), j = rng.below(3);
      if (i == j) continue;
      Unit u = eval_symbol(c, zsym(c, i, j, c.sample_a(i, j, rng), c.sample_r(j, i, rng)));
      Vec diff = c.S().sub(u.u, c.S().one());
      CHECK(c.sd().pure_a(diff));
    }
  }
}

TEST_CASE("eval_word is a unit-group homomorphism") {
  Fixture f(4, 8, 2);
  const LinearContext& c = *f.ctx;
  Rng rng(11);

  SUBCASE("empty word evaluates to 1") {
    CHECK(eval_word(c, Word{}).u == c.S().one());
  }
  SUBCASE("St2 matrix identity: [x_12(p), x_23(q)] = x_13(pq) under evaluation") {
    Vec a = f.embed_a_entry(0, 1, 2);
    Vec b = f.embed_a_entry(1, 2, 2);
    Word lhs = Word::commutator(word_of(xsym(c, 0, 1, a)), word_of(xsym(c, 1, 2, b)));
    Word rhs = word_of(xsym(c, 0, 2, c.S().mul(a, b)));
    CHECK(eval_word(c, lhs).u == eval_word(c, rhs).u);
  }
  SUBCASE("eval(vw) = eval(v) eval(w) and eval(w w^{-1}) = 1 on random words") {
    for (int t = 0; t < 100; ++t) {
      Word v = random_z_word(c, rng, 3);
      Word w = random_z_word(c, rng, 3);
      Unit ev = eval_word(c, v), ew = eval_word(c, w);
      CHECK(eval_word(c, v * w).u == c.S().mul(ev.u, ew.u));
      CHECK(eval_word(c, w * w.inverse()).u == c.S().one());
      CHECK(c.S().mul(ew.u, ew.uinv) == c.S().one());
    }
  }
}

TEST_CASE("verify_instance") {
  Fixture f(4, 8, 2);
  const LinearContext& c = *f.ctx;
  Rng rng(5);

  SUBCASE("a sampled catalog instance passes") {
    RelationInstance inst = sample_instance(c, RelationId::HW, rng);
    CHECK(verify_instance(c, inst).pass);
  }
  SUBCASE("Rel4 with b = 0 passes trivially (identical words)") {
    InstanceArgs args;
    args.idx = {0, 1};
    args.elts["a"] = c.sample_a(0, 1, rng);
    args.elts["p"] = c.sample_r(1, 0, rng);
    args.elts["b"] = c.S().zero();
    RelationInstance inst = relation_instance(c, RelationId::Rel4, args);
    CHECK(inst.lhs == inst.rhs);
    CHECK(verify_instance(c, inst).pass);
  }
  SUBCASE("a corrupted HW instance fails") {
    // flip the sign of one payload of a nontrivial instance
    for (int t = 0; t < 50; ++t) {
      RelationInstance inst = sample_instance(c, RelationId::HW, rng);
      if (inst.lhs.empty() || inst.rhs.empty()) continue;
      Word bad;
      bool flipped = false;
      for (const auto& term : inst.lhs.terms()) {
        GenSymbol s = term.sym;
        if (!flipped && !c.S().is_zero(s.payload)) {
          s.payload = c.S().neg(s.payload);
          // only a genuine change counts (payload != its own negative)
          if (s.payload != term.sym.payload) flipped = true;
        }
        bad.push(s, term.exp);
      }
      if (!flipped) continue;
      RelationInstance mutated = inst;
      mutated.lhs = bad;
      CHECK(!verify_instance(c, mutated).pass);
      return;
    }
    FAIL("no mutatable instance found");
  }
}

TEST_CASE("diagonal action") {
  Fixture f(4, 8, 2);
  const LinearContext& c = *f.ctx;
  Rng rng(19);

  SUBCASE("identity acts trivially") {
    GenSymbol z = zsym(c, 0, 1, c.sample_a(0, 1, rng), c.sample_r(1, 0, rng));
    GenSymbol got = diag_act(c, c.S().one(), c.S().one(), z);
    CHECK(got == z);
  }
  SUBCASE("equivariance: eval(^r z) = r eval(z) r^{-1}") {
    for (int t = 0; t < 25; ++t) {
      auto [r, rinv] = c.sample_diag_unit(rng);
      GenSymbol z = zsym(c, 1, 2, c.sample_a(1, 2, rng), c.sample_r(2, 1, rng));
      GenSymbol az = diag_act(c, r, rinv, z);
      Vec want = c.S().mul(r, c.S().mul(eval_symbol(c, z).u, rinv));
      CHECK(eval_symbol(c, az).u == want);
    }
  }
  SUBCASE("the action is multiplicative in r") {
    for (int t = 0; t < 15; ++t) {
      auto [r1, r1i] = c.sample_diag_unit(rng);
      auto [r2, r2i] = c.sample_diag_unit(rng);
      GenSymbol z = zsym(c, 0, 3, c.sample_a(0, 3, rng), c.sample_r(3, 0, rng));
      GenSymbol once = diag_act(c, c.S().mul(r1, r2), c.S().mul(r2i, r1i), z);
      GenSymbol twice = diag_act(c, r1, r1i, diag_act(c, r2, r2i, z));
      CHECK(once == twice);
    }
  }
  SUBCASE("non-diagonal conjugators are rejected") {
    Vec r = c.S().add(c.S().one(), f.embed_r_entry(0, 1, 1));
    Vec rinv = c.S().sub(c.S().one(), f.embed_r_entry(0, 1, 1));
    GenSymbol z = zsym(c, 2, 3, c.sample_a(2, 3, rng), c.sample_r(3, 2, rng));
    CHECK_THROWS_AS(diag_act(c, r, rinv, z), Error);
  }
}

TEST_CASE("unipotent factorization") {
  Fixture f(4, 8, 2);
  const LinearContext& c = *f.ctx;
  const FiniteRing& s = c.S();
  Rng rng(29);

  SUBCASE("the identity factors with all payloads zero") {
    std::vector<IndexRoot> order{{0, 1}, {0, 2}};
    auto pay = unipotent_factorization(c, s.one(), order);
    REQUIRE(pay.has_value());
    for (const Vec& p : *pay) CHECK(s.is_zero(p));
  }
  SUBCASE("two-factor product is read back exactly") {
    Vec a = c.sample_a(0, 1, rng);
    Vec b = c.sample_a(0, 2, rng);
    Vec u = s.mul(s.add(s.one(), a), s.add(s.one(), b));
    auto pay = unipotent_factorization(c, u, {{0, 1}, {0, 2}});
    REQUIRE(pay.has_value());
    CHECK((*pay)[0] == a);
    CHECK((*pay)[1] == b);
  }
  SUBCASE("multiply-then-factor round trip over random special closed sets") {
    for (int t = 0; t < 500; ++t) {
      RootSet sigma = random_special_closed(c.n(), rng, 3);
      std::vector<IndexRoot> order(sigma.begin(), sigma.end());
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      std::vector<Vec> params;
      Vec u = s.one();
      for (const auto& r : order) {
        params.push_back(c.sample_s(r.i, r.j, rng));
        u = s.mul(u, s.add(s.one(), params.back()));
      }
      auto pay = unipotent_factorization(c, u, order);
      REQUIRE(pay.has_value());
      CHECK(*pay == params);
    }
  }
  SUBCASE("elements outside the image are reported absent") {
    Vec u = s.add(s.one(), f.embed_a_entry(2, 3, 2));
    CHECK(!unipotent_factorization(c, u, {{0, 1}, {0, 2}}).has_value());
  }
}
