#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relst/eval.hpp"
#include "relst/words.hpp"

using namespace relst;

namespace {

CtxPtr small_ctx() {
  RingPtr z4 = cyclic_ring(4);
  RingPtr m4 = matrix_ring(4, z4);
  CrossedModule cm = ideal_crossed_module(m4, {m4->scalar_mul(2, m4->one())});
  IdempotentFamily fam = block_family(m4, 4, z4, {{0}, {1}, {2}, {3}});
  return LinearContext::make(m4, std::move(cm), std::move(fam), "Mat(4,Z/4)/2");
}

}  // namespace

TEST_CASE("free reduction") {
  CtxPtr ctx = small_ctx();
  const LinearContext& c = *ctx;
  Rng rng(21);

  SUBCASE("w * w^{-1} reduces to the empty word") {
    for (int t = 0; t < 30; ++t) {
      Word w = random_z_word(c, rng, 4);
      CHECK((w * w.inverse()).empty());
      CHECK((w.inverse() * w).empty());
    }
  }
  SUBCASE("zero payloads are dropped") {
    Word w;
    w.push(zsym(c, 0, 1, c.S().zero(), c.sample_r(1, 0, rng)), 1);
    CHECK(w.empty());
  }
  SUBCASE("inserting a cancelling pair anywhere gives the same normal form") {
    for (int t = 0; t < 40; ++t) {
      Word w = random_z_word(c, rng, 4);
      GenSymbol extra = zsym(c, 1, 2, c.sample_a(1, 2, rng), c.sample_r(2, 1, rng));
      std::size_t cut = rng.below(w.size() + 1);
      Word rebuilt;
      std::size_t at = 0;
      for (const auto& term : w.terms()) {
        if (at++ == cut) {
          rebuilt.push(extra, 1);
          rebuilt.push(extra, -1);
        }
        rebuilt.push(term.sym, term.exp);
      }
      if (at == cut) {
        rebuilt.push(extra, 1);
        rebuilt.push(extra, -1);
      }
      CHECK(rebuilt == w);
    }
  }
}

TEST_CASE("abbreviation expansions") {
  CtxPtr ctx = small_ctx();
  const LinearContext& c = *ctx;
  Rng rng(5);
  Vec a = c.sample_a(0, 1, rng);
  Vec b = c.sample_a(0, 2, rng);
  Vec p = c.sample_r(1, 0, rng);
  while (c.S().is_zero(a)) a = c.sample_a(0, 1, rng);
  while (c.S().is_zero(b)) b = c.sample_a(0, 2, rng);
  while (c.S().is_zero(p)) p = c.sample_r(1, 0, rng);
  // Z4 slots: z_{0+1,2}(a4, b4; p4, q4) with a4 in A(0,2), b4 in A(1,2)
  Vec a4 = c.sample_a(0, 2, rng);
  Vec b4 = c.sample_a(1, 2, rng);
  Vec p4 = c.sample_r(2, 0, rng);
  Vec q4 = c.sample_r(2, 1, rng);

  SUBCASE("Z2 with b = 0, p = 0 is a single x-symbol") {
    Word w = z2_word(c, 0, 1, 2, a, c.S().zero(), c.S().zero());
    REQUIRE(w.size() == 1);
    CHECK(c.S().is_zero(w.terms()[0].sym.param));
  }
  SUBCASE("Z4 with a = b = 0 reduces to the empty word") {
    Word w = z4_word(c, 0, 1, 2, c.S().zero(), c.S().zero(), p4, q4);
    CHECK(w.empty());
  }
  SUBCASE("generic Z2 is the printed three-symbol word") {
    Word w = z2_word(c, 0, 1, 2, a, b, p);
    REQUIRE(w.size() == 3);
    CHECK(w.terms()[0].sym.i == 0);
    CHECK(w.terms()[0].sym.j == 1);
    CHECK(w.terms()[0].sym.param == p);
    CHECK(w.terms()[1].sym.i == 0);
    CHECK(w.terms()[1].sym.j == 2);
    CHECK(w.terms()[1].sym.payload == b);
    CHECK(w.terms()[2].sym.i == 1);
    CHECK(w.terms()[2].sym.j == 2);
    CHECK(w.terms()[2].sym.payload == c.S().mul(p, b));
  }
  SUBCASE("expand_abbreviation dispatches to the same words") {
    CHECK(expand_abbreviation(c, AbbrevTag::Z2, {0, 1, 2}, {a, b}, {p}) ==
          z2_word(c, 0, 1, 2, a, b, p));
    CHECK(expand_abbreviation(c, AbbrevTag::Z4, {0, 1, 2}, {a4, b4}, {p4, q4}) ==
          z4_word(c, 0, 1, 2, a4, b4, p4, q4));
  }
  SUBCASE("component mismatch is rejected") {
    CHECK_THROWS_AS(z2_word(c, 0, 1, 2, b, a, p), Error);
  }
}

TEST_CASE("relation instances") {
  CtxPtr ctx = small_ctx();
  const LinearContext& c = *ctx;
  Rng rng(7);

  SUBCASE("St1 with zero payloads gives empty words on both sides") {
    InstanceArgs args;
    args.idx = {0, 1};
    args.elts["a"] = c.S().zero();
    args.elts["a'"] = c.S().zero();
    RelationInstance inst = relation_instance(c, RelationId::St1, args);
    CHECK(inst.lhs.empty());
    CHECK(inst.rhs.empty());
  }
  SUBCASE("Dis over (0,1),(2,3) is a commutator against the empty word") {
    InstanceArgs args;
    args.idx = {0, 1, 2, 3};
    args.elts["a"] = c.sample_a(0, 1, rng);
    args.elts["p"] = c.sample_r(1, 0, rng);
    args.elts["b"] = c.sample_a(2, 3, rng);
    args.elts["q"] = c.sample_r(3, 2, rng);
    RelationInstance inst = relation_instance(c, RelationId::Dis, args);
    CHECK(inst.rhs.empty());
    CHECK(inst.lhs.size() <= 4);
  }
  SUBCASE("HW with a = 0 reduces both sides to the empty word") {
    InstanceArgs args;
    args.idx = {0, 1, 2};
    args.elts["a"] = c.S().zero();
    args.elts["p"] = c.sample_r(2, 1, rng);
    args.elts["q"] = c.sample_r(1, 0, rng);
    args.elts["r"] = c.sample_r(2, 0, rng);
    RelationInstance inst = relation_instance(c, RelationId::HW, args);
    CHECK(inst.lhs.empty());
    CHECK(inst.rhs.empty());
  }
  SUBCASE("Dis rejects repeated indices") {
    InstanceArgs args;
    args.idx = {0, 1, 0, 2};
    args.elts["a"] = c.sample_a(0, 1, rng);
    args.elts["p"] = c.sample_r(1, 0, rng);
    args.elts["b"] = c.sample_a(0, 2, rng);
    args.elts["q"] = c.sample_r(2, 0, rng);
    CHECK_THROWS_AS(relation_instance(c, RelationId::Dis, args), Error);
  }
}

TEST_CASE("random_instances determinism and membership") {
  CtxPtr ctx = small_ctx();
  const LinearContext& c = *ctx;

  SUBCASE("count zero gives the empty list") {
    CHECK(random_instances(c, {RelationId::HW}, 0, 5).empty());
  }
  SUBCASE("same seed, same instances") {
    auto a = random_instances(c, {RelationId::HW, RelationId::Conj2}, 10, 977);
    auto b = random_instances(c, {RelationId::HW, RelationId::Conj2}, 10, 977);
    REQUIRE(a.size() == b.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
      CHECK(a[t].lhs == b[t].lhs);
      CHECK(a[t].rhs == b[t].rhs);
    }
    auto other = random_instances(c, {RelationId::HW, RelationId::Conj2}, 10, 978);
    bool same = true;
    for (std::size_t t = 0; t < a.size(); ++t)
      if (!(a[t].lhs == other[t].lhs)) same = false;
    CHECK(!same);
  }
  SUBCASE("sampled payloads respect their Peirce components") {
    auto insts = random_instances(c, linear_catalog(), 3, 31);
    for (const auto& inst : insts)
      for (const Word* w : {&inst.lhs, &inst.rhs})
        for (const auto& t : w->terms()) {
          const GenSymbol& s = t.sym;
          if (s.kind == SymKind::LinZ) {
            CHECK(c.in_comp_a(s.i, s.j, s.payload));
            CHECK(c.in_comp_s(s.j, s.i, s.param));
          } else if (s.kind == SymKind::LinX) {
            CHECK(c.in_comp_s(s.i, s.j, s.payload));
          }
        }
  }
}

TEST_CASE("transposition") {
  CtxPtr ctx = small_ctx();
  const LinearContext& c = *ctx;
  CtxPtr op = opposite_context(ctx);
  Rng rng(23);

  SUBCASE("transpose of the empty word is empty") {
    CHECK(transpose_word(Word{}).empty());
  }
  SUBCASE("applying transpose twice returns the original word") {
    for (int t = 0; t < 100; ++t) {
      Word w = random_z_word(c, rng, 4);
      CHECK(transpose_word(transpose_word(w)) == w);
    }
  }
  SUBCASE("transpose is an evaluation-level anti-isomorphism onto the opposite context") {
    for (int t = 0; t < 30; ++t) {
      Word v = random_z_word(c, rng, 2);
      Word w = random_z_word(c, rng, 2);
      // T(vw) = T(w) T(v) at evaluation level over R^op
      Unit lhs = eval_word(*op, transpose_word(v * w));
      Unit rhs = unit_mul(*op, eval_word(*op, transpose_word(w)), eval_word(*op, transpose_word(v)));
      CHECK(lhs.u == rhs.u);
    }
  }
}

TEST_CASE("conjugation algorithm") {
  CtxPtr ctx = small_ctx();
  const LinearContext& c = *ctx;
  const FiniteRing& s = c.S();
  Rng rng(41);

  SUBCASE("empty conjugator returns h unchanged") {
    Vec a = c.sample_a(0, 1, rng);
    Word h = word_of(xsym(c, 0, 1, a));
    CHECK(conjugation_form(c, {}, h) == h);
  }
  SUBCASE("the defining base case produces a z-symbol") {
    Vec a = c.sample_a(0, 1, rng);
    Vec p = c.sample_r(1, 0, rng);
    while (s.is_zero(a)) a = c.sample_a(0, 1, rng);
    Word got = conjugation_form(c, {{IndexRoot{1, 0}, p}}, word_of(xsym(c, 0, 1, a)));
    REQUIRE(got.size() == 1);
    CHECK(got.terms()[0].sym.i == 0);
    CHECK(got.terms()[0].sym.j == 1);
    CHECK(got.terms()[0].sym.payload == a);
    CHECK(got.terms()[0].sym.param == p);
  }
  SUBCASE("two-factor conjugator matches the Z4 expansion at evaluation level") {
    Vec a = c.sample_a(0, 2, rng);
    Vec b = c.sample_a(1, 2, rng);
    Vec p = c.sample_r(2, 0, rng);
    Vec q = c.sample_r(2, 1, rng);
    Word h = word_of(xsym(c, 0, 2, a));
    h.push(xsym(c, 1, 2, b), 1);
    Word got = conjugation_form(c, {{IndexRoot{2, 0}, p}, {IndexRoot{2, 1}, q}}, h);
    Word want = z4_word(c, 0, 1, 2, a, b, p, q);
    CHECK(eval_word(c, got).u == eval_word(c, want).u);
  }
  SUBCASE("evaluation shadow and order independence on random data") {
    for (int t = 0; t < 60; ++t) {
      RootSet sigma = random_special_closed(c.n(), rng, 2);
      std::vector<UnipotentFactor> g;
      for (const auto& r : sigma) g.push_back({r, c.sample_r(r.i, r.j, rng)});
      for (std::size_t i = g.size(); i > 1; --i) std::swap(g[i - 1], g[rng.below(i)]);
      std::size_t hi = rng.below(c.n()), hj = rng.below(c.n());
      if (hi == hj) hj = (hj + 1) % c.n();
      Word h = word_of(xsym(c, hi, hj, c.sample_a(hi, hj, rng)));

      Word w1 = conjugation_form(c, g, h, ExtremePolicy::LexLeast);
      Word w2 = conjugation_form(c, g, h, ExtremePolicy::LexGreatest);
      Unit eg = unit_one(c);
      for (const auto& f : g)
        eg = unit_mul(c, eg, {s.add(s.one(), f.param), s.sub(s.one(), f.param)});
      Vec want = s.mul(eg.u, s.mul(eval_word(c, h).u, eg.uinv));
      CHECK(eval_word(c, w1).u == want);
      CHECK(eval_word(c, w2).u == want);
    }
  }
  SUBCASE("errors on bad input") {
    Vec p = c.sample_r(1, 0, rng);
    Vec q = c.sample_r(0, 1, rng);
    while (s.is_zero(p)) p = c.sample_r(1, 0, rng);
    while (s.is_zero(q)) q = c.sample_r(0, 1, rng);
    Word h = word_of(xsym(c, 2, 3, c.sample_a(2, 3, rng)));
    CHECK_THROWS_AS(
        conjugation_form(c, {{IndexRoot{1, 0}, p}, {IndexRoot{0, 1}, q}}, h), Error);
  }
}
