#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relst/chevalley.hpp"

using namespace relst;

namespace {

ChevPtr make_chev(const std::string& system, u64 m, u64 scalar,
                  std::vector<std::pair<int, int>> orientation = {}) {
  RingPtr k = cyclic_ring(m);
  CrossedModule cm = ideal_crossed_module(k, {Vec{scalar}});
  return ChevContext::make(root_datum_by_name(system), std::move(cm), std::move(orientation));
}

std::vector<std::pair<int, int>> reversed_orientation(const RootDatum& d) {
  std::vector<std::pair<int, int>> out;
  for (auto [i, j] : d.dynkin_edges()) out.emplace_back(j, i);
  return out;
}

}  // namespace

TEST_CASE("sign identities of the constants table") {
  SUBCASE("A2, both orientations, exhaustively") {
    for (bool rev : {false, true}) {
      DatumPtr d = build_root_datum('A', 2);
      StructureConstants sc =
          build_constants(d, rev ? reversed_orientation(*d) : std::vector<std::pair<int, int>>{});
      NRelReport rep = verify_n_rel(sc);
      CHECK(rep.pass);
      CHECK(rep.pairs_checked == 12);  // 6 roots, each summable pair counted ordered
    }
  }
  SUBCASE("A3, D4, D5, E6 pass exhaustively under both orientations") {
    for (const char* name : {"A3", "D4", "D5", "E6"}) {
      DatumPtr d = root_datum_by_name(name);
      for (bool rev : {false, true}) {
        StructureConstants sc = build_constants(
            d, rev ? reversed_orientation(*d) : std::vector<std::pair<int, int>>{});
        NRelReport rep = verify_n_rel(sc);
        CHECK(rep.pass);
        CHECK(rep.pairs_checked > 0);
      }
    }
  }
  SUBCASE("N_ab N_ba = -1 on all summable pairs") {
    DatumPtr d = build_root_datum('D', 4);
    StructureConstants sc = build_constants(d);
    for (int a = 0; a < static_cast<int>(d->count()); ++a)
      for (int b = 0; b < static_cast<int>(d->count()); ++b)
        if (d->sum(a, b)) CHECK(sc.N(a, b) * sc.N(b, a) == -1);
  }
  SUBCASE("a mutated table fails") {
    DatumPtr d = build_root_datum('A', 3);
    StructureConstants sc = build_constants(d);
    // flip the sign at one summable pair
    int fa = -1, fb = -1;
    for (int a = 0; a < static_cast<int>(d->count()) && fa < 0; ++a)
      for (int b = 0; b < static_cast<int>(d->count()) && fa < 0; ++b)
        if (d->sum(a, b)) {
          fa = a;
          fb = b;
        }
    NRelReport rep = verify_n_rel_fn(*d, [&](int a, int b) {
      int v = sc.N(a, b);
      return (a == fa && b == fb) ? -v : v;
    });
    CHECK(!rep.pass);
  }
  SUBCASE("vacuous systems pass vacuously") {
    // A1 has no summable pairs at all
    DatumPtr d = build_root_datum('A', 1);
    StructureConstants sc = build_constants(d);
    NRelReport rep = verify_n_rel(sc);
    CHECK(rep.pass);
    CHECK(rep.pairs_checked == 0);
  }
}

TEST_CASE("subsystem embeddings") {
  DatumPtr d = build_root_datum('D', 4);
  StructureConstants sc = build_constants(d);

  SUBCASE("A1 subsystems embed with trivial twists") {
    std::vector<int> delta{0, d->neg(0)};
    SubsystemEmbedding emb = embed_subsystem(sc, delta);
    CHECK(emb.arank == 1);
    CHECK(emb.chi.at(0) == 1);
  }
  SUBCASE("every A2 and A3 subsystem admits sign twists") {
    auto fam = subsystem_family_g(*d);
    for (const auto& delta : fam) {
      SubsystemEmbedding emb = embed_subsystem(sc, delta);
      CHECK(emb.pair_of.size() == delta.size());
      // chi solves the transported commutator equations: rechecked inside,
      // so reaching here is the assertion
    }
  }
  SUBCASE("labels are additive") {
    auto fam = subsystem_family_g(*d);
    for (const auto& delta : fam) {
      if (delta.size() != 12) continue;
      SubsystemEmbedding emb = embed_subsystem(sc, delta);
      for (int a : delta)
        for (int b : delta) {
          auto s = d->sum(a, b);
          if (!s) continue;
          auto [u, v] = emb.pair_of.at(a);
          auto [w, z] = emb.pair_of.at(b);
          auto [su, sv] = emb.pair_of.at(*s);
          bool comp = (v == w && su == u && sv == z);
          bool anti = (z == u && su == w && sv == v);
          CHECK((comp || anti));
        }
      break;
    }
  }
}

TEST_CASE("chevalley instances verify through the linear host") {
  ChevPtr ctx = make_chev("D4", 8, 2);
  const ChevContext& c = *ctx;

  SUBCASE("all catalog ids on a batch of random instances") {
    for (RelationId id : chevalley_catalog()) {
      for (int t = 0; t < 25; ++t) {
        Rng rng(derive_seed(3, relation_name(id), t));
        RelationInstance inst = sample_chevalley_instance(c, id, rng);
        ChevVerdict v = verify_chevalley_instance(c, inst);
        CHECK(v.pass);
        CHECK(v.support_rank_le2);
      }
    }
  }
  SUBCASE("Dis gives a commutator against the empty word for orthogonal roots") {
    Rng rng(5);
    RelationInstance inst = sample_chevalley_instance(c, RelationId::Dis, rng);
    CHECK(inst.rhs.empty());
    ChevVerdict v = verify_chevalley_instance(c, inst);
    CHECK(v.pass);
    CHECK(v.support_type == "A1xA1");
  }
  SUBCASE("Rel4 with b = 0 passes trivially") {
    InstanceArgs args;
    Rng rng(7);
    args.idx = {0};
    args.elts["a"] = c.sample_a(rng);
    args.elts["p"] = c.sample_k(rng);
    args.elts["b"] = c.ssc().ring->zero();
    RelationInstance inst = chevalley_instance(c, RelationId::Rel4, args);
    CHECK(inst.lhs == inst.rhs);
    CHECK(verify_chevalley_instance(c, inst).pass);
  }
  SUBCASE("HW with a = 0 gives empty words") {
    Rng rng(9);
    const RootDatum& d = c.phi();
    int alpha = 0, beta = -1;
    for (int b = 0; b < static_cast<int>(d.count()); ++b)
      if (d.sum(alpha, b)) {
        beta = b;
        break;
      }
    REQUIRE(beta >= 0);
    InstanceArgs args;
    args.idx = {static_cast<std::size_t>(alpha), static_cast<std::size_t>(beta)};
    args.elts["a"] = c.ssc().ring->zero();
    args.elts["p"] = c.sample_k(rng);
    args.elts["q"] = c.sample_k(rng);
    args.elts["r"] = c.sample_k(rng);
    RelationInstance inst = chevalley_instance(c, RelationId::HW, args);
    CHECK(inst.lhs.empty());
    CHECK(inst.rhs.empty());
  }
  SUBCASE("instances still verify under the reversed orientation") {
    ChevPtr rev = make_chev("D4", 8, 2, reversed_orientation(*build_root_datum('D', 4)));
    for (RelationId id : {RelationId::Conj2, RelationId::HW, RelationId::Mult}) {
      for (int t = 0; t < 15; ++t) {
        Rng rng(derive_seed(11, relation_name(id), t));
        RelationInstance inst = sample_chevalley_instance(*rev, id, rng);
        CHECK(verify_chevalley_instance(*rev, inst).pass);
      }
    }
  }
  SUBCASE("instances supported in an overlap verify through every containing member") {
    const RootDatum& d = c.phi();
    auto fam = subsystem_family_g(d);
    Rng rng(13);
    int alpha = 0;
    std::vector<std::vector<int>> hosts;
    for (const auto& delta : fam)
      if (delta.size() == 12 &&
          std::find(delta.begin(), delta.end(), alpha) != delta.end())
        hosts.push_back(delta);
    REQUIRE(hosts.size() >= 2);
    // a relation instance whose support is the single pair {alpha, -alpha}
    InstanceArgs args;
    args.idx = {static_cast<std::size_t>(alpha)};
    args.elts["a"] = c.sample_a(rng);
    args.elts["a'"] = c.sample_a(rng);
    args.elts["p"] = c.sample_k(rng);
    RelationInstance inst = chevalley_instance(c, RelationId::Add1, args);
    for (std::size_t h = 0; h < 2; ++h) {
      const SubsystemEmbedding& emb = c.embedding_for(hosts[h]);
      CHECK(eval_word(*c.host(), transport(c, emb, inst.lhs)).u ==
            eval_word(*c.host(), transport(c, emb, inst.rhs)).u);
    }
  }
}

TEST_CASE("E6 constants and a small instance batch") {
  ChevPtr ctx = make_chev("E6", 4, 2);
  const ChevContext& c = *ctx;
  NRelReport rep = verify_n_rel(c.constants());
  CHECK(rep.pass);
  for (RelationId id : {RelationId::Conj2, RelationId::HW, RelationId::Dis}) {
    for (int t = 0; t < 10; ++t) {
      Rng rng(derive_seed(19, relation_name(id), t));
      RelationInstance inst = sample_chevalley_instance(c, id, rng);
      ChevVerdict v = verify_chevalley_instance(c, inst);
      CHECK(v.pass);
      CHECK(v.support_rank_le2);
    }
  }
}
