#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relst/roots.hpp"

using namespace relst;

TEST_CASE("special closed sets and extreme roots (index pairs)") {
  SUBCASE("the empty set is special closed") {
    CHECK(is_special_closed({}));
  }
  SUBCASE("an opposite pair is not") {
    CHECK(!is_special_closed({{0, 1}, {1, 0}}));
  }
  SUBCASE("closure under addition is required") {
    CHECK(!is_special_closed({{0, 1}, {1, 2}}));
    CHECK(is_special_closed({{0, 1}, {1, 2}, {0, 2}}));
  }
  SUBCASE("a singleton has itself as the only extreme root") {
    RootSet s{{0, 1}};
    auto ext = extreme_roots(s);
    REQUIRE(ext.size() == 1);
    CHECK(ext[0] == IndexRoot{0, 1});
  }
  SUBCASE("the sum is the only non-extreme root of a triangle") {
    RootSet s{{0, 1}, {1, 2}, {0, 2}};
    auto ext = extreme_roots(s);
    CHECK(ext == std::vector<IndexRoot>{{0, 1}, {1, 2}});
  }
  SUBCASE("removing an extreme root keeps the set special closed") {
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
      RootSet s = random_special_closed(5, rng, 4);
      if (s.empty()) continue;
      for (const auto& a : extreme_roots(s)) {
        RootSet reduced = s;
        reduced.erase(a);
        CHECK(is_special_closed(reduced));
      }
      CHECK(!extreme_roots(s).empty());
    }
  }
}

TEST_CASE("rank two classification for index pairs") {
  CHECK(rank2_type({0, 1}, {0, 1}) == Rank2Type::Collinear);
  CHECK(rank2_type({0, 1}, {1, 0}) == Rank2Type::Collinear);
  CHECK(rank2_type({0, 1}, {2, 3}) == Rank2Type::A1xA1);
  CHECK(rank2_type({0, 1}, {1, 2}) == Rank2Type::A2);
}

TEST_CASE("quotients of the index system") {
  SUBCASE("the empty subsystem gives the identity quotient") {
    SubsystemQuotient q = quotient(4, {});
    CHECK(q.quotient_n() == 4);
    CHECK(q.project({0, 3}) == IndexRoot{0, 3});
  }
  SUBCASE("one pair merged: A_3 -> A_2") {
    SubsystemQuotient q = quotient(4, {{0, 1}, {1, 0}});
    CHECK(q.quotient_n() == 3);
    CHECK(q.classes[0] == std::vector<std::size_t>{0, 1});
    CHECK(!q.project({0, 1}).has_value());
    CHECK(q.project({0, 2}) == IndexRoot{0, 1});
    CHECK(q.project({3, 1}) == IndexRoot{2, 0});
  }
  SUBCASE("two disjoint pairs: A_3 -> A_1") {
    SubsystemQuotient q = quotient(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    CHECK(q.quotient_n() == 2);
  }
  SUBCASE("iterated quotients agree with the one-step quotient on partitions") {
    SubsystemQuotient q1 = quotient(4, {{0, 1}, {1, 0}});
    SubsystemQuotient q2 = quotient(q1.quotient_n(),
                                    {{q1.class_of[2], q1.class_of[3]},
                                     {q1.class_of[3], q1.class_of[2]}});
    SubsystemQuotient once = quotient(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK((q2.class_of[q1.class_of[i]] == q2.class_of[q1.class_of[j]]) ==
              (once.class_of[i] == once.class_of[j]));
  }
  SUBCASE("a non-subsystem is rejected") {
    CHECK_THROWS_AS(quotient(4, RootSet{{0, 1}}), Error);  // not symmetric
  }
}

TEST_CASE("simply laced root data match the classification counts") {
  CHECK(build_root_datum('A', 1)->count() == 2);
  CHECK(build_root_datum('A', 3)->count() == 12);
  CHECK(build_root_datum('A', 4)->count() == 20);
  CHECK(build_root_datum('D', 4)->count() == 24);
  CHECK(build_root_datum('D', 5)->count() == 40);
  CHECK(build_root_datum('E', 6)->count() == 72);
  CHECK(build_root_datum('E', 7)->count() == 126);
  CHECK(build_root_datum('E', 8)->count() == 240);
  CHECK_THROWS_AS(build_root_datum('B', 3), Error);
}

TEST_CASE("root datum structure") {
  DatumPtr d = build_root_datum('D', 4);
  SUBCASE("negation and sums") {
    for (int a = 0; a < static_cast<int>(d->count()); ++a) {
      CHECK(d->neg(d->neg(a)) == a);
      CHECK(!d->sum(a, d->neg(a)).has_value());
    }
  }
  SUBCASE("no double bonds: orthogonal pairs have no root sums or differences") {
    for (int a = 0; a < static_cast<int>(d->count()); ++a)
      for (int b = 0; b < static_cast<int>(d->count()); ++b) {
        Rank2Type t = rank2_type(*d, a, b);
        if (t == Rank2Type::A1xA1) {
          CHECK(!d->sum(a, b).has_value());
          CHECK(!d->sum(a, d->neg(b)).has_value());
        }
      }
  }
}

TEST_CASE("subsystem family of A_1 and A_3 members") {
  SUBCASE("A_1 has a single member") {
    DatumPtr d = build_root_datum('A', 1);
    CHECK(subsystem_family_g(*d).size() == 1);
  }
  SUBCASE("A_3: one A_1 member per opposite pair, the full system among the A_3 members") {
    DatumPtr d = build_root_datum('A', 3);
    auto fam = subsystem_family_g(*d);
    std::size_t a1 = 0;
    bool whole = false;
    for (const auto& s : fam) {
      if (s.size() == 2) ++a1;
      if (s.size() == 12) whole = true;
    }
    CHECK(a1 == 6);
    CHECK(whole);
  }
  SUBCASE("pairs of roots in D_4 generate A1, A1xA1, or A2") {
    DatumPtr d = build_root_datum('D', 4);
    for (int a = 0; a < static_cast<int>(d->count()); ++a)
      for (int b = 0; b < static_cast<int>(d->count()); ++b) {
        auto cl = subsystem_closure(*d, {a, b});
        std::string t = classify_subsystem(*d, cl);
        CHECK((t == "A1" || t == "A1xA1" || t == "A2"));
      }
  }
  SUBCASE("ambient A-type subsystem exists for pair supports in D_4") {
    DatumPtr d = build_root_datum('D', 4);
    Rng rng(3);
    for (int t = 0; t < 60; ++t) {
      int a = static_cast<int>(rng.below(d->count()));
      int b = static_cast<int>(rng.below(d->count()));
      auto amb = ambient_a_subsystem(*d, {a, b});
      REQUIRE(amb.has_value());
      std::string ty = classify_subsystem(*d, *amb);
      CHECK((ty == "A1" || ty == "A2" || ty == "A3"));
    }
  }
}
