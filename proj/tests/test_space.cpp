#include <doctest.h>

#include "condtypes/measure.hpp"
#include "condtypes/space.hpp"
#include "support.hpp"

using namespace condtypes;

namespace {

space_ptr f1_space() {
  return conditional_space::create({"a", "b", "c"}, {{"C0", {0, 1, 2}}, {"C1", {0, 1}}});
}

}  // namespace

TEST_CASE("space creation and lookups") {
  auto sp = f1_space();
  CHECK(sp->atom_count() == 3);
  CHECK(sp->event_count() == 2);
  CHECK(sp->atom_index("b") == 1u);
  CHECK(!sp->atom_index("z").has_value());
  CHECK(sp->event_index("C1") == 1u);
  CHECK(sp->event_at(1).members == std::vector<uint32_t>{0, 1});
}

TEST_CASE("space creation rejects malformed input") {
  CHECK_THROWS_AS(conditional_space::create({}, {{"C", {0}}}), error);
  CHECK_THROWS_AS(conditional_space::create({"a", "a"}, {{"C", {0}}}), error);
  CHECK_THROWS_AS(conditional_space::create({"a"}, {}), error);
  CHECK_THROWS_AS(conditional_space::create({"a"}, {{"C", {}}}), error);
  CHECK_THROWS_AS(conditional_space::create({"a"}, {{"C", {1}}}), error);
  CHECK_THROWS_AS(conditional_space::create({"a"}, {{"C", {0}}, {"C", {0}}}), error);
  CHECK_THROWS_AS(conditional_space::create({"a", "b"}, {{"C", {0, 0}}}), error);
}

TEST_CASE("lifting crosses the family with the factor") {
  auto lifted = lift_space(f1_space(), {"x", "y"});
  REQUIRE(lifted.space->atom_count() == 6);
  CHECK(lifted.space->atom_label(0) == "(a,x)");
  CHECK(lifted.space->atom_label(1) == "(a,y)");
  CHECK(lifted.space->atom_label(4) == "(c,x)");
  CHECK(lifted.space->event_at(1).label == "C1");
  CHECK(lifted.space->event_at(1).members == std::vector<uint32_t>{0, 1, 2, 3});
  CHECK(lifted.encode(2, 1) == 5);
  CHECK(lifted.base_of(3) == 1);
  CHECK(lifted.factor_of(3) == 1);

  CHECK_THROWS_AS(lift_space(f1_space(), {}), error);
  CHECK_THROWS_AS(lift_space(f1_space(), {"x", "x"}), error);
}

TEST_CASE("product layout coordinates and marginals") {
  product_layout layout{{{"u", 2}, {"v", 3}}};
  CHECK(layout.atom_count() == 6);
  CHECK(layout.coordinate(5, 0) == 1);
  CHECK(layout.coordinate(5, 1) == 2);

  measure mu{{rat(1, 6), rat(1, 6), rat(1, 6), rat(1, 6), rat(1, 6), rat(1, 6)}};
  measure on_u = marginal(layout, mu, "u");
  REQUIRE(on_u.w.size() == 2);
  CHECK(on_u.w[0] == rat(1, 2));
  measure on_v = marginal(layout, mu, "v");
  REQUIRE(on_v.w.size() == 3);
  CHECK(on_v.w[2] == rat(1, 3));
  CHECK_THROWS_AS(marginal(layout, mu, "w"), error);
}

TEST_CASE("subset helpers work on sorted index vectors") {
  CHECK(is_subset({0, 2}, {0, 1, 2}));
  CHECK(!is_subset({0, 3}, {0, 1, 2}));
  CHECK(intersect({0, 1, 2}, {1, 2, 3}) == std::vector<uint32_t>{1, 2});
}
