#include <doctest.h>

#include <algorithm>

#include "condtypes/cps.hpp"
#include "support.hpp"

using namespace condtypes;

namespace {

space_ptr f1_space() {
  return conditional_space::create({"a", "b", "c"}, {{"C0", {0, 1, 2}}, {"C1", {0, 1}}});
}

cps f1(const space_ptr& sp) {
  return cps{sp,
             {measure{{rat(1, 2), rat(1, 4), rat(1, 4)}}, measure{{rat(2, 3), rat(1, 3), rat(0)}}}};
}

}  // namespace

TEST_CASE("the reference system satisfies all axioms") {
  auto sp = f1_space();
  auto nu = f1(sp);
  CHECK(validate_cps(nu).ok());
  CHECK(testsupport::oracle_cps_valid(nu));
  // The chain instance behind it: nu({a}|C0) = nu({a}|C1) nu(C1|C0).
  CHECK(nu.at(0).w[0] == rat(2, 3) * rat(3, 4));
}

TEST_CASE("breaking the chain is caught with a minimal witness") {
  auto sp = f1_space();
  auto nu = f1(sp);
  nu.conditionals[1] = measure{{rat(1, 2), rat(1, 2), rat(0)}};
  auto report = validate_cps(nu);
  REQUIRE(!report.ok());
  CHECK(!testsupport::oracle_cps_valid(nu));
  for (const auto& item : report.items) CHECK(item.code == violation_code::chain);
  CHECK(report.items[0].detail == "E={a}, D=C1, C=C0: nu(E|C) = 1/2 but nu(E|D)nu(D|C) = 3/8");
}

TEST_CASE("structural problems in a raw family short-circuit the axioms") {
  auto sp = f1_space();
  raw_conditionals raw;
  raw.entries = {{"C0", {{"a", rat(1)}, {"a", rat(0)}, {"z", rat(0)}}},
                 {"C2", {{"a", rat(1)}}},
                 {"C0", {{"a", rat(1)}}}};
  auto report = validate_cps(*sp, raw);
  std::vector<violation_code> codes;
  for (const auto& item : report.items) codes.push_back(item.code);
  CHECK(std::count(codes.begin(), codes.end(), violation_code::duplicate_atom) == 1);
  CHECK(std::count(codes.begin(), codes.end(), violation_code::unknown_atom) == 1);
  CHECK(std::count(codes.begin(), codes.end(), violation_code::unknown_event) == 1);
  CHECK(std::count(codes.begin(), codes.end(), violation_code::duplicate_event) == 1);
  CHECK(std::count(codes.begin(), codes.end(), violation_code::missing_conditional) == 1);
}

TEST_CASE("C1 and C2 violations name the event") {
  auto sp = f1_space();
  raw_conditionals raw;
  raw.entries = {{"C0", {{"a", rat(1, 2)}, {"b", rat(1, 2)}}},
                 {"C1", {{"a", rat(3, 2)}, {"b", rat(-1, 2)}}}};
  auto report = validate_cps(*sp, raw);
  bool saw_negative = false, saw_totality = false;
  for (const auto& item : report.items) {
    if (item.code == violation_code::negative_weight) {
      saw_negative = true;
      CHECK(item.detail.find("'C1'") != std::string::npos);
      CHECK(item.detail.find("'b'") != std::string::npos);
    }
    if (item.code == violation_code::totality) saw_totality = true;
    CHECK(item.code != violation_code::mass_not_one);  // both families sum to one
  }
  CHECK(saw_negative);
  CHECK(!saw_totality);  // C1 holds for both: mass inside each event is 1
}

TEST_CASE("cps_from_prior produces the ratio family") {
  auto sp = f1_space();
  measure prior{{rat(1, 2), rat(1, 4), rat(1, 4)}};
  cps nu = cps_from_prior(sp, prior);
  CHECK(nu.at(1).w == std::vector<rat>{rat(2, 3), rat(1, 3), rat(0)});
  CHECK(validate_cps(nu).ok());
  CHECK(nu == f1(sp));

  measure degenerate{{rat(0), rat(0), rat(1)}};
  try {
    cps_from_prior(sp, degenerate);
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(e.kind() == errc::domain);
    CHECK(std::string(e.what()).find("'C1'") != std::string::npos);
  }
  CHECK_THROWS_AS(cps_from_prior(sp, measure{{rat(1), rat(1), rat(1)}}), error);
}

TEST_CASE("pushforward sums preimage weights") {
  auto lf = lift_space(f1_space(), {"x"});
  cps nu = f1(lf.space);
  lifted_map collapse{lf, lf, {0, 0, 2}};  // b -> a
  cps pushed = pushforward_cps(collapse, nu);
  CHECK(pushed.at(0).w[0] == rat(3, 4));
  CHECK(pushed.at(0).w[1] == rat(0));
  CHECK(pushed.at(0).w[2] == rat(1, 4));
  CHECK(pushed.at(1).w[0] == rat(1));
  CHECK(validate_cps(pushed).ok());

  // c -> b lands inside every event, so the push is defined; only
  // base-fixing maps are guaranteed to keep C3, and this one loses it.
  lifted_map escape{lf, lf, {0, 1, 1}};
  CHECK_NOTHROW(pushforward_cps(escape, nu));
  lifted_map leave{lf, lf, {2, 1, 2}};  // a -> c leaves C1
  try {
    pushforward_cps(leave, nu);
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("'C1'") != std::string::npos);
    CHECK(std::string(e.what()).find("'(a,x)'") != std::string::npos);
  }
}

TEST_CASE("pushforward is functorial") {
  auto src = lift_space(f1_space(), {"x", "y"});
  measure prior{{rat(1, 4), rat(1, 4), rat(1, 8), rat(1, 8), rat(1, 8), rat(1, 8)}};
  cps nu = cps_from_prior(src.space, prior);

  CHECK(pushforward_cps(identity_map(src), nu) == nu);

  auto mid = lift_space(f1_space(), {"x", "y", "z"});
  auto dst = lift_space(f1_space(), {"x"});
  lifted_map f = lifted_map_from_factor(src, mid, {2, 0, 1, 1, 0, 2});
  lifted_map g = lifted_map_from_factor(mid, dst, {0, 0, 0, 0, 0, 0, 0, 0, 0});
  cps lhs = pushforward_cps(compose(g, f), nu);
  cps rhs = pushforward_cps(g, pushforward_cps(f, nu));
  CHECK(lhs == rhs);
}

TEST_CASE("gamma generators pick out the systems meeting the threshold") {
  auto sp = f1_space();
  std::vector<cps> collection = {f1(sp), cps_from_prior(sp, measure{{rat(1, 4), rat(1, 2), rat(1, 4)}})};
  CHECK(gamma_event(collection, {0}, 0, rat(1, 2)) == std::vector<size_t>{0});
  CHECK(gamma_event(collection, {0}, 0, rat(0)) == std::vector<size_t>{0, 1});
  CHECK(gamma_event(collection, {1}, 0, rat(1, 2)) == std::vector<size_t>{1});
  CHECK_THROWS_AS(gamma_event(collection, {0}, 0, rat(3, 2)), error);
  CHECK_THROWS_AS(gamma_event(collection, {0}, 7, rat(1, 2)), error);
  CHECK_THROWS_AS(gamma_event(collection, {9}, 0, rat(1, 2)), error);
}

TEST_CASE("gamma commutes with pushforward preimages") {
  auto lf = lift_space(f1_space(), {"x"});
  std::vector<cps> collection = {
      f1(lf.space), cps_from_prior(lf.space, measure{{rat(1, 4), rat(1, 2), rat(1, 4)}})};
  lifted_map f{lf, lf, {0, 0, 2}};
  std::vector<cps> pushed;
  for (const auto& nu : collection) pushed.push_back(pushforward_cps(f, nu));
  std::vector<uint32_t> target = {0};  // E as a dst subset
  auto lhs = gamma_event(collection, preimage(f, target), 0, rat(3, 5));
  auto rhs = gamma_event(pushed, target, 0, rat(3, 5));
  CHECK(lhs == rhs);
}

TEST_CASE("agreement on an intersection-closed generator family extends everywhere") {
  auto sp = f1_space();
  cps a = f1(sp);
  cps b = cps_from_prior(sp, measure{{rat(1, 2), rat(1, 4), rat(1, 4)}});
  std::vector<std::vector<uint32_t>> singletons = {{0}, {1}, {2}};
  auto res = agree_on_pi_system(a, b, singletons);
  CHECK(res.intersection_closed);
  CHECK(res.agrees);
  // Exhaustive agreement across the whole power set, every event.
  for (uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<uint32_t> set;
    for (uint32_t i = 0; i < 3; ++i)
      if (mask & (1u << i)) set.push_back(i);
    for (uint32_t e = 0; e < sp->event_count(); ++e)
      CHECK(a.conditionals[e].mass(set) == b.conditionals[e].mass(set));
  }

  cps c = cps_from_prior(sp, measure{{rat(1, 4), rat(1, 2), rat(1, 4)}});
  auto bad = agree_on_pi_system(a, c, {{0}});
  CHECK(bad.intersection_closed);
  CHECK(!bad.agrees);
  REQUIRE(bad.disagreement.has_value());
  CHECK(*bad.disagreement == std::make_pair(size_t{0}, uint32_t{0}));

  auto open = agree_on_pi_system(a, b, {{0, 1}, {1, 2}});
  CHECK(!open.intersection_closed);
  REQUIRE(open.closure_witness.has_value());
  CHECK(*open.closure_witness == std::make_pair(size_t{0}, size_t{1}));
}

TEST_CASE("random prior systems satisfy the axioms and the brute-force oracle") {
  testsupport::rng_t rng(20240811);
  for (int i = 0; i < 50; ++i) {
    auto sp = testsupport::random_space(rng);
    cps nu = testsupport::random_cps(rng, sp);
    CHECK(validate_cps(nu).ok());
    CHECK(testsupport::oracle_cps_valid(nu));
  }
}
