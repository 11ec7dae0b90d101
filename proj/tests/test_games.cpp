#include <doctest.h>

#include <algorithm>

#include "condtypes/games.hpp"
#include "condtypes/manifest.hpp"
#include "support.hpp"

using namespace condtypes;

namespace {

game_data load_game(const std::string& name) {
  auto doc = manifest::load_file(testsupport::fixture_path(name));
  REQUIRE(doc.kind == manifest::doc_kind::game);
  return *doc.game_body;
}

bool has_code(const std::vector<game_violation>& report, const std::string& code) {
  for (const auto& v : report)
    if (v.code == code) return true;
  return false;
}

// Root with A/B vs X/Y, all four children terminal.
game_data one_shot() {
  game_data g;
  g.players = {"p1", "p2"};
  g.payoff_types = {{"t0"}, {"s0"}};
  g.histories.push_back({{}, std::vector<std::vector<std::string>>{{"A", "B"}, {"X", "Y"}}});
  for (const char* a : {"A", "B"})
    for (const char* x : {"X", "Y"})
      g.histories.push_back({{{a, x}}, std::nullopt});
  g.info_sets = {{{"root1", {0}}}, {{"root2", {0}}}};
  return g;
}

}  // namespace

TEST_CASE("G1 validates and enumerates strategies in declaration order") {
  auto data = load_game("g1.json");
  CHECK(validate_game(data).empty());
  game g = game::create(data);

  REQUIRE(g.strategy_count(0) == 4);
  REQUIRE(g.strategy_count(1) == 2);
  CHECK(g.profile_count() == 8);
  std::vector<std::string> p1;
  for (uint64_t s = 0; s < 4; ++s) p1.push_back(g.strategy_label(0, s));
  CHECK(p1 == std::vector<std::string>{"Out.U", "Out.D", "In.U", "In.D"});
  CHECK(g.strategy_label(1, 0) == "L");
  CHECK(g.strategy(0, 2) == std::vector<uint32_t>{1, 0});
  CHECK(g.opponent_profile_count(0) == 2);
  CHECK(g.opponent_profile_count(1) == 4);
}

TEST_CASE("play follows covered choices and forces singlets") {
  game g = game::create(load_game("g1.json"));
  CHECK(g.play({0, 0}) == std::vector<uint32_t>{0, 1});   // Out ends immediately
  CHECK(g.play({2, 0}) == std::vector<uint32_t>{0, 2, 3});  // In, then U vs L
  CHECK(g.play({3, 1}) == std::vector<uint32_t>{0, 2, 6});  // In, then D vs R
}

TEST_CASE("allowing profiles match the play-out oracle on G1") {
  game g = game::create(load_game("g1.json"));

  auto after_in = g.allowing_profiles(1, 0);
  CHECK(after_in == std::vector<uint64_t>{4, 5, 6, 7});
  CHECK(after_in == testsupport::playout_allowing(g, 1, 0));
  CHECK(g.project_player(after_in, 0) == std::vector<uint64_t>{2, 3});
  CHECK(g.project_player(after_in, 1) == std::vector<uint64_t>{0, 1});
  CHECK(g.project_opponents(after_in, 1) == std::vector<uint64_t>{2, 3});

  auto at_root = g.allowing_profiles(0, 0);
  CHECK(at_root.size() == 8);
  CHECK(at_root == testsupport::playout_allowing(g, 0, 0));
  CHECK(g.allowing_profiles(0, 1) == after_in);  // p1's mid set sits at the same node
}

TEST_CASE("conditioning families merge set-equal events within a player") {
  game g = game::create(load_game("g1.json"));

  auto fam1 = conditioning_family(g, 0);
  REQUIRE(fam1.size() == 1);
  CHECK(fam1[0].label == "@root");
  CHECK(fam1[0].sources == std::vector<std::string>{"@root", "root", "mid"});
  CHECK(fam1[0].opp_profiles == std::vector<uint64_t>{0, 1});

  auto fam2 = conditioning_family(g, 1);
  REQUIRE(fam2.size() == 2);
  CHECK(fam2[0].label == "@root");
  CHECK(fam2[0].opp_profiles == std::vector<uint64_t>{0, 1, 2, 3});
  CHECK(fam2[1].label == "afterIn");
  CHECK(fam2[1].opp_profiles == std::vector<uint64_t>{2, 3});
}

TEST_CASE("the game space crosses payoff types with strategies") {
  game g = game::create(load_game("g1.json"));
  auto gs = game_space(g);
  REQUIRE(gs.space->atom_count() == 8);
  REQUIRE(gs.space->event_count() == 3);
  CHECK(gs.space->atom_label(0) == "(t0:Out.U|s0:L)");
  CHECK(gs.space->atom_label(7) == "(t0:In.D|s0:R)");
  CHECK(gs.space->event_at(0).label == "p1/@root");
  CHECK(gs.space->event_at(1).label == "p2/@root");
  CHECK(gs.space->event_at(2).label == "p2/afterIn");
  CHECK(gs.space->event_at(2).members == std::vector<uint32_t>{4, 5, 6, 7});
  CHECK(gs.layout.factors.size() == 4);
  CHECK(gs.layout.factors[1] == std::pair<std::string, uint32_t>{"p1.strategy", 4});

  auto big = game_space(game::create(load_game("g1_theta2.json")));
  CHECK(big.space->atom_count() == 16);
  CHECK(big.space->atom_label(0) == "(t0:Out.U|s0:L)");
  CHECK(big.space->atom_label(8) == "(t1:Out.U|s0:L)");
}

TEST_CASE("a simultaneous game keeps one ex-ante event per player") {
  game g = game::create(load_game("simultaneous.json"));
  auto gs = game_space(g);
  CHECK(gs.space->atom_count() == 4);
  REQUIRE(gs.space->event_count() == 2);
  for (uint32_t e = 0; e < 2; ++e)
    CHECK(gs.space->event_at(e).members == std::vector<uint32_t>{0, 1, 2, 3});
  CHECK(gs.space->event_at(0).label == "p1/@root");
  CHECK(gs.space->event_at(1).label == "p2/@root");
}

TEST_CASE("the generated space survives a manifest round trip") {
  game g = game::create(load_game("g1.json"));
  auto gs = game_space(g);
  auto j = manifest::serialize_space(*gs.space);
  auto doc = manifest::parse_document(j, ".");
  REQUIRE(doc.kind == manifest::doc_kind::space);
  CHECK(*doc.space == *gs.space);
}

TEST_CASE("validation reports carry specific codes") {
  CHECK(validate_game(one_shot()).empty());

  auto orphan = one_shot();
  orphan.histories.push_back({{{"A", "X"}, {"A", "X"}, {"A", "X"}}, std::nullopt});
  CHECK(has_code(validate_game(orphan), "orphan-history"));

  auto dup = one_shot();
  dup.histories.push_back({{{"A", "X"}}, std::nullopt});
  CHECK(has_code(validate_game(dup), "duplicate-history"));

  auto child_of_terminal = one_shot();
  child_of_terminal.histories.push_back({{{"A", "X"}, {"A", "X"}}, std::nullopt});
  CHECK(has_code(validate_game(child_of_terminal), "child-of-terminal"));

  auto unknown = one_shot();
  unknown.histories.push_back({{{"C", "X"}}, std::nullopt});
  CHECK(has_code(validate_game(unknown), "unknown-action"));

  auto missing = one_shot();
  missing.histories.pop_back();
  CHECK(has_code(validate_game(missing), "missing-child"));

  auto overlap = one_shot();
  overlap.info_sets[0].push_back({"again", {0}});
  CHECK(has_code(validate_game(overlap), "info-set-overlap"));

  auto mismatch = load_game("g1.json");
  mismatch.info_sets[0] = {{"both", {0, 2}}};
  CHECK(has_code(validate_game(mismatch), "info-set-action-mismatch"));

  auto uncovered = load_game("g1.json");
  uncovered.info_sets[0].pop_back();
  CHECK(has_code(validate_game(uncovered), "uncovered-active-history"));

  auto bad_key = one_shot();
  bad_key.utilities = {{{"(t0,s0;A|Z)", rat(1)}}, {}};
  CHECK(has_code(validate_game(bad_key), "utilities"));

  auto dup_key = one_shot();
  dup_key.utilities = {{{"(t0,s0;A|X)", rat(1)}, {"(t0,s0;A|X)", rat(2)}}, {}};
  CHECK(has_code(validate_game(dup_key), "duplicate-utility"));
}

TEST_CASE("forgetting where you moved breaks perfect recall") {
  game_data g;
  g.players = {"p1", "p2"};
  g.payoff_types = {{"t0"}, {"s0"}};
  g.histories.push_back({{}, std::vector<std::vector<std::string>>{{"A", "B"}, {"w"}}});
  g.histories.push_back({{{"A", "w"}}, std::vector<std::vector<std::string>>{{"C", "D"}, {"w"}}});
  g.histories.push_back({{{"B", "w"}}, std::vector<std::vector<std::string>>{{"C", "D"}, {"w"}}});
  for (const char* a : {"A", "B"})
    for (const char* c : {"C", "D"})
      g.histories.push_back({{{a, "w"}, {c, "w"}}, std::nullopt});
  g.info_sets = {{{"r", {0}}, {"second", {1, 2}}}, {}};
  auto report = validate_game(g);
  CHECK(has_code(report, "perfect-recall"));

  g.info_sets[0] = {{"r", {0}}, {"afterA", {1}}, {"afterB", {2}}};
  CHECK(validate_game(g).empty());

  try {
    game::create(game_data{});
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(e.kind() == errc::domain);
  }
}

TEST_CASE("allowing sets agree with play-out on random games") {
  testsupport::rng_t rng(31337);
  for (int i = 0; i < 25; ++i) {
    auto data = testsupport::random_game(rng);
    auto report = validate_game(data);
    CAPTURE(i);
    REQUIRE(report.empty());
    game g = game::create(data);
    for (uint32_t p = 0; p < g.player_count(); ++p)
      for (uint32_t k = 0; k < data.info_sets[p].size(); ++k)
        CHECK(g.allowing_profiles(p, k) == testsupport::playout_allowing(g, p, k));
  }
}

TEST_CASE("belief-closed substructures prune until the fixed point") {
  auto base = conditional_space::create({"th1", "th2"}, {{"all", {0, 1}}});
  std::vector<type_structure::agent> agents = {{"a1", {"x0", "x1", "x2"}}, {"a2", {"y0", "y1"}}};
  auto l1 = type_structure::belief_space_for(base, agents, 0);
  auto l2 = type_structure::belief_space_for(base, agents, 1);
  // l1 atoms: (th1,y0) (th1,y1) (th2,y0) (th2,y1)
  std::vector<std::vector<cps>> beliefs(2);
  beliefs[0] = {cps{l1.space, {measure{{rat(1, 2), rat(0), rat(1, 2), rat(0)}}}},
                cps{l1.space, {measure{{rat(0), rat(1), rat(0), rat(0)}}}},
                cps{l1.space, {measure{{rat(0), rat(0), rat(0), rat(1)}}}}};
  // l2 atoms: (th1,x0) (th1,x1) (th1,x2) (th2,x0) (th2,x1) (th2,x2)
  beliefs[1] = {cps{l2.space, {measure{{rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)}}}},
                cps{l2.space, {measure{{rat(0), rat(0), rat(0), rat(0), rat(0), rat(1)}}}}};
  auto s = type_structure::create(base, agents, beliefs);

  auto everything = belief_closed_substructure(s, {{0, 1, 2}, {0, 1}});
  REQUIRE(!everything.empty());
  CHECK(manifest::serialize_structure(*everything.sub) == manifest::serialize_structure(s));

  // Dropping x2 first removes y1 (it charges x2), then x1 (it charges y1).
  auto cascade = belief_closed_substructure(s, {{0, 1}, {0, 1}});
  REQUIRE(!cascade.empty());
  CHECK(cascade.kept[0] == std::vector<uint32_t>{0});
  CHECK(cascade.kept[1] == std::vector<uint32_t>{0});
  CHECK(cascade.sub->belief(0, 0).at(0).w == std::vector<rat>{rat(1, 2), rat(1, 2)});
  CHECK(check_morphism(*cascade.inclusion, *cascade.sub, s).ok);

  auto nothing = belief_closed_substructure(s, {{0, 1, 2}, {}});
  CHECK(nothing.empty());
  CHECK(nothing.kept[0].empty());
  CHECK(nothing.kept[1].empty());

  CHECK_THROWS_AS(belief_closed_substructure(s, {{9}, {0}}), error);
}

TEST_CASE("coalition spaces enumerate nonempty coalitions in mask order") {
  auto cl = coalition_space({"p", "q"}, {{"t1", "t2"}, {"s1"}}, {"c0", "c1"});
  REQUIRE(cl.space->atom_count() == 8);
  REQUIRE(cl.space->event_count() == 3);
  CHECK(cl.space->atom_label(0) == "(p|t1,s1|c0)");
  CHECK(cl.space->atom_label(2) == "(p|t2,s1|c0)");
  CHECK(cl.space->atom_label(4) == "(q|t1,s1|c0)");
  CHECK(cl.space->event_at(0).label == "{p}");
  CHECK(cl.space->event_at(1).label == "{q}");
  CHECK(cl.space->event_at(2).label == "{p,q}");
  CHECK(cl.space->event_at(0).members == std::vector<uint32_t>{0, 1, 2, 3});
  CHECK(cl.coalition_members[2] == std::vector<uint32_t>{0, 1});

  CHECK(coalition_space({"a", "b", "c"}, {{"t"}, {"t"}, {"t"}}, {"c"}).space->event_count() == 7);
  try {
    coalition_space({"a", "b", "c"}, {{"t"}, {"t"}, {"t"}}, {"c"}, 2);
    FAIL("expected a throw");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("cap 2") != std::string::npos);
  }
}

TEST_CASE("the coalition predicate pins membership and the own payoff type") {
  auto cl = coalition_space({"p", "q"}, {{"t1", "t2"}, {"s1"}}, {"c0", "c1"});
  auto w = [&](std::initializer_list<std::pair<uint32_t, rat>> entries) {
    measure mu{std::vector<rat>(8, rat(0))};
    for (auto [a, v] : entries) mu.w[a] = v;
    return mu;
  };
  // Events: {p} = atoms 0-3, {q} = atoms 4-7, {p,q} = all. Own type t1 for
  // player p sits at atoms 0,1 (tag p) and 4,5 (tag q).
  cps good{cl.space,
           {w({{0, rat(1, 2)}, {1, rat(1, 2)}}), w({{4, rat(1)}}),
            w({{0, rat(1, 2)}, {5, rat(1, 2)}})}};
  auto ok = coalition_dirac_check(cl, 0, {good});
  CHECK(ok.ok);
  CHECK(!ok.witness.has_value());

  cps off_event = good;
  off_event.conditionals[0] = w({{0, rat(1, 2)}, {4, rat(1, 2)}});
  auto r1 = coalition_dirac_check(cl, 0, {good, off_event});
  REQUIRE(!r1.ok);
  CHECK(r1.witness->type == 1);
  CHECK(r1.witness->coalition_event == 0);
  CHECK(r1.witness->reason == "mass on the coalition is 1/2");

  cps mixed = good;
  mixed.conditionals[0] = w({{0, rat(1, 2)}, {2, rat(1, 2)}});
  auto r2 = coalition_dirac_check(cl, 0, {mixed});
  REQUIRE(!r2.ok);
  CHECK(r2.witness->reason == "own payoff type marginal is not a point mass");

  cps drifting = good;
  drifting.conditionals[1] = w({{6, rat(1)}});  // t2 under {q}, t1 elsewhere
  auto r3 = coalition_dirac_check(cl, 0, {drifting});
  REQUIRE(!r3.ok);
  CHECK(r3.witness->coalition_event == 1);
  CHECK(r3.witness->reason == "own payoff type differs across coalition events");
}

TEST_CASE("the inclusive lift is Harsanyi by construction") {
  auto base = conditional_space::create({"th1", "th2"}, {{"all", {0, 1}}});
  std::vector<type_structure::agent> agents = {{"a1", {"t"}}, {"a2", {"u", "u'"}}};
  auto l1 = type_structure::belief_space_for(base, agents, 0);
  auto l2 = type_structure::belief_space_for(base, agents, 1);
  std::vector<std::vector<cps>> beliefs(2);
  beliefs[0].push_back(cps_from_prior(l1.space, uniform_measure(4)));
  cps half{l2.space, {measure{{rat(1, 2), rat(1, 2)}}}};
  beliefs[1] = {half, half};
  auto s = type_structure::create(base, agents, beliefs);

  auto inc = lift_to_inclusive(s);
  REQUIRE(inc.spaces[0].factor == std::vector<std::string>{"t,u", "t,u'"});
  // a1's lifted belief spreads over its own profile coordinate t.
  CHECK(inc.beliefs[0][0].at(0).w ==
        std::vector<rat>{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)});
  // a2's type u concentrates on profiles whose second coordinate is u.
  CHECK(inc.beliefs[1][0].at(0).w == std::vector<rat>{rat(1, 2), rat(0), rat(1, 2), rat(0)});
  auto verdict = harsanyi_check(inc);
  CHECK(verdict.ok);

  auto broken = inc;
  broken.beliefs[1][0].conditionals[0] =
      measure{{rat(0), rat(1, 2), rat(1, 2), rat(0)}};
  auto bad = harsanyi_check(broken);
  REQUIRE(!bad.ok);
  CHECK(*bad.witness == std::make_tuple(uint32_t{1}, uint32_t{0}, uint32_t{0}));
}
