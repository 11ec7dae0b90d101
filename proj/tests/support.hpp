#pragma once

#include <random>
#include <string>
#include <vector>

#include "condtypes/cps.hpp"
#include "condtypes/games.hpp"
#include "condtypes/space.hpp"
#include "condtypes/type_structure.hpp"

// Shared generators and independent oracles. Oracles deliberately avoid the
// library's computation paths: the CPS oracle enumerates subset triples, the
// hierarchy oracle interns canonical level signatures round by round, and the
// allowing-set oracle plays out every profile.
namespace testsupport {

using rng_t = std::mt19937;

int rand_int(rng_t& rng, int lo, int hi);

// Joins CONDTYPES_FIXTURES (falling back to "tests/fixtures") with name.
std::string fixture_path(const std::string& name);

condtypes::space_ptr random_space(rng_t& rng, int max_atoms = 8, int max_events = 5);
condtypes::measure random_positive_prior(rng_t& rng, size_t atom_count);
condtypes::cps random_cps(rng_t& rng, const condtypes::space_ptr& space);

// Full-axiom check by brute force: C2 per event, C1 per event, and the chain
// identity over every triple E subset of D subset of C with D, C conditioning
// events and E an arbitrary subset.
bool oracle_cps_valid(const condtypes::cps& candidate);

// All members of the sigma-algebra generated by the family, as sorted atom
// vectors (the empty set included).
std::vector<std::vector<uint32_t>> sigma_closure(size_t atom_count,
                                                 const std::vector<std::vector<uint32_t>>& gens);

// Random two-agent structure over its own random base. Some types share
// beliefs on purpose so redundancy shows up.
condtypes::type_structure random_structure(rng_t& rng, int max_base_atoms = 3,
                                           int max_base_events = 3, int max_types = 4);

// Canonical description strings: out[agent][type] after `depth` rounds. Two
// types have equal hierarchy descriptions at that depth iff strings match.
std::vector<std::vector<std::string>> naive_descriptions(const condtypes::type_structure& s,
                                                         size_t depth);

// Random valid extensive form with simultaneous moves, random (perfect
// recall respecting) information sets, and strategy-space size at most
// max_profiles.
condtypes::game_data random_game(rng_t& rng, uint64_t max_profiles = 4096);

// Play-out oracle for allowing sets: flattened profiles reaching the set.
std::vector<uint64_t> playout_allowing(const condtypes::game& g, uint32_t player,
                                       uint32_t info_set);

}  // namespace testsupport
