#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condtypes/measure.hpp"
#include "condtypes/rational.hpp"
#include "condtypes/space.hpp"

namespace condtypes {

// Conditional probability system: one candidate conditional per conditioning
// event, aligned with the space's event order. Axiom validity is established
// by validate_cps, not by construction, so mutation tests and validators can
// carry broken families around.
struct cps {
  space_ptr space;
  std::vector<measure> conditionals;  // by event index

  const measure& at(uint32_t event) const { return conditionals[event]; }
  bool operator==(const cps& other) const {
    return same_space(space, other.space) && conditionals == other.conditionals;
  }
};

enum class violation_code {
  missing_conditional,   // event with no candidate conditional
  unknown_event,         // candidate conditional for a label outside the family
  duplicate_event,       // two candidate conditionals for one label
  unknown_atom,          // weight keyed by a label outside the space
  duplicate_atom,        // two weights for one atom
  negative_weight,       // C2
  mass_not_one,          // C2
  totality,              // C1: nu(C|C) != 1
  chain,                 // C3: nu(E|C) != nu(E|D) * nu(D|C)
};

const char* violation_name(violation_code code);

struct violation {
  violation_code code;
  std::string detail;  // human-readable witness
};

struct validation_report {
  std::vector<violation> items;
  bool ok() const { return items.empty(); }
};

// Label-keyed candidate family as it comes out of a manifest, before any
// binding against the space.
struct raw_conditionals {
  // (event label, [(atom label, weight)]) in declaration order
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, rat>>>> entries;
};

// Structural binding plus the C1/C2/C3 axioms. Structural problems (unknown
// labels, missing conditionals) short-circuit the axiom phase. Atoms omitted
// from a conditional get weight zero.
validation_report validate_cps(const conditional_space& space, const raw_conditionals& candidate);

// Axioms only, for an already-bound family. The chain check runs on singleton
// subsets of every nested event pair, which is complete because stored
// weights are per-atom (finite additivity is structural).
validation_report validate_cps(const cps& candidate);

// nu(E|C) := prior(E n C) / prior(C). Throws condtypes::error(domain) when
// the prior is not a probability measure or gives some conditioning event
// mass zero (named in the message).
cps cps_from_prior(const space_ptr& space, const measure& prior);

// Measurable map between two lifts of one base space, stored pointwise.
struct lifted_map {
  lifted_space src;
  lifted_space dst;
  std::vector<uint32_t> to;  // src atom -> dst atom
};

// Builds the map (m, x) -> (m, g(m, x)) from a pointwise factor assignment.
lifted_map lifted_map_from_factor(const lifted_space& src, const lifted_space& dst,
                                  const std::vector<uint32_t>& factor_image);

lifted_map identity_map(const lifted_space& sp);
lifted_map compose(const lifted_map& g, const lifted_map& f);  // g after f

// Image measure family: result(E|C) = nu(f^. (E)|C). Requires that f maps
// each lifted event into itself (f(C x X) within C x Y); the witness atom and
// event are named on failure. That containment is exactly what keeps C1 true
// after the push.
cps pushforward_cps(const lifted_map& f, const cps& nu);

// Preimage of a dst atom set under f.
std::vector<uint32_t> preimage(const lifted_map& f, const std::vector<uint32_t>& atoms);

// Indices into the collection whose member gives E at least p conditional on
// C. p must lie in [0,1]; E's atoms and the event index must be in range.
std::vector<size_t> gamma_event(const std::vector<cps>& collection,
                                const std::vector<uint32_t>& event_atoms, uint32_t event,
                                const rat& p);

struct pi_system_result {
  bool intersection_closed = false;
  // generator pair whose intersection is neither empty nor listed
  std::optional<std::pair<size_t, size_t>> closure_witness;
  bool agrees = false;
  // (generator index, event index) where the two systems differ
  std::optional<std::pair<size_t, uint32_t>> disagreement;
};

// Agreement of two systems over one space on an intersection-closed generator
// family, at every conditioning event. The empty set counts as implicitly
// present when checking closure.
pi_system_result agree_on_pi_system(const cps& a, const cps& b,
                                    const std::vector<std::vector<uint32_t>>& generators);

}  // namespace condtypes
