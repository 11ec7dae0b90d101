#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condtypes/hierarchy.hpp"
#include "condtypes/type_structure.hpp"

namespace condtypes {

struct quotient_result {
  type_structure structure;       // non-redundant quotient
  structure_morphism projection;  // source type -> quotient type
};

// Identifies types with equal description streams (stable-partition blocks).
// Block labels take the declaration-least member's label; block order follows
// the least member. The projection passes the commuting-square test and the
// quotient is non-redundant.
quotient_result quotient(const type_structure& s, unsigned threads = 1);

// Finite materialized portion of the coinductive universal structure: one
// element per distinct description stream occurring in the inputs, per
// agent, together with the transition read off any generator. Element
// identity is the canonical description stream up to the materialization
// depth, which must be at least the pooled stabilization depth so stream
// equality at that depth decides full-stream equality.
class universal_fragment {
 public:
  struct element {
    std::string label;
    std::vector<uint32_t> stream;  // class ids, levels 0..depth
    // (input index, type index) pairs in scan order; the first generates the
    // transition, the rest are checked against it. Provenance is excluded
    // from element identity.
    std::vector<std::pair<uint32_t, uint32_t>> generators;
  };

  size_t depth = 0;
  size_t stabilization_depth = 0;
  std::vector<std::vector<element>> elements;            // per agent
  std::vector<std::vector<std::vector<uint32_t>>> element_of;  // [input][agent][type]
  type_structure realized;                               // the fragment as a structure
  // payloads[a][k] maps a level-(k+1) class id occurring in some element
  // stream to its interned payload (kept for the transition checks).
  std::vector<std::vector<std::map<uint32_t, level_payload>>> payloads;
};

// depth omitted means "exactly the stabilization depth". Throws
// condtypes::error(domain) when inputs disagree on base or agents, or when
// the requested depth is below the required one (the message names it).
universal_fragment build_fragment(const std::vector<const type_structure*>& inputs,
                                  std::optional<size_t> depth = std::nullopt,
                                  unsigned threads = 1);

// The unique morphism into the fragment, defined when every description
// stream of s occurs among the fragment's elements; otherwise throws
// condtypes::error(domain) naming the first uncovered type.
structure_morphism terminal_map(const type_structure& s, const universal_fragment& f,
                                unsigned threads = 1);

// True iff candidate equals terminal_map(s, f) pointwise. A candidate that
// is not a morphism into the fragment is a domain error, not a mismatch.
struct uniqueness_result {
  bool unique = false;
  std::optional<std::pair<uint32_t, uint32_t>> witness;  // (agent, type) where maps differ
};
uniqueness_result check_uniqueness(const type_structure& s, const universal_fragment& f,
                                   const structure_morphism& candidate, unsigned threads = 1);

struct fragment_check_report {
  std::vector<std::string> findings;
  bool ok() const { return findings.empty(); }
};

// Structural identities of the materialized fragment:
//  - shift: pushing each element's transition through the opponents'
//    level-n classes reproduces the element's level-(n+1) payload;
//  - self-identity: recomputing descriptions inside the fragment returns
//    each element's own stream at every materialized depth;
//  - injectivity: transitions are pairwise distinct per agent;
//  - each transition is a valid conditional system.
fragment_check_report fragment_transition_checks(const universal_fragment& f,
                                                 unsigned threads = 1);

}  // namespace condtypes
