#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "condtypes/cps.hpp"
#include "condtypes/space.hpp"

namespace condtypes {

// Interactive type structure over a base conditional space: per agent a
// finite carrier of types and, per type, a conditional system over
// (base x opponent-type tuples) with the conditioning family lifted from the
// base. Construction validates every transition value, so a held structure
// is always axiom-clean.
class type_structure {
 public:
  // Empty placeholder; the validated path is create().
  type_structure() = default;

  struct agent {
    std::string id;
    std::vector<std::string> types;
  };

  // Opponent tuples are enumerated in mixed-radix order over the other
  // agents in declaration order (first opponent outermost). The tuple label
  // is the comma-join of the member type labels; the empty tuple (single
  // agent) is labelled "*".
  static std::vector<std::string> opponent_tuple_labels(const std::vector<agent>& agents,
                                                        size_t agent_index);
  static lifted_space belief_space_for(const space_ptr& base, const std::vector<agent>& agents,
                                       size_t agent_index);

  // beliefs[i][t] must live over belief_space_for(base, agents, i) and pass
  // validate_cps. Throws condtypes::error(domain) otherwise.
  static type_structure create(space_ptr base, std::vector<agent> agents,
                               std::vector<std::vector<cps>> beliefs);

  const space_ptr& base() const { return base_; }
  size_t agent_count() const { return agents_.size(); }
  const std::vector<agent>& agents() const { return agents_; }
  const agent& agent_at(size_t i) const { return agents_[i]; }
  size_t type_count(size_t i) const { return agents_[i].types.size(); }
  const lifted_space& belief_space(size_t i) const { return belief_spaces_[i]; }
  const cps& belief(size_t i, size_t t) const { return beliefs_[i][t]; }

  std::optional<uint32_t> agent_index(const std::string& id) const;
  std::optional<uint32_t> type_index(size_t agent, const std::string& label) const;

  // Coordinates of an opponent tuple: decode yields one type index per other
  // agent, in declaration order.
  std::vector<uint32_t> decode_opponents(size_t agent, uint32_t tuple) const;
  uint32_t encode_opponents(size_t agent, const std::vector<uint32_t>& coords) const;

 private:
  space_ptr base_;
  std::vector<agent> agents_;
  std::vector<lifted_space> belief_spaces_;
  std::vector<std::vector<cps>> beliefs_;
};

// Per-agent type maps between structures sharing base and agent ids.
struct structure_morphism {
  std::vector<std::vector<uint32_t>> type_map;  // [agent][src type] -> dst type
};

structure_morphism identity_morphism(const type_structure& s);

// g after f, per agent.
structure_morphism compose(const structure_morphism& g, const structure_morphism& f);

// The functor's action on a morphism, applied to one agent's belief value:
// pushes a system over (base x src opponents) to (base x dst opponents) along
// (id, mu_{-i}).
cps apply_functor(const structure_morphism& mu, const type_structure& src,
                  const type_structure& dst, size_t agent, const cps& value);

struct morphism_check {
  bool ok = false;
  std::string detail;  // first counterexample, agent/type/event/atom order
};

// Commuting-square test: dst belief at the image type equals the pushed src
// belief, exactly, for every agent and type. Base spaces and agent id lists
// must match (domain error otherwise); an out-of-range map is a domain error
// too.
morphism_check check_morphism(const structure_morphism& mu, const type_structure& src,
                              const type_structure& dst);

// True iff mu is bijective per agent and both directions pass the square
// test.
bool is_isomorphism(const structure_morphism& mu, const type_structure& src,
                    const type_structure& dst);

}  // namespace condtypes
