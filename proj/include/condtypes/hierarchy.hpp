#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "condtypes/rational.hpp"
#include "condtypes/type_structure.hpp"

namespace condtypes {

// One finite-depth level of a belief-hierarchy description: per conditioning
// event, the image of the type's belief under (id_base, opponent description
// classes at the previous level), stored as a sparse measure whose keys are
// [base atom, opponent class per other agent] in agent order. Zero weights
// are dropped and keys sorted, so equal measures have equal encodings.
struct level_payload {
  std::vector<std::vector<std::pair<std::vector<uint32_t>, rat>>> by_event;

  bool operator==(const level_payload& o) const { return by_event == o.by_event; }
  bool operator<(const level_payload& o) const { return by_event < o.by_event; }
};

// Depth-n description of one type: its interned description-class id at each
// level 0..n. Level 0 is the one-point description (class 0). Class ids are
// scoped to the hierarchy_set that produced them; two descriptions from one
// set are equal iff the types' level payload chains coincide.
struct hierarchy_description {
  size_t depth = 0;
  std::vector<uint32_t> class_by_level;  // size depth + 1, [0] == 0

  bool operator==(const hierarchy_description& o) const {
    return depth == o.depth && class_by_level == o.class_by_level;
  }
};

hierarchy_description truncate_description(const hierarchy_description& d, size_t level);

// Shared description-class registry over any number of structures with one
// base space and one agent list. Class ids per (agent, level) are dense and
// assigned in first-seen order scanning structures in registration order and
// types in declaration order; registering further structures never changes
// ids already handed out. A class at level k+1 is keyed by (class at level
// k, level payload), so id equality at a level implies chain equality below
// it.
class hierarchy_set {
 public:
  explicit hierarchy_set(std::vector<const type_structure*> structures, unsigned threads = 1);

  size_t structure_count() const { return structures_.size(); }
  const type_structure& structure_at(size_t s) const { return *structures_[s]; }
  size_t agent_count() const { return agent_count_; }
  size_t computed_depth() const { return computed_depth_; }

  void ensure_depth(size_t depth);

  uint32_t class_at(size_t structure, size_t agent, size_t type, size_t level) const;
  hierarchy_description description(size_t structure, size_t agent, size_t type, size_t depth);

  size_t class_count(size_t agent, size_t level) const;
  const level_payload& payload(size_t agent, size_t level, uint32_t cls) const;

  // Smallest depth at which the union partition (all registered structures
  // pooled, per agent) is discrete or stops refining; further levels cannot
  // split it. Computes levels as needed.
  size_t stabilization_depth();

 private:
  void compute_level(size_t level);
  size_t distinct_classes(size_t level) const;  // pooled over agents
  size_t total_types() const;

  std::vector<const type_structure*> structures_;
  unsigned threads_;
  size_t agent_count_ = 0;
  size_t computed_depth_ = 0;
  // classes_[s][a][t] -> class id per level (index 0 = level 0)
  std::vector<std::vector<std::vector<std::vector<uint32_t>>>> classes_;
  struct level_registry {
    std::map<std::pair<uint32_t, level_payload>, uint32_t> intern;
    std::vector<const level_payload*> by_id;  // owned by the intern map keys
  };
  // registries_[a][k] covers level k+1 classes of agent a
  std::vector<std::vector<level_registry>> registries_;
};

// Convenience over a single structure.
std::vector<std::vector<hierarchy_description>> hierarchy_level(const type_structure& s,
                                                                size_t depth,
                                                                unsigned threads = 1);

struct stable_partition {
  size_t stabilization_depth = 0;
  // blocks[a] lists the blocks of agent a in first-seen order; each block
  // holds (structure, type) pairs in scan order.
  std::vector<std::vector<std::vector<std::pair<uint32_t, uint32_t>>>> blocks;
};

// Partition refinement to its fixed point over the pooled types of the set.
stable_partition refine_to_fixed_point(hierarchy_set& hs);

struct redundancy_report {
  bool non_redundant = false;
  // (agent, type, type) with identical description streams
  std::optional<std::tuple<uint32_t, uint32_t, uint32_t>> witness;
};

// A structure is non-redundant iff its depth-unbounded description map is
// injective per agent, i.e. the stable partition is discrete.
redundancy_report is_non_redundant(const type_structure& s, unsigned threads = 1);

}  // namespace condtypes
