#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace condtypes {

// Finite measurable space with a designated family of conditioning events.
// The sigma-algebra is the full power set, so only the atoms and the event
// family are materialized. Events keep declaration order; members are kept
// as sorted atom indices.
class conditional_space {
 public:
  struct event {
    std::string label;
    std::vector<uint32_t> members;  // sorted, nonempty
  };

  // Validates: nonempty atom list, unique atom labels, nonempty event
  // family, unique event labels, every event a nonempty sorted subset.
  // Throws condtypes::error(domain) on violation.
  static std::shared_ptr<const conditional_space> create(std::vector<std::string> atoms,
                                                         std::vector<event> events);

  size_t atom_count() const { return atoms_.size(); }
  size_t event_count() const { return events_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom_label(uint32_t i) const { return atoms_[i]; }
  const std::vector<event>& events() const { return events_; }
  const event& event_at(uint32_t i) const { return events_[i]; }

  std::optional<uint32_t> atom_index(const std::string& label) const;
  std::optional<uint32_t> event_index(const std::string& label) const;

  bool operator==(const conditional_space& other) const {
    if (atoms_ != other.atoms_) return false;
    if (events_.size() != other.events_.size()) return false;
    for (size_t i = 0; i < events_.size(); ++i) {
      if (events_[i].label != other.events_[i].label) return false;
      if (events_[i].members != other.events_[i].members) return false;
    }
    return true;
  }

 private:
  conditional_space() = default;
  std::vector<std::string> atoms_;
  std::unordered_map<std::string, uint32_t> atom_index_;
  std::vector<event> events_;
  std::unordered_map<std::string, uint32_t> event_index_;
};

using space_ptr = std::shared_ptr<const conditional_space>;

inline bool same_space(const space_ptr& a, const space_ptr& b) {
  return a == b || (a && b && *a == *b);
}

// Subset helpers over sorted atom-index vectors.
bool is_subset(const std::vector<uint32_t>& inner, const std::vector<uint32_t>& outer);
std::vector<uint32_t> intersect(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);

// Product of a base conditional space with a plain finite factor. Atoms are
// pairs in base-major order ((m0,x0), (m0,x1), ..., (m1,x0), ...); the
// conditioning family is the lift C x X of the base family, same labels.
struct lifted_space {
  space_ptr space;
  space_ptr base;
  std::vector<std::string> factor;

  uint32_t encode(uint32_t base_idx, uint32_t factor_idx) const {
    return base_idx * static_cast<uint32_t>(factor.size()) + factor_idx;
  }
  uint32_t base_of(uint32_t atom) const { return atom / static_cast<uint32_t>(factor.size()); }
  uint32_t factor_of(uint32_t atom) const { return atom % static_cast<uint32_t>(factor.size()); }
};

// Throws condtypes::error(domain) if the factor is empty or has duplicate
// labels.
lifted_space lift_space(const space_ptr& base, std::vector<std::string> factor);

// Explicit product-of-named-factors coordinate system for marginals.
// Mixed-radix, first factor outermost.
struct product_layout {
  std::vector<std::pair<std::string, uint32_t>> factors;  // name, size

  size_t atom_count() const {
    size_t n = 1;
    for (const auto& [name, sz] : factors) n *= sz;
    return n;
  }
  std::optional<size_t> factor_index(const std::string& name) const {
    for (size_t i = 0; i < factors.size(); ++i)
      if (factors[i].first == name) return i;
    return std::nullopt;
  }
  uint32_t coordinate(uint32_t atom, size_t factor) const;
};

}  // namespace condtypes
