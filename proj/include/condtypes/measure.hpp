#pragma once

#include <string>
#include <vector>

#include "condtypes/rational.hpp"
#include "condtypes/space.hpp"

namespace condtypes {

// Exact weight vector aligned with a space's atom order. Whether it is a
// probability measure is a checked property, not a type invariant, so that
// validators can hold and report broken candidates.
struct measure {
  std::vector<rat> w;

  rat mass(const std::vector<uint32_t>& atoms) const {
    rat total = 0;
    for (uint32_t a : atoms) total += w[a];
    return total;
  }
  rat total() const {
    rat t = 0;
    for (const rat& x : w) t += x;
    return t;
  }
  bool operator==(const measure& other) const { return w == other.w; }
};

measure uniform_measure(size_t atom_count);
measure dirac_measure(size_t atom_count, uint32_t atom);

// Sums out every factor except the selected one. Throws
// condtypes::error(domain) on an unknown selector or a size mismatch.
measure marginal(const product_layout& layout, const measure& mu, const std::string& factor);

}  // namespace condtypes
