#include "condtypes/measure.hpp"

#include "condtypes/error.hpp"

namespace condtypes {

measure uniform_measure(size_t atom_count) {
  measure m;
  m.w.assign(atom_count, rat(1, static_cast<long long>(atom_count)));
  return m;
}

measure dirac_measure(size_t atom_count, uint32_t atom) {
  measure m;
  m.w.assign(atom_count, rat(0));
  m.w[atom] = 1;
  return m;
}

measure marginal(const product_layout& layout, const measure& mu, const std::string& factor) {
  auto fi = layout.factor_index(factor);
  if (!fi) fail_domain("marginal onto unknown factor '" + factor + "'");
  if (mu.w.size() != layout.atom_count()) fail_domain("measure does not match the product layout");
  measure out;
  out.w.assign(layout.factors[*fi].second, rat(0));
  for (uint32_t a = 0; a < mu.w.size(); ++a) {
    if (mu.w[a] == 0) continue;
    out.w[layout.coordinate(a, *fi)] += mu.w[a];
  }
  return out;
}

}  // namespace condtypes
