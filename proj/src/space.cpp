#include "condtypes/space.hpp"

#include <algorithm>

#include "condtypes/error.hpp"

namespace condtypes {

std::shared_ptr<const conditional_space> conditional_space::create(std::vector<std::string> atoms,
                                                                   std::vector<event> events) {
  auto sp = std::shared_ptr<conditional_space>(new conditional_space());
  if (atoms.empty()) fail_domain("space has no points");
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].empty()) fail_domain("empty point label");
    auto [it, fresh] = sp->atom_index_.emplace(atoms[i], static_cast<uint32_t>(i));
    if (!fresh) fail_domain("duplicate point label '" + atoms[i] + "'");
  }
  if (events.empty()) fail_domain("conditioning-event family is empty");
  for (size_t e = 0; e < events.size(); ++e) {
    auto& ev = events[e];
    if (ev.label.empty()) fail_domain("empty conditioning-event label");
    auto [it, fresh] = sp->event_index_.emplace(ev.label, static_cast<uint32_t>(e));
    if (!fresh) fail_domain("duplicate conditioning-event label '" + ev.label + "'");
    if (ev.members.empty()) fail_domain("conditioning event '" + ev.label + "' is empty");
    std::sort(ev.members.begin(), ev.members.end());
    for (size_t i = 0; i < ev.members.size(); ++i) {
      if (ev.members[i] >= atoms.size())
        fail_domain("conditioning event '" + ev.label + "' references an unknown point");
      if (i > 0 && ev.members[i] == ev.members[i - 1])
        fail_domain("conditioning event '" + ev.label + "' repeats a point");
    }
  }
  sp->atoms_ = std::move(atoms);
  sp->events_ = std::move(events);
  return sp;
}

std::optional<uint32_t> conditional_space::atom_index(const std::string& label) const {
  auto it = atom_index_.find(label);
  if (it == atom_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<uint32_t> conditional_space::event_index(const std::string& label) const {
  auto it = event_index_.find(label);
  if (it == event_index_.end()) return std::nullopt;
  return it->second;
}

bool is_subset(const std::vector<uint32_t>& inner, const std::vector<uint32_t>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

std::vector<uint32_t> intersect(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

lifted_space lift_space(const space_ptr& base, std::vector<std::string> factor) {
  if (!base) fail_domain("lift over a null base space");
  if (factor.empty()) fail_domain("lift over an empty factor");
  {
    auto sorted = factor;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail_domain("lift factor has duplicate labels");
  }
  const uint32_t k = static_cast<uint32_t>(factor.size());
  std::vector<std::string> atoms;
  atoms.reserve(base->atom_count() * k);
  for (const auto& m : base->atoms())
    for (const auto& x : factor) atoms.push_back("(" + m + "," + x + ")");
  std::vector<conditional_space::event> events;
  events.reserve(base->event_count());
  for (const auto& ev : base->events()) {
    conditional_space::event lifted{ev.label, {}};
    lifted.members.reserve(ev.members.size() * k);
    for (uint32_t m : ev.members)
      for (uint32_t x = 0; x < k; ++x) lifted.members.push_back(m * k + x);
    std::sort(lifted.members.begin(), lifted.members.end());
    events.push_back(std::move(lifted));
  }
  lifted_space out;
  out.space = conditional_space::create(std::move(atoms), std::move(events));
  out.base = base;
  out.factor = std::move(factor);
  return out;
}

uint32_t product_layout::coordinate(uint32_t atom, size_t factor) const {
  uint32_t radix = 1;
  for (size_t j = factors.size(); j-- > factor + 1;) radix *= factors[j].second;
  return (atom / radix) % factors[factor].second;
}

}  // namespace condtypes
