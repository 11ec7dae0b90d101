#include "condtypes/cps.hpp"

#include <algorithm>

#include "condtypes/error.hpp"

namespace condtypes {

const char* violation_name(violation_code code) {
  switch (code) {
    case violation_code::missing_conditional: return "missing-conditional";
    case violation_code::unknown_event: return "unknown-event";
    case violation_code::duplicate_event: return "duplicate-event";
    case violation_code::unknown_atom: return "unknown-atom";
    case violation_code::duplicate_atom: return "duplicate-atom";
    case violation_code::negative_weight: return "C2-negative-weight";
    case violation_code::mass_not_one: return "C2-mass-not-one";
    case violation_code::totality: return "C1-totality";
    case violation_code::chain: return "C3-chain";
  }
  return "unknown";
}

namespace {

void check_axioms(const cps& v, validation_report& report) {
  const auto& sp = *v.space;
  // C2: each conditional is a probability measure.
  for (uint32_t e = 0; e < sp.event_count(); ++e) {
    const measure& mu = v.conditionals[e];
    for (uint32_t a = 0; a < sp.atom_count(); ++a) {
      if (mu.w[a] < 0)
        report.items.push_back({violation_code::negative_weight,
                                "event '" + sp.event_at(e).label + "', point '" +
                                    sp.atom_label(a) + "' has weight " + format_rat(mu.w[a])});
    }
    rat total = mu.total();
    if (total != 1)
      report.items.push_back({violation_code::mass_not_one,
                              "event '" + sp.event_at(e).label + "' has total mass " +
                                  format_rat(total)});
  }
  // C1: nu(C|C) = 1.
  for (uint32_t e = 0; e < sp.event_count(); ++e) {
    rat on_event = v.conditionals[e].mass(sp.event_at(e).members);
    if (on_event != 1)
      report.items.push_back({violation_code::totality,
                              "nu(" + sp.event_at(e).label + "|" + sp.event_at(e).label +
                                  ") = " + format_rat(on_event)});
  }
  // C3: nu(E|C) = nu(E|D) nu(D|C) for E within D within C, both D and C
  // conditioning events. Singleton E suffices per-atom (weights are additive
  // by representation) and gives minimal witnesses.
  for (uint32_t d = 0; d < sp.event_count(); ++d) {
    for (uint32_t c = 0; c < sp.event_count(); ++c) {
      if (d == c) continue;
      const auto& dd = sp.event_at(d);
      const auto& cc = sp.event_at(c);
      if (!is_subset(dd.members, cc.members)) continue;
      rat d_given_c = v.conditionals[c].mass(dd.members);
      for (uint32_t a : dd.members) {
        rat lhs = v.conditionals[c].w[a];
        rat rhs = v.conditionals[d].w[a] * d_given_c;
        if (lhs != rhs)
          report.items.push_back({violation_code::chain,
                                  "E={" + sp.atom_label(a) + "}, D=" + dd.label + ", C=" +
                                      cc.label + ": nu(E|C) = " + format_rat(lhs) +
                                      " but nu(E|D)nu(D|C) = " + format_rat(rhs)});
      }
    }
  }
}

}  // namespace

validation_report validate_cps(const conditional_space& space, const raw_conditionals& candidate) {
  validation_report report;
  std::vector<bool> seen(space.event_count(), false);
  cps bound;
  bound.conditionals.assign(space.event_count(), measure{std::vector<rat>(space.atom_count(), rat(0))});
  for (const auto& [label, weights] : candidate.entries) {
    auto e = space.event_index(label);
    if (!e) {
      report.items.push_back({violation_code::unknown_event,
                              "conditional for '" + label + "' which is not a conditioning event"});
      continue;
    }
    if (seen[*e]) {
      report.items.push_back({violation_code::duplicate_event,
                              "second conditional for event '" + label + "'"});
      continue;
    }
    seen[*e] = true;
    std::vector<bool> atom_seen(space.atom_count(), false);
    for (const auto& [atom_label, weight] : weights) {
      auto a = space.atom_index(atom_label);
      if (!a) {
        report.items.push_back({violation_code::unknown_atom,
                                "event '" + label + "' weights unknown point '" + atom_label + "'"});
        continue;
      }
      if (atom_seen[*a]) {
        report.items.push_back({violation_code::duplicate_atom,
                                "event '" + label + "' repeats point '" + atom_label + "'"});
        continue;
      }
      atom_seen[*a] = true;
      bound.conditionals[*e].w[*a] = weight;
    }
  }
  for (uint32_t e = 0; e < space.event_count(); ++e) {
    if (!seen[e])
      report.items.push_back({violation_code::missing_conditional,
                              "no conditional for event '" + space.event_at(e).label + "'"});
  }
  if (!report.ok()) return report;  // axioms need a structurally sound family
  // validate_cps(cps) needs a space_ptr; wrap without copying the space.
  bound.space = space_ptr(&space, [](const conditional_space*) {});
  check_axioms(bound, report);
  return report;
}

validation_report validate_cps(const cps& candidate) {
  validation_report report;
  if (!candidate.space) fail_domain("candidate has no space");
  if (candidate.conditionals.size() != candidate.space->event_count())
    fail_domain("candidate conditional count does not match the event family");
  for (const auto& mu : candidate.conditionals)
    if (mu.w.size() != candidate.space->atom_count())
      fail_domain("candidate conditional does not match the point count");
  check_axioms(candidate, report);
  return report;
}

cps cps_from_prior(const space_ptr& space, const measure& prior) {
  if (!space) fail_domain("cps_from_prior: null space");
  if (prior.w.size() != space->atom_count())
    fail_domain("cps_from_prior: prior does not match the point count");
  for (uint32_t a = 0; a < prior.w.size(); ++a)
    if (prior.w[a] < 0)
      fail_domain("cps_from_prior: negative prior weight at point '" + space->atom_label(a) + "'");
  if (prior.total() != 1) fail_domain("cps_from_prior: prior mass is not one");
  cps out;
  out.space = space;
  out.conditionals.reserve(space->event_count());
  for (const auto& ev : space->events()) {
    rat denom = prior.mass(ev.members);
    if (denom == 0)
      fail_domain("cps_from_prior: conditioning event '" + ev.label + "' has prior mass zero");
    measure mu;
    mu.w.assign(space->atom_count(), rat(0));
    for (uint32_t a : ev.members) mu.w[a] = prior.w[a] / denom;
    out.conditionals.push_back(std::move(mu));
  }
  return out;
}

lifted_map lifted_map_from_factor(const lifted_space& src, const lifted_space& dst,
                                  const std::vector<uint32_t>& factor_image) {
  if (!same_space(src.base, dst.base)) fail_domain("lifted map across different bases");
  if (factor_image.size() != src.space->atom_count())
    fail_domain("factor image does not match the source atom count");
  lifted_map f{src, dst, {}};
  f.to.resize(src.space->atom_count());
  for (uint32_t a = 0; a < f.to.size(); ++a) {
    if (factor_image[a] >= dst.factor.size()) fail_domain("factor image out of range");
    f.to[a] = dst.encode(src.base_of(a), factor_image[a]);
  }
  return f;
}

lifted_map identity_map(const lifted_space& sp) {
  lifted_map f{sp, sp, {}};
  f.to.resize(sp.space->atom_count());
  for (uint32_t a = 0; a < f.to.size(); ++a) f.to[a] = a;
  return f;
}

lifted_map compose(const lifted_map& g, const lifted_map& f) {
  if (!same_space(f.dst.space, g.src.space)) fail_domain("composition domain mismatch");
  lifted_map out{f.src, g.dst, {}};
  out.to.resize(f.to.size());
  for (uint32_t a = 0; a < f.to.size(); ++a) out.to[a] = g.to[f.to[a]];
  return out;
}

cps pushforward_cps(const lifted_map& f, const cps& nu) {
  if (!same_space(nu.space, f.src.space)) fail_domain("pushforward of a system over a different space");
  const auto& src_sp = *f.src.space;
  const auto& dst_sp = *f.dst.space;
  if (src_sp.event_count() != dst_sp.event_count())
    fail_domain("pushforward between incompatible event families");
  // f(C x X) within C x Y, eventwise; this is what lets C1 survive the push.
  for (uint32_t e = 0; e < src_sp.event_count(); ++e) {
    const auto& members = src_sp.event_at(e).members;
    const auto& dst_members = dst_sp.event_at(e).members;
    for (uint32_t a : members) {
      if (!std::binary_search(dst_members.begin(), dst_members.end(), f.to[a]))
        fail_domain("map leaves event '" + src_sp.event_at(e).label + "' at atom '" +
                    src_sp.atom_label(a) + "'");
    }
  }
  cps out;
  out.space = f.dst.space;
  out.conditionals.assign(dst_sp.event_count(), measure{std::vector<rat>(dst_sp.atom_count(), rat(0))});
  for (uint32_t e = 0; e < src_sp.event_count(); ++e)
    for (uint32_t a = 0; a < src_sp.atom_count(); ++a) {
      const rat& w = nu.conditionals[e].w[a];
      if (w != 0) out.conditionals[e].w[f.to[a]] += w;
    }
  return out;
}

std::vector<uint32_t> preimage(const lifted_map& f, const std::vector<uint32_t>& atoms) {
  std::vector<uint32_t> out;
  for (uint32_t a = 0; a < f.to.size(); ++a)
    if (std::binary_search(atoms.begin(), atoms.end(), f.to[a])) out.push_back(a);
  return out;
}

std::vector<size_t> gamma_event(const std::vector<cps>& collection,
                                const std::vector<uint32_t>& event_atoms, uint32_t event,
                                const rat& p) {
  if (p < 0 || p > 1) fail_domain("gamma threshold outside [0,1]");
  std::vector<size_t> out;
  for (size_t i = 0; i < collection.size(); ++i) {
    const cps& nu = collection[i];
    if (!collection.empty() && !same_space(nu.space, collection[0].space))
      fail_domain("gamma event over a mixed collection");
    if (event >= nu.space->event_count()) fail_domain("gamma event: unknown conditioning event");
    for (uint32_t a : event_atoms)
      if (a >= nu.space->atom_count()) fail_domain("gamma event: atom out of range");
    if (nu.conditionals[event].mass(event_atoms) >= p) out.push_back(i);
  }
  return out;
}

pi_system_result agree_on_pi_system(const cps& a, const cps& b,
                                    const std::vector<std::vector<uint32_t>>& generators) {
  if (!same_space(a.space, b.space)) fail_domain("agreement check across different spaces");
  pi_system_result res;
  for (const auto& g : generators) {
    if (!std::is_sorted(g.begin(), g.end())) fail_domain("generator atoms must be sorted");
    for (uint32_t x : g)
      if (x >= a.space->atom_count()) fail_domain("generator atom out of range");
  }
  res.intersection_closed = true;
  for (size_t i = 0; i < generators.size() && res.intersection_closed; ++i) {
    for (size_t j = i; j < generators.size(); ++j) {
      auto meet = intersect(generators[i], generators[j]);
      if (meet.empty()) continue;  // the empty set is implicitly a member
      bool found = false;
      for (const auto& g : generators)
        if (g == meet) {
          found = true;
          break;
        }
      if (!found) {
        res.intersection_closed = false;
        res.closure_witness = {i, j};
        break;
      }
    }
  }
  if (!res.intersection_closed) return res;
  res.agrees = true;
  for (size_t gi = 0; gi < generators.size() && res.agrees; ++gi)
    for (uint32_t e = 0; e < a.space->event_count(); ++e) {
      if (a.conditionals[e].mass(generators[gi]) != b.conditionals[e].mass(generators[gi])) {
        res.agrees = false;
        res.disagreement = {gi, e};
        break;
      }
    }
  return res;
}

}  // namespace condtypes
