#include "condtypes/fragment.hpp"

#include <algorithm>
#include <set>

#include "condtypes/error.hpp"

namespace condtypes {

namespace {

// Pushes a source type's belief through per-agent type relabellings given by
// target indices (block or element membership) into the target belief space.
cps push_through_classes(const type_structure& src, size_t agent, uint32_t type,
                         const std::vector<std::vector<uint32_t>>& class_of,
                         const lifted_space& target_space,
                         const std::vector<uint32_t>& target_radix) {
  const lifted_space& from = src.belief_space(agent);
  std::vector<uint32_t> factor_image(from.space->atom_count());
  for (uint32_t a = 0; a < factor_image.size(); ++a) {
    auto coords = src.decode_opponents(agent, from.factor_of(a));
    uint32_t tuple = 0;
    size_t k = 0;
    for (size_t j = 0; j < src.agent_count(); ++j) {
      if (j == agent) continue;
      tuple = tuple * target_radix[j] + class_of[j][coords[k]];
      ++k;
    }
    factor_image[a] = tuple;
  }
  lifted_map f{from, target_space, {}};
  f.to.resize(from.space->atom_count());
  for (uint32_t a = 0; a < f.to.size(); ++a)
    f.to[a] = target_space.encode(from.base_of(a), factor_image[a]);
  return pushforward_cps(f, src.belief(agent, type));
}

}  // namespace

quotient_result quotient(const type_structure& s, unsigned threads) {
  hierarchy_set hs({&s}, threads);
  stable_partition part = refine_to_fixed_point(hs);

  std::vector<type_structure::agent> agents;
  std::vector<std::vector<uint32_t>> block_of(s.agent_count());
  structure_morphism projection;
  projection.type_map.resize(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    type_structure::agent qa;
    qa.id = s.agent_at(a).id;
    block_of[a].assign(s.type_count(a), 0);
    for (size_t b = 0; b < part.blocks[a].size(); ++b) {
      // Scan order groups blocks by first occurrence, so the first member is
      // the declaration-least one; its label names the block.
      qa.types.push_back(s.agent_at(a).types[part.blocks[a][b][0].second]);
      for (auto [st, t] : part.blocks[a][b]) block_of[a][t] = static_cast<uint32_t>(b);
    }
    projection.type_map[a] = block_of[a];
    agents.push_back(std::move(qa));
  }

  std::vector<uint32_t> radix(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a)
    radix[a] = static_cast<uint32_t>(agents[a].types.size());

  std::vector<std::vector<cps>> beliefs(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    lifted_space target = type_structure::belief_space_for(s.base(), agents, a);
    for (size_t b = 0; b < part.blocks[a].size(); ++b) {
      uint32_t rep = part.blocks[a][b][0].second;
      beliefs[a].push_back(
          push_through_classes(s, a, rep, block_of, target, radix));
    }
  }

  quotient_result out{type_structure::create(s.base(), std::move(agents), std::move(beliefs)),
                      std::move(projection)};
  return out;
}

universal_fragment build_fragment(const std::vector<const type_structure*>& inputs,
                                  std::optional<size_t> depth, unsigned threads) {
  hierarchy_set hs(inputs, threads);
  size_t required = hs.stabilization_depth();
  size_t d = depth.value_or(required);
  if (d < required)
    fail_domain("materialization depth " + std::to_string(d) +
                " is below the required stabilization depth " + std::to_string(required));
  hs.ensure_depth(d);

  universal_fragment f;
  f.depth = d;
  f.stabilization_depth = required;
  size_t agent_count = inputs[0]->agent_count();
  f.elements.resize(agent_count);
  f.element_of.resize(inputs.size());
  for (size_t s = 0; s < inputs.size(); ++s) {
    f.element_of[s].resize(agent_count);
    for (size_t a = 0; a < agent_count; ++a)
      f.element_of[s][a].assign(inputs[s]->type_count(a), 0);
  }

  for (size_t a = 0; a < agent_count; ++a) {
    std::map<uint32_t, uint32_t> by_class;  // class at depth d -> element index
    std::set<std::string> used_labels;
    for (uint32_t s = 0; s < inputs.size(); ++s)
      for (uint32_t t = 0; t < inputs[s]->type_count(a); ++t) {
        uint32_t cls = hs.class_at(s, a, t, d);
        auto [it, fresh] = by_class.emplace(cls, static_cast<uint32_t>(f.elements[a].size()));
        if (fresh) {
          universal_fragment::element el;
          el.stream.reserve(d + 1);
          for (size_t l = 0; l <= d; ++l) el.stream.push_back(hs.class_at(s, a, t, l));
          el.label = inputs[s]->agent_at(a).types[t];
          if (!used_labels.insert(el.label).second) {
            el.label += "@" + std::to_string(s);
            while (!used_labels.insert(el.label).second) el.label += "'";
          }
          el.generators.push_back({s, t});
          f.elements[a].push_back(std::move(el));
        } else {
          f.elements[a][it->second].generators.push_back({s, t});
        }
        f.element_of[s][a][t] = it->second;
      }
  }

  std::vector<type_structure::agent> agents;
  std::vector<uint32_t> radix(agent_count);
  for (size_t a = 0; a < agent_count; ++a) {
    type_structure::agent fa;
    fa.id = inputs[0]->agent_at(a).id;
    for (const auto& el : f.elements[a]) fa.types.push_back(el.label);
    radix[a] = static_cast<uint32_t>(fa.types.size());
    agents.push_back(std::move(fa));
  }

  std::vector<std::vector<cps>> beliefs(agent_count);
  for (size_t a = 0; a < agent_count; ++a) {
    lifted_space target = type_structure::belief_space_for(inputs[0]->base(), agents, a);
    for (const auto& el : f.elements[a]) {
      cps transition;
      bool have = false;
      for (auto [s, t] : el.generators) {
        cps pushed = push_through_classes(*inputs[s], a, t, f.element_of[s], target, radix);
        if (!have) {
          transition = std::move(pushed);
          have = true;
        } else if (!(pushed == transition)) {
          fail_domain("fragment transition is not well-defined: generators of element '" +
                      el.label + "' (agent '" + agents[a].id + "') disagree");
        }
      }
      beliefs[a].push_back(std::move(transition));
    }
  }

  f.realized = type_structure::create(inputs[0]->base(), std::move(agents), std::move(beliefs));

  f.payloads.resize(agent_count);
  for (size_t a = 0; a < agent_count; ++a) {
    f.payloads[a].resize(d);
    for (const auto& el : f.elements[a])
      for (size_t k = 1; k <= d; ++k)
        f.payloads[a][k - 1].emplace(el.stream[k], hs.payload(a, k, el.stream[k]));
  }
  return f;
}

structure_morphism terminal_map(const type_structure& s, const universal_fragment& f,
                                unsigned threads) {
  hierarchy_set hs({&f.realized, &s}, threads);
  size_t need = std::max(f.depth, hs.stabilization_depth());
  hs.ensure_depth(need);
  structure_morphism mu;
  mu.type_map.resize(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    std::map<uint32_t, uint32_t> element_by_class;
    for (uint32_t e = 0; e < f.realized.type_count(a); ++e)
      element_by_class.emplace(hs.class_at(0, a, e, need), e);
    mu.type_map[a].resize(s.type_count(a));
    for (uint32_t t = 0; t < s.type_count(a); ++t) {
      auto it = element_by_class.find(hs.class_at(1, a, t, need));
      if (it == element_by_class.end())
        fail_domain("type '" + s.agent_at(a).types[t] + "' of agent '" + s.agent_at(a).id +
                    "' has no materialized hierarchy in the fragment");
      mu.type_map[a][t] = it->second;
    }
  }
  auto square = check_morphism(mu, s, f.realized);
  if (!square.ok)
    fail_domain("terminal map failed the commuting square: " + square.detail);
  return mu;
}

uniqueness_result check_uniqueness(const type_structure& s, const universal_fragment& f,
                                   const structure_morphism& candidate, unsigned threads) {
  auto square = check_morphism(candidate, s, f.realized);
  if (!square.ok) fail_domain("candidate is not a morphism into the fragment: " + square.detail);
  structure_morphism tm = terminal_map(s, f, threads);
  for (uint32_t a = 0; a < tm.type_map.size(); ++a)
    for (uint32_t t = 0; t < tm.type_map[a].size(); ++t)
      if (tm.type_map[a][t] != candidate.type_map[a][t]) return {false, {{a, t}}};
  return {true, std::nullopt};
}

fragment_check_report fragment_transition_checks(const universal_fragment& f, unsigned threads) {
  fragment_check_report rep;
  const type_structure& z = f.realized;

  for (size_t a = 0; a < z.agent_count(); ++a)
    for (uint32_t e = 0; e < z.type_count(a); ++e) {
      auto report = validate_cps(z.belief(a, e));
      for (const auto& v : report.items)
        rep.findings.push_back("transition of agent '" + z.agent_at(a).id + "' element '" +
                               z.agent_at(a).types[e] + "' breaks " + violation_name(v.code) +
                               ": " + v.detail);
    }

  // Shift compatibility: the transition pushed through opponents' level-n
  // classes must reproduce the level-(n+1) payload of the element itself.
  for (size_t a = 0; a < z.agent_count(); ++a) {
    const lifted_space& bs = z.belief_space(a);
    std::vector<size_t> opp;
    for (size_t j = 0; j < z.agent_count(); ++j)
      if (j != a) opp.push_back(j);
    for (uint32_t ei = 0; ei < z.type_count(a); ++ei) {
      const auto& el = f.elements[a][ei];
      const cps& transition = z.belief(a, ei);
      for (size_t n = 0; n + 1 <= f.depth; ++n) {
        auto pit = f.payloads[a][n].find(el.stream[n + 1]);
        if (pit == f.payloads[a][n].end()) {
          rep.findings.push_back("element '" + el.label + "' of agent '" + z.agent_at(a).id +
                                 "' has no stored payload at level " + std::to_string(n + 1));
          continue;
        }
        const level_payload& expected = pit->second;
        bool match = true;
        uint32_t bad_event = 0;
        for (uint32_t e = 0; e < bs.space->event_count() && match; ++e) {
          std::map<std::vector<uint32_t>, rat> acc;
          const measure& mu = transition.conditionals[e];
          for (uint32_t atom = 0; atom < mu.w.size(); ++atom) {
            if (mu.w[atom] == 0) continue;
            auto coords = z.decode_opponents(a, bs.factor_of(atom));
            std::vector<uint32_t> key;
            key.reserve(1 + opp.size());
            key.push_back(bs.base_of(atom));
            for (size_t k = 0; k < opp.size(); ++k)
              key.push_back(f.elements[opp[k]][coords[k]].stream[n]);
            acc[std::move(key)] += mu.w[atom];
          }
          std::vector<std::pair<std::vector<uint32_t>, rat>> got(acc.begin(), acc.end());
          if (got != expected.by_event[e]) {
            match = false;
            bad_event = e;
          }
        }
        if (!match)
          rep.findings.push_back("shift mismatch: agent '" + z.agent_at(a).id + "' element '" +
                                 el.label + "' level " + std::to_string(n + 1) + ", event '" +
                                 bs.space->event_at(bad_event).label + "'");
      }
    }
  }

  // Self-identity: the fragment's own hierarchy computation must return each
  // element's stream unchanged.
  {
    hierarchy_set self({&z}, threads);
    self.ensure_depth(f.depth);
    for (size_t a = 0; a < z.agent_count(); ++a)
      for (uint32_t ei = 0; ei < z.type_count(a); ++ei)
        for (size_t l = 0; l <= f.depth; ++l)
          if (self.class_at(0, a, ei, l) != f.elements[a][ei].stream[l]) {
            rep.findings.push_back("self-identity failure: agent '" + z.agent_at(a).id +
                                   "' element '" + f.elements[a][ei].label + "' level " +
                                   std::to_string(l));
            break;
          }
  }

  // Transition injectivity on the materialized carrier.
  for (size_t a = 0; a < z.agent_count(); ++a)
    for (uint32_t x = 0; x < z.type_count(a); ++x)
      for (uint32_t y = x + 1; y < z.type_count(a); ++y)
        if (z.belief(a, x) == z.belief(a, y))
          rep.findings.push_back("transition collision: agent '" + z.agent_at(a).id +
                                 "' elements '" + z.agent_at(a).types[x] + "' and '" +
                                 z.agent_at(a).types[y] + "'");
  return rep;
}

}  // namespace condtypes
