#include "condtypes/type_structure.hpp"

#include <algorithm>
#include <unordered_set>

#include "condtypes/error.hpp"

namespace condtypes {

namespace {

size_t opponent_tuple_count(const std::vector<type_structure::agent>& agents, size_t agent_index) {
  size_t n = 1;
  for (size_t j = 0; j < agents.size(); ++j)
    if (j != agent_index) n *= agents[j].types.size();
  return n;
}

}  // namespace

std::vector<std::string> type_structure::opponent_tuple_labels(const std::vector<agent>& agents,
                                                               size_t agent_index) {
  std::vector<size_t> opp;
  for (size_t j = 0; j < agents.size(); ++j)
    if (j != agent_index) opp.push_back(j);
  if (opp.empty()) return {"*"};
  std::vector<std::string> labels;
  size_t total = opponent_tuple_count(agents, agent_index);
  labels.reserve(total);
  std::vector<uint32_t> coords(opp.size(), 0);
  for (size_t n = 0; n < total; ++n) {
    std::string label;
    for (size_t k = 0; k < opp.size(); ++k) {
      if (k) label += ",";
      label += agents[opp[k]].types[coords[k]];
    }
    labels.push_back(std::move(label));
    for (size_t k = opp.size(); k-- > 0;) {
      if (++coords[k] < agents[opp[k]].types.size()) break;
      coords[k] = 0;
    }
  }
  return labels;
}

lifted_space type_structure::belief_space_for(const space_ptr& base,
                                              const std::vector<agent>& agents,
                                              size_t agent_index) {
  return lift_space(base, opponent_tuple_labels(agents, agent_index));
}

type_structure type_structure::create(space_ptr base, std::vector<agent> agents,
                                      std::vector<std::vector<cps>> beliefs) {
  if (!base) fail_domain("structure has no base space");
  if (agents.empty()) fail_domain("structure has no agents");
  {
    std::unordered_set<std::string> ids;
    for (const auto& a : agents) {
      if (a.id.empty()) fail_domain("empty agent id");
      if (!ids.insert(a.id).second) fail_domain("duplicate agent id '" + a.id + "'");
      if (a.types.empty()) fail_domain("agent '" + a.id + "' has an empty carrier");
      std::unordered_set<std::string> labels;
      for (const auto& t : a.types) {
        if (t.empty()) fail_domain("agent '" + a.id + "' has an empty type label");
        if (!labels.insert(t).second)
          fail_domain("agent '" + a.id + "' repeats type label '" + t + "'");
      }
    }
  }
  if (beliefs.size() != agents.size()) fail_domain("belief table does not match the agent list");
  type_structure s;
  s.base_ = std::move(base);
  s.agents_ = std::move(agents);
  for (size_t i = 0; i < s.agents_.size(); ++i) {
    s.belief_spaces_.push_back(belief_space_for(s.base_, s.agents_, i));
    if (beliefs[i].size() != s.agents_[i].types.size())
      fail_domain("agent '" + s.agents_[i].id + "' belief count does not match its carrier");
    for (size_t t = 0; t < beliefs[i].size(); ++t) {
      const cps& v = beliefs[i][t];
      if (!same_space(v.space, s.belief_spaces_[i].space))
        fail_domain("belief of agent '" + s.agents_[i].id + "' type '" + s.agents_[i].types[t] +
                    "' lives over the wrong space");
      auto report = validate_cps(v);
      if (!report.ok())
        fail_domain("belief of agent '" + s.agents_[i].id + "' type '" + s.agents_[i].types[t] +
                    "' is not a conditional system: " + report.items.front().detail);
    }
  }
  s.beliefs_ = std::move(beliefs);
  return s;
}

std::optional<uint32_t> type_structure::agent_index(const std::string& id) const {
  for (uint32_t i = 0; i < agents_.size(); ++i)
    if (agents_[i].id == id) return i;
  return std::nullopt;
}

std::optional<uint32_t> type_structure::type_index(size_t agent, const std::string& label) const {
  const auto& types = agents_[agent].types;
  for (uint32_t t = 0; t < types.size(); ++t)
    if (types[t] == label) return t;
  return std::nullopt;
}

std::vector<uint32_t> type_structure::decode_opponents(size_t agent, uint32_t tuple) const {
  std::vector<uint32_t> coords;
  std::vector<size_t> opp;
  for (size_t j = 0; j < agents_.size(); ++j)
    if (j != agent) opp.push_back(j);
  coords.assign(opp.size(), 0);
  for (size_t k = opp.size(); k-- > 0;) {
    uint32_t radix = static_cast<uint32_t>(agents_[opp[k]].types.size());
    coords[k] = tuple % radix;
    tuple /= radix;
  }
  return coords;
}

uint32_t type_structure::encode_opponents(size_t agent, const std::vector<uint32_t>& coords) const {
  uint32_t tuple = 0;
  size_t k = 0;
  for (size_t j = 0; j < agents_.size(); ++j) {
    if (j == agent) continue;
    tuple = tuple * static_cast<uint32_t>(agents_[j].types.size()) + coords[k++];
  }
  return tuple;
}

structure_morphism identity_morphism(const type_structure& s) {
  structure_morphism mu;
  mu.type_map.resize(s.agent_count());
  for (size_t i = 0; i < s.agent_count(); ++i) {
    mu.type_map[i].resize(s.type_count(i));
    for (uint32_t t = 0; t < s.type_count(i); ++t) mu.type_map[i][t] = t;
  }
  return mu;
}

structure_morphism compose(const structure_morphism& g, const structure_morphism& f) {
  if (g.type_map.size() != f.type_map.size()) fail_domain("morphism composition arity mismatch");
  structure_morphism out;
  out.type_map.resize(f.type_map.size());
  for (size_t i = 0; i < f.type_map.size(); ++i) {
    out.type_map[i].resize(f.type_map[i].size());
    for (size_t t = 0; t < f.type_map[i].size(); ++t) {
      uint32_t mid = f.type_map[i][t];
      if (mid >= g.type_map[i].size()) fail_domain("morphism composition range mismatch");
      out.type_map[i][t] = g.type_map[i][mid];
    }
  }
  return out;
}

namespace {

void check_shape(const structure_morphism& mu, const type_structure& src,
                 const type_structure& dst) {
  if (!same_space(src.base(), dst.base())) fail_domain("morphism across different base spaces");
  if (src.agent_count() != dst.agent_count()) fail_domain("morphism across different agent sets");
  for (size_t i = 0; i < src.agent_count(); ++i)
    if (src.agent_at(i).id != dst.agent_at(i).id)
      fail_domain("morphism across different agent sets");
  if (mu.type_map.size() != src.agent_count()) fail_domain("morphism arity mismatch");
  for (size_t i = 0; i < src.agent_count(); ++i) {
    if (mu.type_map[i].size() != src.type_count(i))
      fail_domain("morphism does not cover agent '" + src.agent_at(i).id + "'");
    for (uint32_t img : mu.type_map[i])
      if (img >= dst.type_count(i))
        fail_domain("morphism maps outside agent '" + src.agent_at(i).id + "'");
  }
}

// (id_base, mu_{-i}) as a pointwise lifted map between belief spaces.
lifted_map opponent_map(const structure_morphism& mu, const type_structure& src,
                        const type_structure& dst, size_t agent) {
  const lifted_space& from = src.belief_space(agent);
  const lifted_space& to = dst.belief_space(agent);
  std::vector<uint32_t> factor_image(from.space->atom_count());
  for (uint32_t a = 0; a < factor_image.size(); ++a) {
    auto coords = src.decode_opponents(agent, from.factor_of(a));
    size_t k = 0;
    for (size_t j = 0; j < src.agent_count(); ++j) {
      if (j == agent) continue;
      coords[k] = mu.type_map[j][coords[k]];
      ++k;
    }
    factor_image[a] = dst.encode_opponents(agent, coords);
  }
  return lifted_map_from_factor(from, to, factor_image);
}

}  // namespace

cps apply_functor(const structure_morphism& mu, const type_structure& src,
                  const type_structure& dst, size_t agent, const cps& value) {
  check_shape(mu, src, dst);
  return pushforward_cps(opponent_map(mu, src, dst, agent), value);
}

morphism_check check_morphism(const structure_morphism& mu, const type_structure& src,
                              const type_structure& dst) {
  check_shape(mu, src, dst);
  for (size_t i = 0; i < src.agent_count(); ++i) {
    lifted_map f = opponent_map(mu, src, dst, i);
    for (uint32_t t = 0; t < src.type_count(i); ++t) {
      cps pushed = pushforward_cps(f, src.belief(i, t));
      const cps& expected = dst.belief(i, mu.type_map[i][t]);
      for (uint32_t e = 0; e < pushed.conditionals.size(); ++e)
        for (uint32_t a = 0; a < pushed.conditionals[e].w.size(); ++a)
          if (pushed.conditionals[e].w[a] != expected.conditionals[e].w[a]) {
            morphism_check res;
            res.ok = false;
            res.detail = "agent '" + src.agent_at(i).id + "', type '" + src.agent_at(i).types[t] +
                         "', event '" + dst.belief_space(i).space->event_at(e).label +
                         "', atom '" + dst.belief_space(i).space->atom_label(a) + "': pushed " +
                         format_rat(pushed.conditionals[e].w[a]) + " vs target " +
                         format_rat(expected.conditionals[e].w[a]);
            return res;
          }
    }
  }
  return {true, ""};
}

bool is_isomorphism(const structure_morphism& mu, const type_structure& src,
                    const type_structure& dst) {
  structure_morphism inverse;
  inverse.type_map.resize(mu.type_map.size());
  for (size_t i = 0; i < mu.type_map.size(); ++i) {
    if (src.type_count(i) != dst.type_count(i)) return false;
    inverse.type_map[i].assign(dst.type_count(i), UINT32_MAX);
    for (uint32_t t = 0; t < mu.type_map[i].size(); ++t) {
      uint32_t img = mu.type_map[i][t];
      if (inverse.type_map[i][img] != UINT32_MAX) return false;  // not injective
      inverse.type_map[i][img] = t;
    }
    for (uint32_t d : inverse.type_map[i])
      if (d == UINT32_MAX) return false;  // not surjective
  }
  return check_morphism(mu, src, dst).ok && check_morphism(inverse, dst, src).ok;
}

}  // namespace condtypes
