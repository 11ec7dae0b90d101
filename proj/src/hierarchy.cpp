#include "condtypes/hierarchy.hpp"

#include <algorithm>
#include <map>

#include "condtypes/error.hpp"
#include "condtypes/parallel.hpp"

namespace condtypes {

hierarchy_description truncate_description(const hierarchy_description& d, size_t level) {
  if (level > d.depth) fail_domain("truncation above the computed depth");
  hierarchy_description out;
  out.depth = level;
  out.class_by_level.assign(d.class_by_level.begin(), d.class_by_level.begin() + level + 1);
  return out;
}

hierarchy_set::hierarchy_set(std::vector<const type_structure*> structures, unsigned threads)
    : structures_(std::move(structures)), threads_(threads ? threads : 1) {
  if (structures_.empty()) fail_domain("hierarchy over no structures");
  const type_structure& first = *structures_[0];
  agent_count_ = first.agent_count();
  for (const type_structure* s : structures_) {
    if (!same_space(s->base(), first.base()))
      fail_domain("hierarchy over structures with different base spaces");
    if (s->agent_count() != agent_count_)
      fail_domain("hierarchy over structures with different agent sets");
    for (size_t i = 0; i < agent_count_; ++i)
      if (s->agent_at(i).id != first.agent_at(i).id)
        fail_domain("hierarchy over structures with different agent sets");
  }
  classes_.resize(structures_.size());
  for (size_t s = 0; s < structures_.size(); ++s) {
    classes_[s].resize(agent_count_);
    for (size_t a = 0; a < agent_count_; ++a)
      classes_[s][a].assign(structures_[s]->type_count(a), std::vector<uint32_t>{0});
  }
  registries_.resize(agent_count_);
}

void hierarchy_set::ensure_depth(size_t depth) {
  while (computed_depth_ < depth) compute_level(computed_depth_ + 1);
}

void hierarchy_set::compute_level(size_t level) {
  // Payloads for all (structure, agent, type) first, in parallel; interning
  // afterwards in canonical scan order keeps ids deterministic.
  struct job {
    uint32_t s, a, t;
  };
  std::vector<job> jobs;
  for (uint32_t s = 0; s < structures_.size(); ++s)
    for (uint32_t a = 0; a < agent_count_; ++a)
      for (uint32_t t = 0; t < structures_[s]->type_count(a); ++t) jobs.push_back({s, a, t});
  std::vector<level_payload> payloads(jobs.size());
  parallel_for(jobs.size(), threads_, [&](size_t j) {
    const auto [s, a, t] = jobs[j];
    const type_structure& st = *structures_[s];
    const lifted_space& bs = st.belief_space(a);
    const cps& belief = st.belief(a, t);
    std::vector<size_t> opp;
    for (size_t o = 0; o < agent_count_; ++o)
      if (o != a) opp.push_back(o);
    // Opponent tuple -> per-opponent class ids at the previous level, cached
    // per tuple since many atoms share one tuple coordinate.
    size_t tuple_count = bs.factor.size();
    std::vector<std::vector<uint32_t>> tuple_classes(tuple_count);
    for (uint32_t tp = 0; tp < tuple_count; ++tp) {
      auto coords = st.decode_opponents(a, tp);
      std::vector<uint32_t> cls(opp.size());
      for (size_t k = 0; k < opp.size(); ++k)
        cls[k] = classes_[s][opp[k]][coords[k]][level - 1];
      tuple_classes[tp] = std::move(cls);
    }
    level_payload pl;
    pl.by_event.resize(bs.space->event_count());
    for (uint32_t e = 0; e < bs.space->event_count(); ++e) {
      std::map<std::vector<uint32_t>, rat> acc;
      const measure& mu = belief.conditionals[e];
      for (uint32_t atom = 0; atom < mu.w.size(); ++atom) {
        if (mu.w[atom] == 0) continue;
        std::vector<uint32_t> key;
        key.reserve(1 + opp.size());
        key.push_back(bs.base_of(atom));
        const auto& cls = tuple_classes[bs.factor_of(atom)];
        key.insert(key.end(), cls.begin(), cls.end());
        acc[std::move(key)] += mu.w[atom];
      }
      pl.by_event[e].assign(acc.begin(), acc.end());
    }
    payloads[j] = std::move(pl);
  });
  for (size_t j = 0; j < jobs.size(); ++j) {
    const auto [s, a, t] = jobs[j];
    auto& reg = registries_[a];
    if (reg.size() < level) reg.resize(level);
    auto& lr = reg[level - 1];
    uint32_t prev = classes_[s][a][t][level - 1];
    auto key = std::make_pair(prev, std::move(payloads[j]));
    auto [it, fresh] = lr.intern.emplace(std::move(key), static_cast<uint32_t>(lr.by_id.size()));
    if (fresh) lr.by_id.push_back(&it->first.second);
    classes_[s][a][t].push_back(it->second);
  }
  ++computed_depth_;
}

uint32_t hierarchy_set::class_at(size_t structure, size_t agent, size_t type, size_t level) const {
  return classes_[structure][agent][type][level];
}

hierarchy_description hierarchy_set::description(size_t structure, size_t agent, size_t type,
                                                 size_t depth) {
  ensure_depth(depth);
  hierarchy_description d;
  d.depth = depth;
  d.class_by_level.assign(classes_[structure][agent][type].begin(),
                          classes_[structure][agent][type].begin() + depth + 1);
  return d;
}

size_t hierarchy_set::class_count(size_t agent, size_t level) const {
  if (level == 0) return 1;
  return registries_[agent][level - 1].by_id.size();
}

const level_payload& hierarchy_set::payload(size_t agent, size_t level, uint32_t cls) const {
  if (level == 0 || level > computed_depth_) fail_domain("payload level out of range");
  return *registries_[agent][level - 1].by_id[cls];
}

size_t hierarchy_set::distinct_classes(size_t level) const {
  // Count distinct ids among the registered types only; the registries may
  // hold more (they are shared across registration batches).
  size_t total = 0;
  for (size_t a = 0; a < agent_count_; ++a) {
    std::vector<uint32_t> seen;
    for (size_t s = 0; s < structures_.size(); ++s)
      for (const auto& chain : classes_[s][a]) seen.push_back(chain[level]);
    std::sort(seen.begin(), seen.end());
    total += std::unique(seen.begin(), seen.end()) - seen.begin();
  }
  return total;
}

size_t hierarchy_set::total_types() const {
  size_t n = 0;
  for (size_t s = 0; s < structures_.size(); ++s)
    for (size_t a = 0; a < agent_count_; ++a) n += structures_[s]->type_count(a);
  return n;
}

size_t hierarchy_set::stabilization_depth() {
  // Depth 0 counts as stable only when already discrete; otherwise the first
  // level whose partition matches the previous one (or is discrete) is the
  // answer. A level that fails to split anything can never split later, and
  // each splitting level adds at least one class, so this terminates within
  // the pooled type count.
  size_t types = total_types();
  if (distinct_classes(0) == types) return 0;
  for (size_t level = 1;; ++level) {
    ensure_depth(level);
    size_t now = distinct_classes(level);
    if (now == types || now == distinct_classes(level - 1)) return level;
  }
}

std::vector<std::vector<hierarchy_description>> hierarchy_level(const type_structure& s,
                                                                size_t depth, unsigned threads) {
  hierarchy_set hs({&s}, threads);
  hs.ensure_depth(depth);
  std::vector<std::vector<hierarchy_description>> out(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    out[a].reserve(s.type_count(a));
    for (size_t t = 0; t < s.type_count(a); ++t) out[a].push_back(hs.description(0, a, t, depth));
  }
  return out;
}

stable_partition refine_to_fixed_point(hierarchy_set& hs) {
  stable_partition out;
  out.stabilization_depth = hs.stabilization_depth();
  out.blocks.resize(hs.agent_count());
  for (size_t a = 0; a < hs.agent_count(); ++a) {
    std::map<uint32_t, size_t> block_of;  // class id -> block index
    for (uint32_t s = 0; s < hs.structure_count(); ++s)
      for (uint32_t t = 0; t < hs.structure_at(s).type_count(a); ++t) {
        uint32_t cls = hs.class_at(s, a, t, out.stabilization_depth);
        auto [it, fresh] = block_of.emplace(cls, out.blocks[a].size());
        if (fresh) out.blocks[a].emplace_back();
        out.blocks[a][it->second].push_back({s, t});
      }
  }
  return out;
}

redundancy_report is_non_redundant(const type_structure& s, unsigned threads) {
  hierarchy_set hs({&s}, threads);
  stable_partition p = refine_to_fixed_point(hs);
  redundancy_report rep;
  rep.non_redundant = true;
  for (uint32_t a = 0; a < p.blocks.size() && rep.non_redundant; ++a)
    for (const auto& block : p.blocks[a])
      if (block.size() > 1) {
        rep.non_redundant = false;
        rep.witness = {a, block[0].second, block[1].second};
        break;
      }
  return rep;
}

}  // namespace condtypes
