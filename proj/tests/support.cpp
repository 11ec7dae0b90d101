#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>

using namespace condtypes;

namespace testsupport {

int rand_int(rng_t& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string fixture_path(const std::string& name) {
  const char* dir = std::getenv("CONDTYPES_FIXTURES");
  return std::string(dir ? dir : "tests/fixtures") + "/" + name;
}

space_ptr random_space(rng_t& rng, int max_atoms, int max_events) {
  int n = rand_int(rng, 1, max_atoms);
  std::vector<std::string> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back("m" + std::to_string(i));
  int k = rand_int(rng, 1, max_events);
  std::vector<conditional_space::event> events;
  for (int e = 0; e < k; ++e) {
    uint32_t mask = static_cast<uint32_t>(rand_int(rng, 1, (1 << n) - 1));
    conditional_space::event ev;
    ev.label = "C" + std::to_string(e);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) ev.members.push_back(i);
    events.push_back(std::move(ev));
  }
  return conditional_space::create(std::move(atoms), std::move(events));
}

measure random_positive_prior(rng_t& rng, size_t atom_count) {
  std::vector<rat> w(atom_count);
  rat total = 0;
  for (auto& x : w) {
    x = rand_int(rng, 1, 8);
    total += x;
  }
  for (auto& x : w) x /= total;
  return measure{std::move(w)};
}

cps random_cps(rng_t& rng, const space_ptr& space) {
  return cps_from_prior(space, random_positive_prior(rng, space->atom_count()));
}

namespace {

rat mask_mass(const measure& mu, const std::vector<uint32_t>& members, uint32_t mask) {
  rat total = 0;
  for (size_t i = 0; i < members.size(); ++i)
    if (mask & (1u << i)) total += mu.w[members[i]];
  return total;
}

}  // namespace

bool oracle_cps_valid(const cps& candidate) {
  const conditional_space& sp = *candidate.space;
  if (candidate.conditionals.size() != sp.event_count()) return false;
  for (uint32_t c = 0; c < sp.event_count(); ++c) {
    const measure& mu = candidate.conditionals[c];
    if (mu.w.size() != sp.atom_count()) return false;
    for (const rat& x : mu.w)
      if (x < 0) return false;
    if (mu.total() != 1) return false;
    if (mu.mass(sp.event_at(c).members) != 1) return false;
  }
  for (uint32_t d = 0; d < sp.event_count(); ++d)
    for (uint32_t c = 0; c < sp.event_count(); ++c) {
      if (d == c) continue;
      const auto& dm = sp.event_at(d).members;
      if (!is_subset(dm, sp.event_at(c).members)) continue;
      rat d_given_c = candidate.conditionals[c].mass(dm);
      for (uint32_t mask = 0; mask < (1u << dm.size()); ++mask) {
        rat lhs = mask_mass(candidate.conditionals[c], dm, mask);
        rat rhs = mask_mass(candidate.conditionals[d], dm, mask) * d_given_c;
        if (lhs != rhs) return false;
      }
    }
  return true;
}

std::vector<std::vector<uint32_t>> sigma_closure(size_t atom_count,
                                                 const std::vector<std::vector<uint32_t>>& gens) {
  const uint32_t full = (1u << atom_count) - 1;
  std::set<uint32_t> sets = {0u, full};
  for (const auto& g : gens) {
    uint32_t mask = 0;
    for (uint32_t a : g) mask |= 1u << a;
    sets.insert(mask);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<uint32_t> snapshot(sets.begin(), sets.end());
    for (uint32_t m : snapshot)
      if (sets.insert(full & ~m).second) grew = true;
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = i + 1; j < snapshot.size(); ++j)
        if (sets.insert(snapshot[i] | snapshot[j]).second) grew = true;
  }
  std::vector<std::vector<uint32_t>> out;
  for (uint32_t m : sets) {
    std::vector<uint32_t> v;
    for (uint32_t a = 0; a < atom_count; ++a)
      if (m & (1u << a)) v.push_back(a);
    out.push_back(std::move(v));
  }
  return out;
}

type_structure random_structure(rng_t& rng, int max_base_atoms, int max_base_events,
                                int max_types) {
  space_ptr base = random_space(rng, max_base_atoms, max_base_events);
  std::vector<type_structure::agent> agents(2);
  agents[0].id = "a1";
  agents[1].id = "a2";
  const char* prefix[2] = {"x", "y"};
  for (int a = 0; a < 2; ++a) {
    int k = rand_int(rng, 1, max_types);
    for (int t = 0; t < k; ++t) agents[a].types.push_back(prefix[a] + std::to_string(t));
  }
  std::vector<std::vector<cps>> beliefs(2);
  for (size_t a = 0; a < 2; ++a) {
    lifted_space ls = type_structure::belief_space_for(base, agents, a);
    for (size_t t = 0; t < agents[a].types.size(); ++t) {
      if (t > 0 && rand_int(rng, 0, 2) == 0) {
        beliefs[a].push_back(beliefs[a][rand_int(rng, 0, static_cast<int>(t) - 1)]);
      } else {
        beliefs[a].push_back(random_cps(rng, ls.space));
      }
    }
  }
  return type_structure::create(base, std::move(agents), std::move(beliefs));
}

std::vector<std::vector<std::string>> naive_descriptions(const type_structure& s, size_t depth) {
  // One round expands each type's signature by its belief over (base x
  // opponent ids of the previous round). Fully expanded strings grow
  // exponentially with depth, so every level is interned: two types get the
  // same per-agent id iff their expanded strings would match, and the
  // returned chain of ids inherits that property level by level.
  std::vector<std::vector<uint32_t>> id(s.agent_count());
  std::vector<std::vector<std::string>> chain(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    id[a].assign(s.type_count(a), 0);
    chain[a].assign(s.type_count(a), "0");
  }
  for (size_t round = 0; round < depth; ++round) {
    std::vector<std::vector<uint32_t>> next(s.agent_count());
    for (size_t a = 0; a < s.agent_count(); ++a) {
      const lifted_space& bs = s.belief_space(a);
      std::vector<size_t> opp;
      for (size_t j = 0; j < s.agent_count(); ++j)
        if (j != a) opp.push_back(j);
      std::map<std::string, uint32_t> intern;
      for (size_t t = 0; t < s.type_count(a); ++t) {
        const cps& b = s.belief(a, t);
        std::string out = std::to_string(id[a][t]) + "||";
        for (uint32_t e = 0; e < bs.space->event_count(); ++e) {
          std::map<std::string, rat> acc;
          const measure& mu = b.conditionals[e];
          for (uint32_t atom = 0; atom < mu.w.size(); ++atom) {
            if (mu.w[atom] == 0) continue;
            auto coords = s.decode_opponents(a, bs.factor_of(atom));
            std::string key = std::to_string(bs.base_of(atom));
            for (size_t k = 0; k < opp.size(); ++k)
              key += ";" + std::to_string(id[opp[k]][coords[k]]);
            acc[key] += mu.w[atom];
          }
          out += "[";
          for (const auto& [key, w] : acc) out += key + "=" + format_rat(w) + ",";
          out += "]";
        }
        auto [it, fresh] = intern.try_emplace(out, static_cast<uint32_t>(intern.size()));
        (void)fresh;
        next[a].push_back(it->second);
        chain[a][t] += "." + std::to_string(it->second);
      }
    }
    id = std::move(next);
  }
  return chain;
}

game_data random_game(rng_t& rng, uint64_t max_profiles) {
  game_data g;
  const int n = rand_int(rng, 2, 3);
  for (int i = 0; i < n; ++i) g.players.push_back("p" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> types;
    int k = rand_int(rng, 1, 2);
    for (int t = 0; t < k; ++t) types.push_back("q" + std::to_string(i + 1) + (t ? "b" : "a"));
    g.payoff_types.push_back(std::move(types));
  }

  const int max_depth = rand_int(rng, 1, 3);
  uint64_t strategy_bound = 1;
  struct node {
    std::vector<std::vector<std::string>> moves;
    int depth;
  };
  std::vector<node> queue = {{{}, 0}};
  for (size_t q = 0; q < queue.size(); ++q) {
    node cur = queue[q];
    game_data::history_entry entry;
    entry.moves = cur.moves;
    bool terminal = cur.depth >= max_depth;
    if (!terminal && cur.depth > 0 && rand_int(rng, 0, 3) == 0) terminal = true;

    if (!terminal) {
      std::vector<int> counts(n, 1);
      counts[rand_int(rng, 0, n - 1)] = rand_int(rng, 2, 3);
      if (rand_int(rng, 0, 1)) {
        int other = rand_int(rng, 0, n - 1);
        counts[other] = std::max(counts[other], 2);
      }
      uint64_t factor = 1;
      for (int c : counts) factor *= c;
      if (strategy_bound * factor > max_profiles) {
        terminal = true;
      } else {
        strategy_bound *= factor;
        std::vector<std::vector<std::string>> actions(n);
        for (int i = 0; i < n; ++i)
          for (int c = 0; c < counts[i]; ++c) actions[i].push_back("a" + std::to_string(c));
        entry.actions = actions;
        std::vector<int> digits(n, 0);
        bool done = false;
        while (!done) {
          std::vector<std::string> profile(n);
          for (int i = 0; i < n; ++i) profile[i] = actions[i][digits[i]];
          auto moves = cur.moves;
          moves.push_back(profile);
          queue.push_back({std::move(moves), cur.depth + 1});
          done = true;
          for (int i = n; i-- > 0;) {
            if (++digits[i] < counts[i]) {
              done = false;
              break;
            }
            digits[i] = 0;
          }
        }
      }
    }
    g.histories.push_back(std::move(entry));
  }

  // Prefix index for experience records while assigning information sets.
  auto key_of = [&](const std::vector<std::vector<std::string>>& moves, size_t steps) {
    std::string key;
    for (size_t r = 0; r < steps; ++r) {
      key += ";";
      for (const auto& a : moves[r]) key += a + ",";
    }
    return key;
  };
  std::unordered_map<std::string, uint32_t> index;
  for (uint32_t h = 0; h < g.histories.size(); ++h)
    index.emplace(key_of(g.histories[h].moves, g.histories[h].moves.size()), h);

  g.info_sets.assign(n, {});
  // covering[i][h] = assigned set id, UINT32_MAX when uncovered
  std::vector<std::vector<uint32_t>> covering(n,
                                              std::vector<uint32_t>(g.histories.size(), UINT32_MAX));
  std::vector<std::map<std::string, std::vector<uint32_t>>> groups(n);
  for (uint32_t h = 0; h < g.histories.size(); ++h) {
    const auto& entry = g.histories[h];
    if (!entry.actions) continue;
    for (int i = 0; i < n; ++i) {
      size_t arity = (*entry.actions)[i].size();
      bool cover = arity >= 2 || rand_int(rng, 0, 2) == 0;
      if (!cover) continue;
      std::string record;
      for (size_t r = 0; r < entry.moves.size(); ++r) {
        uint32_t prefix = index.at(key_of(entry.moves, r));
        if (covering[i][prefix] != UINT32_MAX)
          record += std::to_string(covering[i][prefix]) + ":" + entry.moves[r][i] + "|";
      }
      for (const auto& a : (*entry.actions)[i]) record += "/" + a;
      auto& candidates = groups[i][record];
      uint32_t chosen;
      if (!candidates.empty() && rand_int(rng, 0, 1) == 0) {
        chosen = candidates[rand_int(rng, 0, static_cast<int>(candidates.size()) - 1)];
        g.info_sets[i][chosen].histories.push_back(h);
      } else {
        chosen = static_cast<uint32_t>(g.info_sets[i].size());
        g.info_sets[i].push_back(
            {"i" + std::to_string(i + 1) + "s" + std::to_string(chosen), {h}});
        candidates.push_back(chosen);
      }
      covering[i][h] = chosen;
    }
  }
  return g;
}

std::vector<uint64_t> playout_allowing(const game& g, uint32_t player, uint32_t info_set) {
  const auto& members = g.data().info_sets[player][info_set].histories;
  const size_t n = g.player_count();
  std::vector<uint64_t> counts(n);
  for (size_t i = 0; i < n; ++i) counts[i] = g.strategy_count(static_cast<uint32_t>(i));
  std::vector<uint64_t> out;
  for (uint64_t code = 0; code < g.profile_count(); ++code) {
    std::vector<uint64_t> profile(n);
    uint64_t rest = code;
    for (size_t i = n; i-- > 0;) {
      profile[i] = rest % counts[i];
      rest /= counts[i];
    }
    auto path = g.play(profile);
    bool hits = false;
    for (uint32_t h : path)
      if (std::find(members.begin(), members.end(), h) != members.end()) {
        hits = true;
        break;
      }
    if (hits) out.push_back(code);
  }
  return out;
}

}  // namespace testsupport
