#include "condtypes/games.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "condtypes/error.hpp"

namespace condtypes {

namespace {

std::string history_key(const std::vector<std::vector<std::string>>& moves, size_t steps) {
  std::string key;
  for (size_t r = 0; r < steps; ++r) {
    if (r) key += ";";
    for (size_t i = 0; i < moves[r].size(); ++i) {
      if (i) key += ",";
      key += moves[r][i];
    }
  }
  return key;
}

std::string render_profile(const std::vector<std::string>& profile) {
  std::string out = "(";
  for (size_t i = 0; i < profile.size(); ++i) {
    if (i) out += ",";
    out += profile[i];
  }
  return out + ")";
}

// (info set, own action label) pairs along the path to h, over covered
// prefixes only. covering[x] is the player's declared info set at x, if any.
std::vector<std::pair<uint32_t, std::string>> experience_record(
    const game_data& g, const std::unordered_map<std::string, uint32_t>& index, uint32_t player,
    uint32_t h, const std::vector<std::optional<uint32_t>>& covering) {
  std::vector<std::pair<uint32_t, std::string>> record;
  const auto& moves = g.histories[h].moves;
  for (size_t r = 0; r < moves.size(); ++r) {
    auto it = index.find(history_key(moves, r));
    if (it == index.end()) continue;  // orphan prefixes are reported elsewhere
    uint32_t prefix = it->second;
    if (covering[prefix]) record.push_back({*covering[prefix], moves[r][player]});
  }
  return record;
}

}  // namespace

std::vector<game_violation> validate_game(const game_data& g) {
  std::vector<game_violation> out;
  auto flag = [&out](const std::string& code, const std::string& detail) {
    out.push_back({code, detail});
  };

  const size_t n = g.players.size();
  if (n == 0) {
    flag("players", "no players");
    return out;
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& p : g.players) {
      if (p.empty()) flag("players", "empty player id");
      else if (!seen.insert(p).second) flag("players", "duplicate player id '" + p + "'");
    }
  }
  if (g.payoff_types.size() != n) {
    flag("payoff-types", "payoff type table does not match the player list");
    return out;
  }
  for (size_t i = 0; i < n; ++i) {
    if (g.payoff_types[i].empty())
      flag("payoff-types", "player '" + g.players[i] + "' has no payoff types");
    std::unordered_set<std::string> seen;
    for (const auto& t : g.payoff_types[i])
      if (t.empty() || !seen.insert(t).second)
        flag("payoff-types", "player '" + g.players[i] + "' has a bad payoff type label");
  }

  if (g.histories.empty()) {
    flag("histories", "no histories");
    return out;
  }
  std::unordered_map<std::string, uint32_t> index;
  for (uint32_t h = 0; h < g.histories.size(); ++h) {
    for (const auto& profile : g.histories[h].moves)
      if (profile.size() != n) {
        flag("histories", "history #" + std::to_string(h) + " has a malformed action profile");
        return out;
      }
    auto [it, fresh] = index.emplace(history_key(g.histories[h].moves, g.histories[h].moves.size()), h);
    if (!fresh)
      flag("duplicate-history", "history #" + std::to_string(h) + " repeats history #" +
                                    std::to_string(it->second));
  }
  if (!index.count("")) flag("orphan-history", "the empty history is missing");

  for (uint32_t h = 0; h < g.histories.size(); ++h) {
    const auto& entry = g.histories[h];
    if (entry.actions) {
      if (entry.actions->size() != n) {
        flag("actions", "history #" + std::to_string(h) + " actions do not match the player list");
        continue;
      }
      for (size_t i = 0; i < n; ++i) {
        const auto& acts = (*entry.actions)[i];
        if (acts.empty())
          flag("empty-action-set",
               "history #" + std::to_string(h) + " gives player '" + g.players[i] + "' no action");
        std::unordered_set<std::string> seen;
        for (const auto& a : acts)
          if (a.empty() || !seen.insert(a).second)
            flag("actions", "history #" + std::to_string(h) + " repeats action '" + a +
                                "' for player '" + g.players[i] + "'");
      }
    }
    if (entry.moves.empty()) continue;
    auto parent_it = index.find(history_key(entry.moves, entry.moves.size() - 1));
    if (parent_it == index.end()) {
      flag("orphan-history", "history #" + std::to_string(h) + " has no parent in the set");
      continue;
    }
    const auto& parent = g.histories[parent_it->second];
    if (!parent.actions) {
      flag("child-of-terminal",
           "history #" + std::to_string(h) + " extends terminal history #" +
               std::to_string(parent_it->second));
      continue;
    }
    const auto& last = entry.moves.back();
    for (size_t i = 0; i < n; ++i) {
      const auto& acts = (*parent.actions)[i];
      if (std::find(acts.begin(), acts.end(), last[i]) == acts.end())
        flag("unknown-action", "history #" + std::to_string(h) + " plays '" + last[i] +
                                   "' which player '" + g.players[i] +
                                   "' does not have at the parent");
    }
  }
  if (!out.empty()) return out;

  // Tree completeness: every available profile of a non-terminal history
  // leads to a listed history.
  for (uint32_t h = 0; h < g.histories.size(); ++h) {
    const auto& entry = g.histories[h];
    if (!entry.actions) continue;
    std::vector<uint32_t> digits(n, 0);
    bool done = false;
    while (!done) {
      std::vector<std::string> profile(n);
      for (size_t i = 0; i < n; ++i) profile[i] = (*entry.actions)[i][digits[i]];
      auto moves = entry.moves;
      moves.push_back(profile);
      if (!index.count(history_key(moves, moves.size())))
        flag("missing-child", "history #" + std::to_string(h) + " has no successor for " +
                                  render_profile(profile));
      done = true;
      for (size_t i = n; i-- > 0;) {
        if (++digits[i] < (*entry.actions)[i].size()) {
          done = false;
          break;
        }
        digits[i] = 0;
      }
    }
  }
  if (!out.empty()) return out;

  if (g.info_sets.size() != n) {
    flag("info-sets", "info set table does not match the player list");
    return out;
  }
  std::vector<std::vector<std::optional<uint32_t>>> covering(
      n, std::vector<std::optional<uint32_t>>(g.histories.size()));
  for (size_t i = 0; i < n; ++i) {
    std::unordered_set<std::string> labels;
    for (uint32_t k = 0; k < g.info_sets[i].size(); ++k) {
      const auto& iset = g.info_sets[i][k];
      if (iset.label.empty() || !labels.insert(iset.label).second)
        flag("info-sets", "player '" + g.players[i] + "' has a bad info set label '" +
                              iset.label + "'");
      if (iset.histories.empty())
        flag("info-sets", "info set '" + iset.label + "' of player '" + g.players[i] +
                              "' is empty");
      for (uint32_t h : iset.histories) {
        if (h >= g.histories.size()) {
          flag("info-sets", "info set '" + iset.label + "' references history #" +
                                std::to_string(h) + " which does not exist");
          continue;
        }
        if (!g.histories[h].actions) {
          flag("info-sets", "info set '" + iset.label + "' contains terminal history #" +
                                std::to_string(h));
          continue;
        }
        if (covering[i][h])
          flag("info-set-overlap", "history #" + std::to_string(h) +
                                       " appears in two info sets of player '" + g.players[i] +
                                       "'");
        covering[i][h] = k;
      }
    }
  }
  if (!out.empty()) return out;

  for (size_t i = 0; i < n; ++i) {
    // identical own action lists inside each info set
    for (const auto& iset : g.info_sets[i]) {
      const auto& first_acts = (*g.histories[iset.histories[0]].actions)[i];
      for (size_t m = 1; m < iset.histories.size(); ++m) {
        const auto& acts = (*g.histories[iset.histories[m]].actions)[i];
        if (acts != first_acts) {
          flag("info-set-action-mismatch",
               "info set '" + iset.label + "' of player '" + g.players[i] +
                   "': histories #" + std::to_string(iset.histories[0]) + " and #" +
                   std::to_string(iset.histories[m]) + " offer different actions");
          break;
        }
      }
    }
    // every active history covered
    for (uint32_t h = 0; h < g.histories.size(); ++h) {
      const auto& entry = g.histories[h];
      if (entry.actions && (*entry.actions)[i].size() >= 2 && !covering[i][h])
        flag("uncovered-active-history", "player '" + g.players[i] + "' is active at history #" +
                                             std::to_string(h) + " but no info set covers it");
    }
    // perfect recall: identical experience records within each info set
    for (const auto& iset : g.info_sets[i]) {
      auto first_rec = experience_record(g, index, i, iset.histories[0], covering[i]);
      for (size_t m = 1; m < iset.histories.size(); ++m) {
        auto rec = experience_record(g, index, i, iset.histories[m], covering[i]);
        if (rec != first_rec) {
          flag("perfect-recall", "info set '" + iset.label + "' of player '" + g.players[i] +
                                     "': histories #" + std::to_string(iset.histories[0]) +
                                     " and #" + std::to_string(iset.histories[m]) +
                                     " have different experiences");
          break;
        }
      }
    }
  }
  if (!out.empty()) return out;

  // Utilities: keys must resolve against payoff types and rendered strategy
  // labels.
  if (!g.utilities.empty()) {
    if (g.utilities.size() != n) {
      flag("utilities", "utility table does not match the player list");
      return out;
    }
    std::vector<std::vector<std::string>> strategy_labels(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<size_t> sizes;
      for (const auto& iset : g.info_sets[i])
        sizes.push_back((*g.histories[iset.histories[0]].actions)[i].size());
      size_t count = 1;
      for (size_t s : sizes) count *= s;
      for (size_t idx = 0; idx < count; ++idx) {
        std::string label;
        size_t rest = idx;
        std::vector<uint32_t> digits(sizes.size(), 0);
        for (size_t k = sizes.size(); k-- > 0;) {
          digits[k] = rest % sizes[k];
          rest /= sizes[k];
        }
        for (size_t k = 0; k < sizes.size(); ++k) {
          if (k) label += ".";
          label += (*g.histories[g.info_sets[i][k].histories[0]].actions)[i][digits[k]];
        }
        strategy_labels[i].push_back(sizes.empty() ? "-" : label);
      }
    }
    for (size_t i = 0; i < n; ++i) {
      std::set<std::string> seen;
      for (const auto& [key, value] : g.utilities[i]) {
        if (!seen.insert(key).second) {
          flag("duplicate-utility", "player '" + g.players[i] + "' repeats key '" + key + "'");
          continue;
        }
        bool ok = key.size() >= 2 && key.front() == '(' && key.back() == ')';
        std::string inner = ok ? key.substr(1, key.size() - 2) : "";
        auto semi = inner.find(';');
        ok = ok && semi != std::string::npos;
        if (ok) {
          std::vector<std::string> parts;
          std::string theta_part = inner.substr(0, semi);
          std::string strat_part = inner.substr(semi + 1);
          size_t pos = 0;
          for (size_t j = 0; j < n && ok; ++j) {
            size_t next = j + 1 < n ? theta_part.find(',', pos) : theta_part.size();
            if (next == std::string::npos) {
              ok = false;
              break;
            }
            std::string label = theta_part.substr(pos, next - pos);
            const auto& types = g.payoff_types[j];
            if (std::find(types.begin(), types.end(), label) == types.end()) ok = false;
            pos = next + 1;
          }
          pos = 0;
          for (size_t j = 0; j < n && ok; ++j) {
            size_t next = j + 1 < n ? strat_part.find('|', pos) : strat_part.size();
            if (next == std::string::npos) {
              ok = false;
              break;
            }
            std::string label = strat_part.substr(pos, next - pos);
            const auto& all = strategy_labels[j];
            if (std::find(all.begin(), all.end(), label) == all.end()) ok = false;
            pos = next + 1;
          }
        }
        if (!ok)
          flag("utilities", "player '" + g.players[i] + "' has an unresolvable key '" + key + "'");
      }
    }
  }
  return out;
}

game game::create(game_data d) {
  auto violations = validate_game(d);
  if (!violations.empty())
    fail_domain("invalid game: " + violations.front().code + ": " + violations.front().detail);
  game g;
  g.data_ = std::move(d);
  const auto& gd = g.data_;
  const size_t n = gd.players.size();

  std::unordered_map<std::string, uint32_t> index;
  for (uint32_t h = 0; h < gd.histories.size(); ++h)
    index.emplace(history_key(gd.histories[h].moves, gd.histories[h].moves.size()), h);
  g.root_ = index.at("");

  g.child_.resize(gd.histories.size());
  for (uint32_t h = 0; h < gd.histories.size(); ++h) {
    const auto& entry = gd.histories[h];
    if (!entry.actions) continue;
    size_t combos = 1;
    for (size_t i = 0; i < n; ++i) combos *= (*entry.actions)[i].size();
    g.child_[h].assign(combos, 0);
    std::vector<uint32_t> digits(n, 0);
    for (size_t c = 0; c < combos; ++c) {
      auto moves = entry.moves;
      std::vector<std::string> profile(n);
      for (size_t i = 0; i < n; ++i) profile[i] = (*entry.actions)[i][digits[i]];
      moves.push_back(profile);
      g.child_[h][c] = index.at(history_key(moves, moves.size()));
      for (size_t i = n; i-- > 0;) {
        if (++digits[i] < (*entry.actions)[i].size()) break;
        digits[i] = 0;
      }
    }
  }

  g.covering_.assign(n, std::vector<std::optional<uint32_t>>(gd.histories.size()));
  for (size_t i = 0; i < n; ++i)
    for (uint32_t k = 0; k < gd.info_sets[i].size(); ++k)
      for (uint32_t h : gd.info_sets[i][k].histories) g.covering_[i][h] = k;

  g.strategy_counts_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    uint64_t count = 1;
    for (const auto& iset : gd.info_sets[i])
      count *= (*gd.histories[iset.histories[0]].actions)[i].size();
    g.strategy_counts_[i] = count;
  }
  return g;
}

std::optional<uint32_t> game::covering_info_set(uint32_t player, uint32_t h) const {
  return covering_[player][h];
}

size_t game::strategy_count(uint32_t player) const { return strategy_counts_[player]; }

std::vector<uint32_t> game::strategy(uint32_t player, uint64_t index) const {
  const auto& isets = data_.info_sets[player];
  std::vector<uint32_t> digits(isets.size(), 0);
  for (size_t k = isets.size(); k-- > 0;) {
    uint64_t radix = (*data_.histories[isets[k].histories[0]].actions)[player].size();
    digits[k] = static_cast<uint32_t>(index % radix);
    index /= radix;
  }
  return digits;
}

std::string game::strategy_label(uint32_t player, uint64_t index) const {
  const auto& isets = data_.info_sets[player];
  if (isets.empty()) return "-";
  auto digits = strategy(player, index);
  std::string label;
  for (size_t k = 0; k < isets.size(); ++k) {
    if (k) label += ".";
    label += (*data_.histories[isets[k].histories[0]].actions)[player][digits[k]];
  }
  return label;
}

uint64_t game::profile_count() const {
  uint64_t total = 1;
  for (uint64_t c : strategy_counts_) total *= c;
  return total;
}

uint64_t game::encode_profile_at(uint32_t h, const std::vector<uint32_t>& action_idx) const {
  const auto& acts = *data_.histories[h].actions;
  uint64_t code = 0;
  for (size_t i = 0; i < acts.size(); ++i) code = code * acts[i].size() + action_idx[i];
  return code;
}

std::vector<uint32_t> game::play(const std::vector<uint64_t>& profile) const {
  const size_t n = data_.players.size();
  std::vector<std::vector<uint32_t>> digits(n);
  for (size_t i = 0; i < n; ++i) digits[i] = strategy(static_cast<uint32_t>(i), profile[i]);
  std::vector<uint32_t> path;
  uint32_t h = root_;
  path.push_back(h);
  while (!is_terminal(h)) {
    std::vector<uint32_t> choice(n, 0);
    for (size_t i = 0; i < n; ++i) {
      if (covering_[i][h]) {
        choice[i] = digits[i][*covering_[i][h]];
      } else {
        choice[i] = 0;  // forced move: validation pinned the set to size one
      }
    }
    h = child_[h][encode_profile_at(h, choice)];
    path.push_back(h);
  }
  return path;
}

std::vector<uint64_t> game::allowing_profiles(uint32_t player, uint32_t info_set) const {
  const size_t n = data_.players.size();
  std::set<uint64_t> result;
  std::unordered_map<std::string, uint32_t> index;
  for (uint32_t h = 0; h < data_.histories.size(); ++h)
    index.emplace(history_key(data_.histories[h].moves, data_.histories[h].moves.size()), h);

  for (uint32_t target : data_.info_sets[player][info_set].histories) {
    // forced digit per (player, info set) along the path to the target
    std::vector<std::map<uint32_t, uint32_t>> constraint(n);
    const auto& moves = data_.histories[target].moves;
    bool consistent = true;
    for (size_t r = 0; r < moves.size() && consistent; ++r) {
      uint32_t prefix = index.at(history_key(moves, r));
      for (size_t i = 0; i < n; ++i) {
        if (!covering_[i][prefix]) continue;
        uint32_t k = *covering_[i][prefix];
        const auto& acts = (*data_.histories[prefix].actions)[i];
        uint32_t a = static_cast<uint32_t>(
            std::find(acts.begin(), acts.end(), moves[r][i]) - acts.begin());
        auto [it, fresh] = constraint[i].emplace(k, a);
        if (!fresh && it->second != a) consistent = false;  // cannot occur under perfect recall
      }
    }
    if (!consistent) continue;
    std::vector<std::vector<uint64_t>> allowed(n);
    for (size_t i = 0; i < n; ++i) {
      for (uint64_t s = 0; s < strategy_counts_[i]; ++s) {
        auto digits = strategy(static_cast<uint32_t>(i), s);
        bool ok = true;
        for (auto [k, a] : constraint[i])
          if (digits[k] != a) {
            ok = false;
            break;
          }
        if (ok) allowed[i].push_back(s);
      }
    }
    std::vector<size_t> pick(n, 0);
    bool done = false;
    while (!done) {
      uint64_t code = 0;
      for (size_t i = 0; i < n; ++i) code = code * strategy_counts_[i] + allowed[i][pick[i]];
      result.insert(code);
      done = true;
      for (size_t i = n; i-- > 0;) {
        if (++pick[i] < allowed[i].size()) {
          done = false;
          break;
        }
        pick[i] = 0;
      }
    }
  }
  return {result.begin(), result.end()};
}

std::vector<uint64_t> game::project_player(const std::vector<uint64_t>& profiles,
                                           uint32_t player) const {
  const size_t n = data_.players.size();
  uint64_t suffix = 1;
  for (size_t j = player + 1; j < n; ++j) suffix *= strategy_counts_[j];
  std::set<uint64_t> out;
  for (uint64_t p : profiles) out.insert((p / suffix) % strategy_counts_[player]);
  return {out.begin(), out.end()};
}

std::vector<uint64_t> game::project_opponents(const std::vector<uint64_t>& profiles,
                                              uint32_t player) const {
  const size_t n = data_.players.size();
  std::set<uint64_t> out;
  for (uint64_t p : profiles) {
    std::vector<uint64_t> digits(n);
    uint64_t rest = p;
    for (size_t i = n; i-- > 0;) {
      digits[i] = rest % strategy_counts_[i];
      rest /= strategy_counts_[i];
    }
    uint64_t code = 0;
    for (size_t i = 0; i < n; ++i) {
      if (i == player) continue;
      code = code * strategy_counts_[i] + digits[i];
    }
    out.insert(code);
  }
  return {out.begin(), out.end()};
}

uint64_t game::opponent_profile_count(uint32_t player) const {
  uint64_t total = 1;
  for (size_t i = 0; i < strategy_counts_.size(); ++i)
    if (i != player) total *= strategy_counts_[i];
  return total;
}

std::vector<cond_event> conditioning_family(const game& g, uint32_t player) {
  std::vector<cond_event> family;
  {
    cond_event root;
    root.label = "@root";
    root.sources = {"@root"};
    uint64_t total = g.opponent_profile_count(player);
    root.opp_profiles.reserve(total);
    for (uint64_t c = 0; c < total; ++c) root.opp_profiles.push_back(c);
    family.push_back(std::move(root));
  }
  const auto& isets = g.data().info_sets[player];
  for (uint32_t k = 0; k < isets.size(); ++k) {
    auto allowing = g.allowing_profiles(player, k);
    if (allowing.empty())
      fail_domain("information set '" + isets[k].label + "' of player '" +
                  g.data().players[player] + "' is unreachable");
    auto opp = g.project_opponents(allowing, player);
    bool merged = false;
    for (auto& ev : family)
      if (ev.opp_profiles == opp) {
        ev.sources.push_back(isets[k].label);
        if (isets[k].label < ev.label) ev.label = isets[k].label;
        merged = true;
        break;
      }
    if (!merged) {
      cond_event ev;
      ev.label = isets[k].label;
      ev.sources = {isets[k].label};
      ev.opp_profiles = std::move(opp);
      family.push_back(std::move(ev));
    }
  }
  return family;
}

game_space_result game_space(const game& g) {
  const size_t n = g.player_count();
  game_space_result out;
  out.families.reserve(n);
  for (uint32_t i = 0; i < n; ++i) out.families.push_back(conditioning_family(g, i));

  std::vector<size_t> theta_sizes(n), strat_sizes(n);
  size_t atom_count = 1;
  for (size_t i = 0; i < n; ++i) {
    theta_sizes[i] = g.data().payoff_types[i].size();
    strat_sizes[i] = g.strategy_count(static_cast<uint32_t>(i));
    atom_count *= theta_sizes[i] * strat_sizes[i];
  }
  if (atom_count > (1u << 22)) fail_domain("game space too large to materialize");

  for (size_t i = 0; i < n; ++i) {
    out.layout.factors.push_back({g.data().players[i] + ".theta",
                                  static_cast<uint32_t>(theta_sizes[i])});
    out.layout.factors.push_back({g.data().players[i] + ".strategy",
                                  static_cast<uint32_t>(strat_sizes[i])});
  }

  std::vector<std::string> atoms;
  atoms.reserve(atom_count);
  std::vector<std::vector<std::string>> strategy_labels(n);
  for (size_t i = 0; i < n; ++i)
    for (uint64_t s = 0; s < strat_sizes[i]; ++s)
      strategy_labels[i].push_back(g.strategy_label(static_cast<uint32_t>(i), s));
  for (size_t a = 0; a < atom_count; ++a) {
    std::string label = "(";
    size_t rest = a;
    std::vector<size_t> coords(2 * n);
    for (size_t f = 2 * n; f-- > 0;) {
      size_t radix = out.layout.factors[f].second;
      coords[f] = rest % radix;
      rest /= radix;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i) label += "|";
      label += g.data().payoff_types[i][coords[2 * i]] + ":" + strategy_labels[i][coords[2 * i + 1]];
    }
    label += ")";
    atoms.push_back(std::move(label));
  }

  std::vector<conditional_space::event> events;
  for (uint32_t i = 0; i < n; ++i) {
    for (const auto& ev : out.families[i]) {
      conditional_space::event se;
      se.label = g.data().players[i] + "/" + ev.label;
      for (uint32_t a = 0; a < atom_count; ++a) {
        size_t rest = a;
        std::vector<size_t> coords(2 * n);
        for (size_t f = 2 * n; f-- > 0;) {
          size_t radix = out.layout.factors[f].second;
          coords[f] = rest % radix;
          rest /= radix;
        }
        uint64_t opp = 0;
        for (size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          opp = opp * strat_sizes[j] + coords[2 * j + 1];
        }
        if (std::binary_search(ev.opp_profiles.begin(), ev.opp_profiles.end(), opp))
          se.members.push_back(a);
      }
      events.push_back(std::move(se));
    }
  }
  out.space = conditional_space::create(std::move(atoms), std::move(events));
  return out;
}

closure_result belief_closed_substructure(const type_structure& s,
                                          std::vector<std::vector<uint32_t>> restriction) {
  if (restriction.size() != s.agent_count())
    fail_domain("restriction does not match the agent list");
  std::vector<std::vector<bool>> in(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    in[a].assign(s.type_count(a), false);
    for (uint32_t t : restriction[a]) {
      if (t >= s.type_count(a)) fail_domain("restriction names an unknown type");
      in[a][t] = true;
    }
  }

  // Greatest fixed point: drop any type whose belief charges an excluded
  // opponent tuple, then re-examine.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a = 0; a < s.agent_count(); ++a) {
      const lifted_space& bs = s.belief_space(a);
      std::vector<size_t> opp;
      for (size_t j = 0; j < s.agent_count(); ++j)
        if (j != a) opp.push_back(j);
      for (uint32_t t = 0; t < s.type_count(a); ++t) {
        if (!in[a][t]) continue;
        bool keep = true;
        const cps& belief = s.belief(a, t);
        for (uint32_t e = 0; e < belief.conditionals.size() && keep; ++e)
          for (uint32_t atom = 0; atom < belief.conditionals[e].w.size() && keep; ++atom) {
            if (belief.conditionals[e].w[atom] == 0) continue;
            auto coords = s.decode_opponents(a, bs.factor_of(atom));
            for (size_t k = 0; k < opp.size(); ++k)
              if (!in[opp[k]][coords[k]]) {
                keep = false;
                break;
              }
          }
        if (!keep) {
          in[a][t] = false;
          changed = true;
        }
      }
    }
  }

  closure_result out;
  out.kept.resize(s.agent_count());
  bool nonempty = true;
  for (size_t a = 0; a < s.agent_count(); ++a) {
    for (uint32_t t = 0; t < s.type_count(a); ++t)
      if (in[a][t]) out.kept[a].push_back(t);
    if (out.kept[a].empty()) nonempty = false;
  }
  if (!nonempty) return out;

  std::vector<type_structure::agent> agents;
  std::vector<std::vector<uint32_t>> new_index(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    type_structure::agent na;
    na.id = s.agent_at(a).id;
    new_index[a].assign(s.type_count(a), 0);
    for (uint32_t t : out.kept[a]) {
      new_index[a][t] = static_cast<uint32_t>(na.types.size());
      na.types.push_back(s.agent_at(a).types[t]);
    }
    agents.push_back(std::move(na));
  }
  std::vector<std::vector<cps>> beliefs(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a) {
    lifted_space target = type_structure::belief_space_for(s.base(), agents, a);
    const lifted_space& from = s.belief_space(a);
    std::vector<size_t> opp;
    for (size_t j = 0; j < s.agent_count(); ++j)
      if (j != a) opp.push_back(j);
    for (uint32_t t : out.kept[a]) {
      const cps& belief = s.belief(a, t);
      cps restricted;
      restricted.space = target.space;
      restricted.conditionals.assign(target.space->event_count(),
                                     measure{std::vector<rat>(target.space->atom_count(), rat(0))});
      for (uint32_t e = 0; e < belief.conditionals.size(); ++e)
        for (uint32_t atom = 0; atom < belief.conditionals[e].w.size(); ++atom) {
          const rat& w = belief.conditionals[e].w[atom];
          if (w == 0) continue;
          auto coords = s.decode_opponents(a, from.factor_of(atom));
          uint32_t tuple = 0;
          for (size_t k = 0; k < opp.size(); ++k)
            tuple = tuple * static_cast<uint32_t>(agents[opp[k]].types.size()) +
                    new_index[opp[k]][coords[k]];
          restricted.conditionals[e].w[target.encode(from.base_of(atom), tuple)] += w;
        }
      beliefs[a].push_back(std::move(restricted));
    }
  }
  out.sub = type_structure::create(s.base(), std::move(agents), std::move(beliefs));
  structure_morphism inclusion;
  inclusion.type_map.resize(s.agent_count());
  for (size_t a = 0; a < s.agent_count(); ++a)
    inclusion.type_map[a] = out.kept[a];
  out.inclusion = std::move(inclusion);
  return out;
}

coalition_layout coalition_space(std::vector<std::string> players,
                                 std::vector<std::vector<std::string>> payoff_types,
                                 std::vector<std::string> carrier, size_t max_players) {
  if (players.empty()) fail_domain("coalition space with no players");
  if (players.size() > max_players)
    fail_domain("player count " + std::to_string(players.size()) +
                " exceeds the coalition cap " + std::to_string(max_players));
  if (payoff_types.size() != players.size())
    fail_domain("payoff type table does not match the player list");
  for (const auto& row : payoff_types)
    if (row.empty()) fail_domain("a player has no payoff types");
  if (carrier.empty()) fail_domain("coalition space needs a nonempty carrier placeholder");

  coalition_layout cl;
  const size_t n = players.size();
  cl.layout.factors.push_back({"tag", static_cast<uint32_t>(n)});
  size_t theta_count = 1;
  for (size_t i = 0; i < n; ++i) {
    cl.layout.factors.push_back({"theta." + players[i],
                                 static_cast<uint32_t>(payoff_types[i].size())});
    theta_count *= payoff_types[i].size();
  }
  cl.layout.factors.push_back({"carrier", static_cast<uint32_t>(carrier.size())});

  std::vector<std::string> atoms;
  atoms.reserve(n * theta_count * carrier.size());
  for (size_t j = 0; j < n; ++j)
    for (size_t th = 0; th < theta_count; ++th) {
      std::string theta_label;
      size_t rest = th;
      std::vector<size_t> coords(n);
      for (size_t i = n; i-- > 0;) {
        coords[i] = rest % payoff_types[i].size();
        rest /= payoff_types[i].size();
      }
      for (size_t i = 0; i < n; ++i) {
        if (i) theta_label += ",";
        theta_label += payoff_types[i][coords[i]];
      }
      for (const auto& c : carrier)
        atoms.push_back("(" + players[j] + "|" + theta_label + "|" + c + ")");
    }

  std::vector<conditional_space::event> events;
  const size_t block = theta_count * carrier.size();
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    conditional_space::event ev;
    ev.label = "{";
    bool first = true;
    std::vector<uint32_t> members_of_mask;
    for (uint32_t j = 0; j < n; ++j)
      if (mask & (1u << j)) {
        if (!first) ev.label += ",";
        ev.label += players[j];
        first = false;
        members_of_mask.push_back(j);
        for (uint32_t a = 0; a < block; ++a) ev.members.push_back(j * block + a);
      }
    ev.label += "}";
    std::sort(ev.members.begin(), ev.members.end());
    cl.coalition_members.push_back(std::move(members_of_mask));
    events.push_back(std::move(ev));
  }

  cl.players = std::move(players);
  cl.payoff_types = std::move(payoff_types);
  cl.carrier = std::move(carrier);
  cl.space = conditional_space::create(std::move(atoms), std::move(events));
  return cl;
}

coalition_check_result coalition_dirac_check(const coalition_layout& cl, uint32_t player,
                                             const std::vector<cps>& beliefs_per_type) {
  if (player >= cl.players.size()) fail_domain("coalition check for an unknown player");
  const size_t theta_factor = 1 + player;  // after the tag factor
  for (uint32_t t = 0; t < beliefs_per_type.size(); ++t) {
    const cps& family = beliefs_per_type[t];
    if (!same_space(family.space, cl.space))
      fail_domain("coalition beliefs live over the wrong space");
    std::optional<uint32_t> pinned_theta;
    for (uint32_t ev = 0; ev < cl.space->event_count(); ++ev) {
      const measure& mu = family.conditionals[ev];
      rat on_coalition = mu.mass(cl.space->event_at(ev).members);
      if (on_coalition != 1)
        return {false,
                coalition_witness{t, ev, "mass on the coalition is " + format_rat(on_coalition)}};
      std::vector<rat> theta_mass(cl.payoff_types[player].size(), rat(0));
      for (uint32_t a = 0; a < mu.w.size(); ++a)
        if (mu.w[a] != 0) theta_mass[cl.layout.coordinate(a, theta_factor)] += mu.w[a];
      std::optional<uint32_t> point;
      bool dirac = true;
      for (uint32_t th = 0; th < theta_mass.size(); ++th) {
        if (theta_mass[th] == 0) continue;
        if (theta_mass[th] == 1 && !point) {
          point = th;
        } else {
          dirac = false;
          break;
        }
      }
      if (!dirac || !point)
        return {false, coalition_witness{t, ev, "own payoff type marginal is not a point mass"}};
      if (pinned_theta && *pinned_theta != *point)
        return {false,
                coalition_witness{t, ev, "own payoff type differs across coalition events"}};
      pinned_theta = point;
    }
  }
  return {true, std::nullopt};
}

inclusive_structure lift_to_inclusive(const type_structure& s) {
  inclusive_structure out;
  out.base = s.base();
  out.agents = s.agents();
  // full type-profile tuples, all agents, first agent outermost
  size_t profile_count = 1;
  for (size_t a = 0; a < s.agent_count(); ++a) profile_count *= s.type_count(a);
  std::vector<std::string> profile_labels;
  profile_labels.reserve(profile_count);
  for (size_t p = 0; p < profile_count; ++p) {
    size_t rest = p;
    std::vector<size_t> coords(s.agent_count());
    for (size_t a = s.agent_count(); a-- > 0;) {
      coords[a] = rest % s.type_count(a);
      rest /= s.type_count(a);
    }
    std::string label;
    for (size_t a = 0; a < s.agent_count(); ++a) {
      if (a) label += ",";
      label += s.agent_at(a).types[coords[a]];
    }
    profile_labels.push_back(std::move(label));
  }

  for (size_t i = 0; i < s.agent_count(); ++i) {
    lifted_space ls = lift_space(s.base(), profile_labels);
    const lifted_space& from = s.belief_space(i);
    std::vector<cps> row;
    for (uint32_t t = 0; t < s.type_count(i); ++t) {
      cps lifted;
      lifted.space = ls.space;
      lifted.conditionals.assign(ls.space->event_count(),
                                 measure{std::vector<rat>(ls.space->atom_count(), rat(0))});
      const cps& belief = s.belief(i, t);
      for (uint32_t e = 0; e < belief.conditionals.size(); ++e)
        for (uint32_t atom = 0; atom < belief.conditionals[e].w.size(); ++atom) {
          const rat& w = belief.conditionals[e].w[atom];
          if (w == 0) continue;
          auto opp_coords = s.decode_opponents(i, from.factor_of(atom));
          size_t profile = 0;
          size_t k = 0;
          for (size_t a = 0; a < s.agent_count(); ++a) {
            size_t digit = (a == i) ? t : opp_coords[k++];
            profile = profile * s.type_count(a) + digit;
          }
          lifted.conditionals[e].w[ls.encode(from.base_of(atom),
                                             static_cast<uint32_t>(profile))] += w;
        }
      row.push_back(std::move(lifted));
    }
    out.spaces.push_back(std::move(ls));
    out.beliefs.push_back(std::move(row));
  }
  return out;
}

harsanyi_result harsanyi_check(const inclusive_structure& s) {
  for (uint32_t i = 0; i < s.agents.size(); ++i) {
    const lifted_space& ls = s.spaces[i];
    for (uint32_t t = 0; t < s.agents[i].types.size(); ++t) {
      const cps& belief = s.beliefs[i][t];
      for (uint32_t e = 0; e < belief.conditionals.size(); ++e) {
        // own-coordinate marginal of the conditional
        std::vector<rat> own(s.agents[i].types.size(), rat(0));
        for (uint32_t atom = 0; atom < belief.conditionals[e].w.size(); ++atom) {
          const rat& w = belief.conditionals[e].w[atom];
          if (w == 0) continue;
          size_t profile = ls.factor_of(atom);
          size_t own_digit = 0;
          for (size_t a = s.agents.size(); a-- > 0;) {
            size_t digit = profile % s.agents[a].types.size();
            profile /= s.agents[a].types.size();
            if (a == i) own_digit = digit;
          }
          own[own_digit] += w;
        }
        for (uint32_t u = 0; u < own.size(); ++u) {
          if ((u == t && own[u] != 1) || (u != t && own[u] != 0)) {
            harsanyi_result bad;
            bad.witness = std::make_tuple(i, t, e);
            return bad;
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace condtypes
