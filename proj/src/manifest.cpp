#include "condtypes/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "condtypes/error.hpp"

namespace condtypes::manifest {

namespace {

namespace fs = std::filesystem;

// Agent ids and type labels feed composite labels (opponent tuples, belief
// keys, quotient and fragment output), so they stay on a conservative
// alphabet. Game identifiers additionally feed '.'-joined strategy labels
// and the utility key syntax, so '.' and '@' are excluded there too.
bool structure_label_ok(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    if (std::strchr("_-+'@.", c)) continue;
    return false;
  }
  return true;
}

bool game_label_ok(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    if (std::strchr("_-+'", c)) continue;
    return false;
  }
  return true;
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail_parse(where + ": missing field '" + key + "'");
  return *it;
}

void restrict_keys(const json& j, std::initializer_list<const char*> allowed,
                   const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok) fail_parse(where + ": unknown field '" + it.key() + "'");
  }
}

const json& need_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail_parse(where + ": expected an object");
  return j;
}

const json& need_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail_parse(where + ": expected an array");
  return j;
}

std::string need_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail_parse(where + ": expected a string");
  return j.get<std::string>();
}

uint32_t need_index(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail_parse(where + ": expected a non-negative integer");
  return j.get<uint32_t>();
}

rat need_rat(const json& j, const std::string& where) {
  std::string text = need_string(j, where);
  auto r = try_parse_rat(text);
  if (!r) fail_parse(where + ": invalid rational literal '" + text + "'");
  return *r;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  need_array(j, where);
  std::vector<std::string> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(need_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

space_ptr parse_space_body(const json& j, const std::string& where) {
  auto points = string_list(need(j, "points", where), where + ".points");
  if (points.empty()) fail_parse(where + ".points: must be nonempty");
  std::unordered_map<std::string, uint32_t> index;
  for (uint32_t i = 0; i < points.size(); ++i) {
    if (points[i].empty()) fail_parse(where + ".points: empty label");
    if (!index.emplace(points[i], i).second)
      fail_parse(where + ".points: duplicate label '" + points[i] + "'");
  }

  const json& jevents = need_array(need(j, "events", where), where + ".events");
  if (jevents.empty()) fail_parse(where + ".events: must be nonempty");
  std::vector<conditional_space::event> events;
  std::unordered_set<std::string> event_labels;
  for (size_t e = 0; e < jevents.size(); ++e) {
    std::string ctx = where + ".events[" + std::to_string(e) + "]";
    need_object(jevents[e], ctx);
    restrict_keys(jevents[e], {"label", "members"}, ctx);
    conditional_space::event ev;
    ev.label = need_string(need(jevents[e], "label", ctx), ctx + ".label");
    if (ev.label.empty()) fail_parse(ctx + ".label: empty label");
    if (!event_labels.insert(ev.label).second)
      fail_parse(where + ".events: duplicate label '" + ev.label + "'");
    auto members = string_list(need(jevents[e], "members", ctx), ctx + ".members");
    if (members.empty()) fail_parse(ctx + ".members: must be nonempty");
    for (const auto& m : members) {
      auto it = index.find(m);
      if (it == index.end()) fail_parse(ctx + ".members: unknown point '" + m + "'");
      ev.members.push_back(it->second);
    }
    std::sort(ev.members.begin(), ev.members.end());
    if (std::adjacent_find(ev.members.begin(), ev.members.end()) != ev.members.end())
      fail_parse(ctx + ".members: repeated point");
    events.push_back(std::move(ev));
  }
  try {
    return conditional_space::create(std::move(points), std::move(events));
  } catch (const error& e) {
    fail_parse(where + ": " + e.what());
  }
}

raw_conditionals parse_conditionals(const json& j, const std::string& where) {
  need_object(j, where);
  raw_conditionals raw;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string ctx = where + "." + it.key();
    need_object(*it, ctx);
    std::vector<std::pair<std::string, rat>> entries;
    for (auto w = it->begin(); w != it->end(); ++w)
      entries.push_back({w.key(), need_rat(*w, ctx + "." + w.key())});
    raw.entries.push_back({it.key(), std::move(entries)});
  }
  return raw;
}

document resolve_ref(const json& j, const fs::path& base_dir, doc_kind expected,
                     const std::string& where) {
  if (j.is_string()) {
    thread_local int depth = 0;
    if (depth > 16) fail_parse(where + ": reference chain too deep");
    ++depth;
    fs::path p = base_dir / j.get<std::string>();
    try {
      document d = expect_kind(load_file(p), expected, p.string());
      --depth;
      return d;
    } catch (...) {
      --depth;
      throw;
    }
  }
  if (j.is_object()) return expect_kind(parse_document(j, base_dir), expected, where);
  fail_parse(where + ": expected a path or an inline payload");
}

structure_doc parse_structure_body(const json& j, const fs::path& base_dir,
                                   const std::string& where) {
  structure_doc doc;
  doc.base = resolve_ref(need(j, "base", where), base_dir, doc_kind::space, where + ".base").space;
  const json& jagents = need_array(need(j, "agents", where), where + ".agents");
  if (jagents.empty()) fail_parse(where + ".agents: must be nonempty");
  std::unordered_set<std::string> ids;
  for (size_t a = 0; a < jagents.size(); ++a) {
    std::string ctx = where + ".agents[" + std::to_string(a) + "]";
    need_object(jagents[a], ctx);
    restrict_keys(jagents[a], {"id", "types", "beliefs"}, ctx);
    type_structure::agent ag;
    ag.id = need_string(need(jagents[a], "id", ctx), ctx + ".id");
    if (!structure_label_ok(ag.id)) fail_parse(ctx + ".id: bad identifier '" + ag.id + "'");
    if (!ids.insert(ag.id).second) fail_parse(where + ".agents: duplicate id '" + ag.id + "'");
    ag.types = string_list(need(jagents[a], "types", ctx), ctx + ".types");
    if (ag.types.empty()) fail_parse(ctx + ".types: must be nonempty");
    std::unordered_set<std::string> labels;
    for (const auto& t : ag.types) {
      if (!structure_label_ok(t)) fail_parse(ctx + ".types: bad label '" + t + "'");
      if (!labels.insert(t).second) fail_parse(ctx + ".types: duplicate label '" + t + "'");
    }
    const json& jb = need_object(need(jagents[a], "beliefs", ctx), ctx + ".beliefs");
    for (auto it = jb.begin(); it != jb.end(); ++it)
      if (!labels.count(it.key()))
        fail_parse(ctx + ".beliefs: unknown type '" + it.key() + "'");
    std::vector<raw_conditionals> row;
    for (const auto& t : ag.types) {
      auto it = jb.find(t);
      if (it == jb.end()) fail_parse(ctx + ".beliefs: missing type '" + t + "'");
      row.push_back(parse_conditionals(*it, ctx + ".beliefs." + t));
    }
    doc.agents.push_back(std::move(ag));
    doc.beliefs.push_back(std::move(row));
  }
  return doc;
}

game_data parse_game_body(const json& j, const std::string& where) {
  game_data g;
  g.players = string_list(need(j, "players", where), where + ".players");
  if (g.players.empty()) fail_parse(where + ".players: must be nonempty");
  std::unordered_set<std::string> pids;
  for (const auto& p : g.players) {
    if (!game_label_ok(p)) fail_parse(where + ".players: bad identifier '" + p + "'");
    if (!pids.insert(p).second) fail_parse(where + ".players: duplicate id '" + p + "'");
  }
  const size_t n = g.players.size();

  auto per_player_object = [&](const json& obj, const std::string& ctx) {
    need_object(obj, ctx);
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!pids.count(it.key())) fail_parse(ctx + ": unknown player '" + it.key() + "'");
    for (const auto& p : g.players)
      if (!obj.contains(p)) fail_parse(ctx + ": missing player '" + p + "'");
  };

  {
    const json& jt = need(j, "payoff_types", where);
    per_player_object(jt, where + ".payoff_types");
    for (const auto& p : g.players) {
      auto types = string_list(jt.at(p), where + ".payoff_types." + p);
      if (types.empty()) fail_parse(where + ".payoff_types." + p + ": must be nonempty");
      for (const auto& t : types)
        if (!game_label_ok(t))
          fail_parse(where + ".payoff_types." + p + ": bad label '" + t + "'");
      g.payoff_types.push_back(std::move(types));
    }
  }

  const json& jh = need_array(need(j, "histories", where), where + ".histories");
  if (jh.empty()) fail_parse(where + ".histories: must be nonempty");
  for (size_t h = 0; h < jh.size(); ++h) {
    std::string ctx = where + ".histories[" + std::to_string(h) + "]";
    need_array(jh[h], ctx);
    game_data::history_entry entry;
    for (size_t r = 0; r < jh[h].size(); ++r) {
      auto profile = string_list(jh[h][r], ctx + "[" + std::to_string(r) + "]");
      if (profile.size() != n)
        fail_parse(ctx + "[" + std::to_string(r) + "]: profile arity " +
                   std::to_string(profile.size()) + ", expected " + std::to_string(n));
      for (const auto& a : profile)
        if (!game_label_ok(a))
          fail_parse(ctx + "[" + std::to_string(r) + "]: bad action label '" + a + "'");
      entry.moves.push_back(std::move(profile));
    }
    g.histories.push_back(std::move(entry));
  }

  const json& ja = need_array(need(j, "actions", where), where + ".actions");
  if (ja.size() != g.histories.size())
    fail_parse(where + ".actions: expected one entry per history");
  for (size_t h = 0; h < ja.size(); ++h) {
    if (ja[h].is_null()) continue;
    std::string ctx = where + ".actions[" + std::to_string(h) + "]";
    per_player_object(ja[h], ctx);
    std::vector<std::vector<std::string>> lists;
    for (const auto& p : g.players) {
      auto acts = string_list(ja[h].at(p), ctx + "." + p);
      for (const auto& a : acts)
        if (!game_label_ok(a)) fail_parse(ctx + "." + p + ": bad action label '" + a + "'");
      lists.push_back(std::move(acts));
    }
    g.histories[h].actions = std::move(lists);
  }

  {
    const json& ji = need(j, "info_sets", where);
    per_player_object(ji, where + ".info_sets");
    for (const auto& p : g.players) {
      std::string ctx = where + ".info_sets." + p;
      const json& sets = need_array(ji.at(p), ctx);
      std::vector<game_data::info_set> row;
      for (size_t k = 0; k < sets.size(); ++k) {
        std::string sctx = ctx + "[" + std::to_string(k) + "]";
        need_object(sets[k], sctx);
        restrict_keys(sets[k], {"label", "histories"}, sctx);
        game_data::info_set is;
        is.label = need_string(need(sets[k], "label", sctx), sctx + ".label");
        if (!game_label_ok(is.label)) fail_parse(sctx + ".label: bad label '" + is.label + "'");
        const json& hs = need_array(need(sets[k], "histories", sctx), sctx + ".histories");
        for (size_t m = 0; m < hs.size(); ++m)
          is.histories.push_back(
              need_index(hs[m], sctx + ".histories[" + std::to_string(m) + "]"));
        row.push_back(std::move(is));
      }
      g.info_sets.push_back(std::move(row));
    }
  }

  if (j.contains("utilities")) {
    const json& ju = j.at("utilities");
    per_player_object(ju, where + ".utilities");
    for (const auto& p : g.players) {
      std::string ctx = where + ".utilities." + p;
      need_object(ju.at(p), ctx);
      std::vector<std::pair<std::string, rat>> row;
      for (auto it = ju.at(p).begin(); it != ju.at(p).end(); ++it)
        row.push_back({it.key(), need_rat(*it, ctx + "." + it.key())});
      g.utilities.push_back(std::move(row));
    }
  }
  return g;
}

morphism_doc parse_morphism_body(const json& j, const fs::path& base_dir,
                                 const std::string& where) {
  morphism_doc doc;
  doc.src = *resolve_ref(need(j, "src", where), base_dir, doc_kind::structure, where + ".src")
                 .structure_body;
  doc.dst = *resolve_ref(need(j, "dst", where), base_dir, doc_kind::structure, where + ".dst")
                 .structure_body;
  const json& jm = need_object(need(j, "maps", where), where + ".maps");
  for (auto it = jm.begin(); it != jm.end(); ++it) {
    std::string ctx = where + ".maps." + it.key();
    need_object(*it, ctx);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto e = it->begin(); e != it->end(); ++e)
      pairs.push_back({e.key(), need_string(*e, ctx + "." + e.key())});
    doc.maps.push_back({it.key(), std::move(pairs)});
  }
  return doc;
}

}  // namespace

const char* kind_name(doc_kind k) {
  switch (k) {
    case doc_kind::space: return "space";
    case doc_kind::cps: return "cps";
    case doc_kind::structure: return "structure";
    case doc_kind::game: return "game";
    case doc_kind::morphism: return "morphism";
  }
  return "?";
}

document load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail_parse("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail_parse(path.string() + ": " + e.what());
  }
  return parse_document(j, path.parent_path());
}

document parse_document(const json& j, const std::filesystem::path& base_dir) {
  const std::string where = "manifest";
  need_object(j, where);
  const json& jv = need(j, "format_version", where);
  if (!jv.is_number_integer() || jv.get<int64_t>() != 1)
    fail_parse(where + ": unsupported format_version");
  std::string kind = need_string(need(j, "kind", where), where + ".kind");

  document doc;
  if (kind == "space") {
    restrict_keys(j, {"format_version", "kind", "points", "events"}, where);
    doc.kind = doc_kind::space;
    doc.space = parse_space_body(j, where);
  } else if (kind == "cps") {
    restrict_keys(j, {"format_version", "kind", "space", "conditionals"}, where);
    doc.kind = doc_kind::cps;
    cps_doc body;
    body.space =
        resolve_ref(need(j, "space", where), base_dir, doc_kind::space, where + ".space").space;
    body.raw = parse_conditionals(need(j, "conditionals", where), where + ".conditionals");
    doc.cps_body = std::move(body);
  } else if (kind == "structure") {
    restrict_keys(j, {"format_version", "kind", "base", "agents"}, where);
    doc.kind = doc_kind::structure;
    doc.structure_body = parse_structure_body(j, base_dir, where);
  } else if (kind == "game") {
    restrict_keys(j, {"format_version", "kind", "players", "payoff_types", "histories", "actions",
                      "info_sets", "utilities"},
                  where);
    doc.kind = doc_kind::game;
    doc.game_body = parse_game_body(j, where);
  } else if (kind == "morphism") {
    restrict_keys(j, {"format_version", "kind", "src", "dst", "maps"}, where);
    doc.kind = doc_kind::morphism;
    doc.morphism_body = parse_morphism_body(j, base_dir, where);
  } else {
    fail_parse(where + ": unknown kind '" + kind + "'");
  }
  return doc;
}

document expect_kind(document d, doc_kind k, const std::string& origin) {
  if (d.kind != k)
    fail_parse(origin + ": expected a " + kind_name(k) + " payload, found " +
               kind_name(d.kind));
  return d;
}

type_structure bind_structure(const structure_doc& d) {
  std::vector<std::vector<cps>> beliefs;
  for (size_t i = 0; i < d.agents.size(); ++i) {
    lifted_space ls = type_structure::belief_space_for(d.base, d.agents, i);
    std::vector<cps> row;
    for (size_t t = 0; t < d.agents[i].types.size(); ++t) {
      auto report = validate_cps(*ls.space, d.beliefs[i][t]);
      if (!report.ok()) {
        const auto& v = report.items.front();
        fail_domain("agent '" + d.agents[i].id + "', type '" + d.agents[i].types[t] + "': " +
                    violation_name(v.code) + ": " + v.detail);
      }
      cps value;
      value.space = ls.space;
      value.conditionals.assign(ls.space->event_count(),
                                measure{std::vector<rat>(ls.space->atom_count(), rat(0))});
      for (const auto& [event_label, entries] : d.beliefs[i][t].entries) {
        uint32_t e = *ls.space->event_index(event_label);
        for (const auto& [atom_label, w] : entries)
          value.conditionals[e].w[*ls.space->atom_index(atom_label)] = w;
      }
      row.push_back(std::move(value));
    }
    beliefs.push_back(std::move(row));
  }
  return type_structure::create(d.base, d.agents, std::move(beliefs));
}

structure_morphism bind_morphism_map(const morphism_doc& d, const type_structure& src,
                                     const type_structure& dst) {
  structure_morphism mu;
  mu.type_map.resize(src.agent_count());
  std::unordered_set<std::string> seen;
  for (const auto& [agent_id, pairs] : d.maps) {
    auto ai = src.agent_index(agent_id);
    if (!ai) fail_domain("map names unknown agent '" + agent_id + "'");
    if (!seen.insert(agent_id).second) fail_domain("two maps for agent '" + agent_id + "'");
    auto& row = mu.type_map[*ai];
    row.assign(src.type_count(*ai), UINT32_MAX);
    for (const auto& [from, to] : pairs) {
      auto ti = src.type_index(*ai, from);
      if (!ti) fail_domain("agent '" + agent_id + "': unknown source type '" + from + "'");
      auto di = dst.type_index(*ai, to);
      if (!di) fail_domain("agent '" + agent_id + "': unknown target type '" + to + "'");
      if (row[*ti] != UINT32_MAX)
        fail_domain("agent '" + agent_id + "': two images for type '" + from + "'");
      row[*ti] = *di;
    }
    for (size_t t = 0; t < row.size(); ++t)
      if (row[t] == UINT32_MAX)
        fail_domain("agent '" + agent_id + "': no image for type '" +
                    src.agent_at(*ai).types[t] + "'");
  }
  for (size_t a = 0; a < src.agent_count(); ++a)
    if (!seen.count(src.agent_at(a).id))
      fail_domain("no map for agent '" + src.agent_at(a).id + "'");
  return mu;
}

game bind_game(const game_data& d) { return game::create(d); }

json serialize_space(const conditional_space& s) {
  json j;
  j["format_version"] = 1;
  j["kind"] = "space";
  j["points"] = s.atoms();
  json events = json::array();
  for (const auto& ev : s.events()) {
    json je;
    je["label"] = ev.label;
    json members = json::array();
    for (uint32_t m : ev.members) members.push_back(s.atom_label(m));
    je["members"] = std::move(members);
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  return j;
}

static json conditionals_to_json(const raw_conditionals& raw) {
  json out = json::object();
  for (const auto& [event_label, entries] : raw.entries) {
    json row = json::object();
    for (const auto& [atom_label, w] : entries) row[atom_label] = format_rat(w);
    out[event_label] = std::move(row);
  }
  return out;
}

json serialize_cps(const conditional_space& space, const raw_conditionals& raw) {
  json j;
  j["format_version"] = 1;
  j["kind"] = "cps";
  j["space"] = serialize_space(space);
  j["conditionals"] = conditionals_to_json(raw);
  return j;
}

raw_conditionals raw_from_cps(const cps& value) {
  raw_conditionals raw;
  for (uint32_t e = 0; e < value.space->event_count(); ++e) {
    std::vector<std::pair<std::string, rat>> entries;
    for (uint32_t a = 0; a < value.conditionals[e].w.size(); ++a)
      if (value.conditionals[e].w[a] != 0)
        entries.push_back({value.space->atom_label(a), value.conditionals[e].w[a]});
    raw.entries.push_back({value.space->event_at(e).label, std::move(entries)});
  }
  return raw;
}

json serialize_cps(const cps& value) { return serialize_cps(*value.space, raw_from_cps(value)); }

json serialize_structure(const structure_doc& d) {
  json j;
  j["format_version"] = 1;
  j["kind"] = "structure";
  j["base"] = serialize_space(*d.base);
  json agents = json::array();
  for (size_t a = 0; a < d.agents.size(); ++a) {
    json ja;
    ja["id"] = d.agents[a].id;
    ja["types"] = d.agents[a].types;
    json beliefs = json::object();
    for (size_t t = 0; t < d.agents[a].types.size(); ++t)
      beliefs[d.agents[a].types[t]] = conditionals_to_json(d.beliefs[a][t]);
    ja["beliefs"] = std::move(beliefs);
    agents.push_back(std::move(ja));
  }
  j["agents"] = std::move(agents);
  return j;
}

structure_doc doc_from_structure(const type_structure& s) {
  structure_doc d;
  d.base = s.base();
  d.agents = s.agents();
  for (size_t a = 0; a < s.agent_count(); ++a) {
    std::vector<raw_conditionals> row;
    for (size_t t = 0; t < s.type_count(a); ++t) row.push_back(raw_from_cps(s.belief(a, t)));
    d.beliefs.push_back(std::move(row));
  }
  return d;
}

json serialize_structure(const type_structure& s) {
  return serialize_structure(doc_from_structure(s));
}

json serialize_game(const game_data& g) {
  json j;
  j["format_version"] = 1;
  j["kind"] = "game";
  j["players"] = g.players;
  json jt = json::object();
  for (size_t i = 0; i < g.players.size(); ++i) jt[g.players[i]] = g.payoff_types[i];
  j["payoff_types"] = std::move(jt);
  json jh = json::array();
  json ja = json::array();
  for (const auto& entry : g.histories) {
    json moves = json::array();
    for (const auto& profile : entry.moves) moves.push_back(profile);
    jh.push_back(std::move(moves));
    if (entry.actions) {
      json acts = json::object();
      for (size_t i = 0; i < g.players.size(); ++i) acts[g.players[i]] = (*entry.actions)[i];
      ja.push_back(std::move(acts));
    } else {
      ja.push_back(nullptr);
    }
  }
  j["histories"] = std::move(jh);
  j["actions"] = std::move(ja);
  json ji = json::object();
  for (size_t i = 0; i < g.players.size(); ++i) {
    json sets = json::array();
    for (const auto& is : g.info_sets[i]) {
      json js;
      js["label"] = is.label;
      js["histories"] = is.histories;
      sets.push_back(std::move(js));
    }
    ji[g.players[i]] = std::move(sets);
  }
  j["info_sets"] = std::move(ji);
  bool any_utilities = false;
  for (const auto& row : g.utilities) any_utilities = any_utilities || !row.empty();
  if (any_utilities) {
    json ju = json::object();
    for (size_t i = 0; i < g.players.size(); ++i) {
      json row = json::object();
      for (const auto& [key, value] : g.utilities[i]) row[key] = format_rat(value);
      ju[g.players[i]] = std::move(row);
    }
    j["utilities"] = std::move(ju);
  }
  return j;
}

json serialize_morphism(const json& src_field, const json& dst_field, const type_structure& src,
                        const structure_morphism& mu, const type_structure& dst) {
  json j;
  j["format_version"] = 1;
  j["kind"] = "morphism";
  j["src"] = src_field;
  j["dst"] = dst_field;
  json maps = json::object();
  for (size_t a = 0; a < src.agent_count(); ++a) {
    json row = json::object();
    for (size_t t = 0; t < src.type_count(a); ++t)
      row[src.agent_at(a).types[t]] = dst.agent_at(a).types[mu.type_map[a][t]];
    maps[src.agent_at(a).id] = std::move(row);
  }
  j["maps"] = std::move(maps);
  return j;
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

void write_document(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail_parse("cannot write '" + path.string() + "'");
  out << dump_document(j);
  if (!out) fail_parse("cannot write '" + path.string() + "'");
}

}  // namespace condtypes::manifest
