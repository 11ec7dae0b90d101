#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "condtypes/cps.hpp"
#include "condtypes/error.hpp"
#include "condtypes/fragment.hpp"
#include "condtypes/games.hpp"
#include "condtypes/hierarchy.hpp"
#include "condtypes/manifest.hpp"
#include "condtypes/type_structure.hpp"

namespace fs = std::filesystem;
namespace mf = condtypes::manifest;
using namespace condtypes;

namespace {

std::string strip_extension(const std::string& path) {
  fs::path p(path);
  return (p.parent_path() / p.stem()).string();
}

// Reference from one written file to another input, kept relative so output
// bundles stay relocatable. An empty directory means the cwd; fs::absolute
// would reject it.
std::string relative_ref(const std::string& target, const fs::path& from_dir) {
  std::error_code ec;
  const fs::path base = from_dir.empty() ? fs::path(".") : from_dir;
  fs::path rel = fs::proximate(fs::absolute(target), fs::absolute(base), ec);
  if (ec || rel.empty()) return fs::absolute(target).string();
  return rel.string();
}

int cmd_validate(const std::string& file) {
  auto doc = mf::load_file(file);
  switch (doc.kind) {
    case mf::doc_kind::space:
      std::cout << "ok: space with " << doc.space->atom_count() << " points, "
                << doc.space->event_count() << " events\n";
      return 0;
    case mf::doc_kind::cps: {
      const auto& body = *doc.cps_body;
      auto report = validate_cps(*body.space, body.raw);
      if (report.ok()) {
        std::cout << "ok: cps over " << body.space->atom_count() << " points, "
                  << body.space->event_count() << " events\n";
        return 0;
      }
      for (const auto& v : report.items)
        std::cout << "violation: " << violation_name(v.code) << ": " << v.detail << "\n";
      return 1;
    }
    case mf::doc_kind::structure: {
      auto s = mf::bind_structure(*doc.structure_body);
      size_t total = 0;
      for (size_t a = 0; a < s.agent_count(); ++a) total += s.type_count(a);
      std::cout << "ok: structure with " << s.agent_count() << " agents, " << total
                << " types\n";
      return 0;
    }
    case mf::doc_kind::game: {
      auto violations = validate_game(*doc.game_body);
      if (!violations.empty()) {
        for (const auto& v : violations)
          std::cout << "violation: " << v.code << ": " << v.detail << "\n";
        return 1;
      }
      auto g = game::create(*doc.game_body);
      std::cout << "ok: game with " << g.history_count() << " histories, " << g.player_count()
                << " players\n";
      return 0;
    }
    case mf::doc_kind::morphism: {
      const auto& body = *doc.morphism_body;
      auto src = mf::bind_structure(body.src);
      auto dst = mf::bind_structure(body.dst);
      auto mu = mf::bind_morphism_map(body, src, dst);
      auto chk = check_morphism(mu, src, dst);
      if (chk.ok) {
        std::cout << "ok: type morphism\n";
        return 0;
      }
      std::cout << "violation: morphism: " << chk.detail << "\n";
      return 1;
    }
  }
  return 2;
}

type_structure load_structure(const std::string& file) {
  auto doc = mf::expect_kind(mf::load_file(file), mf::doc_kind::structure, file);
  return mf::bind_structure(*doc.structure_body);
}

int cmd_hierarchy(const std::string& file, std::optional<size_t> depth_opt,
                  const std::string& agent_filter, unsigned threads) {
  auto s = load_structure(file);
  std::optional<size_t> agent_index;
  if (!agent_filter.empty()) {
    auto idx = s.agent_index(agent_filter);
    if (!idx) fail_domain("unknown agent '" + agent_filter + "'");
    agent_index = *idx;
  }

  hierarchy_set hs({&s}, threads);
  size_t stab = hs.stabilization_depth();
  size_t depth = depth_opt.value_or(stab);
  hs.ensure_depth(depth);

  std::cout << "stabilization depth: " << stab << "\n";
  std::cout << "report depth: " << depth << "\n";
  for (size_t a = 0; a < s.agent_count(); ++a) {
    if (agent_index && *agent_index != a) continue;
    for (size_t t = 0; t < s.type_count(a); ++t) {
      std::cout << "agent " << s.agent_at(a).id << " type " << s.agent_at(a).types[t]
                << ": classes";
      for (size_t k = 0; k <= depth; ++k) std::cout << " " << hs.class_at(0, a, t, k);
      std::cout << "\n";
    }
  }
  auto part = refine_to_fixed_point(hs);
  bool discrete = true;
  std::optional<std::tuple<size_t, uint32_t, uint32_t>> witness;
  for (size_t a = 0; a < s.agent_count(); ++a) {
    if (!agent_index || *agent_index == a) {
      std::cout << "partition " << s.agent_at(a).id << ":";
      for (const auto& block : part.blocks[a]) {
        std::cout << " {";
        for (size_t m = 0; m < block.size(); ++m) {
          if (m) std::cout << ",";
          std::cout << s.agent_at(a).types[block[m].second];
        }
        std::cout << "}";
      }
      std::cout << "\n";
    }
    for (const auto& block : part.blocks[a])
      if (block.size() > 1 && !witness) {
        discrete = false;
        witness = {a, block[0].second, block[1].second};
      }
  }
  if (discrete) {
    std::cout << "verdict: non-redundant\n";
  } else {
    auto [a, t0, t1] = *witness;
    std::cout << "verdict: redundant (agent " << s.agent_at(a).id << ": "
              << s.agent_at(a).types[t0] << " ~ " << s.agent_at(a).types[t1] << ")\n";
  }
  return 0;
}

int cmd_quotient(const std::string& file, std::string out, unsigned threads) {
  auto s = load_structure(file);
  auto q = quotient(s, threads);
  if (out.empty()) out = strip_extension(file);
  fs::path qpath = out + ".quotient.json";
  fs::path mpath = out + ".projection.json";
  fs::path out_dir = qpath.parent_path();

  mf::write_document(qpath, mf::serialize_structure(q.structure));
  mf::json src_ref = relative_ref(file, out_dir);
  mf::json dst_ref = qpath.filename().string();
  mf::write_document(mpath,
                     mf::serialize_morphism(src_ref, dst_ref, s, q.projection, q.structure));

  for (size_t a = 0; a < s.agent_count(); ++a)
    std::cout << "agent " << s.agent_at(a).id << ": " << s.type_count(a) << " types -> "
              << q.structure.type_count(a) << " classes\n";
  std::cout << "wrote " << qpath.string() << "\n";
  std::cout << "wrote " << mpath.string() << "\n";
  return 0;
}

int cmd_morphism(const std::string& src_file, const std::string& dst_file,
                 const std::string& map_file) {
  auto src = load_structure(src_file);
  auto dst = load_structure(dst_file);
  auto doc = mf::expect_kind(mf::load_file(map_file), mf::doc_kind::morphism, map_file);
  auto mu = mf::bind_morphism_map(*doc.morphism_body, src, dst);
  auto chk = check_morphism(mu, src, dst);
  if (chk.ok) {
    std::cout << "ok: type morphism\n";
    return 0;
  }
  std::cout << "violation: morphism: " << chk.detail << "\n";
  return 1;
}

int cmd_fragment(const std::vector<std::string>& files, std::optional<size_t> depth_opt,
                 std::string out, unsigned threads) {
  std::vector<type_structure> held;
  held.reserve(files.size());
  for (const auto& f : files) held.push_back(load_structure(f));
  std::vector<const type_structure*> inputs;
  for (const auto& s : held) inputs.push_back(&s);

  auto f = build_fragment(inputs, depth_opt, threads);
  std::cout << "stabilization depth: " << f.stabilization_depth << "\n";
  std::cout << "materialization depth: " << f.depth << "\n";
  for (size_t a = 0; a < f.realized.agent_count(); ++a) {
    std::cout << "agent " << f.realized.agent_at(a).id << ": " << f.elements[a].size()
              << " elements:";
    for (const auto& el : f.elements[a]) std::cout << " " << el.label;
    std::cout << "\n";
  }

  if (out.empty()) out = strip_extension(files[0]);
  fs::path fpath = out + ".fragment.json";
  fs::path out_dir = fpath.parent_path();
  mf::write_document(fpath, mf::serialize_structure(f.realized));
  std::cout << "wrote " << fpath.string() << "\n";
  for (size_t k = 0; k < held.size(); ++k) {
    auto tm = terminal_map(held[k], f, threads);
    fs::path tpath = out + ".terminal" + std::to_string(k) + ".json";
    mf::json src_ref = relative_ref(files[k], out_dir);
    mf::json dst_ref = fpath.filename().string();
    mf::write_document(tpath, mf::serialize_morphism(src_ref, dst_ref, held[k], tm, f.realized));
    std::cout << "wrote " << tpath.string() << "\n";
  }

  auto report = fragment_transition_checks(f, threads);
  if (report.ok()) {
    std::cout << "checks: ok\n";
    return 0;
  }
  for (const auto& line : report.findings) std::cout << "finding: " << line << "\n";
  return 1;
}

int cmd_game(const std::string& file, const std::string& emit, const std::string& out) {
  auto doc = mf::expect_kind(mf::load_file(file), mf::doc_kind::game, file);
  auto violations = validate_game(*doc.game_body);
  if (!violations.empty()) {
    for (const auto& v : violations)
      std::cout << "violation: " << v.code << ": " << v.detail << "\n";
    return 1;
  }
  auto g = game::create(*doc.game_body);

  if (emit == "strategies") {
    for (uint32_t i = 0; i < g.player_count(); ++i) {
      std::cout << "player " << g.data().players[i] << ": " << g.strategy_count(i)
                << " strategies\n";
      for (uint64_t s = 0; s < g.strategy_count(i); ++s)
        std::cout << "  [" << s << "] " << g.strategy_label(i, s) << "\n";
    }
    return 0;
  }
  if (emit == "events") {
    for (uint32_t i = 0; i < g.player_count(); ++i) {
      auto family = conditioning_family(g, i);
      std::cout << "player " << g.data().players[i] << ": " << family.size()
                << " conditioning events\n";
      std::vector<uint64_t> opp_counts;
      for (uint32_t j = 0; j < g.player_count(); ++j)
        if (j != i) opp_counts.push_back(g.strategy_count(j));
      for (const auto& ev : family) {
        std::cout << "  event " << ev.label << " <- [";
        for (size_t k = 0; k < ev.sources.size(); ++k) {
          if (k) std::cout << ",";
          std::cout << ev.sources[k];
        }
        std::cout << "] S_-i {";
        for (size_t k = 0; k < ev.opp_profiles.size(); ++k) {
          uint64_t rest = ev.opp_profiles[k];
          std::vector<uint64_t> digits(opp_counts.size());
          for (size_t d = opp_counts.size(); d-- > 0;) {
            digits[d] = rest % opp_counts[d];
            rest /= opp_counts[d];
          }
          std::cout << (k ? " (" : "(");
          size_t d = 0;
          for (uint32_t j = 0; j < g.player_count(); ++j) {
            if (j == i) continue;
            if (d) std::cout << "|";
            std::cout << g.strategy_label(j, digits[d]);
            ++d;
          }
          std::cout << ")";
        }
        std::cout << "}\n";
      }
    }
    return 0;
  }
  if (emit == "space") {
    auto res = game_space(g);
    auto j = mf::serialize_space(*res.space);
    if (out.empty()) {
      std::cout << mf::dump_document(j);
    } else {
      fs::path path = out + ".space.json";
      mf::write_document(path, j);
      std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
  }
  fail_parse("unknown --emit kind '" + emit + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite conditional type structures: validation, hierarchies, quotients,\n"
               "universal fragments and game-derived conditioning systems"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads (output is thread-count invariant)")
      ->default_val(1);

  std::string file, src, dst, map_file, agent, out, emit = "events";
  std::vector<std::string> files;
  std::optional<size_t> depth;

  auto* validate = app.add_subcommand("validate", "check one manifest file");
  validate->add_option("file", file)->required();

  auto* hierarchy = app.add_subcommand("hierarchy", "hierarchy description report");
  hierarchy->add_option("file", file)->required();
  hierarchy->add_option("--depth", depth, "report depth (default: stabilization depth)");
  hierarchy->add_option("--agent", agent, "restrict the listing to one agent");

  auto* quotient_cmd = app.add_subcommand("quotient", "non-redundant quotient + projection");
  quotient_cmd->add_option("file", file)->required();
  quotient_cmd->add_option("--out", out, "output path prefix (default: input sans extension)");

  auto* morphism = app.add_subcommand("morphism", "commuting-square check");
  morphism->add_option("src", src)->required();
  morphism->add_option("dst", dst)->required();
  morphism->add_option("map", map_file)->required();

  auto* fragment = app.add_subcommand("fragment", "materialized universal fragment");
  fragment->add_option("files", files)->required()->expected(-1);
  fragment->add_option("--depth", depth, "materialization depth (>= stabilization depth)");
  fragment->add_option("--out", out, "output path prefix (default: first input sans extension)");

  auto* game_cmd = app.add_subcommand("game", "strategies, conditioning events, game space");
  game_cmd->add_option("file", file)->required();
  game_cmd->add_option("--emit", emit, "space|strategies|events (default events)");
  game_cmd->add_option("--out", out, "output path prefix for --emit space");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (threads == 0) threads = 1;

  try {
    if (validate->parsed()) return cmd_validate(file);
    if (hierarchy->parsed()) return cmd_hierarchy(file, depth, agent, threads);
    if (quotient_cmd->parsed()) return cmd_quotient(file, out, threads);
    if (morphism->parsed()) return cmd_morphism(src, dst, map_file);
    if (fragment->parsed()) return cmd_fragment(files, depth, out, threads);
    if (game_cmd->parsed()) return cmd_game(file, emit, out);
  } catch (const condtypes::error& e) {
    if (e.kind() == errc::parse) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::cout << "violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
