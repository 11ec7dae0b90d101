#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "condtypes/cps.hpp"
#include "condtypes/games.hpp"
#include "condtypes/space.hpp"
#include "condtypes/type_structure.hpp"

namespace condtypes::manifest {

using json = nlohmann::ordered_json;

enum class doc_kind { space, cps, structure, game, morphism };

const char* kind_name(doc_kind k);

// Parsed but unbound cps payload: the space is fully checked, the candidate
// family is kept label-keyed so validators can report against it.
struct cps_doc {
  space_ptr space;
  raw_conditionals raw;
};

struct structure_doc {
  space_ptr base;
  std::vector<type_structure::agent> agents;
  std::vector<std::vector<raw_conditionals>> beliefs;  // [agent][type]
};

struct morphism_doc {
  structure_doc src;
  structure_doc dst;
  // (agent id, [(src type label, dst type label)]) in file order
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> maps;
};

struct document {
  doc_kind kind = doc_kind::space;
  space_ptr space;
  std::optional<cps_doc> cps_body;
  std::optional<structure_doc> structure_body;
  std::optional<game_data> game_body;
  std::optional<morphism_doc> morphism_body;
};

// File and text entry points. Parse failures (syntax, schema shape, bad
// literals, unknown fields, wrong kind) throw condtypes::error(parse);
// references are resolved relative to base_dir.
document load_file(const std::filesystem::path& path);
document parse_document(const json& j, const std::filesystem::path& base_dir);
document expect_kind(document d, doc_kind k, const std::string& origin);

// Binding stages; violations of the mathematical contracts throw
// condtypes::error(domain) with a witness.
type_structure bind_structure(const structure_doc& d);
structure_morphism bind_morphism_map(const morphism_doc& d, const type_structure& src,
                                     const type_structure& dst);
game bind_game(const game_data& d);

// Canonical serialization: declaration order everywhere, zero weights
// dropped, rationals in canonical text form, referenced payloads inlined.
json serialize_space(const conditional_space& s);
json serialize_cps(const conditional_space& space, const raw_conditionals& raw);
json serialize_cps(const cps& value);
json serialize_structure(const structure_doc& d);
json serialize_structure(const type_structure& s);
json serialize_game(const game_data& g);
// src/dst are emitted verbatim: path strings or inline payloads.
json serialize_morphism(const json& src_field, const json& dst_field, const type_structure& src,
                        const structure_morphism& mu, const type_structure& dst);

raw_conditionals raw_from_cps(const cps& value);
structure_doc doc_from_structure(const type_structure& s);

std::string dump_document(const json& j);  // stable text form, trailing newline
void write_document(const std::filesystem::path& path, const json& j);

}  // namespace condtypes::manifest
