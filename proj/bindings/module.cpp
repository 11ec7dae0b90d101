#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "condtypes/cps.hpp"
#include "condtypes/error.hpp"
#include "condtypes/fragment.hpp"
#include "condtypes/games.hpp"
#include "condtypes/hierarchy.hpp"
#include "condtypes/manifest.hpp"
#include "condtypes/type_structure.hpp"

namespace py = pybind11;
namespace mf = condtypes::manifest;
using namespace condtypes;

namespace {

struct py_space {
  space_ptr space;
};

struct py_cps_doc {
  space_ptr space;
  raw_conditionals raw;
};

struct py_structure {
  type_structure value;
};

struct py_game {
  game value;
};

py::object load_any(const std::string& path) {
  auto doc = mf::load_file(path);
  switch (doc.kind) {
    case mf::doc_kind::space:
      return py::cast(py_space{doc.space});
    case mf::doc_kind::cps:
      return py::cast(py_cps_doc{doc.cps_body->space, doc.cps_body->raw});
    case mf::doc_kind::structure:
      return py::cast(py_structure{mf::bind_structure(*doc.structure_body)});
    case mf::doc_kind::game:
      return py::cast(py_game{game::create(*doc.game_body)});
    case mf::doc_kind::morphism: {
      const auto& body = *doc.morphism_body;
      auto src = mf::bind_structure(body.src);
      auto dst = mf::bind_structure(body.dst);
      auto mu = mf::bind_morphism_map(body, src, dst);
      py::dict maps;
      for (size_t a = 0; a < src.agent_count(); ++a) {
        py::dict row;
        for (size_t t = 0; t < src.type_count(a); ++t)
          row[py::str(src.agent_at(a).types[t])] =
              dst.agent_at(a).types[mu.type_map[a][t]];
        maps[py::str(src.agent_at(a).id)] = row;
      }
      return py::make_tuple(py_structure{std::move(src)}, py_structure{std::move(dst)}, maps);
    }
  }
  throw std::runtime_error("unreachable");
}

structure_morphism morphism_from_dict(const type_structure& src, const type_structure& dst,
                                      const py::dict& mapping) {
  mf::morphism_doc doc;
  for (auto item : mapping) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto e : item.second.cast<py::dict>())
      pairs.push_back({e.first.cast<std::string>(), e.second.cast<std::string>()});
    doc.maps.push_back({item.first.cast<std::string>(), std::move(pairs)});
  }
  return mf::bind_morphism_map(doc, src, dst);
}

py::dict hierarchy_dict(const type_structure& s, std::optional<size_t> depth, unsigned threads) {
  hierarchy_set hs({&s}, threads);
  size_t d = depth ? *depth : hs.stabilization_depth();
  hs.ensure_depth(d);
  py::dict out;
  for (size_t a = 0; a < s.agent_count(); ++a) {
    py::dict row;
    for (size_t t = 0; t < s.type_count(a); ++t) {
      py::list classes;
      for (size_t k = 0; k <= d; ++k) classes.append(hs.class_at(0, a, t, k));
      row[py::str(s.agent_at(a).types[t])] = classes;
    }
    out[py::str(s.agent_at(a).id)] = row;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(condtypes, m) {
  m.doc() = "finite conditional probability systems, type structures and hierarchies";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const condtypes::error& e) {
      if (e.kind() == errc::parse)
        PyErr_SetString(PyExc_ValueError, e.what());
      else
        PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<py_space>(m, "Space")
      .def_property_readonly("points",
                             [](const py_space& s) { return s.space->atoms(); })
      .def_property_readonly("events",
                             [](const py_space& s) {
                               std::vector<std::string> out;
                               for (const auto& ev : s.space->events()) out.push_back(ev.label);
                               return out;
                             })
      .def("event_members",
           [](const py_space& s, const std::string& label) {
             auto idx = s.space->event_index(label);
             if (!idx) fail_domain("unknown event '" + label + "'");
             std::vector<std::string> out;
             for (uint32_t a : s.space->event_at(*idx).members)
               out.push_back(s.space->atom_label(a));
             return out;
           })
      .def("to_json", [](const py_space& s) {
        return mf::dump_document(mf::serialize_space(*s.space));
      });

  py::class_<py_cps_doc>(m, "Cps")
      .def_property_readonly("space", [](const py_cps_doc& c) { return py_space{c.space}; })
      .def("validate",
           [](const py_cps_doc& c) {
             auto report = validate_cps(*c.space, c.raw);
             std::vector<std::string> lines;
             for (const auto& v : report.items)
               lines.push_back(std::string(violation_name(v.code)) + ": " + v.detail);
             return lines;
           })
      .def("to_json", [](const py_cps_doc& c) {
        return mf::dump_document(mf::serialize_cps(*c.space, c.raw));
      });

  py::class_<py_structure>(m, "Structure")
      .def_property_readonly("agents",
                             [](const py_structure& s) {
                               std::vector<std::string> out;
                               for (const auto& a : s.value.agents()) out.push_back(a.id);
                               return out;
                             })
      .def("types",
           [](const py_structure& s, const std::string& agent) {
             auto idx = s.value.agent_index(agent);
             if (!idx) fail_domain("unknown agent '" + agent + "'");
             return s.value.agent_at(*idx).types;
           })
      .def("to_json", [](const py_structure& s) {
        return mf::dump_document(mf::serialize_structure(s.value));
      });

  py::class_<py_game>(m, "Game")
      .def_property_readonly("players",
                             [](const py_game& g) { return g.value.data().players; })
      .def("strategies",
           [](const py_game& g, const std::string& player) {
             const auto& players = g.value.data().players;
             auto it = std::find(players.begin(), players.end(), player);
             if (it == players.end()) fail_domain("unknown player '" + player + "'");
             uint32_t i = static_cast<uint32_t>(it - players.begin());
             std::vector<std::string> out;
             for (uint64_t s = 0; s < g.value.strategy_count(i); ++s)
               out.push_back(g.value.strategy_label(i, s));
             return out;
           })
      .def("conditioning_events",
           [](const py_game& g, const std::string& player) {
             const auto& players = g.value.data().players;
             auto it = std::find(players.begin(), players.end(), player);
             if (it == players.end()) fail_domain("unknown player '" + player + "'");
             uint32_t i = static_cast<uint32_t>(it - players.begin());
             auto family = conditioning_family(g.value, i);
             py::list out;
             for (const auto& ev : family)
               out.append(py::make_tuple(ev.label, ev.sources, ev.opp_profiles));
             return out;
           })
      .def("space", [](const py_game& g) { return py_space{game_space(g.value).space}; })
      .def("to_json", [](const py_game& g) {
        return mf::dump_document(mf::serialize_game(g.value.data()));
      });

  m.def("load", &load_any, py::arg("path"),
        "Parse a manifest file; returns Space, Cps, Structure, Game or a morphism tuple");

  m.def(
      "hierarchy",
      [](const py_structure& s, std::optional<size_t> depth, unsigned threads) {
        return hierarchy_dict(s.value, depth, threads);
      },
      py::arg("structure"), py::arg("depth") = std::nullopt, py::arg("threads") = 1,
      "Per agent, per type: description class ids for levels 0..depth");

  m.def(
      "stabilization_depth",
      [](const py_structure& s, unsigned threads) {
        hierarchy_set hs({&s.value}, threads);
        return hs.stabilization_depth();
      },
      py::arg("structure"), py::arg("threads") = 1);

  m.def(
      "is_non_redundant",
      [](const py_structure& s, unsigned threads) {
        auto rep = is_non_redundant(s.value, threads);
        if (rep.non_redundant) return py::make_tuple(true, py::none());
        auto [a, t0, t1] = *rep.witness;
        return py::make_tuple(false,
                              py::make_tuple(s.value.agent_at(a).id,
                                             s.value.agent_at(a).types[t0],
                                             s.value.agent_at(a).types[t1]));
      },
      py::arg("structure"), py::arg("threads") = 1);

  m.def(
      "quotient",
      [](const py_structure& s, unsigned threads) {
        auto q = quotient(s.value, threads);
        py::dict proj;
        for (size_t a = 0; a < s.value.agent_count(); ++a) {
          py::dict row;
          for (size_t t = 0; t < s.value.type_count(a); ++t)
            row[py::str(s.value.agent_at(a).types[t])] =
                q.structure.agent_at(a).types[q.projection.type_map[a][t]];
          proj[py::str(s.value.agent_at(a).id)] = row;
        }
        return py::make_tuple(py_structure{std::move(q.structure)}, proj);
      },
      py::arg("structure"), py::arg("threads") = 1,
      "Non-redundant quotient plus the projection as a nested dict");

  m.def(
      "check_morphism",
      [](const py_structure& src, const py_structure& dst, const py::dict& mapping) {
        auto mu = morphism_from_dict(src.value, dst.value, mapping);
        auto chk = check_morphism(mu, src.value, dst.value);
        return py::make_tuple(chk.ok, chk.detail);
      },
      py::arg("src"), py::arg("dst"), py::arg("mapping"));

  m.def(
      "fragment",
      [](const std::vector<py_structure>& inputs, std::optional<size_t> depth,
         unsigned threads) {
        std::vector<const type_structure*> ptrs;
        for (const auto& s : inputs) ptrs.push_back(&s.value);
        auto f = build_fragment(ptrs, depth, threads);
        auto report = fragment_transition_checks(f, threads);
        py::list maps;
        for (const auto& s : inputs) {
          auto tm = terminal_map(s.value, f, threads);
          py::dict by_agent;
          for (size_t a = 0; a < s.value.agent_count(); ++a) {
            py::dict row;
            for (size_t t = 0; t < s.value.type_count(a); ++t)
              row[py::str(s.value.agent_at(a).types[t])] =
                  f.realized.agent_at(a).types[tm.type_map[a][t]];
            by_agent[py::str(s.value.agent_at(a).id)] = row;
          }
          maps.append(by_agent);
        }
        return py::make_tuple(py_structure{f.realized}, report.findings, maps);
      },
      py::arg("structures"), py::arg("depth") = std::nullopt, py::arg("threads") = 1,
      "Materialized universal fragment, check findings, and the terminal maps");
}
