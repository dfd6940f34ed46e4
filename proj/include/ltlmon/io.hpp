#pragma once

// On-disk formats.
//
// Architecture (JSON):
//   { "components": [ { "name": "A", "props": ["a"] },
//                     { "name": "B", "props": ["b"] } ] }
//
// Trace (JSON Lines, one event per line):
//   { "t": 0, "components": { "A": ["a"], "B": [] } }
// Components absent from a line observed nothing that round.  The "t" field
// is optional; when present it must match the zero-based line position, which
// catches reordered or truncated files early.  Unknown component names or
// propositions a component cannot observe are errors, not silently dropped
// noise — they almost always mean the trace belongs to another architecture.

#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "architecture.hpp"
#include "simulation.hpp"

namespace ltlmon {

namespace detail {

[[noreturn]] inline void io_fail(const std::string& origin,
                                 const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

}  // namespace detail

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::io_fail(path, "cannot open file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline Architecture load_architecture(std::istream& in,
                                      const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    detail::io_fail(origin, e.what());
  }
  if (!doc.is_object() || !doc.contains("components"))
    detail::io_fail(origin, "expected an object with a \"components\" array");
  const nlohmann::json& comps = doc["components"];
  if (!comps.is_array())
    detail::io_fail(origin, "\"components\" must be an array");

  std::vector<Architecture::Component> parsed;
  for (const nlohmann::json& c : comps) {
    if (!c.is_object() || !c.contains("name") || !c.contains("props") ||
        !c["name"].is_string() || !c["props"].is_array())
      detail::io_fail(origin,
                      "each component needs a \"name\" string and a "
                      "\"props\" array");
    Architecture::Component comp;
    comp.name = c["name"].get<std::string>();
    for (const nlohmann::json& p : c["props"]) {
      if (!p.is_string())
        detail::io_fail(origin, "propositions must be strings");
      comp.props.insert(p.get<std::string>());
    }
    parsed.push_back(std::move(comp));
  }
  try {
    return Architecture(std::move(parsed));
  } catch (const std::invalid_argument& e) {
    detail::io_fail(origin, e.what());
  }
}

inline Architecture load_architecture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::io_fail(path, "cannot open file");
  return load_architecture(in, path);
}

inline GlobalTrace load_trace(std::istream& in, const Architecture& arch,
                              const std::string& origin) {
  GlobalTrace trace;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = origin + ":" + std::to_string(lineno);

    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      detail::io_fail(where, e.what());
    }
    if (!doc.is_object() || !doc.contains("components") ||
        !doc["components"].is_object())
      detail::io_fail(where,
                      "expected an object with a \"components\" object");
    if (doc.contains("t")) {
      if (!doc["t"].is_number_unsigned() ||
          doc["t"].get<std::size_t>() != trace.size())
        detail::io_fail(where, "\"t\" does not match the event position " +
                                   std::to_string(trace.size()));
    }

    std::vector<Event> locals(arch.size());
    for (const auto& [name, props] : doc["components"].items()) {
      const std::size_t i = arch.index_of(name);
      if (i == Architecture::npos)
        detail::io_fail(where, "unknown component \"" + name + "\"");
      if (!props.is_array())
        detail::io_fail(where, "observations must be an array");
      for (const nlohmann::json& p : props) {
        if (!p.is_string())
          detail::io_fail(where, "propositions must be strings");
        const std::string prop = p.get<std::string>();
        if (!arch.component(i).props.count(prop))
          detail::io_fail(where, "component \"" + name +
                                     "\" cannot observe \"" + prop + "\"");
        locals[i].insert(prop);
      }
    }
    trace.steps.push_back(std::move(locals));
  }
  return trace;
}

inline GlobalTrace load_trace_file(const std::string& path,
                                   const Architecture& arch) {
  std::ifstream in(path);
  if (!in) detail::io_fail(path, "cannot open file");
  return load_trace(in, arch, path);
}

}  // namespace ltlmon
