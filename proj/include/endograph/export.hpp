#pragma once

// DOT and JSON serialisation of digraphs and condensed digraphs.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "endograph/digraph.hpp"
#include "endograph/errors.hpp"

namespace endograph {

/// Format-neutral view of a digraph ready for export.
struct ExportGraph {
  std::string group;
  std::string kind;  // endo | auto | power | compressed
  std::vector<std::string> labels;
  std::vector<std::size_t> class_sizes;
  std::vector<Arc> arcs;  // sorted

  bool condensed() const { return kind == "compressed"; }
  friend bool operator==(const ExportGraph&, const ExportGraph&) = default;
};

inline ExportGraph to_export(const Digraph& d, std::string group, std::string kind) {
  return {std::move(group), std::move(kind), d.labels(), std::vector<std::size_t>(d.size(), 1), d.arcs()};
}

inline ExportGraph to_export(const CondensedDigraph& c) {
  return {c.group_label, "compressed", c.digraph.labels(), c.sizes, c.digraph.arcs()};
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_dot(const ExportGraph& g) {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(g.group + " " + g.kind) << " {\n";
  for (std::size_t v = 0; v < g.labels.size(); ++v) {
    os << "  " << v << " [label=" << detail::dot_quote(g.labels[v]);
    if (g.condensed()) os << ", size=" << g.class_sizes[v];
    os << "];\n";
  }
  for (const auto& [x, y] : g.arcs) os << "  " << x << " -> " << y << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string to_json(const ExportGraph& g) {
  nlohmann::ordered_json j;
  j["group"] = g.group;
  j["kind"] = g.kind;
  j["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < g.labels.size(); ++v) {
    nlohmann::ordered_json vertex;
    vertex["id"] = v;
    vertex["label"] = g.labels[v];
    vertex["class_size"] = g.class_sizes[v];
    j["vertices"].push_back(std::move(vertex));
  }
  j["arcs"] = nlohmann::ordered_json::array();
  for (const auto& [x, y] : g.arcs) j["arcs"].push_back({x, y});
  return j.dump(2) + "\n";
}

inline ExportGraph from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  ExportGraph g;
  g.group = j.at("group").get<std::string>();
  g.kind = j.at("kind").get<std::string>();
  for (const auto& vertex : j.at("vertices")) {
    if (vertex.at("id").get<std::size_t>() != g.labels.size()) throw ParameterError("from_json: vertex ids must be 0..n-1 in order");
    g.labels.push_back(vertex.at("label").get<std::string>());
    g.class_sizes.push_back(vertex.at("class_size").get<std::size_t>());
  }
  for (const auto& arc : j.at("arcs")) {
    const auto x = arc.at(0).get<std::size_t>(), y = arc.at(1).get<std::size_t>();
    if (x >= g.labels.size() || y >= g.labels.size() || x == y) throw ParameterError("from_json: bad arc");
    g.arcs.emplace_back(x, y);
  }
  std::sort(g.arcs.begin(), g.arcs.end());
  return g;
}

/// Rebuilds the digraph described by an export (labels and arcs only).
inline Digraph to_digraph(const ExportGraph& g) {
  Digraph d(g.labels);
  for (const auto& [x, y] : g.arcs) d.add_arc(x, y);
  return d;
}

}  // namespace endograph
