#pragma once

#include "pigas/coloring.hpp"
#include "pigas/graph.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace pigas {

struct GraphFile {
    DampingGraph graph;
    std::optional<SystemParams> params;
};

/// Canonical graph JSON: {"n", "damped", "edges", "params"?}. Rationals are
/// integers or "p/q" strings. Throws Parse with line and column on bad JSON.
GraphFile parse_graph_json(std::string_view text);
std::string write_graph_json(const DampingGraph& g, const std::optional<SystemParams>& params = std::nullopt);

/// Either a bare {"mass", "damping", "stiffness", "force"} object or a graph
/// file carrying "params". Missing keys fall back to the nominal values.
SystemParams parse_params_json(std::string_view text, const DampingGraph& g);
nlohmann::json params_to_json(const SystemParams& params);

Coloring parse_coloring_json(std::string_view text);
nlohmann::json coloring_to_json(const Coloring& c);

/// Undirected DOT with damped/param attributes; parse_dot accepts what
/// write_dot produces.
std::string write_dot(const DampingGraph& g, const std::optional<SystemParams>& params = std::nullopt);
GraphFile parse_dot(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Dispatches on extension: ".dot"/".gv" for DOT, JSON otherwise.
GraphFile load_graph(const std::filesystem::path& path);

}  // namespace pigas
