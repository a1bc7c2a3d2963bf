#include "pigas/io.hpp"

#include "pigas/error.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace pigas {

using nlohmann::json;

namespace {

std::string where(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw Error(ErrorCode::Parse, where(text, byte) + ": malformed JSON");
    }
}

Rational rational_from_json(const json& x, const std::string& field) {
    if (x.is_number_integer()) return Rational(x.get<long long>());
    if (x.is_string()) {
        try {
            return parse_rational(x.get<std::string>());
        } catch (const Error&) {
            throw Error(ErrorCode::Parse, field + ": '" + x.get<std::string>() + "' is not a rational");
        }
    }
    throw Error(ErrorCode::Parse, field + ": expected an integer or a \"p/q\" string");
}

json rational_to_json(const Rational& x) {
    if (denominator(x) == 1 && abs(numerator(x)) < BigInt(1) << 53) return json(static_cast<long long>(numerator(x)));
    return json(format_rational(x));
}

std::vector<Rational> rational_list(const json& obj, const char* key, std::size_t expected) {
    const json& arr = obj.at(key);
    if (!arr.is_array()) throw Error(ErrorCode::Parse, std::string("params.") + key + ": expected an array");
    if (arr.size() != expected) {
        throw Error(ErrorCode::InvalidParams, std::string("params.") + key + ": expected " + std::to_string(expected) +
                                                  " entries, got " + std::to_string(arr.size()));
    }
    std::vector<Rational> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out.push_back(rational_from_json(arr[k], std::string("params.") + key + "[" + std::to_string(k) + "]"));
    }
    return out;
}

SystemParams params_from_object(const json& obj, const DampingGraph& g) {
    if (!obj.is_object()) throw Error(ErrorCode::Parse, "params: expected an object");
    SystemParams p = SystemParams::nominal(g);
    if (obj.contains("mass")) p.mass = rational_list(obj, "mass", g.node_count());
    if (obj.contains("damping")) p.damping = rational_list(obj, "damping", g.node_count());
    if (obj.contains("stiffness")) p.stiffness = rational_list(obj, "stiffness", g.edge_count());
    if (obj.contains("force")) p.force = rational_list(obj, "force", g.node_count());
    p.validate(g);
    return p;
}

template <class T>
T get_field(const json& obj, const char* key) {
    if (!obj.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::Parse, std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

GraphFile parse_graph_json(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw Error(ErrorCode::Parse, "top level must be an object");
    const auto n = get_field<long long>(doc, "n");
    if (n < 0) throw Error(ErrorCode::Parse, "field 'n' must be nonnegative");
    const auto damped_raw = get_field<std::vector<long long>>(doc, "damped");
    const auto edges_raw = get_field<std::vector<std::vector<long long>>>(doc, "edges");

    std::vector<NodeId> damped;
    for (long long d : damped_raw) {
        if (d < 0 || d >= n) throw Error(ErrorCode::NodeOutOfRange, "damped node " + std::to_string(d));
        damped.push_back(static_cast<NodeId>(d));
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t k = 0; k < edges_raw.size(); ++k) {
        const auto& e = edges_raw[k];
        if (e.size() != 2) throw Error(ErrorCode::Parse, "edges[" + std::to_string(k) + "] must have two entries");
        for (long long x : e) {
            if (x < 0 || x >= n) {
                throw Error(ErrorCode::NodeOutOfRange, "edges[" + std::to_string(k) + "] node " + std::to_string(x));
            }
        }
        edges.emplace_back(static_cast<NodeId>(e[0]), static_cast<NodeId>(e[1]));
    }
    GraphFile out{DampingGraph::build(static_cast<std::size_t>(n), damped, edges), std::nullopt};
    if (doc.contains("params") && !doc.at("params").is_null()) out.params = params_from_object(doc.at("params"), out.graph);
    return out;
}

json params_to_json(const SystemParams& params) {
    auto list = [](const std::vector<Rational>& xs) {
        json arr = json::array();
        for (const auto& x : xs) arr.push_back(rational_to_json(x));
        return arr;
    };
    return json{{"mass", list(params.mass)},
                {"damping", list(params.damping)},
                {"stiffness", list(params.stiffness)},
                {"force", list(params.force)}};
}

std::string write_graph_json(const DampingGraph& g, const std::optional<SystemParams>& params) {
    json doc;
    doc["n"] = g.node_count();
    doc["damped"] = g.damped_nodes();
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    doc["edges"] = std::move(edges);
    if (params) doc["params"] = params_to_json(*params);
    return doc.dump(2) + "\n";
}

SystemParams parse_params_json(std::string_view text, const DampingGraph& g) {
    const json doc = parse_json(text);
    if (doc.is_object() && doc.contains("params")) return params_from_object(doc.at("params"), g);
    return params_from_object(doc, g);
}

Coloring parse_coloring_json(std::string_view text) {
    const json doc = parse_json(text);
    const json& arr = doc.is_object() && doc.contains("colors") ? doc.at("colors") : doc;
    if (!arr.is_array()) throw Error(ErrorCode::Parse, "expected {\"colors\": [...]}");
    Coloring c;
    for (const auto& x : arr) {
        if (!x.is_string()) throw Error(ErrorCode::Parse, "colors must be strings");
        c.push_back(color_from_string(x.get<std::string>()));
    }
    return c;
}

json coloring_to_json(const Coloring& c) {
    json arr = json::array();
    for (Color x : c) arr.push_back(std::string(to_string(x)));
    return json{{"colors", arr}};
}

std::string write_dot(const DampingGraph& g, const std::optional<SystemParams>& params) {
    std::ostringstream out;
    out << "graph pigas {\n";
    out << "  graph [nodes=" << g.node_count() << "];\n";
    for (NodeId i = 0; i < g.node_count(); ++i) {
        out << "  " << i << " [damped=" << (g.is_damped(i) ? "true" : "false");
        out << ", style=filled, fillcolor=" << (g.is_damped(i) ? "black, fontcolor=white" : "white");
        if (params) {
            out << ", mass=\"" << format_rational(params->mass[i]) << "\", damping=\""
                << format_rational(params->damping[i]) << "\", force=\"" << format_rational(params->force[i]) << "\"";
        }
        out << "];\n";
    }
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const Edge& e = g.edge(k);
        out << "  " << e.u << " -- " << e.v;
        if (params) out << " [stiffness=\"" << format_rational(params->stiffness[k]) << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

GraphFile parse_dot(std::string_view text) {
    static const std::regex header(R"(^\s*graph\s*\[\s*nodes\s*=\s*(\d+)\s*\]\s*;?\s*$)");
    static const std::regex node(R"(^\s*(\d+)\s*\[(.*)\]\s*;?\s*$)");
    static const std::regex edge(R"(^\s*(\d+)\s*--\s*(\d+)\s*(\[(.*)\])?\s*;?\s*$)");
    static const std::regex attr(R"((\w+)\s*=\s*("[^"]*"|[^,\s\]]+))");

    auto attributes = [&](const std::string& body) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto it = std::sregex_iterator(body.begin(), body.end(), attr); it != std::sregex_iterator(); ++it) {
            std::string value = (*it)[2];
            if (value.size() >= 2 && value.front() == '"') value = value.substr(1, value.size() - 2);
            out.emplace_back((*it)[1], value);
        }
        return out;
    };

    std::size_t n = 0;
    std::vector<NodeId> damped;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::string> mass, damping, force, stiffness;
    bool has_params = false;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::smatch m;
    while (std::getline(in, line)) {
        ++line_no;
        if (std::regex_match(line, m, header)) {
            n = std::stoul(m[1]);
            mass.assign(n, "");
            damping.assign(n, "");
            force.assign(n, "");
        } else if (std::regex_match(line, m, edge)) {
            edges.emplace_back(static_cast<NodeId>(std::stoul(m[1])), static_cast<NodeId>(std::stoul(m[2])));
            std::string w;
            for (const auto& [k, v] : attributes(m[4])) {
                if (k == "stiffness") w = v;
            }
            stiffness.push_back(w);
        } else if (std::regex_match(line, m, node)) {
            const auto i = std::stoul(m[1]);
            if (i >= n) throw Error(ErrorCode::NodeOutOfRange, "line " + std::to_string(line_no));
            for (const auto& [k, v] : attributes(m[2])) {
                if (k == "damped" && v == "true") damped.push_back(static_cast<NodeId>(i));
                if (k == "mass") mass[i] = v, has_params = true;
                if (k == "damping") damping[i] = v;
                if (k == "force") force[i] = v;
            }
        } else if (line.find_first_not_of(" \t\r{}") != std::string::npos && line.find("graph") == std::string::npos) {
            throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unrecognised DOT statement");
        }
    }
    GraphFile out{DampingGraph::build(n, damped, edges), std::nullopt};
    if (has_params) {
        SystemParams p;
        auto convert = [&](const std::vector<std::string>& xs, const char* key) {
            std::vector<Rational> r;
            for (const auto& x : xs) {
                if (x.empty()) throw Error(ErrorCode::Parse, std::string("missing ") + key + " attribute");
                r.push_back(parse_rational(x));
            }
            return r;
        };
        p.mass = convert(mass, "mass");
        p.damping = convert(damping, "damping");
        p.force = convert(force, "force");
        // Edge order in the file matches the canonical order of build().
        std::vector<Rational> w(edges.size());
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto idx = out.graph.edge_index(edges[k].first, edges[k].second);
            if (stiffness[k].empty()) throw Error(ErrorCode::Parse, "missing stiffness attribute");
            w[*idx] = parse_rational(stiffness[k]);
        }
        p.stiffness = std::move(w);
        p.validate(out.graph);
        out.params = std::move(p);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << contents;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

GraphFile load_graph(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const auto ext = path.extension().string();
    if (ext == ".dot" || ext == ".gv") return parse_dot(text);
    return parse_graph_json(text);
}

}  // namespace pigas
