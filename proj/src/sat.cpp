#include "pigas/sat.hpp"

#include "pigas/cnc.hpp"
#include "pigas/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pigas {

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
    return std::all_of(clauses.begin(), clauses.end(), [&](const std::vector<int>& clause) {
        return std::any_of(clause.begin(), clause.end(), [&](int lit) {
            const bool value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
            return lit > 0 ? value : !value;
        });
    });
}

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula f;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    long declared_clauses = 0;
    std::vector<int> current;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c') continue;
        if (line[first] == '%') break;
        std::istringstream ls(line.substr(first));
        if (line[first] == 'p') {
            std::string p;
            std::string fmt;
            long vars = -1;
            if (header || !(ls >> p >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 0 ||
                declared_clauses < 0) {
                throw Error(ErrorCode::MalformedHeader, "line " + std::to_string(line_no) + ": '" + line + "'");
            }
            f.num_vars = static_cast<std::size_t>(vars);
            header = true;
            continue;
        }
        if (!header) throw Error(ErrorCode::MalformedHeader, "clause before 'p cnf' header");
        std::string token;
        while (ls >> token) {
            long lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stol(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
            } catch (const std::exception&) {
                throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad literal '" + token + "'");
            }
            if (lit == 0) {
                if (current.empty()) throw Error(ErrorCode::EmptyClause, "line " + std::to_string(line_no));
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::labs(lit)) > f.num_vars) {
                throw Error(ErrorCode::LiteralOutOfRange,
                            "line " + std::to_string(line_no) + ": literal " + token + " with " +
                                std::to_string(f.num_vars) + " variables");
            }
            current.push_back(static_cast<int>(lit));
        }
    }
    if (!header) throw Error(ErrorCode::MalformedHeader, "missing 'p cnf' header");
    if (!current.empty()) f.clauses.push_back(std::move(current));
    if (static_cast<long>(f.clauses.size()) != declared_clauses) {
        throw Error(ErrorCode::MalformedHeader, "header declares " + std::to_string(declared_clauses) +
                                                    " clauses, found " + std::to_string(f.clauses.size()));
    }
    return f;
}

std::pair<DampingGraph, ReductionMap> cnf_to_damping_graph(const CnfFormula& f) {
    if (f.clauses.empty()) throw Error(ErrorCode::EmptyClause, "formula has no clauses");
    const std::size_t n = f.num_vars;
    ReductionMap map;
    map.base = 0;
    for (std::size_t i = 0; i < n; ++i) {
        map.neg.push_back(static_cast<NodeId>(1 + 3 * i));
        map.zero.push_back(static_cast<NodeId>(2 + 3 * i));
        map.pos.push_back(static_cast<NodeId>(3 + 3 * i));
    }
    for (std::size_t j = 0; j < f.clauses.size(); ++j) map.clause.push_back(static_cast<NodeId>(1 + 3 * n + j));

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        edges.emplace_back(i == 0 ? map.base : map.pos[i - 1], map.neg[i]);
        edges.emplace_back(map.neg[i], map.zero[i]);
        edges.emplace_back(map.zero[i], map.pos[i]);
    }
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        if (f.clauses[j].empty()) throw Error(ErrorCode::EmptyClause, "clause " + std::to_string(j + 1));
        edges.emplace_back(map.base, map.clause[j]);
        std::set<int> seen;
        for (int lit : f.clauses[j]) {
            if (static_cast<std::size_t>(std::abs(lit)) > n || lit == 0) {
                throw Error(ErrorCode::LiteralOutOfRange, "literal " + std::to_string(lit));
            }
            if (!seen.insert(lit).second) continue;
            const std::size_t i = static_cast<std::size_t>(std::abs(lit)) - 1;
            edges.emplace_back(map.clause[j], lit > 0 ? map.pos[i] : map.neg[i]);
        }
    }

    std::vector<NodeId> damped(map.zero);
    damped.insert(damped.end(), map.clause.begin(), map.clause.end());
    DampingGraph g = DampingGraph::build(1 + 3 * n + f.clauses.size(), damped, edges);
    return {std::move(g), std::move(map)};
}

std::vector<bool> coloring_to_assignment(const DampingGraph& g, const ReductionMap& map, const Coloring& c,
                                         const CnfFormula& f) {
    if (!is_richly_balanced(g, c)) throw Error(ErrorCode::NotRichlyBalanced, "coloring is not richly balanced");
    const Coloring norm = c[map.base] == Color::Blue ? swap_red_blue(c) : c;
    if (norm[map.base] == Color::Black) {
        throw Error(ErrorCode::UnexpectedBlackVariableNode, "base node is black");
    }
    std::vector<bool> x(map.pos.size());
    for (std::size_t i = 0; i < map.pos.size(); ++i) {
        if (norm[map.pos[i]] == Color::Black || norm[map.neg[i]] == Color::Black) {
            throw Error(ErrorCode::UnexpectedBlackVariableNode, "variable " + std::to_string(i + 1));
        }
        x[i] = norm[map.pos[i]] == Color::Blue;
    }
    if (!f.satisfied_by(x)) throw std::logic_error("decoded assignment does not satisfy the formula");
    return x;
}

std::optional<std::vector<bool>> sat_solve_via_rbc(const CnfFormula& f, const SatOptions& options) {
    if (f.clauses.empty()) return std::vector<bool>(f.num_vars, false);
    const auto [g, map] = cnf_to_damping_graph(f);
    const CncResult r = cnc_decide(g, CncOptions{options.jobs});
    if (r.pigas) return std::nullopt;
    return coloring_to_assignment(g, map, *r.witness, f);
}

}  // namespace pigas
