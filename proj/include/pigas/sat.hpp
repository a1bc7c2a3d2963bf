#pragma once

#include "pigas/coloring.hpp"
#include "pigas/graph.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace pigas {

struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;  // signed 1-based literals

    bool satisfied_by(const std::vector<bool>& assignment) const;  // assignment[i] is x_(i+1)
};

/// DIMACS CNF. Comment lines and blank lines are skipped; a line starting
/// with '%' ends the input. Throws MalformedHeader, LiteralOutOfRange,
/// EmptyClause.
CnfFormula parse_dimacs(std::string_view text);

/// Node roles in the reduction graph.
struct ReductionMap {
    NodeId base = 0;
    std::vector<NodeId> neg;     // v_i^-, undamped
    std::vector<NodeId> zero;    // v_i^0, damped
    std::vector<NodeId> pos;     // v_i^+, undamped
    std::vector<NodeId> clause;  // one damped node per clause
};

/// Throws EmptyClause when the formula has no clauses.
std::pair<DampingGraph, ReductionMap> cnf_to_damping_graph(const CnfFormula& f);

/// Normalises the base node to red, then x_i = (pos_i is blue). Throws
/// NotRichlyBalanced and UnexpectedBlackVariableNode.
std::vector<bool> coloring_to_assignment(const DampingGraph& g, const ReductionMap& map, const Coloring& c,
                                         const CnfFormula& f);

struct SatOptions {
    unsigned jobs = 1;
};

/// Satisfying assignment iff the reduction graph is not PI-GAS. A formula
/// without clauses is satisfied by all-false.
std::optional<std::vector<bool>> sat_solve_via_rbc(const CnfFormula& f, const SatOptions& options = {});

}  // namespace pigas
