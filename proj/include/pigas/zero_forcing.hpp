#pragma once

#include "pigas/graph.hpp"

#include <utility>
#include <vector>

namespace pigas {

struct ForcingLog {
    std::vector<std::pair<NodeId, NodeId>> forces;  // (forcer, forced) in application order
    std::vector<bool> black;                        // final black set

    std::vector<NodeId> derived_set() const;
    bool all_black() const;
};

/// Black forcing rule from the damped set until no black node has exactly
/// one white neighbour. Each round scans black nodes in ascending id.
ForcingLog zero_forcing_run(const DampingGraph& g);

/// Same fixpoint over an arbitrary adjacency list and initial black set.
ForcingLog zero_forcing_run(const std::vector<std::vector<NodeId>>& adjacency, std::vector<bool> black);

bool is_zero_forcing_set(const DampingGraph& g);

}  // namespace pigas
