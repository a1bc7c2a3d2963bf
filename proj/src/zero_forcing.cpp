#include "pigas/zero_forcing.hpp"

#include <algorithm>

namespace pigas {

std::vector<NodeId> ForcingLog::derived_set() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < black.size(); ++i) {
        if (black[i]) out.push_back(i);
    }
    return out;
}

bool ForcingLog::all_black() const {
    return std::all_of(black.begin(), black.end(), [](bool b) { return b; });
}

ForcingLog zero_forcing_run(const std::vector<std::vector<NodeId>>& adjacency, std::vector<bool> black) {
    ForcingLog log;
    const NodeId n = static_cast<NodeId>(adjacency.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId b = 0; b < n; ++b) {
            if (!black[b]) continue;
            NodeId target = n;
            int white = 0;
            for (NodeId j : adjacency[b]) {
                if (!black[j]) {
                    target = j;
                    if (++white > 1) break;
                }
            }
            if (white == 1) {
                black[target] = true;
                log.forces.emplace_back(b, target);
                changed = true;
            }
        }
    }
    log.black = std::move(black);
    return log;
}

ForcingLog zero_forcing_run(const DampingGraph& g) {
    std::vector<bool> black(g.node_count(), false);
    for (NodeId d : g.damped_nodes()) black[d] = true;
    return zero_forcing_run(g.adjacency(), std::move(black));
}

bool is_zero_forcing_set(const DampingGraph& g) {
    return zero_forcing_run(g).all_black();
}

}  // namespace pigas
