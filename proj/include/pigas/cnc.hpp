#pragma once

#include "pigas/coloring.hpp"
#include "pigas/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pigas {

/// G after zero forcing with every edge between two derived (black) nodes
/// deleted. May be disconnected.
struct ReducedGraph {
    std::vector<bool> black;                      // derived set D(G)
    std::vector<std::vector<NodeId>> adjacency;   // ascending neighbours
    std::vector<std::vector<NodeId>> components;  // ascending ids, ordered by smallest id

    std::size_t node_count() const { return adjacency.size(); }
};

ReducedGraph reduce_graph(const DampingGraph& g);

/// Non-black endpoints of the chords of a spanning tree of `component`.
/// Candidates are the BFS trees (ascending neighbours) from every black root
/// and a tree built around a greedily grown cycle-cutting node set; the
/// fewest chord nodes wins, earlier candidates on ties.
std::vector<NodeId> select_chord_nodes(const ReducedGraph& rg, std::span<const NodeId> component);

/// Black and colour forcing rules to a fixpoint, always applying at the
/// lowest-id eligible black node among `nodes`.
Coloring propagate_forcing(const std::vector<std::vector<NodeId>>& adjacency, std::span<const NodeId> nodes,
                           Coloring partial);

/// Colours the White nodes of a propagated coloring so that every
/// indefinite black node becomes richly balanced. Throws MalformedForest.
Coloring forest_coloring(const std::vector<std::vector<NodeId>>& adjacency, Coloring derived);

struct CncOptions {
    unsigned jobs = 1;
};

struct CncResult {
    bool pigas = true;
    std::optional<Coloring> witness;           // richly balanced on G when !pigas
    std::uint64_t combinations_tried = 0;      // up to and including the winner
    std::vector<NodeId> chord_nodes;           // over all components, ascending
};

CncResult cnc_decide(const DampingGraph& g, const CncOptions& options = {});

}  // namespace pigas
