#pragma once

#include "pigas/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pigas {

using NodeId = std::uint32_t;

/// Undirected edge stored as (min, max). The orientation fixes the incidence
/// signs: +1 at `u`, -1 at `v`.
struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A simple connected undirected graph with a nonempty set of damped nodes.
/// Immutable after construction; build() is the only way to obtain one.
class DampingGraph {
public:
    static DampingGraph build(std::size_t n, std::span<const NodeId> damped,
                              std::span<const std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t damped_count() const { return damped_list_.size(); }
    std::size_t undamped_count() const { return undamped_list_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t k) const { return edges_[k]; }
    std::optional<std::size_t> edge_index(NodeId a, NodeId b) const;

    bool is_damped(NodeId i) const { return damped_[i]; }
    const std::vector<NodeId>& damped_nodes() const { return damped_list_; }
    const std::vector<NodeId>& undamped_nodes() const { return undamped_list_; }

    /// Neighbours in ascending id order.
    std::span<const NodeId> neighbors(NodeId i) const { return adjacency_[i]; }
    const std::vector<std::vector<NodeId>>& adjacency() const { return adjacency_; }
    /// Edge indices aligned with neighbors(i).
    std::span<const std::size_t> incident_edges(NodeId i) const { return incident_[i]; }

    /// Same topology, different damped set (validated).
    DampingGraph with_damped(std::span<const NodeId> damped) const;

    friend bool operator==(const DampingGraph& a, const DampingGraph& b) {
        return a.edges_ == b.edges_ && a.damped_ == b.damped_;
    }

private:
    DampingGraph() = default;

    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<bool> damped_;
    std::vector<NodeId> damped_list_;
    std::vector<NodeId> undamped_list_;
};

/// Dense n x m integer incidence matrix.
class IncidenceMatrix {
public:
    IncidenceMatrix(std::size_t n, std::size_t m) : rows_(n), cols_(m), data_(n * m, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int operator()(std::size_t i, std::size_t k) const { return data_[i * cols_ + k]; }
    int& operator()(std::size_t i, std::size_t k) { return data_[i * cols_ + k]; }

    RationalMatrix to_rational() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<int> data_;
};

/// Scalar (r = 1) system parameters. Masses and stiffnesses are positive,
/// damping is nonnegative, force is free.
struct SystemParams {
    std::vector<Rational> mass;       // per node
    std::vector<Rational> damping;    // per node
    std::vector<Rational> stiffness;  // per edge
    std::vector<Rational> force;      // per node

    /// m = 1, r = 1 on damped nodes and 0 elsewhere, w = 1, v = 0.
    static SystemParams nominal(const DampingGraph& g);

    /// Sizes match g, m > 0, w > 0, r >= 0, and at least one r > 0.
    void validate(const DampingGraph& g) const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct SpanningTree {
    std::vector<std::size_t> tree_edges;   // edge indices
    std::vector<std::size_t> chord_edges;  // edge indices
};

IncidenceMatrix incidence(const DampingGraph& g);

/// L = B diag(w) B^T. Throws NonpositiveWeight.
RationalMatrix laplacian(const DampingGraph& g, std::span<const Rational> weights);

/// BFS from node 0 visiting neighbours in ascending id.
SpanningTree spanning_tree_and_chords(const DampingGraph& g);

/// Schur complement of L with respect to the `damped` rows/columns. The
/// result is indexed by the remaining ids in ascending order. Throws
/// SingularBlock when the damped block is singular.
RationalMatrix kron_reduce(const RationalMatrix& laplacian, std::span<const NodeId> damped);

/// Connectivity check over an arbitrary adjacency list.
bool is_connected(const std::vector<std::vector<NodeId>>& adjacency);

}  // namespace pigas
