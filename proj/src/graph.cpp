#include "pigas/graph.hpp"

#include "pigas/error.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

namespace pigas {

DampingGraph DampingGraph::build(std::size_t n, std::span<const NodeId> damped,
                                 std::span<const std::pair<NodeId, NodeId>> edges) {
    DampingGraph g;
    g.adjacency_.resize(n);
    g.damped_.assign(n, false);

    for (NodeId d : damped) {
        if (d >= n) throw Error(ErrorCode::NodeOutOfRange, "damped node " + std::to_string(d) + " >= n = " + std::to_string(n));
        g.damped_[d] = true;
    }

    std::set<std::pair<NodeId, NodeId>> seen;
    g.edges_.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n)
            throw Error(ErrorCode::NodeOutOfRange,
                        "edge (" + std::to_string(a) + "," + std::to_string(b) + ") with n = " + std::to_string(n));
        if (a == b) throw Error(ErrorCode::SelfLoop, "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        const Edge e{std::min(a, b), std::max(a, b)};
        if (!seen.emplace(e.u, e.v).second)
            throw Error(ErrorCode::DuplicateEdge, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        g.edges_.push_back(e);
    }

    std::vector<std::vector<std::pair<NodeId, std::size_t>>> incident(n);
    for (std::size_t k = 0; k < g.edges_.size(); ++k) {
        incident[g.edges_[k].u].emplace_back(g.edges_[k].v, k);
        incident[g.edges_[k].v].emplace_back(g.edges_[k].u, k);
    }
    g.incident_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(incident[i].begin(), incident[i].end());
        for (const auto& [j, k] : incident[i]) {
            g.adjacency_[i].push_back(j);
            g.incident_[i].push_back(k);
        }
    }

    for (NodeId i = 0; i < n; ++i) (g.damped_[i] ? g.damped_list_ : g.undamped_list_).push_back(i);

    if (g.damped_list_.empty()) throw Error(ErrorCode::NoDampedNode, "the damped set must be nonempty");
    if (!is_connected(g.adjacency_)) throw Error(ErrorCode::Disconnected, "graph is not connected");
    return g;
}

std::optional<std::size_t> DampingGraph::edge_index(NodeId a, NodeId b) const {
    if (a >= node_count() || b >= node_count()) return std::nullopt;
    const auto& nb = adjacency_[a];
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return incident_[a][static_cast<std::size_t>(it - nb.begin())];
}

DampingGraph DampingGraph::with_damped(std::span<const NodeId> damped) const {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(edges_.size());
    for (const Edge& e : edges_) pairs.emplace_back(e.u, e.v);
    return build(node_count(), damped, pairs);
}

RationalMatrix IncidenceMatrix::to_rational() const {
    RationalMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) r(i, k) = (*this)(i, k);
    return r;
}

SystemParams SystemParams::nominal(const DampingGraph& g) {
    SystemParams p;
    p.mass.assign(g.node_count(), 1);
    p.damping.assign(g.node_count(), 0);
    for (NodeId d : g.damped_nodes()) p.damping[d] = 1;
    p.stiffness.assign(g.edge_count(), 1);
    p.force.assign(g.node_count(), 0);
    return p;
}

void SystemParams::validate(const DampingGraph& g) const {
    const auto n = g.node_count();
    if (mass.size() != n || damping.size() != n || force.size() != n)
        throw Error(ErrorCode::InvalidParams, "mass/damping/force must have one entry per node (" + std::to_string(n) + ")");
    if (stiffness.size() != g.edge_count())
        throw Error(ErrorCode::InvalidParams,
                    "stiffness must have one entry per edge (" + std::to_string(g.edge_count()) + ")");
    bool any_damping = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (mass[i] <= 0) throw Error(ErrorCode::InvalidParams, "mass[" + std::to_string(i) + "] must be positive");
        if (damping[i] < 0)
            throw Error(ErrorCode::InvalidParams, "damping[" + std::to_string(i) + "] must be nonnegative");
        any_damping = any_damping || damping[i] > 0;
    }
    for (std::size_t k = 0; k < stiffness.size(); ++k)
        if (stiffness[k] <= 0)
            throw Error(ErrorCode::NonpositiveWeight, "stiffness[" + std::to_string(k) + "] must be positive");
    if (!any_damping) throw Error(ErrorCode::AllUndamped, "at least one node needs positive damping");
}

IncidenceMatrix incidence(const DampingGraph& g) {
    IncidenceMatrix b(g.node_count(), g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        b(g.edge(k).u, k) = 1;
        b(g.edge(k).v, k) = -1;
    }
    return b;
}

RationalMatrix laplacian(const DampingGraph& g, std::span<const Rational> weights) {
    if (weights.size() != g.edge_count())
        throw Error(ErrorCode::InvalidParams, "expected " + std::to_string(g.edge_count()) + " edge weights");
    RationalMatrix l(g.node_count(), g.node_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const Rational& w = weights[k];
        if (w <= 0) throw Error(ErrorCode::NonpositiveWeight, "weight of edge " + std::to_string(k) + " is not positive");
        const auto [u, v] = g.edge(k);
        l(u, u) += w;
        l(v, v) += w;
        l(u, v) -= w;
        l(v, u) -= w;
    }
    return l;
}

SpanningTree spanning_tree_and_chords(const DampingGraph& g) {
    std::vector<bool> in_tree(g.edge_count(), false);
    std::vector<bool> visited(g.node_count(), false);
    std::queue<NodeId> frontier;
    visited[0] = true;
    frontier.push(0);
    while (!frontier.empty()) {
        const NodeId i = frontier.front();
        frontier.pop();
        const auto nb = g.neighbors(i);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            const NodeId j = nb[a];
            if (visited[j]) continue;
            visited[j] = true;
            in_tree[g.incident_edges(i)[a]] = true;
            frontier.push(j);
        }
    }
    SpanningTree t;
    for (std::size_t k = 0; k < g.edge_count(); ++k) (in_tree[k] ? t.tree_edges : t.chord_edges).push_back(k);
    return t;
}

RationalMatrix kron_reduce(const RationalMatrix& lap, std::span<const NodeId> damped) {
    const std::size_t n = lap.rows();
    std::vector<bool> is_d(n, false);
    for (NodeId d : damped) {
        if (d >= n) throw Error(ErrorCode::NodeOutOfRange, "damped id " + std::to_string(d) + " out of range");
        is_d[d] = true;
    }
    std::vector<std::size_t> dd, uu;
    for (std::size_t i = 0; i < n; ++i) (is_d[i] ? dd : uu).push_back(i);

    const std::size_t nd = dd.size(), nu = uu.size();
    RationalMatrix out(nu, nu);
    if (nu == 0) return out;

    // Augmented system [L_dd | L_du], eliminated to [I | L_dd^{-1} L_du].
    RationalMatrix aug(nd, nd + nu);
    for (std::size_t a = 0; a < nd; ++a) {
        for (std::size_t b = 0; b < nd; ++b) aug(a, b) = lap(dd[a], dd[b]);
        for (std::size_t b = 0; b < nu; ++b) aug(a, nd + b) = lap(dd[a], uu[b]);
    }
    for (std::size_t col = 0; col < nd; ++col) {
        std::size_t pivot = col;
        while (pivot < nd && aug(pivot, col) == 0) ++pivot;
        if (pivot == nd) throw Error(ErrorCode::SingularBlock, "damped block of the Laplacian is singular");
        if (pivot != col)
            for (std::size_t j = 0; j < aug.cols(); ++j) std::swap(aug(pivot, j), aug(col, j));
        const Rational inv = 1 / aug(col, col);
        for (std::size_t j = col; j < aug.cols(); ++j) aug(col, j) *= inv;
        for (std::size_t i = 0; i < nd; ++i) {
            if (i == col || aug(i, col) == 0) continue;
            const Rational f = aug(i, col);
            for (std::size_t j = col; j < aug.cols(); ++j) aug(i, j) -= f * aug(col, j);
        }
    }
    for (std::size_t a = 0; a < nu; ++a) {
        for (std::size_t b = 0; b < nu; ++b) {
            Rational acc = lap(uu[a], uu[b]);
            for (std::size_t k = 0; k < nd; ++k) {
                const Rational& l = lap(uu[a], dd[k]);
                if (l != 0) acc -= l * aug(k, nd + b);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

bool is_connected(const std::vector<std::vector<NodeId>>& adjacency) {
    if (adjacency.empty()) return true;
    std::vector<bool> seen(adjacency.size(), false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const NodeId i = stack.back();
        stack.pop_back();
        for (NodeId j : adjacency[i])
            if (!seen[j]) {
                seen[j] = true;
                ++count;
                stack.push_back(j);
            }
    }
    return count == adjacency.size();
}

}  // namespace pigas
