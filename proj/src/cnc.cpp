#include "pigas/cnc.hpp"

#include "pigas/error.hpp"
#include "pigas/zero_forcing.hpp"
#include "first_index.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pigas {

ReducedGraph reduce_graph(const DampingGraph& g) {
    ReducedGraph rg;
    rg.black = zero_forcing_run(g).black;
    const std::size_t n = g.node_count();
    rg.adjacency.resize(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j : g.neighbors(i)) {
            if (!(rg.black[i] && rg.black[j])) rg.adjacency[i].push_back(j);
        }
    }

    std::vector<bool> seen(n, false);
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<NodeId> comp;
        std::deque<NodeId> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            const NodeId i = queue.front();
            queue.pop_front();
            comp.push_back(i);
            for (NodeId j : rg.adjacency[i]) {
                if (!seen[j]) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        rg.components.push_back(std::move(comp));
    }
    return rg;
}

namespace {

std::vector<NodeId> chord_nodes_from_root(const ReducedGraph& rg, std::span<const NodeId> component, NodeId root) {
    const std::size_t n = rg.node_count();
    constexpr NodeId no_parent = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> parent(n, no_parent);
    std::vector<bool> seen(n, false);
    std::deque<NodeId> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
        const NodeId i = queue.front();
        queue.pop_front();
        for (NodeId j : rg.adjacency[i]) {
            if (!seen[j]) {
                seen[j] = true;
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }

    std::vector<bool> chosen(n, false);
    for (NodeId i : component) {
        for (NodeId j : rg.adjacency[i]) {
            if (j <= i || parent[j] == i || parent[i] == j) continue;
            if (!rg.black[i]) chosen[i] = true;
            if (!rg.black[j]) chosen[j] = true;
        }
    }
    std::vector<NodeId> out;
    for (NodeId i : component) {
        if (chosen[i]) out.push_back(i);
    }
    return out;
}

}  // namespace

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), NodeId{0}); }

    NodeId find(NodeId x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    bool unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<NodeId> parent_;
};

// Cycles left among edges with an endpoint outside `cut`.
std::size_t open_cycles(const ReducedGraph& rg, std::span<const NodeId> component, const std::vector<bool>& cut) {
    DisjointSets sets(rg.node_count());
    std::size_t cycles = 0;
    for (NodeId i : component) {
        for (NodeId j : rg.adjacency[i]) {
            if (j < i || (cut[i] && cut[j])) continue;
            if (!sets.unite(i, j)) ++cycles;
        }
    }
    return cycles;
}

// Spanning tree that takes edges leaving `cut` first; chords then lie inside it.
std::vector<NodeId> chord_nodes_from_cut(const ReducedGraph& rg, std::span<const NodeId> component,
                                         const std::vector<bool>& cut) {
    DisjointSets sets(rg.node_count());
    std::vector<bool> chosen(rg.node_count(), false);
    for (int pass = 0; pass < 2; ++pass) {
        for (NodeId i : component) {
            for (NodeId j : rg.adjacency[i]) {
                if (j < i || (cut[i] && cut[j]) != (pass == 1)) continue;
                if (sets.unite(i, j)) continue;
                if (!rg.black[i]) chosen[i] = true;
                if (!rg.black[j]) chosen[j] = true;
            }
        }
    }
    std::vector<NodeId> out;
    for (NodeId i : component) {
        if (chosen[i]) out.push_back(i);
    }
    return out;
}

// Adds the undamped node that removes the most cycles until none are left.
std::vector<NodeId> greedy_cut_chord_nodes(const ReducedGraph& rg, std::span<const NodeId> component) {
    std::vector<bool> cut(rg.node_count(), false);
    for (NodeId i : component) cut[i] = rg.black[i];
    for (std::size_t left = open_cycles(rg, component, cut); left > 0;) {
        NodeId pick = 0;
        std::size_t best = left + 1;
        for (NodeId x : component) {
            if (cut[x]) continue;
            cut[x] = true;
            const std::size_t c = open_cycles(rg, component, cut);
            cut[x] = false;
            if (c < best) {
                best = c;
                pick = x;
            }
        }
        cut[pick] = true;
        left = best;
    }
    return chord_nodes_from_cut(rg, component, cut);
}

}  // namespace

std::vector<NodeId> select_chord_nodes(const ReducedGraph& rg, std::span<const NodeId> component) {
    if (component.empty()) return {};
    std::optional<std::vector<NodeId>> best;
    for (NodeId r : component) {
        if (!rg.black[r]) continue;
        auto nodes = chord_nodes_from_root(rg, component, r);
        if (!best || nodes.size() < best->size()) best = std::move(nodes);
    }
    if (!best) best = chord_nodes_from_root(rg, component, component.front());
    if (!best->empty()) {
        auto nodes = greedy_cut_chord_nodes(rg, component);
        if (nodes.size() < best->size()) best = std::move(nodes);
    }
    return *best;
}

Coloring propagate_forcing(const std::vector<std::vector<NodeId>>& adjacency, std::span<const NodeId> nodes,
                           Coloring c) {
    for (;;) {
        bool applied = false;
        for (NodeId b : nodes) {
            if (c[b] != Color::Black) continue;
            const auto k = count_neighbors(adjacency[b], c);
            if (k.white != 1) continue;
            const bool blue = k.blue > 0;
            const bool red = k.red > 0;
            if (blue && red) continue;
            const auto w = *std::find_if(adjacency[b].begin(), adjacency[b].end(),
                                         [&](NodeId j) { return c[j] == Color::White; });
            if (!blue && !red) {
                c[w] = Color::Black;
            } else {
                c[w] = red ? Color::Blue : Color::Red;
            }
            applied = true;
            break;
        }
        if (!applied) return c;
    }
}

Coloring forest_coloring(const std::vector<std::vector<NodeId>>& adjacency, Coloring c) {
    const std::size_t n = adjacency.size();
    auto in_forest = [&](NodeId i, NodeId j) {
        const Color a = c[i];
        const Color b = c[j];
        if (a == Color::Red || a == Color::Blue || b == Color::Red || b == Color::Blue) return false;
        if (a == Color::Black && b == Color::Black) return false;
        if (a == Color::White && b == Color::White) return true;
        const NodeId black = a == Color::Black ? i : j;
        return classify_counts(count_neighbors(adjacency[black], c)) != BalanceClass::RichlyBalanced;
    };

    // Forest neighbours, decided against the propagated coloring before any
    // white node is coloured.
    std::vector<std::vector<NodeId>> forest(n);
    for (NodeId i = 0; i < n; ++i) {
        if (c[i] != Color::White && c[i] != Color::Black) continue;
        for (NodeId j : adjacency[i]) {
            if (in_forest(i, j)) forest[i].push_back(j);
        }
    }
    for (NodeId i = 0; i < n; ++i) {
        if (c[i] != Color::Black || forest[i].size() != 1) continue;
        throw Error(ErrorCode::MalformedForest, "black node " + std::to_string(i) + " has exactly one white neighbour");
    }

    constexpr NodeId no_parent = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> parent(n, no_parent);
    std::vector<bool> seen(n, false);
    for (NodeId root = 0; root < n; ++root) {
        if (seen[root] || c[root] != Color::White) continue;
        c[root] = Color::Red;
        seen[root] = true;
        std::deque<NodeId> queue{root};
        while (!queue.empty()) {
            const NodeId i = queue.front();
            queue.pop_front();
            for (NodeId j : forest[i]) {
                if (j == parent[i]) continue;
                if (seen[j]) throw Error(ErrorCode::MalformedForest, "cycle through node " + std::to_string(j));
                seen[j] = true;
                parent[j] = i;
                if (c[j] == Color::White) {
                    // The parent is black here only when j hangs off a black
                    // node, whose own parent is white and already coloured.
                    const Color ref = c[i] == Color::Black ? c[parent[i]] : c[i];
                    c[j] = ref == Color::Red ? Color::Blue : Color::Red;
                }
                queue.push_back(j);
            }
        }
    }
    return c;
}

namespace {

struct ComponentPlan {
    std::vector<NodeId> nodes;
    std::vector<NodeId> chords;
    std::uint64_t total = 1;
};

Coloring initial_coloring(const ReducedGraph& rg, const ComponentPlan& plan, std::uint64_t index) {
    Coloring c(rg.node_count(), Color::Black);
    for (NodeId i : plan.nodes) c[i] = rg.black[i] ? Color::Black : Color::White;
    for (std::size_t k = plan.chords.size(); k-- > 0;) {
        c[plan.chords[k]] = static_cast<Color>(index % 3);
        index /= 3;
    }
    return c;
}

bool successful(const ReducedGraph& rg, const ComponentPlan& plan, const Coloring& c) {
    bool non_black = false;
    for (NodeId i : plan.nodes) {
        if (c[i] != Color::Black) {
            non_black = true;
            continue;
        }
        if (classify_counts(count_neighbors(rg.adjacency[i], c)) == BalanceClass::Unbalanced) return false;
    }
    return non_black;
}

}  // namespace

CncResult cnc_decide(const DampingGraph& g, const CncOptions& options) {
    const ReducedGraph rg = reduce_graph(g);
    CncResult result;

    std::vector<ComponentPlan> plans;
    for (const auto& comp : rg.components) {
        ComponentPlan plan;
        plan.nodes = comp;
        plan.chords = select_chord_nodes(rg, comp);
        if (plan.chords.size() > 40) throw Error(ErrorCode::SizeGuard, "too many chord nodes");
        for (std::size_t k = 0; k < plan.chords.size(); ++k) plan.total *= 3;
        result.chord_nodes.insert(result.chord_nodes.end(), plan.chords.begin(), plan.chords.end());
        plans.push_back(std::move(plan));
    }
    std::sort(result.chord_nodes.begin(), result.chord_nodes.end());

    for (const auto& plan : plans) {
        const auto hit = detail::first_index(plan.total, options.jobs, [&](std::uint64_t idx) {
            const Coloring c = propagate_forcing(rg.adjacency, plan.nodes, initial_coloring(rg, plan, idx));
            return successful(rg, plan, c);
        });
        if (!hit) {
            result.combinations_tried += plan.total;
            continue;
        }
        result.combinations_tried += *hit + 1;
        const Coloring derived = propagate_forcing(rg.adjacency, plan.nodes, initial_coloring(rg, plan, *hit));
        Coloring witness = forest_coloring(rg.adjacency, derived);
        if (!is_richly_balanced(g, witness)) throw std::logic_error("completed chord coloring is not richly balanced");
        result.pigas = false;
        result.witness = std::move(witness);
        return result;
    }
    return result;
}

}  // namespace pigas
