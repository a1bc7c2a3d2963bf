#pragma once

#include "pigas/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pigas {

/// Declaration order is the lexicographic search order (Black < Blue < Red).
enum class Color : std::uint8_t { Black, Blue, Red, White };

using Coloring = std::vector<Color>;

/// Values in {-1, 0, +1}; any other value is read by its sign.
using SignVector = std::vector<int>;

std::string_view to_string(Color c);
Color color_from_string(std::string_view name);

enum class BalanceClass : std::uint8_t {
    PoorlyBalanced,
    RichlyBalanced,
    Unbalanced,
    PoorlyIndefinite,
    RichlyIndefinite,
    BlackForcing,
    ColorForcing,
};

std::string_view to_string(BalanceClass c);

struct NeighborCounts {
    std::size_t black = 0;
    std::size_t white = 0;
    std::size_t blue = 0;
    std::size_t red = 0;
};

NeighborCounts count_neighbors(std::span<const NodeId> neighbors, const Coloring& c);

/// Black-node type from its neighbour colour counts, red/blue symmetric.
BalanceClass classify_counts(const NeighborCounts& counts);

/// Throws NotBlack when c[i] is not Black.
BalanceClass classify_black(const DampingGraph& g, const Coloring& c, NodeId i);

/// Complete coloring with every damped node black: no unbalanced black node
/// and at least one richly balanced one. Throws IncompleteColoring on White.
bool is_richly_balanced(const DampingGraph& g, const Coloring& c);

/// No black node is Unbalanced (the all-black coloring counts as balanced).
bool is_balanced(const DampingGraph& g, const Coloring& c);

struct SearchOptions {
    std::size_t max_undamped = 20;  // refuse 3^(n_u) beyond this
    unsigned jobs = 1;
};

/// First richly balanced coloring in lexicographic order over the undamped
/// nodes (ascending id, most significant first), or none.
std::optional<Coloring> brute_force_rbc(const DampingGraph& g, const SearchOptions& options = {});

/// Nodes that are black in every balanced complete coloring, ascending.
std::vector<NodeId> uncolorable_set(const DampingGraph& g, const SearchOptions& options = {});

/// Nonzero, zero on damped nodes, and each zero node has a negative neighbour
/// iff it has a positive one.
bool sign_vector_check(const DampingGraph& g, std::span<const int> s);

/// Black -> 0, Red -> +1, Blue -> -1.
SignVector coloring_to_sign_vector(const Coloring& c);

/// Red -> +dist, Blue -> -dist, Black -> 0, where dist is the BFS distance to
/// the nearest black node. Throws NotRichlyBalanced.
std::vector<long long> coloring_to_vector(const DampingGraph& g, const Coloring& c);

Coloring swap_red_blue(Coloring c);

}  // namespace pigas
