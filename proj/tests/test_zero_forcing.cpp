#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "pigas/coloring.hpp"
#include "pigas/zero_forcing.hpp"

using namespace pigas;
using testing::make;

namespace {

// Applies the forcing rule at a random eligible black node until none is left.
std::vector<bool> random_order_closure(const DampingGraph& g, std::mt19937_64& rng) {
    std::vector<bool> black(g.node_count(), false);
    for (NodeId d : g.damped_nodes()) black[d] = true;
    for (;;) {
        std::vector<std::pair<NodeId, NodeId>> eligible;
        for (NodeId b = 0; b < g.node_count(); ++b) {
            if (!black[b]) continue;
            std::vector<NodeId> white;
            for (NodeId j : g.neighbors(b)) {
                if (!black[j]) white.push_back(j);
            }
            if (white.size() == 1) eligible.emplace_back(b, white[0]);
        }
        if (eligible.empty()) return black;
        black[eligible[rng() % eligible.size()].second] = true;
    }
}

}  // namespace

TEST_CASE("forcing chains") {
    const auto duu = make(3, {0}, {{0, 1}, {1, 2}});
    const auto log = zero_forcing_run(duu);
    CHECK(log.all_black());
    CHECK(log.forces == std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}});
    CHECK(is_zero_forcing_set(duu));

    const auto c6 = testing::alternating_cycle(6);
    const auto l6 = zero_forcing_run(c6);
    CHECK(l6.forces.empty());
    CHECK(l6.derived_set() == std::vector<NodeId>{0, 2, 4});
    CHECK_FALSE(is_zero_forcing_set(c6));

    const auto star = make(4, {0}, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(zero_forcing_run(star).derived_set() == std::vector<NodeId>{0});
}

TEST_CASE("log entries are legal forces") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        const auto g = testing::random_graph(2 + rng() % 12, rng() % 4, 0.3, rng);
        const auto log = zero_forcing_run(g);
        std::vector<bool> black(g.node_count(), false);
        for (NodeId d : g.damped_nodes()) black[d] = true;
        for (auto [b, w] : log.forces) {
            REQUIRE(black[b]);
            REQUIRE_FALSE(black[w]);
            int white = 0;
            for (NodeId j : g.neighbors(b)) white += black[j] ? 0 : 1;
            CHECK(white == 1);
            black[w] = true;
        }
        CHECK(black == log.black);
    }
}

TEST_CASE("fixpoint does not depend on rule order") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 300; ++t) {
        const auto g = testing::random_graph(2 + rng() % 12, rng() % 5, 0.25, rng);
        const auto expected = zero_forcing_run(g).black;
        for (int r = 0; r < 3; ++r) CHECK(random_order_closure(g, rng) == expected);
    }
}

TEST_CASE("zero forcing implies no richly balanced coloring") {
    std::mt19937_64 rng(31);
    int forced = 0;
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 2 + rng() % 9;
        const auto g = testing::random_graph(n, rng() % 4, 0.3, rng);
        const auto log = zero_forcing_run(g);
        const auto u = uncolorable_set(g);
        for (NodeId d : log.derived_set()) CHECK(std::binary_search(u.begin(), u.end(), d));
        if (log.all_black()) {
            CHECK_FALSE(brute_force_rbc(g).has_value());
            ++forced;
        }
    }
    CHECK(forced > 20);
}

TEST_CASE("on trees zero forcing decides") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 2 + rng() % 11;
        const auto g = DampingGraph::build(n, testing::random_damped(n, 0.3, rng), testing::random_tree(n, rng));
        CHECK(is_zero_forcing_set(g) == !brute_force_rbc(g).has_value());
    }

    // Leaves damped, internal nodes of degree three.
    const auto cubic = make(10, {4, 5, 6, 7, 8, 9}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}, {3, 8}, {3, 9}});
    CHECK(is_zero_forcing_set(cubic) == !brute_force_rbc(cubic).has_value());
}
