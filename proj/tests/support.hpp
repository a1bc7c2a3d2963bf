#pragma once

#include "pigas/graph.hpp"
#include "pigas/io.hpp"
#include "pigas/sat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace testing {

using pigas::DampingGraph;
using pigas::NodeId;
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

inline std::string fixture_path(const std::string& name) { return std::string(PIGAS_FIXTURE_DIR) + "/" + name; }

inline pigas::GraphFile fixture(const std::string& name) { return pigas::load_graph(fixture_path(name)); }

inline DampingGraph make(std::size_t n, std::vector<NodeId> damped, EdgeList edges) {
    return DampingGraph::build(n, damped, edges);
}

inline EdgeList cycle_edges(std::size_t n) {
    EdgeList e;
    for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
    return e;
}

inline DampingGraph alternating_cycle(std::size_t n) {
    std::vector<NodeId> damped;
    for (NodeId i = 0; i < n; i += 2) damped.push_back(i);
    return make(n, damped, cycle_edges(n));
}

// Random labelled tree by attaching each node to a uniformly chosen earlier one,
// then relabelled by a random permutation.
inline EdgeList random_tree(std::size_t n, std::mt19937_64& rng) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    EdgeList e;
    for (NodeId i = 1; i < n; ++i) {
        const NodeId j = std::uniform_int_distribution<NodeId>(0, i - 1)(rng);
        e.emplace_back(perm[i], perm[j]);
    }
    return e;
}

inline EdgeList random_connected(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
    EdgeList e = random_tree(n, rng);
    std::set<std::pair<NodeId, NodeId>> have;
    for (auto [a, b] : e) have.emplace(std::min(a, b), std::max(a, b));
    const std::size_t max_edges = n * (n - 1) / 2;
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t k = 0; k < extra && have.size() < max_edges;) {
        const NodeId a = pick(rng);
        const NodeId b = pick(rng);
        if (a == b || !have.emplace(std::min(a, b), std::max(a, b)).second) continue;
        e.emplace_back(a, b);
        ++k;
    }
    return e;
}

inline std::vector<NodeId> random_damped(std::size_t n, double p, std::mt19937_64& rng) {
    std::vector<NodeId> d;
    std::bernoulli_distribution coin(p);
    for (NodeId i = 0; i < n; ++i) {
        if (coin(rng)) d.push_back(i);
    }
    if (d.empty()) d.push_back(std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(n - 1))(rng));
    return d;
}

inline DampingGraph random_graph(std::size_t n, std::size_t extra, double p_damped, std::mt19937_64& rng) {
    return DampingGraph::build(n, random_damped(n, p_damped, rng), random_connected(n, extra, rng));
}

// Every connected simple graph on up to seven nodes, one per isomorphism class.
inline std::vector<std::pair<std::size_t, EdgeList>> connected_graph_atlas() {
    std::ifstream in(fixture_path("connected_graphs_upto7.txt"));
    std::vector<std::pair<std::size_t, EdgeList>> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::size_t n = 0;
        ls >> n;
        EdgeList e;
        std::string tok;
        while (ls >> tok) {
            const auto dash = tok.find('-');
            e.emplace_back(static_cast<NodeId>(std::stoul(tok.substr(0, dash))),
                           static_cast<NodeId>(std::stoul(tok.substr(dash + 1))));
        }
        out.emplace_back(n, std::move(e));
    }
    return out;
}

inline std::vector<NodeId> subset(std::size_t n, std::uint32_t mask) {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < n; ++i) {
        if (mask >> i & 1) out.push_back(i);
    }
    return out;
}

// Rank over Q of a small integer matrix by fraction-free elimination.
inline std::size_t integer_rank(std::vector<std::vector<long long>> a) {
    std::size_t rank = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const long long f = a[r][c];
            const long long p = a[rank][c];
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * p - a[rank][j] * f;
            long long gcd = 0;
            for (long long x : a[r]) gcd = std::gcd(gcd, x);
            if (gcd > 1) {
                for (long long& x : a[r]) x /= gcd;
            }
        }
        ++rank;
    }
    return rank;
}

inline std::optional<std::vector<bool>> truth_table_sat(const pigas::CnfFormula& f) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
        std::vector<bool> x(f.num_vars);
        for (std::size_t i = 0; i < f.num_vars; ++i) x[i] = bits >> i & 1;
        if (f.satisfied_by(x)) return x;
    }
    return std::nullopt;
}

inline bool dpll(std::vector<std::vector<int>> clauses) {
    for (;;) {
        if (clauses.empty()) return true;
        int unit = 0;
        for (const auto& c : clauses) {
            if (c.empty()) return false;
            if (c.size() == 1) unit = c[0];
        }
        if (unit == 0) break;
        std::vector<std::vector<int>> next;
        for (const auto& c : clauses) {
            if (std::find(c.begin(), c.end(), unit) != c.end()) continue;
            std::vector<int> reduced;
            for (int l : c) {
                if (l != -unit) reduced.push_back(l);
            }
            next.push_back(std::move(reduced));
        }
        clauses = std::move(next);
    }
    const int lit = clauses[0][0];
    for (int choice : {lit, -lit}) {
        auto with = clauses;
        with.push_back({choice});
        if (dpll(with)) return true;
    }
    return false;
}

inline pigas::CnfFormula random_cnf(std::size_t n, std::size_t p, std::size_t width, std::mt19937_64& rng) {
    pigas::CnfFormula f;
    f.num_vars = n;
    std::uniform_int_distribution<int> var(1, static_cast<int>(n));
    std::bernoulli_distribution sign(0.5);
    std::uniform_int_distribution<std::size_t> len(1, width);
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<int> c;
        const std::size_t k = len(rng);
        for (std::size_t t = 0; t < k; ++t) c.push_back(sign(rng) ? var(rng) : -var(rng));
        f.clauses.push_back(std::move(c));
    }
    return f;
}

// -max Re(lambda) of the full state matrix, zero eigenvalues (cycle space) dropped.
inline double slowest_decay(const DampingGraph& g, const pigas::SystemParams& p) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + m, n + m);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = -pigas::to_double(p.damping[i] / p.mass[i]);
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto [u, v] = g.edges()[k];
        const double w = pigas::to_double(p.stiffness[k]);
        a(u, n + k) -= w;
        a(v, n + k) += w;
        a(n + k, u) += 1.0 / pigas::to_double(p.mass[u]);
        a(n + k, v) -= 1.0 / pigas::to_double(p.mass[v]);
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    double worst = -1e300;
    for (const std::complex<double>& z : solver.eigenvalues()) {
        if (std::abs(z) > 1e-9) worst = std::max(worst, z.real());
    }
    return -worst;
}

}  // namespace testing
