#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "pigas/cnc.hpp"
#include "pigas/coloring.hpp"
#include "pigas/error.hpp"
#include "pigas/spectral.hpp"

#include <Eigen/Eigenvalues>

using namespace pigas;
using testing::make;

namespace {

SystemParams random_params(const DampingGraph& g, std::mt19937_64& rng) {
    SystemParams p = SystemParams::nominal(g);
    for (auto& m : p.mass) m = Rational(1 + rng() % 6, 1 + rng() % 3);
    for (auto& w : p.stiffness) w = Rational(1 + rng() % 6, 1 + rng() % 3);
    for (NodeId d : g.damped_nodes()) p.damping[d] = Rational(1 + rng() % 4, 1 + rng() % 2);
    return p;
}

// Exact dim ker [C; CA; ...; CA^(2nu-1)] of the reduced pair, assembled here
// from the Laplacian blocks.
std::size_t exact_unobservable_dim(const DampingGraph& g, const SystemParams& p) {
    std::vector<NodeId> d;
    std::vector<NodeId> u;
    for (NodeId i = 0; i < g.node_count(); ++i) (p.damping[i] > 0 ? d : u).push_back(i);
    const std::size_t nu = u.size();
    if (nu == 0) return 0;
    const RationalMatrix l = laplacian(g, p.stiffness);
    const RationalMatrix lu = kron_reduce(l, d);
    RationalMatrix a(2 * nu, 2 * nu);
    for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < nu; ++j) a(i, nu + j) = -lu(i, j) / p.mass[u[i]];
        a(nu + i, i) = 1;
    }
    const std::size_t rows = d.size() + nu + 1;
    RationalMatrix c(rows, 2 * nu);
    for (std::size_t r = 0; r < d.size(); ++r) {
        for (std::size_t j = 0; j < nu; ++j) c(r, j) = l(d[r], u[j]);
    }
    for (std::size_t j = 0; j < nu; ++j) c(d.size() + j, j) = p.damping[u[j]];
    for (std::size_t j = 0; j < nu; ++j) c(rows - 1, nu + j) = p.mass[u[j]];

    RationalMatrix obs(rows * 2 * nu, 2 * nu);
    RationalMatrix block = c;
    for (std::size_t k = 0; k < 2 * nu; ++k) {
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < 2 * nu; ++j) obs(k * rows + r, j) = block(r, j);
        }
        RationalMatrix next(rows, 2 * nu);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < 2 * nu; ++j) {
                Rational acc = 0;
                for (std::size_t t = 0; t < 2 * nu; ++t) {
                    if (block(r, t) != 0 && a(t, j) != 0) acc += block(r, t) * a(t, j);
                }
                next(r, j) = acc;
            }
        }
        block = next;
    }
    return 2 * nu - rank(obs);
}

}  // namespace

TEST_CASE("equilibrium beta") {
    const auto g2 = make(2, {0}, {{0, 1}});
    SystemParams p = SystemParams::nominal(g2);
    p.damping = {2, 0};
    p.force = {1, 1};
    CHECK(equilibrium_beta(p) == 1);
    p.force = {0, 0};
    CHECK(equilibrium_beta(p) == 0);

    const auto g3 = make(3, {0, 1}, {{0, 1}, {1, 2}});
    SystemParams q = SystemParams::nominal(g3);
    q.force = {3, -1, 2};
    CHECK(equilibrium_beta(q) == 2);

    q.damping = {0, 0, 0};
    CHECK_THROWS_AS(equilibrium_beta(q), Error);
}

TEST_CASE("kernel membership") {
    const auto udu = make(3, {1}, {{0, 1}, {1, 2}});
    const std::vector<long long> a{1, 0, -1};
    const std::vector<long long> b{2, 0, -1};
    const std::vector<long long> c{1, 1, -1};
    const std::vector<long long> one_sided{1, 0, 0};
    CHECK(kernel_membership(udu, a));
    CHECK(kernel_membership(udu, b));
    CHECK_FALSE(kernel_membership(udu, c));
    CHECK_FALSE(kernel_membership(udu, one_sided));

    // Positive node whose only neighbours are larger.
    const auto p4 = make(4, {0}, {{0, 1}, {1, 2}, {2, 3}});
    const std::vector<long long> bump{0, 2, 1, 3};
    CHECK_FALSE(kernel_membership(p4, bump));
}

TEST_CASE("witness parameters") {
    const auto udu = make(3, {1}, {{0, 1}, {1, 2}});
    const std::vector<long long> v{1, 0, -1};
    const auto w = witness_params(udu, v);
    CHECK(w.params.mass == std::vector<Rational>{1, 1, 1});
    CHECK(w.params.stiffness == std::vector<Rational>{1, 1});
    CHECK(kernel_identity_holds(udu, w));
    for (const auto& r : kernel_residual(udu, w)) CHECK(r == 0);

    const auto c8 = testing::alternating_cycle(8);
    const std::vector<long long> v8{0, -1, 0, 1, 0, -1, 0, 1};
    CHECK(kernel_identity_holds(c8, witness_params(c8, v8)));

    const std::vector<long long> bad{1, 0, 0};
    CHECK_THROWS_AS(witness_params(udu, bad), Error);
    const std::vector<long long> zero{0, 0, 0};
    CHECK_THROWS_AS(witness_params(udu, zero), Error);

    // Zero node with two positive, one negative and one zero neighbour.
    const auto fan = make(5, {0, 4}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
    const std::vector<long long> vf{0, 1, 1, -1, 0};
    REQUIRE(kernel_membership(fan, vf));
    CHECK(kernel_identity_holds(fan, witness_params(fan, vf)));
}

TEST_CASE("witness parameters are exact for every kernel vector found") {
    std::mt19937_64 rng(42);
    int witnesses = 0;
    for (int t = 0; t < 400; ++t) {
        const auto g = testing::random_graph(2 + rng() % 11, rng() % 5, 0.3, rng);
        const auto r = cnc_decide(g);
        if (r.pigas) continue;
        const auto v = coloring_to_vector(g, *r.witness);
        const auto w = witness_params(g, v);
        CHECK(kernel_identity_holds(g, w));
        for (const auto& x : w.params.mass) CHECK(x > 0);
        for (const auto& x : w.params.stiffness) CHECK(x > 0);
        ++witnesses;
    }
    CHECK(witnesses > 50);

    // Arbitrary members of the kernel class, not only distance vectors.
    int members = 0;
    for (int t = 0; t < 3000 && members < 300; ++t) {
        const auto g = testing::random_graph(2 + rng() % 8, rng() % 4, 0.3, rng);
        std::vector<long long> v(g.node_count(), 0);
        for (NodeId u : g.undamped_nodes()) v[u] = static_cast<long long>(rng() % 7) - 3;
        if (!kernel_membership(g, v) || std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; })) continue;
        CHECK(kernel_identity_holds(g, witness_params(g, v)));
        ++members;
    }
    CHECK(members > 100);
}

TEST_CASE("stability for fixed parameters") {
    const auto both = make(2, {0, 1}, {{0, 1}});
    CHECK(stability_given_params(both, SystemParams::nominal(both)));

    const auto udu = make(3, {1}, {{0, 1}, {1, 2}});
    const std::vector<long long> v{1, 0, -1};
    CHECK_FALSE(stability_given_params(udu, witness_params(udu, v).params));

    SystemParams heavy = SystemParams::nominal(udu);
    heavy.mass = {1, 1, 2};
    CHECK(stability_given_params(udu, heavy));

    // General (non-symmetric) eigensolver on M^-1 L: no eigenvector vanishes at node 1.
    Eigen::Matrix3d ml;
    ml << 1, -1, 0, -1, 2, -1, 0, -0.5, 0.5;
    Eigen::EigenSolver<Eigen::Matrix3d> es(ml);
    for (int k = 0; k < 3; ++k) {
        const Eigen::Vector3cd x = es.eigenvectors().col(k);
        CHECK(std::abs(x(1)) > 1e-6 * x.norm());
    }
}

TEST_CASE("spectrum of the symmetric conjugate") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const auto g = testing::random_graph(2 + rng() % 9, rng() % 4, 0.3, rng);
        const auto p = random_params(g, rng);
        const auto mu = generalized_spectrum(g, p);
        CHECK(mu.minCoeff() > -1e-9);
        CHECK(std::abs(mu(0)) < 1e-9);
        CHECK(mu(1) > 1e-9);
    }
}

TEST_CASE("observability pair") {
    const auto udu = make(3, {1}, {{0, 1}, {1, 2}});
    const std::vector<long long> v{1, 0, -1};
    const auto w = witness_params(udu, v);
    const auto pair = build_observability(udu, w.params);
    REQUIRE(pair.a_hat.rows() == 4);
    CHECK(pair.a_hat(0, 2) == doctest::Approx(-0.5));
    CHECK(pair.a_hat(0, 3) == doctest::Approx(0.5));
    CHECK(pair.a_hat(2, 0) == doctest::Approx(1.0));
    CHECK(pair.c_hat.rows() == 1 + 2 + 1);
    CHECK(pair.unobservable_dim == 2);
    CHECK(stacked_unobservable_dim(pair) == 2);
    CHECK(exact_unobservable_dim(udu, w.params) == 2);

    SystemParams heavy = SystemParams::nominal(udu);
    heavy.mass = {1, 1, 2};
    CHECK(build_observability(udu, heavy).unobservable_dim == 0);
}

TEST_CASE("oscillation modes") {
    const auto udu = make(3, {1}, {{0, 1}, {1, 2}});
    const std::vector<long long> v{1, 0, -1};
    const auto modes = oscillation_modes(udu, witness_params(udu, v).params);
    REQUIRE(modes.size() == 1);
    CHECK(modes[0].frequency == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(modes[0].nodes == std::vector<NodeId>{0, 2});
    CHECK(modes[0].shape[0] == doctest::Approx(1.0));
    CHECK(modes[0].shape[1] == doctest::Approx(-1.0));

    SystemParams heavy = SystemParams::nominal(udu);
    heavy.mass = {1, 1, 2};
    CHECK(oscillation_modes(udu, heavy).empty());

    const auto c8 = testing::alternating_cycle(8);
    const std::vector<long long> v8{0, -1, 0, 1, 0, -1, 0, 1};
    const auto m8 = oscillation_modes(c8, witness_params(c8, v8).params);
    REQUIRE(m8.size() == 1);
    CHECK(std::abs(m8[0].frequency - 1.0) < 1e-9);
}

TEST_CASE("stability, observability and modes agree") {
    std::mt19937_64 rng(1234);
    int unstable = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + rng() % 9;
        const auto g = testing::random_graph(n, rng() % 4, 0.3, rng);
        SystemParams p = random_params(g, rng);
        if (t % 2 == 0) {
            if (const auto c = brute_force_rbc(g)) p = witness_params(g, coloring_to_vector(g, *c)).params;
        } else if (t % 5 == 1) {
            p = SystemParams::nominal(g);
        }
        const bool stable = stability_given_params(g, p);
        const auto pair = build_observability(g, p);
        CHECK(stable == (pair.unobservable_dim == 0));
        CHECK(stable == oscillation_modes(g, p).empty());
        CHECK(pair.unobservable_dim == exact_unobservable_dim(g, p));
        unstable += stable ? 0 : 1;
    }
    CHECK(unstable > 50);
}

TEST_CASE("topology verdict bridges to parameter verdicts") {
    std::mt19937_64 rng(55);
    int pigas = 0;
    for (int t = 0; t < 120; ++t) {
        const auto g = testing::random_graph(2 + rng() % 8, rng() % 4, 0.35, rng);
        const auto c = brute_force_rbc(g);
        if (c) {
            CHECK_FALSE(stability_given_params(g, witness_params(g, coloring_to_vector(g, *c)).params));
            continue;
        }
        ++pigas;
        for (int k = 0; k < 100; ++k) CHECK(stability_given_params(g, random_params(g, rng)));
    }
    CHECK(pigas > 20);
}
