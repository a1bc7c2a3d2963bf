#include "pigas/sim.hpp"

#include "pigas/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace pigas {

namespace {

// Exact solve of L s = rhs with s_0 = 0; rhs sums to zero.
std::vector<Rational> grounded_solve(const RationalMatrix& l, std::vector<Rational> rhs) {
    const std::size_t n = l.rows();
    std::vector<Rational> s(n, 0);
    if (n <= 1) return s;
    const std::size_t k = n - 1;
    RationalMatrix a(k, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(i, j) = l(i + 1, j + 1);
        a(i, k) = rhs[i + 1];
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a(piv, c) == 0) ++piv;
        if (piv == k) throw Error(ErrorCode::SingularBlock, "grounded Laplacian is singular");
        if (piv != c) {
            for (std::size_t j = 0; j <= k; ++j) std::swap(a(c, j), a(piv, j));
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || a(r, c) == 0) continue;
            const Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j <= k; ++j) a(r, j) -= f * a(c, j);
        }
    }
    for (std::size_t i = 0; i < k; ++i) s[i + 1] = a(i, k) / a(i, i);
    return s;
}

struct LinearSystem {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd inv_m;
};

LinearSystem assemble(const DampingGraph& g, const SystemParams& params) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    LinearSystem sys;
    sys.inv_m.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) sys.inv_m(i) = 1.0 / to_double(params.mass[i]);
    sys.a = Eigen::MatrixXd::Zero(n + m, n + m);
    sys.b = Eigen::VectorXd::Zero(n + m);
    for (Eigen::Index i = 0; i < n; ++i) {
        sys.a(i, i) = -to_double(params.damping[i]) * sys.inv_m(i);
        sys.b(i) = to_double(params.force[i]);
    }
    for (Eigen::Index k = 0; k < m; ++k) {
        const Edge& e = g.edge(static_cast<std::size_t>(k));
        const double w = to_double(params.stiffness[k]);
        sys.a(e.u, n + k) = -w;
        sys.a(e.v, n + k) = w;
        sys.a(n + k, e.u) = sys.inv_m(e.u);
        sys.a(n + k, e.v) = -sys.inv_m(e.v);
    }
    return sys;
}

double spread(const std::vector<double>& y) {
    if (y.empty()) return 0.0;
    double mean = 0.0;
    for (double x : y) mean += x;
    mean /= static_cast<double>(y.size());
    double s = 0.0;
    for (double x : y) s = std::max(s, std::abs(x - mean));
    return s;
}

}  // namespace

Equilibrium equilibrium(const DampingGraph& g, const SystemParams& params) {
    params.validate(g);
    Equilibrium eq;
    eq.beta = equilibrium_beta(params);
    const std::size_t n = g.node_count();
    std::vector<Rational> rhs(n);
    eq.p.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        eq.p[i] = params.mass[i] * eq.beta;
        rhs[i] = params.force[i] - params.damping[i] * eq.beta;
    }
    const std::vector<Rational> s = grounded_solve(laplacian(g, params.stiffness), rhs);
    eq.q.resize(g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) eq.q[k] = s[g.edge(k).u] - s[g.edge(k).v];
    return eq;
}

double max_stable_step(const DampingGraph& g, const SystemParams& params) {
    const double lmax = generalized_spectrum(g, params).maxCoeff();
    if (lmax <= 0) return 0.1;
    return 0.1 / std::sqrt(lmax);
}

Trajectory simulate(const DampingGraph& g, const SystemParams& params, const InitialState& init, double dt, double T) {
    params.validate(g);
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    if (init.p.size() != static_cast<std::size_t>(n) || init.q.size() != static_cast<std::size_t>(m)) {
        throw Error(ErrorCode::InvalidParams, "initial state has the wrong size");
    }
    if (!(dt > 0) || !(T >= dt)) throw Error(ErrorCode::InvalidParams, "need dt > 0 and T >= dt");
    const double limit = max_stable_step(g, params);
    if (dt > limit) {
        throw Error(ErrorCode::StepTooLarge, "dt = " + std::to_string(dt) + " exceeds " + std::to_string(limit));
    }

    const LinearSystem sys = assemble(g, params);
    const auto f = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd { return sys.a * z + sys.b; };
    Eigen::VectorXd z(n + m);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = init.p[i];
    for (Eigen::Index k = 0; k < m; ++k) z(n + k) = init.q[k];

    const auto steps = static_cast<std::size_t>(std::floor(T / dt + 1e-9));
    Trajectory traj;
    traj.dt = dt;
    traj.t.reserve(steps + 1);
    auto record = [&](std::size_t k) {
        traj.t.push_back(static_cast<double>(k) * dt);
        traj.p.emplace_back(z.data(), z.data() + n);
        traj.q.emplace_back(z.data() + n, z.data() + n + m);
        std::vector<double> y(n);
        for (Eigen::Index i = 0; i < n; ++i) y[i] = z(i) * sys.inv_m(i);
        traj.y.push_back(std::move(y));
    };
    record(0);
    for (std::size_t k = 1; k <= steps; ++k) {
        const Eigen::VectorXd k1 = f(z);
        const Eigen::VectorXd k2 = f(z + 0.5 * dt * k1);
        const Eigen::VectorXd k3 = f(z + 0.5 * dt * k2);
        const Eigen::VectorXd k4 = f(z + dt * k3);
        z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        record(k);
    }
    return traj;
}

double shifted_energy(const DampingGraph& g, const SystemParams& params, const std::vector<double>& p,
                      const std::vector<double>& q, const Equilibrium& eq) {
    double u = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const double d = p[i] - to_double(eq.p[i]);
        u += 0.5 * d * d / to_double(params.mass[i]);
    }
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const double d = q[k] - to_double(eq.q[k]);
        u += 0.5 * d * d * to_double(params.stiffness[k]);
    }
    return u;
}

ConsensusResult detect_consensus(const Trajectory& traj, double tol) {
    ConsensusResult out;
    if (traj.size() == 0) return out;
    const std::vector<double>& last = traj.y.back();
    double mean = 0.0;
    for (double x : last) mean += x;
    mean /= static_cast<double>(std::max<std::size_t>(1, last.size()));
    out.limit.assign(last.size(), mean);

    if (spread(last) >= tol) return out;
    constexpr std::size_t windows = 5;
    const std::size_t tail = std::max<std::size_t>(windows, traj.size() / 10);
    const std::size_t begin = traj.size() > tail ? traj.size() - tail : 0;
    const std::size_t width = std::max<std::size_t>(1, (traj.size() - begin) / windows);
    std::vector<double> peaks;
    for (std::size_t w = begin; w < traj.size(); w += width) {
        double peak = 0.0;
        for (std::size_t k = w; k < std::min(traj.size(), w + width); ++k) peak = std::max(peak, spread(traj.y[k]));
        peaks.push_back(peak);
    }
    for (std::size_t w = 1; w < peaks.size(); ++w) {
        if (peaks[w] > peaks[w - 1] && peaks[w] >= tol) return out;
    }
    out.reached = peaks.back() < tol;
    return out;
}

ConsensusResult simulate_until_consensus(const DampingGraph& g, const SystemParams& params, const InitialState& init,
                                         double dt, double T, double tol, double T_max) {
    for (;;) {
        const ConsensusResult r = detect_consensus(simulate(g, params, init, dt, T), tol);
        if (r.reached || T >= T_max) return r;
        T = std::min(T_max, 2 * T);
    }
}

InitialState steady_state_init(const DampingGraph& g, const KernelWitness& witness, double amplitude) {
    const Equilibrium eq = equilibrium(g, witness.params);
    InitialState s;
    s.p.resize(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        s.p[i] = amplitude * to_double(witness.params.mass[i]) * static_cast<double>(witness.v[i]) + to_double(eq.p[i]);
    }
    for (const auto& x : eq.q) s.q.push_back(to_double(x));
    return s;
}

std::optional<double> zero_crossing_period(const Trajectory& traj, NodeId node) {
    std::vector<double> crossings;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double a = traj.y[k - 1][node];
        const double b = traj.y[k][node];
        if ((a < 0 && b >= 0) || (a > 0 && b <= 0)) {
            crossings.push_back(traj.t[k - 1] + traj.dt * a / (a - b));
        }
    }
    if (crossings.size() < 3) return std::nullopt;
    return 2.0 * (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

}  // namespace pigas
