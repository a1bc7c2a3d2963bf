#include "pigas/spectral.hpp"

#include "pigas/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pigas {

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    }
    return out;
}

Rational equilibrium_beta(const SystemParams& params) {
    Rational r = 0;
    for (const auto& x : params.damping) r += x;
    if (r <= 0) throw Error(ErrorCode::AllUndamped, "total damping is zero");
    Rational v = 0;
    for (const auto& x : params.force) v += x;
    return v / r;
}

namespace {

constexpr double rank_tol = 1e-9;

// Orthonormal basis of ker(x), singular values below rank_tol * max(1, s_max) count as zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& x) {
    const auto cols = x.cols();
    if (x.rows() == 0 || cols == 0) return Eigen::MatrixXd::Identity(cols, cols);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double tol = rank_tol * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) rank += s(k) > tol ? 1 : 0;
    return svd.matrixV().rightCols(cols - rank);
}

struct Split {
    std::vector<NodeId> damped;    // r > 0
    std::vector<NodeId> undamped;  // r = 0
};

Split split_by_damping(const SystemParams& params) {
    Split s;
    for (NodeId i = 0; i < params.damping.size(); ++i) (params.damping[i] > 0 ? s.damped : s.undamped).push_back(i);
    return s;
}

struct Eigenspace {
    double mu;
    std::vector<Eigen::VectorXd> directions;  // undamped-supported eigenvectors of M^-1 L
};

std::vector<Eigenspace> undamped_eigenspaces(const DampingGraph& g, const SystemParams& params) {
    params.validate(g);
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const Eigen::MatrixXd l = to_eigen(laplacian(g, params.stiffness));
    Eigen::VectorXd inv_sqrt_m(n);
    for (Eigen::Index i = 0; i < n; ++i) inv_sqrt_m(i) = 1.0 / std::sqrt(to_double(params.mass[i]));
    const Eigen::MatrixXd s = inv_sqrt_m.asDiagonal() * l * inv_sqrt_m.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    const Eigen::VectorXd& mu = eig.eigenvalues();
    const Eigen::MatrixXd& q = eig.eigenvectors();
    const double scale = std::max(1.0, std::abs(mu(n - 1)));
    const Split split = split_by_damping(params);

    std::vector<Eigenspace> out;
    for (Eigen::Index lo = 0; lo < n;) {
        Eigen::Index hi = lo + 1;
        while (hi < n && mu(hi) - mu(hi - 1) <= 1e-8 * scale) ++hi;
        const Eigen::Index k = hi - lo;
        Eigen::MatrixXd qd(static_cast<Eigen::Index>(split.damped.size()), k);
        for (std::size_t r = 0; r < split.damped.size(); ++r) qd.row(r) = q.block(split.damped[r], lo, 1, k);
        const Eigen::MatrixXd z = null_space(qd);
        if (z.cols() > 0) {
            Eigenspace es{mu.segment(lo, k).mean(), {}};
            for (Eigen::Index c = 0; c < z.cols(); ++c) {
                es.directions.push_back(inv_sqrt_m.asDiagonal() * (q.middleCols(lo, k) * z.col(c)));
            }
            out.push_back(std::move(es));
        }
        lo = hi;
    }
    return out;
}

}  // namespace

Eigen::VectorXd generalized_spectrum(const DampingGraph& g, const SystemParams& params) {
    params.validate(g);
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const Eigen::MatrixXd l = to_eigen(laplacian(g, params.stiffness));
    Eigen::VectorXd inv_sqrt_m(n);
    for (Eigen::Index i = 0; i < n; ++i) inv_sqrt_m(i) = 1.0 / std::sqrt(to_double(params.mass[i]));
    const Eigen::MatrixXd s = inv_sqrt_m.asDiagonal() * l * inv_sqrt_m.asDiagonal();
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s, Eigen::EigenvaluesOnly).eigenvalues();
}

bool stability_given_params(const DampingGraph& g, const SystemParams& params) {
    return undamped_eigenspaces(g, params).empty();
}

std::vector<Mode> oscillation_modes(const DampingGraph& g, const SystemParams& params) {
    const Split split = split_by_damping(params);
    std::vector<Mode> modes;
    for (const auto& es : undamped_eigenspaces(g, params)) {
        for (const auto& x : es.directions) {
            Mode m;
            m.frequency = std::sqrt(std::max(0.0, es.mu));
            m.nodes = split.undamped;
            for (NodeId i : split.undamped) m.shape.push_back(x(i));
            double peak = 0.0;
            double sign = 0.0;
            for (double a : m.shape) {
                if (sign == 0.0 && std::abs(a) > 1e-12) sign = a > 0 ? 1.0 : -1.0;
                peak = std::max(peak, std::abs(a));
            }
            if (peak > 0) {
                for (double& a : m.shape) a *= sign / peak;
            }
            modes.push_back(std::move(m));
        }
    }
    return modes;
}

bool kernel_membership(const DampingGraph& g, std::span<const long long> v) {
    if (v.size() != g.node_count()) return false;
    for (NodeId d : g.damped_nodes()) {
        if (v[d] != 0) return false;
    }
    for (NodeId i = 0; i < g.node_count(); ++i) {
        bool lower = false;
        bool higher = false;
        bool neg = false;
        bool pos = false;
        for (NodeId j : g.neighbors(i)) {
            lower = lower || v[j] < v[i];
            higher = higher || v[j] > v[i];
            neg = neg || v[j] < 0;
            pos = pos || v[j] > 0;
        }
        if (v[i] == 0 && neg != pos) return false;
        if (v[i] > 0 && !lower) return false;
        if (v[i] < 0 && !higher) return false;
    }
    return true;
}

KernelWitness witness_params(const DampingGraph& g, std::span<const long long> v) {
    if (!kernel_membership(g, v)) throw Error(ErrorCode::NotInKernelClass, "vector violates the kernel conditions");
    if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; })) {
        throw Error(ErrorCode::NotInKernelClass, "zero vector");
    }

    const std::size_t n = g.node_count();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return std::llabs(v[a]) < std::llabs(v[b]); });

    KernelWitness out;
    out.v.assign(v.begin(), v.end());
    out.params = SystemParams::nominal(g);
    std::vector<Rational>& w = out.params.stiffness;
    std::vector<bool> weighted(g.edge_count(), false);

    for (NodeId i : order) {
        const auto nbrs = g.neighbors(i);
        const auto inc = g.incident_edges(i);
        Rational s = 0;
        std::vector<std::size_t> up;
        std::vector<std::size_t> down;
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            const std::size_t e = inc[a];
            const long long diff = v[i] - v[nbrs[a]];
            if (weighted[e]) {
                s += w[e] * diff;
            } else if (diff == 0) {
                w[e] = 1;
                weighted[e] = true;
            } else {
                (diff < 0 ? up : down).push_back(a);
            }
        }

        Rational up_total;
        Rational down_total;
        if (v[i] == 0) {
            if (up.empty() != down.empty()) {
                throw Error(ErrorCode::NotInKernelClass, "zero node " + std::to_string(i) + " is one-sided");
            }
            up_total = 1;
            down_total = 1;
        } else if (s == 0) {
            up_total = v[i] > 0 ? 1 : 2;
            down_total = v[i] > 0 ? 2 : 1;
        } else {
            up_total = abs(s) / 2;
            down_total = abs(s) / 2;
        }
        for (auto* group : {&up, &down}) {
            const Rational& total = group == &up ? up_total : down_total;
            for (std::size_t a : *group) {
                const std::size_t e = inc[a];
                w[e] = total / (std::llabs(v[i] - v[nbrs[a]]) * static_cast<long long>(group->size()));
                weighted[e] = true;
                s += w[e] * (v[i] - v[nbrs[a]]);
            }
        }
        if (v[i] != 0) {
            out.params.mass[i] = s / v[i];
            if (out.params.mass[i] <= 0) {
                throw Error(ErrorCode::NotInKernelClass, "no positive mass at node " + std::to_string(i));
            }
        } else if (s != 0) {
            throw Error(ErrorCode::NotInKernelClass, "unbalanced zero node " + std::to_string(i));
        }
    }
    if (!kernel_identity_holds(g, out)) throw Error(ErrorCode::NotInKernelClass, "kernel identity failed");
    return out;
}

std::vector<Rational> kernel_residual(const DampingGraph& g, const KernelWitness& witness) {
    const RationalMatrix l = laplacian(g, witness.params.stiffness);
    std::vector<Rational> x(witness.v.begin(), witness.v.end());
    std::vector<Rational> r = l.multiply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= witness.params.mass[i] * x[i];
    return r;
}

bool kernel_identity_holds(const DampingGraph& g, const KernelWitness& witness) {
    if (witness.v.size() != g.node_count()) return false;
    if (std::any_of(witness.params.mass.begin(), witness.params.mass.end(), [](const Rational& m) { return m <= 0; })) {
        return false;
    }
    if (std::any_of(witness.params.stiffness.begin(), witness.params.stiffness.end(),
                    [](const Rational& x) { return x <= 0; })) {
        return false;
    }
    const auto r = kernel_residual(g, witness);
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
}

ObservabilityPair build_observability(const DampingGraph& g, const SystemParams& params) {
    params.validate(g);
    const Split split = split_by_damping(params);
    const RationalMatrix l = laplacian(g, params.stiffness);
    const Eigen::MatrixXd lu = to_eigen(kron_reduce(l, split.damped));
    const auto nu = static_cast<Eigen::Index>(split.undamped.size());
    const auto nd = static_cast<Eigen::Index>(split.damped.size());

    ObservabilityPair out;
    out.undamped = split.undamped;
    Eigen::VectorXd mu(nu);
    for (Eigen::Index k = 0; k < nu; ++k) mu(k) = to_double(params.mass[split.undamped[k]]);

    out.a_hat = Eigen::MatrixXd::Zero(2 * nu, 2 * nu);
    out.a_hat.topRightCorner(nu, nu) = -(mu.cwiseInverse().asDiagonal() * lu);
    out.a_hat.bottomLeftCorner(nu, nu) = Eigen::MatrixXd::Identity(nu, nu);

    out.c_hat = Eigen::MatrixXd::Zero(nd + nu + 1, 2 * nu);
    for (Eigen::Index r = 0; r < nd; ++r) {
        for (Eigen::Index c = 0; c < nu; ++c) out.c_hat(r, c) = to_double(l(split.damped[r], split.undamped[c]));
    }
    for (Eigen::Index k = 0; k < nu; ++k) out.c_hat(nd + k, k) = to_double(params.damping[split.undamped[k]]);
    out.c_hat.block(nd + nu, nu, 1, nu) = mu.transpose();

    Eigen::MatrixXd basis = null_space(out.c_hat);
    while (basis.cols() > 0) {
        const Eigen::MatrixXd image = out.a_hat * basis;
        const Eigen::MatrixXd outside = image - basis * (basis.transpose() * image);
        const Eigen::MatrixXd z = null_space(outside);
        if (z.cols() == basis.cols()) break;
        basis = basis * z;
    }
    out.unobservable_dim = static_cast<std::size_t>(basis.cols());
    return out;
}

std::size_t stacked_unobservable_dim(const ObservabilityPair& pair) {
    const auto dim = pair.a_hat.rows();
    if (dim == 0) return 0;
    const auto p = pair.c_hat.rows();
    Eigen::MatrixXd obs(p * dim, dim);
    Eigen::MatrixXd block = pair.c_hat;
    for (Eigen::Index k = 0; k < dim; ++k) {
        obs.middleRows(k * p, p) = block;
        block = block * pair.a_hat;
    }
    return static_cast<std::size_t>(null_space(obs).cols());
}

}  // namespace pigas
