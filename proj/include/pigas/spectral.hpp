#pragma once

#include "pigas/graph.hpp"
#include "pigas/rational.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace pigas {

/// Exact parameters realising a persistent oscillation along v at angular
/// frequency 1: (B diag(w) B^T - diag(m)) v = 0 with m, w > 0.
struct KernelWitness {
    std::vector<long long> v;
    SystemParams params;  // damping 1 on damped nodes, 0 elsewhere; force 0
    double frequency = 1.0;
};

struct ObservabilityPair {
    Eigen::MatrixXd a_hat;  // 2 n_u x 2 n_u
    Eigen::MatrixXd c_hat;  // (n_d + n_u + 1) x 2 n_u
    std::vector<NodeId> undamped;
    std::size_t unobservable_dim = 0;
};

struct Mode {
    double frequency = 0.0;       // rad/s
    std::vector<NodeId> nodes;    // undamped nodes (r = 0), ascending
    std::vector<double> shape;    // aligned with nodes, max |entry| = 1
};

/// beta = sum(v) / sum(r). Throws AllUndamped.
Rational equilibrium_beta(const SystemParams& params);

/// Every eigenvector of M^-1 L has a nonzero entry on some node with r > 0.
bool stability_given_params(const DampingGraph& g, const SystemParams& params);

/// Zero on damped nodes; a zero node has a negative neighbour iff it has a
/// positive one; a positive node has a smaller neighbour; a negative node
/// has a larger neighbour.
bool kernel_membership(const DampingGraph& g, std::span<const long long> v);

/// Throws NotInKernelClass when v is zero or violates kernel_membership.
KernelWitness witness_params(const DampingGraph& g, std::span<const long long> v);

/// (B diag(w) B^T - diag(m)) v in exact arithmetic.
std::vector<Rational> kernel_residual(const DampingGraph& g, const KernelWitness& witness);
bool kernel_identity_holds(const DampingGraph& g, const KernelWitness& witness);

/// Reduced pair on the undamped nodes with the momentum output row. The
/// unobservable dimension is the largest A-invariant subspace in ker C.
ObservabilityPair build_observability(const DampingGraph& g, const SystemParams& params);

/// Dimension of ker of the stacked observability matrix [C; CA; ...; CA^(k-1)].
std::size_t stacked_unobservable_dim(const ObservabilityPair& pair);

/// One entry per independent undamped-supported eigenvector of M^-1 L.
std::vector<Mode> oscillation_modes(const DampingGraph& g, const SystemParams& params);

/// Eigenvalues of M^-1 L, ascending, through the symmetric conjugate.
Eigen::VectorXd generalized_spectrum(const DampingGraph& g, const SystemParams& params);

Eigen::MatrixXd to_eigen(const RationalMatrix& m);

}  // namespace pigas
