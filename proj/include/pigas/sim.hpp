#pragma once

#include "pigas/graph.hpp"
#include "pigas/rational.hpp"
#include "pigas/spectral.hpp"

#include <optional>
#include <vector>

namespace pigas {

struct InitialState {
    std::vector<double> p;  // momenta per node
    std::vector<double> q;  // elongations per edge
};

struct Trajectory {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<std::vector<double>> p;
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> y;  // M^-1 p

    std::size_t size() const { return t.size(); }
};

/// Exact equilibrium: p = M beta 1, q = B^T s with L s = v - R beta 1.
struct Equilibrium {
    Rational beta;
    std::vector<Rational> p;
    std::vector<Rational> q;
};

Equilibrium equilibrium(const DampingGraph& g, const SystemParams& params);

/// 0.1 / sqrt(lambda_max(M^-1 L)).
double max_stable_step(const DampingGraph& g, const SystemParams& params);

/// Classical RK4 on p' = -R M^-1 p - B W q + v, q' = B^T M^-1 p. Samples at
/// k dt for k = 0..floor(T/dt). Throws StepTooLarge.
Trajectory simulate(const DampingGraph& g, const SystemParams& params, const InitialState& init, double dt, double T);

double shifted_energy(const DampingGraph& g, const SystemParams& params, const std::vector<double>& p,
                      const std::vector<double>& q, const Equilibrium& eq);

struct ConsensusResult {
    bool reached = false;
    std::vector<double> limit;  // mean of y(T) at every node
};

/// Spread max_i |y_i - mean(y)| below tol at T, and over the last 10% of
/// samples the window maxima of the spread never grow (unless below tol) and
/// the final window stays below tol.
ConsensusResult detect_consensus(const Trajectory& traj, double tol);

/// Doubles the horizon from T until consensus or T_max.
ConsensusResult simulate_until_consensus(const DampingGraph& g, const SystemParams& params, const InitialState& init,
                                         double dt, double T, double tol, double T_max = 500.0);

/// p0 = amplitude M v, q0 = equilibrium q.
InitialState steady_state_init(const DampingGraph& g, const KernelWitness& witness, double amplitude);

/// Twice the mean spacing of sign changes of y_node, or none with fewer than three.
std::optional<double> zero_crossing_period(const Trajectory& traj, NodeId node);

}  // namespace pigas
