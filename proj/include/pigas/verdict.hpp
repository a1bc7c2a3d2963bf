#pragma once

#include "pigas/coloring.hpp"
#include "pigas/graph.hpp"
#include "pigas/spectral.hpp"
#include "pigas/zero_forcing.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string_view>

namespace pigas {

enum class Decision { PIGAS, NotPIGAS, Undecided };
enum class Method { ZfaFastPath, Cnc, BruteForce };

std::string_view to_string(Decision d);
std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct OscillationCertificate {
    Coloring coloring;
    KernelWitness witness;
    double frequency = 0.0;  // sqrt(v^T L v / v^T M v), cross-checked against the spectrum
};

struct Verdict {
    Decision decision = Decision::Undecided;
    Method method = Method::ZfaFastPath;
    std::optional<ForcingLog> forcing;
    std::optional<OscillationCertificate> oscillation;
    std::uint64_t combinations = 0;   // cnc: colorings tried; bruteforce: size of the search space
    std::vector<NodeId> chord_nodes;  // cnc only
    double wall_ms = 0.0;
};

struct AnalyzeOptions {
    std::optional<Method> method;  // default: zero forcing, then cnc
    unsigned jobs = 1;
    std::size_t max_undamped = 20;
};

Verdict analyze(const DampingGraph& g, const AnalyzeOptions& options = {});

/// Coloring -> distance vector -> witness parameters, all re-verified.
OscillationCertificate certify_oscillation(const DampingGraph& g, const Coloring& c);

/// Re-checks rich balance and the exact kernel identity.
bool certificate_valid(const DampingGraph& g, const OscillationCertificate& cert);

nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace pigas
