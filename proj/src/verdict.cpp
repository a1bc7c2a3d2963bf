#include "pigas/verdict.hpp"

#include "pigas/cnc.hpp"
#include "pigas/error.hpp"
#include "pigas/io.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pigas {

std::string_view to_string(Decision d) {
    switch (d) {
    case Decision::PIGAS: return "PIGAS";
    case Decision::NotPIGAS: return "NotPIGAS";
    case Decision::Undecided: return "Undecided";
    }
    return "?";
}

std::string_view to_string(Method m) {
    switch (m) {
    case Method::ZfaFastPath: return "zfa-fast-path";
    case Method::Cnc: return "cnc";
    case Method::BruteForce: return "bruteforce";
    }
    return "?";
}

Method method_from_string(std::string_view name) {
    if (name == "zfa" || name == "zfa-fast-path") return Method::ZfaFastPath;
    if (name == "cnc") return Method::Cnc;
    if (name == "bruteforce") return Method::BruteForce;
    throw Error(ErrorCode::Parse, "unknown method '" + std::string(name) + "'");
}

OscillationCertificate certify_oscillation(const DampingGraph& g, const Coloring& c) {
    OscillationCertificate cert;
    cert.coloring = c;
    const std::vector<long long> v = coloring_to_vector(g, c);
    cert.witness = witness_params(g, v);

    const RationalMatrix l = laplacian(g, cert.witness.params.stiffness);
    const std::vector<Rational> x(v.begin(), v.end());
    const std::vector<Rational> lx = l.multiply(x);
    Rational num = 0;
    Rational den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += x[i] * lx[i];
        den += x[i] * cert.witness.params.mass[i] * x[i];
    }
    cert.frequency = std::sqrt(to_double(num / den));
    cert.witness.frequency = cert.frequency;

    bool seen = false;
    for (const Mode& m : oscillation_modes(g, cert.witness.params)) seen = seen || std::abs(m.frequency - cert.frequency) < 1e-9;
    if (!seen) throw std::logic_error("witness frequency missing from the spectrum");
    if (!certificate_valid(g, cert)) throw std::logic_error("oscillation certificate failed re-validation");
    return cert;
}

bool certificate_valid(const DampingGraph& g, const OscillationCertificate& cert) {
    return is_richly_balanced(g, cert.coloring) && kernel_membership(g, cert.witness.v) &&
           kernel_identity_holds(g, cert.witness);
}

Verdict analyze(const DampingGraph& g, const AnalyzeOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    Verdict out;
    auto finish = [&] {
        out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    if (!options.method || *options.method == Method::ZfaFastPath) {
        ForcingLog log = zero_forcing_run(g);
        const bool forced = log.all_black();
        if (forced || options.method) {
            out.decision = forced ? Decision::PIGAS : Decision::Undecided;
            out.method = Method::ZfaFastPath;
            out.forcing = std::move(log);
            return finish();
        }
    }

    out.method = options.method.value_or(Method::Cnc);
    std::optional<Coloring> witness;
    if (out.method == Method::BruteForce) {
        witness = brute_force_rbc(g, SearchOptions{options.max_undamped, options.jobs});
        out.combinations = 1;
        for (std::size_t k = 0; k < g.undamped_count(); ++k) out.combinations *= 3;
    } else {
        CncResult r = cnc_decide(g, CncOptions{options.jobs});
        witness = std::move(r.witness);
        out.combinations = r.combinations_tried;
        out.chord_nodes = std::move(r.chord_nodes);
    }
    out.decision = witness ? Decision::NotPIGAS : Decision::PIGAS;
    if (witness) out.oscillation = certify_oscillation(g, *witness);
    return finish();
}

nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json j;
    j["decision"] = std::string(to_string(v.decision));
    j["method"] = std::string(to_string(v.method));
    j["wall_ms"] = v.wall_ms;
    if (v.method != Method::ZfaFastPath) j["combinations"] = v.combinations;
    if (v.method == Method::Cnc) j["chord_nodes"] = v.chord_nodes;
    if (v.forcing) {
        nlohmann::json forces = nlohmann::json::array();
        for (const auto& [a, b] : v.forcing->forces) forces.push_back({{"forcer", a}, {"forced", b}});
        j["forcing"] = {{"forces", forces}, {"derived", v.forcing->derived_set()}};
    }
    if (v.oscillation) {
        j["witness"] = {{"colors", coloring_to_json(v.oscillation->coloring)["colors"]},
                        {"vector", v.oscillation->witness.v},
                        {"params", params_to_json(v.oscillation->witness.params)},
                        {"frequency", v.oscillation->frequency}};
    }
    return j;
}

}  // namespace pigas
