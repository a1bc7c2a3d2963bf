#include "pigas/cnc.hpp"
#include "pigas/coloring.hpp"
#include "pigas/error.hpp"
#include "pigas/io.hpp"
#include "pigas/sat.hpp"
#include "pigas/sim.hpp"
#include "pigas/spectral.hpp"
#include "pigas/verdict.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace pigas;
using nlohmann::json;

namespace {

constexpr int kPigas = 0;
constexpr int kError = 1;
constexpr int kUndecided = 2;
constexpr int kNotPigas = 10;
constexpr int kSat = 10;
constexpr int kUnsat = 20;

struct Globals {
    bool json = false;
    std::uint64_t seed = 1;
};

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string join(const auto& xs, const char* sep = " ") {
    std::ostringstream out;
    bool first = true;
    for (const auto& x : xs) {
        if (!first) out << sep;
        out << x;
        first = false;
    }
    return out.str();
}

std::string color_letters(const Coloring& c) {
    std::string s;
    for (Color x : c) s += "KBRW"[static_cast<int>(x)];
    return s;
}

SystemParams load_params(const GraphFile& file, const std::string& params_path) {
    if (!params_path.empty()) return parse_params_json(read_file(params_path), file.graph);
    return file.params ? *file.params : SystemParams::nominal(file.graph);
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string graph;
    std::string method;
    std::string witness;
    bool forcing_log = false;
    unsigned jobs = default_jobs();
};

int cmd_analyze(const AnalyzeArgs& a, const Globals& globals) {
    const GraphFile file = load_graph(a.graph);
    AnalyzeOptions opts;
    opts.jobs = a.jobs;
    if (!a.method.empty()) opts.method = method_from_string(a.method);
    const Verdict v = analyze(file.graph, opts);
    if (v.oscillation && !certificate_valid(file.graph, *v.oscillation))
        throw Error(ErrorCode::NotRichlyBalanced, "certificate failed re-validation");

    const json report = verdict_to_json(v);
    if (!a.witness.empty()) write_file(a.witness, report.dump(2) + "\n");

    if (globals.json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "decision: " << to_string(v.decision) << "\n";
        std::cout << "method: " << to_string(v.method) << "\n";
        if (v.method == Method::Cnc) std::cout << "chord nodes: " << join(v.chord_nodes) << "\n";
        if (v.method != Method::ZfaFastPath) std::cout << "colorings: " << v.combinations << "\n";
        if (v.forcing) {
            std::cout << "derived set: " << join(v.forcing->derived_set()) << "\n";
            if (a.forcing_log) {
                for (const auto& [from, to] : v.forcing->forces) std::cout << "  " << from << " -> " << to << "\n";
            }
        }
        if (v.oscillation) {
            const auto& o = *v.oscillation;
            std::cout << "coloring: " << color_letters(o.coloring) << "\n";
            std::cout << "witness vector: " << join(o.witness.v) << "\n";
            std::vector<std::string> masses, weights;
            for (const auto& m : o.witness.params.mass) masses.push_back(format_rational(m));
            for (const auto& w : o.witness.params.stiffness) weights.push_back(format_rational(w));
            std::cout << "witness masses: " << join(masses) << "\n";
            std::cout << "witness stiffness: " << join(weights) << "\n";
            std::cout << "frequency: " << o.frequency << "\n";
        }
        std::cout << "time: " << v.wall_ms << " ms\n";
    }
    switch (v.decision) {
        case Decision::PIGAS: return kPigas;
        case Decision::NotPIGAS: return kNotPigas;
        case Decision::Undecided: return kUndecided;
    }
    return kError;
}

// --------------------------------------------------------------- spectral

struct SpectralArgs {
    std::string graph;
    std::string params;
    std::string modes;
};

int cmd_spectral(const SpectralArgs& a, const Globals& globals) {
    const GraphFile file = load_graph(a.graph);
    const SystemParams p = load_params(file, a.params);
    const DampingGraph& g = file.graph;
    const bool stable = stability_given_params(g, p);
    const auto modes = oscillation_modes(g, p);
    const auto obs = build_observability(g, p);
    const Rational beta = equilibrium_beta(p);

    if (!a.modes.empty()) {
        std::ostringstream csv;
        csv << "frequency,node_id,amplitude\n";
        csv.precision(17);
        for (const Mode& m : modes) {
            for (std::size_t k = 0; k < m.nodes.size(); ++k) csv << m.frequency << "," << m.nodes[k] << "," << m.shape[k] << "\n";
        }
        write_file(a.modes, csv.str());
    }

    if (globals.json) {
        json out{{"stable", stable},
                 {"beta", format_rational(beta)},
                 {"unobservable_dim", obs.unobservable_dim},
                 {"modes", json::array()}};
        for (const Mode& m : modes) out["modes"].push_back({{"frequency", m.frequency}, {"nodes", m.nodes}, {"shape", m.shape}});
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (stable ? "stable: output consensus for these parameters\n"
                             : "oscillatory: persistent undamped modes for these parameters\n");
        std::cout << "beta: " << format_rational(beta) << "\n";
        std::cout << "unobservable dimension: " << obs.unobservable_dim << "\n";
        for (const Mode& m : modes) {
            std::cout << "mode " << m.frequency << " rad/s on";
            for (std::size_t k = 0; k < m.nodes.size(); ++k) std::cout << " " << m.nodes[k] << ":" << m.shape[k];
            std::cout << "\n";
        }
    }
    return stable ? kPigas : kNotPigas;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string graph;
    std::string params;
    std::string init = "random";
    std::string init_file;
    double amplitude = 1.0;
    double dt = 0.01;
    double T = 100.0;
    double tol = 1e-6;
    std::string out;
    std::string svg;
};

std::string render_svg(const Trajectory& traj) {
    constexpr double width = 800, height = 400, pad = 40;
    double lo = 0, hi = 0;
    for (const auto& y : traj.y) {
        for (double x : y) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    if (hi - lo < 1e-12) hi = lo + 1;
    const double t_end = traj.t.empty() ? 1 : std::max(traj.t.back(), 1e-12);
    const std::size_t stride = std::max<std::size_t>(1, traj.size() / 2000);
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double zero = height - pad - (0 - lo) / (hi - lo) * (height - 2 * pad);
    svg << "<line x1=\"" << pad << "\" y1=\"" << zero << "\" x2=\"" << width - pad << "\" y2=\"" << zero
        << "\" stroke=\"#ccc\"/>\n";
    const std::size_t n = traj.y.empty() ? 0 : traj.y[0].size();
    for (std::size_t i = 0; i < n; ++i) {
        svg << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << palette[i % 10] << "\" points=\"";
        for (std::size_t k = 0; k < traj.size(); k += stride) {
            const double x = pad + traj.t[k] / t_end * (width - 2 * pad);
            const double y = height - pad - (traj.y[k][i] - lo) / (hi - lo) * (height - 2 * pad);
            svg << x << "," << y << " ";
        }
        svg << "\"/>\n";
    }
    svg << "<text x=\"" << pad << "\" y=\"" << height - 10 << "\" font-size=\"12\">t = 0 .. " << t_end
        << ", y in [" << lo << ", " << hi << "]</text>\n</svg>\n";
    return svg.str();
}

int cmd_simulate(const SimulateArgs& a, const Globals& globals) {
    const GraphFile file = load_graph(a.graph);
    const DampingGraph& g = file.graph;
    SystemParams p = load_params(file, a.params);
    InitialState init;
    std::optional<NodeId> probe;

    if (a.init == "witness") {
        AnalyzeOptions opts;
        opts.jobs = default_jobs();
        const Verdict v = analyze(g, opts);
        if (!v.oscillation) throw Error(ErrorCode::NotRichlyBalanced, "graph is PI-GAS, no oscillation witness exists");
        p = v.oscillation->witness.params;
        init = steady_state_init(g, v.oscillation->witness, a.amplitude);
        const auto& wv = v.oscillation->witness.v;
        probe = static_cast<NodeId>(std::find_if(wv.begin(), wv.end(), [](long long x) { return x != 0; }) - wv.begin());
    } else if (a.init == "random") {
        std::mt19937_64 rng(globals.seed);
        std::uniform_real_distribution<double> u(-a.amplitude, a.amplitude);
        init.p.resize(g.node_count());
        init.q.resize(g.edge_count());
        for (auto& x : init.p) x = u(rng);
        for (auto& x : init.q) x = u(rng);
    } else if (a.init == "file") {
        if (a.init_file.empty()) throw Error(ErrorCode::Io, "--init file needs --init-file");
        json j;
        try {
            j = json::parse(read_file(a.init_file));
            init.p = j.at("p").get<std::vector<double>>();
            init.q = j.value("q", std::vector<double>(g.edge_count(), 0.0));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::Parse, a.init_file + ": " + e.what());
        }
        if (init.p.size() != g.node_count()) throw Error(ErrorCode::Parse, "init \"p\" needs one entry per node");
        if (init.q.size() != g.edge_count()) throw Error(ErrorCode::Parse, "init \"q\" needs one entry per edge");
    } else {
        throw Error(ErrorCode::Parse, "--init must be witness, random or file");
    }

    const Trajectory traj = simulate(g, p, init, a.dt, a.T);
    const ConsensusResult consensus = detect_consensus(traj, a.tol);
    const Equilibrium eq = equilibrium(g, p);
    const double u0 = shifted_energy(g, p, traj.p.front(), traj.q.front(), eq);
    const double u1 = shifted_energy(g, p, traj.p.back(), traj.q.back(), eq);
    std::optional<double> period;
    if (probe) period = zero_crossing_period(traj, *probe);

    if (!a.out.empty()) {
        std::ostringstream csv;
        csv.precision(12);
        csv << "t";
        for (std::size_t i = 0; i < g.node_count(); ++i) csv << ",y_" << i;
        csv << "\n";
        for (std::size_t k = 0; k < traj.size(); ++k) {
            csv << traj.t[k];
            for (double y : traj.y[k]) csv << "," << y;
            csv << "\n";
        }
        write_file(a.out, csv.str());
    }
    if (!a.svg.empty()) write_file(a.svg, render_svg(traj));

    if (globals.json) {
        json out{{"samples", traj.size()},
                 {"consensus", consensus.reached},
                 {"limit", consensus.limit.empty() ? 0.0 : consensus.limit[0]},
                 {"energy_start", u0},
                 {"energy_end", u1}};
        if (period) out["period"] = *period;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "samples: " << traj.size() << "\n";
        std::cout << "consensus: " << (consensus.reached ? "yes" : "no");
        if (consensus.reached && !consensus.limit.empty()) std::cout << " (limit " << consensus.limit[0] << ")";
        std::cout << "\n";
        std::cout << "energy: " << u0 << " -> " << u1 << "\n";
        if (period) std::cout << "period: " << *period << "\n";
    }
    return 0;
}

// -------------------------------------------------------------------- sat

struct SatArgs {
    std::string formula;
    std::string assignment;
    unsigned jobs = default_jobs();
};

int cmd_sat(const SatArgs& a, const Globals& globals) {
    const CnfFormula f = parse_dimacs(read_file(a.formula));
    const auto x = sat_solve_via_rbc(f, {.jobs = a.jobs});
    if (x && !a.assignment.empty()) {
        std::string text;
        for (std::size_t i = 0; i < x->size(); ++i) text += "x" + std::to_string(i + 1) + "=" + ((*x)[i] ? "1" : "0") + "\n";
        write_file(a.assignment, text);
    }
    if (globals.json) {
        json out{{"satisfiable", x.has_value()}};
        if (x) out["assignment"] = *x;
        std::cout << out.dump(2) << "\n";
    } else if (x) {
        std::cout << "SAT\n";
        for (std::size_t i = 0; i < x->size(); ++i) std::cout << "x" << i + 1 << "=" << ((*x)[i] ? 1 : 0) << "\n";
    } else {
        std::cout << "UNSAT\n";
    }
    return x ? kSat : kUnsat;
}

// ---------------------------------------------------------------- convert

bool is_dot(const std::filesystem::path& path) {
    const auto ext = path.extension();
    return ext == ".dot" || ext == ".gv";
}

int cmd_convert(const std::string& in, const std::string& out) {
    const GraphFile file = load_graph(in);
    write_file(out, is_dot(out) ? write_dot(file.graph, file.params) : write_graph_json(file.graph, file.params));
    return 0;
}

// --------------------------------------------------------------- selftest

int cmd_selftest(std::size_t count, const Globals& globals) {
    std::mt19937_64 rng(globals.seed);
    std::size_t graphs = 0, graph_fail = 0, formulas = 0, formula_fail = 0;

    for (std::size_t t = 0; t < count; ++t) {
        const std::size_t n = 2 + rng() % 9;
        std::set<std::pair<NodeId, NodeId>> edge_set;
        for (NodeId i = 1; i < n; ++i) edge_set.emplace(static_cast<NodeId>(rng() % i), i);
        for (std::size_t e = rng() % 4; e > 0; --e) {
            const NodeId u = rng() % n, v = rng() % n;
            if (u != v) edge_set.emplace(std::min(u, v), std::max(u, v));
        }
        const std::vector<std::pair<NodeId, NodeId>> edges(edge_set.begin(), edge_set.end());
        std::vector<NodeId> damped;
        for (NodeId i = 0; i < n; ++i) {
            if (rng() % 3 == 0) damped.push_back(i);
        }
        if (damped.empty()) damped.push_back(static_cast<NodeId>(rng() % n));
        const DampingGraph g = DampingGraph::build(n, damped, edges);
        ++graphs;
        const bool cnc = cnc_decide(g).pigas;
        const auto brute = brute_force_rbc(g);
        bool ok = cnc == !brute.has_value();
        if (brute) ok = ok && certificate_valid(g, certify_oscillation(g, *brute));
        graph_fail += !ok;

        CnfFormula f;
        f.num_vars = 1 + rng() % 4;
        for (std::size_t j = 1 + rng() % 6; j > 0; --j) {
            std::vector<int> clause;
            for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
                const int var = 1 + static_cast<int>(rng() % f.num_vars);
                clause.push_back(rng() % 2 ? var : -var);
            }
            f.clauses.push_back(clause);
        }
        bool sat = false;
        for (std::uint64_t bits = 0; bits < (1u << f.num_vars) && !sat; ++bits) {
            std::vector<bool> assignment(f.num_vars);
            for (std::size_t i = 0; i < f.num_vars; ++i) assignment[i] = bits >> i & 1;
            sat = f.satisfied_by(assignment);
        }
        const auto x = sat_solve_via_rbc(f);
        ++formulas;
        formula_fail += x.has_value() != sat || (x && !f.satisfied_by(*x));
    }

    if (globals.json) {
        std::cout << json{{"seed", globals.seed},
                          {"graphs", graphs},
                          {"graph_failures", graph_fail},
                          {"formulas", formulas},
                          {"formula_failures", formula_fail}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << (graph_fail ? "FAIL" : "PASS") << " cnc vs brute force: " << graphs - graph_fail << "/" << graphs
                  << "\n";
        std::cout << (formula_fail ? "FAIL" : "PASS") << " sat via reduction: " << formulas - formula_fail << "/"
                  << formulas << "\n";
    }
    return graph_fail + formula_fail == 0 ? 0 : kError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parameter-independent stability of damped mass-spring networks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    app.add_flag("--json", globals.json, "Machine-readable output");
    app.add_option("--seed", globals.seed, "Seed for randomized steps");

    AnalyzeArgs analyze_args;
    auto* analyze_cmd = app.add_subcommand("analyze", "Decide PI-GAS and print a certificate");
    analyze_cmd->add_option("graph", analyze_args.graph, "Graph file (.json or .dot)")->required();
    analyze_cmd->add_option("--method", analyze_args.method, "zfa, cnc or bruteforce")
        ->check(CLI::IsMember({"zfa", "cnc", "bruteforce"}));
    analyze_cmd->add_option("--witness", analyze_args.witness, "Write the certificate JSON here");
    analyze_cmd->add_flag("--emit-forcing-log", analyze_args.forcing_log, "Print every forcing step");
    analyze_cmd->add_option("--jobs", analyze_args.jobs, "Worker threads")->check(CLI::PositiveNumber);

    SpectralArgs spectral_args;
    auto* spectral_cmd = app.add_subcommand("spectral", "Stability and oscillation modes for fixed parameters");
    spectral_cmd->add_option("graph", spectral_args.graph, "Graph file")->required();
    spectral_cmd->add_option("--params", spectral_args.params, "Parameter JSON");
    spectral_cmd->add_option("--modes", spectral_args.modes, "Write modes CSV here");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Integrate the network in time");
    sim_cmd->add_option("graph", sim_args.graph, "Graph file")->required();
    sim_cmd->add_option("--params", sim_args.params, "Parameter JSON (ignored with --init witness)");
    sim_cmd->add_option("--init", sim_args.init, "witness, random or file")
        ->check(CLI::IsMember({"witness", "random", "file"}));
    sim_cmd->add_option("--init-file", sim_args.init_file, "JSON with \"p\" and optional \"q\"");
    sim_cmd->add_option("--amplitude", sim_args.amplitude, "Scale of the initial momenta");
    sim_cmd->add_option("--dt", sim_args.dt, "Step size")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--T", sim_args.T, "Horizon")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--tol", sim_args.tol, "Consensus tolerance")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--out", sim_args.out, "Write velocity CSV here");
    sim_cmd->add_option("--svg", sim_args.svg, "Write a velocity plot here");

    SatArgs sat_args;
    auto* sat_cmd = app.add_subcommand("sat", "Solve a DIMACS CNF through the coloring reduction");
    sat_cmd->add_option("formula", sat_args.formula, "DIMACS file")->required();
    sat_cmd->add_option("--assignment", sat_args.assignment, "Write x<i>=<0|1> lines here");
    sat_cmd->add_option("--jobs", sat_args.jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string convert_in, convert_out;
    auto* convert_cmd = app.add_subcommand("convert", "Convert between graph JSON and DOT");
    convert_cmd->add_option("input", convert_in, "Input graph")->required();
    convert_cmd->add_option("output", convert_out, "Output path; .dot/.gv for DOT, JSON otherwise")->required();

    std::size_t selftest_count = 100;
    auto* selftest_cmd = app.add_subcommand("selftest", "Randomized cross-checks against brute force");
    selftest_cmd->add_option("--count", selftest_count, "Random instances per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kError;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(analyze_args, globals);
        if (*spectral_cmd) return cmd_spectral(spectral_args, globals);
        if (*sim_cmd) return cmd_simulate(sim_args, globals);
        if (*sat_cmd) return cmd_sat(sat_args, globals);
        if (*convert_cmd) return cmd_convert(convert_in, convert_out);
        if (*selftest_cmd) return cmd_selftest(selftest_count, globals);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
