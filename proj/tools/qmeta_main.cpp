// qmeta: config-driven experiment runner.
//
// Subcommands: nibp, spectrum, resilience, flip, asp, anneal.
// Exit codes: 0 ok, 1 config error, 2 invariant violation, 3 resource limit.

#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmeta/analog.hpp"
#include "qmeta/errors.hpp"
#include "qmeta/experiment.hpp"
#include "qmeta/io.hpp"
#include "qmeta/liouvillian.hpp"
#include "qmeta/resilience.hpp"
#include "qmeta/version.hpp"

namespace {

using json = nlohmann::ordered_json;

struct GlobalOpts {
    std::uint64_t seed = 7;
    std::string out = "qmeta_out";
    int threads = 0;
};

std::vector<int> parse_layer_range(const std::string& spec) {
    // "start:stop:step" or a comma list
    std::vector<int> out;
    if (spec.find(':') != std::string::npos) {
        int start = 0, stop = 0, step = 0;
        if (std::sscanf(spec.c_str(), "%d:%d:%d", &start, &stop, &step) != 3 ||
            step <= 0 || stop < start)
            throw qmeta::ConfigError("bad layer range '" + spec +
                                     "' (want start:stop:step)");
        for (int l = start; l <= stop; l += step) out.push_back(l);
    } else {
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ','))
            out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw qmeta::ConfigError("empty layer range");
    return out;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw qmeta::ConfigError("cannot open output file: " + path);
    f << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int cmd_nibp(const GlobalOpts& g, int n, const std::string& layers,
             const std::string& axes_csv, const std::string& q_csv,
             int samples) {
    qmeta::NibpConfig cfg;
    cfg.n = n;
    cfg.layer_grid = parse_layer_range(layers);
    cfg.samples = samples;
    cfg.seed = g.seed;
    cfg.axes.clear();
    for (char c : axes_csv)
        if (c == 'x' || c == 'y') cfg.axes.push_back(c);
    if (cfg.axes.empty()) throw qmeta::ConfigError("no valid axes in --axes");
    if (std::sscanf(q_csv.c_str(), "%lf,%lf,%lf", &cfg.q[0], &cfg.q[1],
                    &cfg.q[2]) != 3)
        throw qmeta::ConfigError("bad --q (want qx,qy,qz)");

    const auto rows = qmeta::run_nibp(cfg);

    qmeta::CsvWriter csv(
        g.out,
        {"axis", "L", "mean_abs_grad", "sem_grad", "mean_distance",
         "sem_distance", "mean_signed_grad", "sem_signed_grad",
         "mean_ideal_distance", "sem_ideal_distance"});
    csv.header("experiment", "nibp");
    csv.header("n", std::int64_t(cfg.n));
    csv.header("layers", layers);
    csv.header("axes", axes_csv);
    csv.header("q", q_csv);
    csv.header("samples", std::int64_t(cfg.samples));
    csv.header("seed", std::int64_t(cfg.seed));
    for (const auto& r : rows) {
        csv.row_mixed({std::string(1, r.axis), std::to_string(r.layers),
                       qmeta::CsvWriter::format_double(r.mean_abs_grad),
                       qmeta::CsvWriter::format_double(r.sem_abs_grad),
                       qmeta::CsvWriter::format_double(r.mean_distance),
                       qmeta::CsvWriter::format_double(r.sem_distance),
                       qmeta::CsvWriter::format_double(r.mean_signed_grad),
                       qmeta::CsvWriter::format_double(r.sem_signed_grad),
                       qmeta::CsvWriter::format_double(r.mean_ideal_distance),
                       qmeta::CsvWriter::format_double(r.sem_ideal_distance)});
    }
    csv.write();
    std::cout << "nibp: wrote " << rows.size() << " rows to " << g.out << "\n";
    return 0;
}

int cmd_spectrum(const GlobalOpts& g, const std::string& config, double tau2) {
    const qmeta::GeneratorFile gen = qmeta::parse_generator_file(config);
    const Eigen::MatrixXcd s = qmeta::build_superoperator(gen.generator);
    const qmeta::SpectralDecomposition spec = qmeta::spectral_decomposition(s);
    const qmeta::MetastableManifold mm =
        qmeta::metastable_manifold(spec, tau2);

    qmeta::CsvWriter csv(g.out, {"index", "re_lambda", "im_lambda",
                                 "in_manifold"});
    csv.header("experiment", "spectrum");
    csv.header("config", config);
    csv.header("tau2", tau2);
    csv.header("tau1_attained", mm.tau1);
    csv.header("tau2_attained", mm.tau2);
    csv.header("gap_ratio", mm.gap_ratio);
    for (size_t j = 0; j < spec.eigenvalues.size(); ++j) {
        const bool in_manifold =
            std::find(mm.indices.begin(), mm.indices.end(),
                      static_cast<int>(j)) != mm.indices.end();
        csv.row({double(j), spec.eigenvalues[j].real(),
                 spec.eigenvalues[j].imag(), in_manifold ? 1.0 : 0.0});
    }
    csv.write();
    std::cout << "spectrum: " << spec.eigenvalues.size() << " modes, "
              << mm.indices.size() << " in manifold, gap ratio "
              << mm.gap_ratio << "\n";
    return 0;
}

int cmd_resilience_check_sm(int n) {
    std::cout << "N_y(" << n << ") = " << qmeta::hea_min_multiplicity(n, 'y')
              << "\n"
              << "N_y~(" << n << ") = " << qmeta::hea_min_multiplicity(n, 'x')
              << "\n";
    return 0;
}

int cmd_resilience(const GlobalOpts& g, const std::string& circuit_path,
                   bool exact) {
    const qmeta::CircuitFile cf = qmeta::parse_circuit_file(circuit_path);

    // |0...0> stabilizer generators: Z_j
    std::vector<qmeta::PauliString> stabs;
    for (int q = 0; q < cf.n; ++q)
        stabs.push_back(qmeta::single_site(cf.n, q, 'z'));
    const qmeta::Algorithm1Result bound =
        qmeta::algorithm1_bound(stabs, cf.cliffords, cf.noise);

    json j;
    j["experiment"] = "resilience";
    j["artifact_version"] = qmeta::kVersion;
    j["circuit"] = circuit_path;
    j["n"] = cf.n;
    j["layers"] = cf.circuit.depth();
    j["lambda_m_tilde"] = bound.lambda_m_tilde;
    j["per_layer_min"] = bound.per_layer_min;
    j["support_sizes"] = bound.support_sizes;
    if (exact) {
        const qmeta::ResilienceReport rep = qmeta::lambda_m_exact(
            cf.circuit, qmeta::PauliVector::zero_state(cf.n));
        j["lambda_m"] = rep.lambda_m;
        j["multiplicity"] = rep.multiplicity;
    }
    write_json(g.out, j);
    std::cout << "resilience: lambda_m_tilde = " << bound.lambda_m_tilde;
    if (exact) std::cout << " (exact lambda_m in " << g.out << ")";
    std::cout << "\n";
    return 0;
}

int cmd_flip(const GlobalOpts& g, const std::string& axis, double gamma_x,
             double eps, double T, double dt) {
    if (axis != "x" && axis != "y")
        throw qmeta::ConfigError("--axis must be x or y");
    const qmeta::FlipResult r =
        qmeta::single_qubit_flip(axis[0], gamma_x, eps, T, dt);
    json j;
    j["experiment"] = "flip";
    j["artifact_version"] = qmeta::kVersion;
    j["axis"] = axis;
    j["gamma_x"] = gamma_x;
    j["eps"] = eps;
    j["T"] = T;
    j["dt"] = dt;
    j["fidelity_integrated"] = r.fidelity_integrated;
    j["fidelity_analytic"] = r.fidelity_analytic;
    j["max_deviation"] =
        (r.integrated - r.analytic).cwiseAbs().maxCoeff();
    write_json(g.out, j);
    std::cout << "flip axis=" << axis << ": F = " << r.fidelity_integrated
              << " (closed form " << r.fidelity_analytic << ")\n";
    return 0;
}

int cmd_asp(const GlobalOpts& g, int n, double T, double dt,
            const std::string& init, bool noisy, double gamma) {
    if (init != "z" && init != "x")
        throw qmeta::ConfigError("--init must be z or x");
    const double amp = noisy ? gamma : 0.0;
    const qmeta::AspResult r =
        qmeta::asp_w_state(n, init[0], T, dt, amp, /*sample_stride=*/20);

    // energy against the target Hamiltonian
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::MatrixXcd hf = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (i != k)
                hf(Eigen::Index(1) << (n - 1 - i),
                   Eigen::Index(1) << (n - 1 - k)) -= 1.0;

    qmeta::CsvWriter csv(g.out, {"t", "fidelity", "energy", "trace_error",
                                 "fidelity_uhlmann"});
    csv.header("experiment", "asp");
    csv.header("n", std::int64_t(n));
    csv.header("T", T);
    csv.header("dt", dt);
    csv.header("init", init);
    csv.header("noisy", std::int64_t(noisy ? 1 : 0));
    csv.header("gamma_z_amplitude", amp);
    double final_energy = 0.0;
    for (size_t i = 0; i < r.trajectory.times.size(); ++i) {
        const auto& rho = r.trajectory.states[i];
        final_energy = (hf * rho).trace().real();
        csv.row({r.trajectory.times[i], r.fidelity_overlap[i], final_energy,
                 std::abs(rho.trace().real() - 1.0), r.fidelity_sqrt[i]});
    }
    csv.write();

    json j;
    j["experiment"] = "asp";
    j["artifact_version"] = qmeta::kVersion;
    j["n"] = n;
    j["T"] = T;
    j["init"] = init;
    j["noisy"] = noisy;
    j["peak_fidelity"] = r.peak_fidelity;
    j["peak_time"] = r.peak_time;
    j["final_fidelity"] = r.final_fidelity;
    j["final_energy"] = final_energy;
    j["max_trace_error"] = r.trajectory.max_trace_error;
    write_json(g.out + ".summary.json", j);
    std::cout << "asp init=" << init << (noisy ? " noisy" : " ideal")
              << ": peak F = " << r.peak_fidelity << " at t = " << r.peak_time
              << ", final F = " << r.final_fidelity << "\n";
    return 0;
}

int cmd_anneal(const GlobalOpts& g, const std::string& schedule, double T,
               double dt, double gx, double gy, double gz) {
    const bool reverse = schedule == "reverse";
    if (!reverse && schedule != "forward")
        throw qmeta::ConfigError("--schedule must be forward or reverse");
    const qmeta::Schedule sched = reverse
                                      ? qmeta::Schedule::reverse_hold(T)
                                      : qmeta::Schedule::forward_hold(T);

    // closed-system reference
    const qmeta::AnnealResult closed = qmeta::anneal(sched, reverse, {}, dt);
    double e_exp = closed.energy;
    const bool noisy = gx > 0.0 || gy > 0.0 || gz > 0.0;
    if (noisy) {
        const auto jumps = qmeta::pauli_dissipator(2, gx, gy, gz);
        e_exp = qmeta::anneal(sched, reverse, jumps, dt).energy;
    }
    const double re = qmeta::relative_error(e_exp, closed.energy);

    json j;
    j["experiment"] = "anneal";
    j["artifact_version"] = qmeta::kVersion;
    j["schedule"] = schedule;
    j["T"] = T;
    j["dt"] = dt;
    j["gamma"] = {gx, gy, gz};
    j["energy_closed"] = closed.energy;
    j["energy"] = e_exp;
    j["relative_error_percent"] = re;
    write_json(g.out, j);
    std::cout << "anneal " << schedule << ": E_bar = " << closed.energy
              << ", E = " << e_exp << ", R.E. = " << re << " %\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metastability-aware noise analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --seed/--out/--threads after the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "global RNG seed");
    app.add_option("--out", g.out, "output file path");
    app.add_option("--threads", g.threads, "OpenMP thread count (0 = default)");

    // nibp
    auto* nibp = app.add_subcommand("nibp", "barren-plateau depth sweep");
    int nibp_n = 8, nibp_samples = 1000;
    std::string nibp_layers = "10:100:10", nibp_axes = "x,y",
                nibp_q = "0.5,0,0.5";
    nibp->add_option("--n", nibp_n, "qubits");
    nibp->add_option("--layers", nibp_layers, "depth grid start:stop:step");
    nibp->add_option("--axes", nibp_axes, "rotation axes (comma list of x,y)");
    nibp->add_option("--q", nibp_q, "per-qubit channel factors qx,qy,qz");
    nibp->add_option("--samples", nibp_samples, "random initializations");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "generator spectral analysis");
    std::string spec_config;
    double spec_tau2 = 10.0;
    spectrum->add_option("--config", spec_config, "generator file")->required();
    spectrum->add_option("--tau2", spec_tau2, "metastable timescale");

    // resilience
    auto* resilience = app.add_subcommand("resilience", "noise-resilience bounds");
    std::string res_circuit;
    bool res_exact = false, res_check_sm = false;
    int res_n = 8;
    resilience->add_option("--circuit", res_circuit, "layered circuit file");
    resilience->add_flag("--exact", res_exact,
                         "also run the exact path DP (n <= 5)");
    resilience->add_flag("--check-sm", res_check_sm,
                         "print the ansatz minimum multiplicities");
    resilience->add_option("--n", res_n, "qubits for --check-sm");

    // flip
    auto* flip = app.add_subcommand("flip", "single-qubit bit flip under noise");
    std::string flip_axis = "y";
    double flip_gx = 1.0, flip_eps = 0.01, flip_T = M_PI, flip_dt = M_PI * 1e-4;
    flip->add_option("--axis", flip_axis, "rotation axis x or y");
    flip->add_option("--gamma-x", flip_gx, "dominant rate");
    flip->add_option("--eps", flip_eps, "transverse rate");
    flip->add_option("--T", flip_T, "duration");
    flip->add_option("--dt", flip_dt, "integrator step");

    // asp
    auto* asp = app.add_subcommand("asp", "adiabatic W-state preparation");
    int asp_n = 5;
    double asp_T = 100.0, asp_dt = 0.01, asp_gamma = -1.0;
    std::string asp_init = "z";
    bool asp_noisy = false;
    asp->add_option("--n", asp_n, "qubits");
    asp->add_option("--T", asp_T, "total time");
    asp->add_option("--dt", asp_dt, "integrator step");
    asp->add_option("--init", asp_init, "initialization z or x");
    asp->add_flag("--noisy", asp_noisy, "enable the dephasing noise");
    asp->add_option("--gamma", asp_gamma,
                    "jump amplitude (default sqrt(1/T))");

    // anneal
    auto* anneal_cmd = app.add_subcommand("anneal", "two-qubit annealing baseline");
    std::string ann_schedule = "forward";
    double ann_T = 200.0, ann_dt = 0.01, ann_gx = 0.0, ann_gy = 0.0,
           ann_gz = 0.0;
    anneal_cmd->add_option("--schedule", ann_schedule, "forward or reverse");
    anneal_cmd->add_option("--T", ann_T, "total time");
    anneal_cmd->add_option("--dt", ann_dt, "integrator step");
    anneal_cmd->add_option("--gamma-x", ann_gx, "noise rate x");
    anneal_cmd->add_option("--gamma-y", ann_gy, "noise rate y");
    anneal_cmd->add_option("--gamma-z", ann_gz, "noise rate z");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (g.threads > 0) omp_set_num_threads(g.threads);
        if (nibp->parsed())
            return cmd_nibp(g, nibp_n, nibp_layers, nibp_axes, nibp_q,
                            nibp_samples);
        if (spectrum->parsed()) return cmd_spectrum(g, spec_config, spec_tau2);
        if (resilience->parsed()) {
            if (res_check_sm) return cmd_resilience_check_sm(res_n);
            if (res_circuit.empty())
                throw qmeta::ConfigError(
                    "resilience: need --circuit or --check-sm");
            return cmd_resilience(g, res_circuit, res_exact);
        }
        if (flip->parsed())
            return cmd_flip(g, flip_axis, flip_gx, flip_eps, flip_T, flip_dt);
        if (asp->parsed())
            return cmd_asp(g, asp_n, asp_T, asp_dt, asp_init, asp_noisy,
                           asp_gamma > 0 ? asp_gamma : std::sqrt(1.0 / asp_T));
        if (anneal_cmd->parsed())
            return cmd_anneal(g, ann_schedule, ann_T, ann_dt, ann_gx, ann_gy,
                              ann_gz);
    } catch (const qmeta::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const qmeta::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
