#include <CLI11.hpp>
#include <omp.h>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include "kicklue/analyze.hpp"
#include "kicklue/io.hpp"
#include "kicklue/rmt.hpp"
#include "kicklue/simulate.hpp"

namespace {

using namespace kicklue;

long long to_int(const std::string& v, const std::string& key) {
    try {
        return std::stoll(v);
    } catch (...) {
        throw std::invalid_argument("config: bad integer for '" + key + "'");
    }
}

double to_real(const std::string& v, const std::string& key) {
    try {
        return std::stod(v);
    } catch (...) {
        throw std::invalid_argument("config: bad number for '" + key + "'");
    }
}

struct SimulateCmd {
    std::string config, out = "spectra.txt", entropy_out;
    int n = 0;
    double k1 = 0, k2 = 0, cpp = 0, x0 = 0, p0 = 0, sigma = 0;
    std::string burn_in, init;
    int count = 0, stride = 0, trajectories = 0;
    std::uint64_t seed = 0;

    CLI::Option *o_n{}, *o_k1{}, *o_k2{}, *o_cpp{}, *o_x0{}, *o_p0{}, *o_sigma{}, *o_burn{},
        *o_init{}, *o_count{}, *o_stride{}, *o_traj{}, *o_seed{}, *o_out{}, *o_entropy{};

    void add_to(CLI::App* cmd) {
        cmd->add_option("--config", config, "run configuration file (key = value lines)");
        o_n = cmd->add_option("--N", n, "grid points per degree of freedom");
        o_k1 = cmd->add_option("--k1", k1, "first kick strength");
        o_k2 = cmd->add_option("--k2", k2, "second kick strength");
        o_cpp = cmd->add_option("--cpp", cpp, "momentum-momentum coupling");
        o_x0 = cmd->add_option("--x0", x0, "initial position center");
        o_p0 = cmd->add_option("--p0", p0, "initial momentum center");
        o_sigma = cmd->add_option("--sigma", sigma, "coherent-state width (0 = sqrt(hbar/2))");
        o_burn = cmd->add_option("--burn-in", burn_in, "burn-in steps or 'auto'");
        o_init = cmd->add_option("--init", init, "initial-condition protocol: fixed | random");
        o_count = cmd->add_option("--count", count, "number of spectra to collect");
        o_stride = cmd->add_option("--stride", stride, "steps between collected spectra");
        o_traj = cmd->add_option("--trajectories", trajectories, "independent trajectories");
        o_seed = cmd->add_option("--seed", seed, "master seed");
        o_out = cmd->add_option("--out", out, "output spectra file");
        o_entropy =
            cmd->add_option("--entropy-out", entropy_out, "entropy time-series output file");
    }

    std::map<std::string, std::string> extras;

    RunConfig build(const std::vector<std::string>& extra_allowed = {"out", "entropy_out"}) {
        RunConfig cfg;
        if (!config.empty()) {
            apply_run_config(cfg, parse_config_file(config), extra_allowed, extras);
            if (extras.count("out") && !o_out->count()) out = extras["out"];
            if (extras.count("entropy_out") && !o_entropy->count())
                entropy_out = extras["entropy_out"];
        }
        if (o_n->count()) cfg.n = n;
        if (o_k1->count()) cfg.params.k1 = k1;
        if (o_k2->count()) cfg.params.k2 = k2;
        if (o_cpp->count()) cfg.params.cpp = cpp;
        if (o_x0->count()) cfg.x0 = x0;
        if (o_p0->count()) cfg.p0 = p0;
        if (o_sigma->count()) cfg.sigma = sigma;
        if (o_burn->count()) cfg.burn_in = burn_in == "auto" ? -1 : to_int(burn_in, "burn-in");
        if (o_init->count()) {
            if (init == "fixed")
                cfg.init = InitProtocol::fixed;
            else if (init == "random")
                cfg.init = InitProtocol::random;
            else
                throw std::invalid_argument("simulate: --init must be fixed or random");
        }
        if (o_count->count()) cfg.count = count;
        if (o_stride->count()) cfg.stride = stride;
        if (o_traj->count()) cfg.trajectories = trajectories;
        if (o_seed->count()) cfg.seed = seed;
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "kicklue: entanglement spectra of a coupled kicked pair, "
        "Laguerre-ensemble analytics and spectral statistics"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

    SimulateCmd sim;
    auto* sim_cmd = app.add_subcommand("simulate", "generate a Schmidt-spectra ensemble");
    sim.add_to(sim_cmd);
    sim_cmd->callback([&] {
        if (threads > 0) omp_set_num_threads(threads);
        RunConfig cfg = sim.build();
        const SimulationResult result = generate_ensemble(cfg);
        write_spectra_file(sim.out, result.ensemble);
        const std::string entropy_path =
            sim.entropy_out.empty() ? sim.out + ".entropy" : sim.entropy_out;
        write_entropy_series(entropy_path, cfg, result.first_trajectory);
        std::cout << "wrote " << result.ensemble.count() << " spectra to " << sim.out
                  << " (entropy series: " << entropy_path << ")\n";
    });

    // rmt-sample
    std::string rmt_config, rmt_out = "lue.txt";
    int rmt_n = 32, rmt_count = 1000;
    std::uint64_t rmt_seed = 1;
    bool rmt_fixed_trace = false;
    auto* rmt_cmd =
        app.add_subcommand("rmt-sample", "sample spectra from the Laguerre unitary ensemble");
    rmt_cmd->add_option("--config", rmt_config, "configuration file");
    auto* o_rn = rmt_cmd->add_option("--N", rmt_n, "matrix dimension");
    auto* o_rcount = rmt_cmd->add_option("--count", rmt_count, "number of spectra");
    auto* o_rseed = rmt_cmd->add_option("--seed", rmt_seed, "sampler seed");
    auto* o_rfixed = rmt_cmd->add_flag("--fixed-trace", rmt_fixed_trace,
                                       "rescale each spectrum so sum(eps) = N^2");
    auto* o_rout = rmt_cmd->add_option("--out", rmt_out, "output spectra file");
    rmt_cmd->callback([&] {
        if (threads > 0) omp_set_num_threads(threads);
        if (!rmt_config.empty()) {
            for (const auto& [key, value] : parse_config_file(rmt_config)) {
                if ((key == "n" || key == "N") && !o_rn->count())
                    rmt_n = static_cast<int>(to_int(value, key));
                else if (key == "count" && !o_rcount->count())
                    rmt_count = static_cast<int>(to_int(value, key));
                else if (key == "seed" && !o_rseed->count())
                    rmt_seed = static_cast<std::uint64_t>(to_int(value, key));
                else if (key == "fixed_trace" && !o_rfixed->count())
                    rmt_fixed_trace = to_int(value, key) != 0;
                else if (key == "out" && !o_rout->count())
                    rmt_out = value;
                else if (key != "n" && key != "N" && key != "count" && key != "seed" &&
                         key != "fixed_trace" && key != "out")
                    throw std::invalid_argument("config: unknown key '" + key + "'");
            }
        }
        SamplerConfig cfg{rmt_n, rmt_seed, rmt_fixed_trace};
        const SpectraEnsemble ens = sample_lue_ensemble(cfg, rmt_count);
        write_spectra_file(rmt_out, ens);
        std::cout << "wrote " << ens.count() << " LUE spectra to " << rmt_out << "\n";
    });

    // analyze
    std::string an_in, an_out = "table.txt";
    AnalyzeOptions an;
    auto* an_cmd = app.add_subcommand("analyze", "estimate spectral statistics from an ensemble");
    an_cmd->add_option("ensemble", an_in, "spectra file to analyze")->required();
    an_cmd->add_option("--analysis", an.analysis,
                       "r1 | cluster-hard | cluster-bulk | cluster-soft | spacing")
        ->required();
    an_cmd->add_option("--out", an_out, "output table file");
    an_cmd->add_option("--N", an.expected_n, "expected ensemble dimension (checked)");
    an_cmd->add_option("--bin-width", an.bin_width, "bin width in omega/spacing units");
    an_cmd->add_option("--max-omega", an.max_separation, "cluster separation range");
    an_cmd->add_option("--max-spacing", an.max_spacing, "spacing histogram range");
    an_cmd->add_option("--pin-window", an.pin_window, "hard/soft conditioning window");
    an_cmd->add_option("--rotations", an.rotations, "cross-spectrum partners per spectrum");
    an_cmd->add_option("--r1-bin-width", an.r1_bin_width, "bin width for r1 (epsilon units)");
    an_cmd->add_option("--window-lo", an.window_lo, "spacing window lower edge");
    an_cmd->add_option("--window-hi", an.window_hi, "spacing window upper edge");
    an_cmd->callback([&] {
        if (threads > 0) omp_set_num_threads(threads);
        run_analyze_file(an_in, an, an_out);
        std::cout << "wrote " << an.analysis << " table to " << an_out << "\n";
    });

    // entropy
    SimulateCmd ent;
    ent.out = "entropy.txt";
    long ent_steps = 1000;
    auto* ent_cmd =
        app.add_subcommand("entropy", "record S and leading Schmidt weights per step");
    ent.add_to(ent_cmd);
    auto* o_steps = ent_cmd->add_option("--steps", ent_steps, "number of steps");
    ent_cmd->callback([&] {
        if (threads > 0) omp_set_num_threads(threads);
        RunConfig cfg = ent.build({"out", "entropy_out", "steps"});
        if (ent.extras.count("steps") && !o_steps->count())
            ent_steps = to_int(ent.extras["steps"], "steps");
        const auto series = entropy_series(cfg, ent_steps);
        write_entropy_series(ent.out, cfg, series);
        std::cout << "wrote " << series.size() << " steps to " << ent.out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "kicklue: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
