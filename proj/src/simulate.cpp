#include "kicklue/simulate.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "kicklue/dynamics.hpp"
#include "kicklue/rng.hpp"
#include "kicklue/schmidt.hpp"

namespace kicklue {

void RunConfig::validate() const {
    LatticeConfig::make(n);
    params.validate();
    if (burn_in < -1) throw std::invalid_argument("run config: burn_in must be >= 0 or auto");
    if (stride < 1) throw std::invalid_argument("run config: stride must be >= 1");
    if (count < 1) throw std::invalid_argument("run config: count must be >= 1");
    if (trajectories < 1) throw std::invalid_argument("run config: trajectories must be >= 1");
    if (init == InitProtocol::fixed && trajectories > 1)
        throw std::invalid_argument(
            "run config: fixed initial state with multiple trajectories duplicates work; "
            "use init = random");
    if (saturation_window < 2 || guard_steps < 0 || max_burn_in < 1)
        throw std::invalid_argument("run config: bad saturation parameters");
}

double RunConfig::effective_sigma() const {
    return sigma > 0.0 ? sigma : LatticeConfig::make(n).default_sigma();
}

std::string RunConfig::burn_in_label() const {
    return burn_in < 0 ? "auto" : std::to_string(burn_in);
}

namespace {

double trailing_slope(const std::vector<double>& series, int window) {
    const double w = window;
    const double tbar = (w - 1.0) / 2.0;
    const double denom = w * (w * w - 1.0) / 12.0;
    double cov = 0.0;
    const std::size_t base = series.size() - static_cast<std::size_t>(window);
    for (int t = 0; t < window; ++t) cov += (t - tbar) * series[base + t];
    return cov / denom;
}

WaveFunction2D initial_state(const RunConfig& cfg, const LatticeConfig& lattice,
                             std::uint64_t trajectory) {
    CoherentStateSpec s1, s2;
    s1.sigma = s2.sigma = cfg.effective_sigma();
    if (cfg.init == InitProtocol::fixed) {
        s1.x0 = s2.x0 = cfg.x0;
        s1.p0 = s2.p0 = cfg.p0;
    } else {
        Rng rng = Rng::stream(cfg.seed, trajectory);
        s1.x0 = 2.0 * std::numbers::pi * rng.uniform();
        s1.p0 = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
        s2.x0 = 2.0 * std::numbers::pi * rng.uniform();
        s2.p0 = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
    }
    return build_coherent_product(s1, s2, lattice);
}

void record(std::vector<EntropyRecord>* series, long step, const SchmidtSpectrum& spec) {
    if (!series) return;
    EntropyRecord r;
    r.step = step;
    r.entropy = von_neumann_entropy(spec);
    r.lambda1_sq = spec.weights.size() > 0 ? spec.weights[0] : 0.0;
    r.lambda2_sq = spec.weights.size() > 1 ? spec.weights[1] : 0.0;
    r.lambda3_sq = spec.weights.size() > 2 ? spec.weights[2] : 0.0;
    series->push_back(r);
}

// One trajectory: burn in, then drop a scaled spectrum into `out` every
// stride steps, `quota` times. `series`, when non-null, receives a record
// for every step including step 0.
void run_trajectory(const RunConfig& cfg, const FloquetOperator& op, std::uint64_t trajectory,
                    int quota, double* out, std::vector<EntropyRecord>* series) {
    WaveFunction2D psi = initial_state(cfg, op.lattice(), trajectory);
    long step = 0;
    const bool auto_burn_in = cfg.burn_in < 0;

    if (series) record(series, 0, schmidt_decompose(psi));

    if (auto_burn_in) {
        std::vector<double> entropy;
        long detected = -1;
        while (detected < 0) {
            if (step >= cfg.max_burn_in)
                throw std::runtime_error(
                    "simulate: entropy did not saturate within max_burn_in steps");
            op.step(psi);
            ++step;
            const SchmidtSpectrum spec = schmidt_decompose(psi);
            record(series, step, spec);
            entropy.push_back(von_neumann_entropy(spec));
            if (entropy.size() >= static_cast<std::size_t>(cfg.saturation_window) &&
                std::abs(trailing_slope(entropy, cfg.saturation_window)) <
                    cfg.saturation_slope_tol)
                detected = step;
        }
        for (int g = 0; g < cfg.guard_steps; ++g) {
            op.step(psi);
            ++step;
            if (series) record(series, step, schmidt_decompose(psi));
        }
    } else {
        for (long b = 0; b < cfg.burn_in; ++b) {
            op.step(psi);
            ++step;
            if (series) record(series, step, schmidt_decompose(psi));
        }
    }

    const int n = cfg.n;
    for (int q = 0; q < quota; ++q) {
        for (int s = 0; s < cfg.stride; ++s) {
            op.step(psi);
            ++step;
            if (series && s + 1 < cfg.stride) record(series, step, schmidt_decompose(psi));
        }
        const SchmidtSpectrum spec = schmidt_decompose(psi);
        record(series, step, spec);
        const ScaledSpectrum scaled = scale_spectrum(spec, n);
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(q) * n + i] = scaled.epsilons[static_cast<std::size_t>(i)];
    }
}

SimulationResult generate_impl(const RunConfig& cfg, bool parallel) {
    cfg.validate();
    const LatticeConfig lattice = LatticeConfig::make(cfg.n);
    const FloquetOperator op(lattice, cfg.params);

    // trajectory t handles quota_t spectra, stored at fixed offsets
    const int T = cfg.trajectories;
    std::vector<int> quota(static_cast<std::size_t>(T), cfg.count / T);
    for (int t = 0; t < cfg.count % T; ++t) ++quota[static_cast<std::size_t>(t)];
    std::vector<std::size_t> offset(static_cast<std::size_t>(T) + 1, 0);
    for (int t = 0; t < T; ++t)
        offset[static_cast<std::size_t>(t) + 1] =
            offset[static_cast<std::size_t>(t)] +
            static_cast<std::size_t>(quota[static_cast<std::size_t>(t)]) * cfg.n;

    std::vector<double> levels(static_cast<std::size_t>(cfg.count) * cfg.n);
    std::vector<EntropyRecord> series;
    std::exception_ptr failure;

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < T; ++t) {
            try {
                run_trajectory(cfg, op, static_cast<std::uint64_t>(t),
                               quota[static_cast<std::size_t>(t)],
                               levels.data() + offset[static_cast<std::size_t>(t)],
                               t == 0 ? &series : nullptr);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    } else {
        for (int t = 0; t < T; ++t)
            run_trajectory(cfg, op, static_cast<std::uint64_t>(t),
                           quota[static_cast<std::size_t>(t)],
                           levels.data() + offset[static_cast<std::size_t>(t)],
                           t == 0 ? &series : nullptr);
    }
    if (failure) std::rethrow_exception(failure);

    EnsembleMetadata meta;
    meta.source = "simulation";
    meta.n = cfg.n;
    meta.k1 = cfg.params.k1;
    meta.k2 = cfg.params.k2;
    meta.cpp = cfg.params.cpp;
    meta.sigma = cfg.effective_sigma();
    meta.burn_in = cfg.burn_in_label();
    meta.stride = cfg.stride;
    meta.seed = cfg.seed;
    meta.count = cfg.count;
    meta.fixed_trace = false;
    meta.init = cfg.init == InitProtocol::fixed ? "fixed" : "random";
    meta.trajectories = T;

    SimulationResult result{SpectraEnsemble(std::move(meta), std::move(levels)),
                            std::move(series)};
    return result;
}

}  // namespace

SimulationResult generate_ensemble(const RunConfig& cfg) { return generate_impl(cfg, true); }
SimulationResult generate_ensemble_serial(const RunConfig& cfg) {
    return generate_impl(cfg, false);
}

std::vector<EntropyRecord> entropy_series(const RunConfig& cfg, long steps) {
    cfg.validate();
    if (steps < 0) throw std::invalid_argument("entropy_series: steps must be >= 0");
    const LatticeConfig lattice = LatticeConfig::make(cfg.n);
    const FloquetOperator op(lattice, cfg.params);
    WaveFunction2D psi = initial_state(cfg, lattice, 0);
    std::vector<EntropyRecord> series;
    record(&series, 0, schmidt_decompose(psi));
    for (long s = 1; s <= steps; ++s) {
        op.step(psi);
        record(&series, s, schmidt_decompose(psi));
    }
    return series;
}

}  // namespace kicklue
