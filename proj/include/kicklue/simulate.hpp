#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kicklue/ensemble.hpp"
#include "kicklue/lattice.hpp"

namespace kicklue {

enum class InitProtocol { fixed, random };

// Full description of an ensemble-generation run. Defaults are the
// desk-scale strong-chaos setup; N = 128 and larger counts are plain
// config choices.
struct RunConfig {
    int n = 64;
    SystemParams params{3.0, 2.5, 0.05};
    InitProtocol init = InitProtocol::fixed;
    double x0 = 1.5707963267948966;   // pi/2
    double p0 = 0.7853981633974483;   // pi/4
    double sigma = 0.0;               // <= 0 selects sqrt(hbar/2)
    long burn_in = -1;                // -1 = auto (saturation detection)
    int stride = 10;
    int count = 2000;
    int trajectories = 1;
    std::uint64_t seed = 1;

    // auto burn-in: saturation window/threshold, guard steps after the
    // detector fires, and a hard cap
    int saturation_window = 50;
    double saturation_slope_tol = 1e-3;
    int guard_steps = 50;
    long max_burn_in = 20000;

    void validate() const;
    double effective_sigma() const;
    std::string burn_in_label() const;  // "auto" or the step count
};

struct EntropyRecord {
    long step = 0;
    double entropy = 0.0;
    double lambda1_sq = 0.0;
    double lambda2_sq = 0.0;
    double lambda3_sq = 0.0;
};

struct SimulationResult {
    SpectraEnsemble ensemble;
    std::vector<EntropyRecord> first_trajectory;  // per-step, starting at step 0
};

// Evolves `trajectories` independent trajectories (stream-seeded from the
// master seed), burns each in (fixed steps or until entropy saturation plus
// guard steps), then collects one scaled Schmidt spectrum every `stride`
// steps until the per-trajectory quota is met. Spectra land in trajectory
// order regardless of scheduling.
SimulationResult generate_ensemble(const RunConfig& cfg);
SimulationResult generate_ensemble_serial(const RunConfig& cfg);

// Single trajectory, records step, S and the three largest Schmidt weights
// for steps 0..steps.
std::vector<EntropyRecord> entropy_series(const RunConfig& cfg, long steps);

}  // namespace kicklue
