#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "kicklue/ensemble.hpp"

namespace kicklue {

struct SamplerConfig {
    int n = 0;
    std::uint64_t seed = 0;
    bool fixed_trace = false;  // rescale each spectrum so sum(eps) = N^2

    void validate() const;
};

// N x N matrix with independent complex Gaussian entries, Re and Im each of
// variance 1/2 (unit-variance entries: the spectrum of squared singular
// values then carries no free scale). Draws from stream `index` of the seed.
Eigen::MatrixXcd lue_matrix(const SamplerConfig& cfg, std::uint64_t index);

// Squared singular values of lue_matrix, descending; rescaled to trace N^2
// when cfg.fixed_trace.
std::vector<double> sample_lue_spectrum(const SamplerConfig& cfg, std::uint64_t index);

// `count` spectra with per-index streams, so the result is independent of
// scheduling. The plain version runs the draws in an OpenMP loop; the
// _serial variant is the reference implementation used for testing.
SpectraEnsemble sample_lue_ensemble(const SamplerConfig& cfg, int count);
SpectraEnsemble sample_lue_ensemble_serial(const SamplerConfig& cfg, int count);

// Nearest-neighbor spacings from the central half of GUE spectra, unfolded
// with the semicircle cumulative density; mean spacing 1 within 2%.
std::vector<double> sample_gue_unfolded_spacings(int n, int count, std::uint64_t seed);
std::vector<double> sample_gue_unfolded_spacings_serial(int n, int count, std::uint64_t seed);

}  // namespace kicklue
