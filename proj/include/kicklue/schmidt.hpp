#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kicklue/lattice.hpp"

namespace kicklue {

// Squared Schmidt eigenvalues lambda_i^2, non-increasing, renormalized so
// they sum to 1 exactly (absorbs SVD roundoff).
struct SchmidtSpectrum {
    std::vector<double> weights;
};

// eps_i = N^2 * lambda_i^2, the scale used by the Laguerre comparison.
struct ScaledSpectrum {
    std::vector<double> epsilons;
    int n = 0;
};

// Squared singular values of the coefficient matrix, sorted non-increasing.
// The Schmidt vectors are discarded; only the spectrum is kept.
SchmidtSpectrum schmidt_decompose(const WaveFunction2D& psi);

// S = -sum lambda^2 ln lambda^2, with 0 ln 0 = 0 (weights below 1e-300
// contribute nothing). Always in [0, ln N].
double von_neumann_entropy(const SchmidtSpectrum& spectrum);

ScaledSpectrum scale_spectrum(const SchmidtSpectrum& spectrum, int n);

// First index at which the least-squares slope of the trailing `window`
// entropy values drops below `slope_tol` in magnitude; nullopt if never.
std::optional<std::size_t> detect_saturation(const std::vector<double>& entropy_series,
                                             int window, double slope_tol);

}  // namespace kicklue
