#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kicklue/ensemble.hpp"
#include "kicklue/laguerre.hpp"

namespace kicklue {

struct BinnedEstimate {
    std::string coordinate;      // "epsilon" | "omega"
    std::vector<double> edges;   // strictly increasing, bins + 1 entries
    std::vector<double> counts;  // raw per-bin accumulation
    std::vector<double> values;
    std::vector<double> stderrs;
    std::size_t samples = 0;
};

struct BinnedEstimate2D {
    std::vector<double> edges1;
    std::vector<double> edges2;
    std::vector<double> counts;  // row-major, [b1 * bins2 + b2]
    std::vector<double> values;
    std::vector<double> stderrs;
    std::size_t samples = 0;
};

struct SpacingHistogram {
    std::vector<double> edges;
    std::vector<double> density;  // unit-mean spacings; integrates to 1 over the range
    std::vector<double> stderrs;
    std::size_t spacing_count = 0;  // spacings inside the binned range
    double mean_spacing = 0.0;      // raw window mean before unit-mean rescaling
    double omega_lo = 0.0;
    double omega_hi = 0.0;
};

// Levels mapped through the analytic unfolding, ascending per spectrum,
// together with sqrt(sigma_N(eps)) per level (the weight every cluster
// estimator needs; purely multiplicative, so vanishing density is benign).
struct UnfoldedEnsemble {
    int n = 0;
    std::size_t count = 0;
    std::vector<double> omega;
    std::vector<double> weight;

    std::span<const double> omegas(std::size_t s) const {
        return {omega.data() + s * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    std::span<const double> weights(std::size_t s) const {
        return {weight.data() + s * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
};

UnfoldedEnsemble unfold_ensemble(const SpectraEnsemble& ens, const UnfoldingMap& map);

// One-level density estimate: histogram of all levels, counts normalized by
// (spectra * bin width). Integrates to N when the edges cover every level.
BinnedEstimate estimate_r1(const SpectraEnsemble& ens, const std::vector<double>& edges);
BinnedEstimate estimate_r1_serial(const SpectraEnsemble& ens, const std::vector<double>& edges);

// Two-level correlation estimate over ordered pairs (i != j) within each
// spectrum, normalized by (spectra * bin areas); integrates to N(N-1).
BinnedEstimate2D estimate_r2(const SpectraEnsemble& ens, const std::vector<double>& edges1,
                             const std::vector<double>& edges2);
BinnedEstimate2D estimate_r2_serial(const SpectraEnsemble& ens,
                                    const std::vector<double>& edges1,
                                    const std::vector<double>& edges2);

enum class ClusterRegime { hard, bulk, soft };

struct ClusterOptions {
    // Width of the hard/soft conditioning window: a spectrum anchors the
    // hard (soft) section when its smallest (largest) unfolded level falls
    // within pin_window of 0 (of N).
    double pin_window = 0.05;
    // Cross-spectrum partners per spectrum used for the R1*R1 product term.
    int rotations = 32;
};

// Renormalized two-level cluster function on the unfolded grid. The bulk
// section averages the anchor over [10, N-10]; hard and soft sections pin
// the smallest/largest level per the conditioning window. Both correlation
// terms (the R1*R1 product via cross-spectrum pairs, R2 via same-spectrum
// pairs) come from the data; the sqrt(sigma) renormalization weights come
// from the analytic density, entering multiplicatively so vanishing density
// never divides.
BinnedEstimate estimate_renormalized_cluster(const SpectraEnsemble& ens,
                                             const UnfoldingMap& map, ClusterRegime regime,
                                             const std::vector<double>& separation_edges,
                                             const ClusterOptions& options = {});
BinnedEstimate estimate_renormalized_cluster_serial(const SpectraEnsemble& ens,
                                                    const UnfoldingMap& map,
                                                    ClusterRegime regime,
                                                    const std::vector<double>& separation_edges,
                                                    const ClusterOptions& options = {});

// Nearest-neighbor spacings of the unfolded levels with both endpoints in
// [omega_lo, omega_hi], as a unit-normalized density histogram. Spacings
// are rescaled by the window mean before binning (unit mean spacing), so
// ensembles whose density deviates from sigma_N compare by shape; the raw
// mean is reported in the result.
SpacingHistogram spacing_distribution(const SpectraEnsemble& ens, const UnfoldingMap& map,
                                      double omega_lo, double omega_hi,
                                      const std::vector<double>& edges);
SpacingHistogram spacing_distribution_serial(const SpectraEnsemble& ens,
                                             const UnfoldingMap& map, double omega_lo,
                                             double omega_hi,
                                             const std::vector<double>& edges);

// Raw window spacings (not binned, not unit-mean rescaled).
std::vector<double> collect_spacings(const SpectraEnsemble& ens, const UnfoldingMap& map,
                                     double omega_lo, double omega_hi);

// Kolmogorov-Smirnov sup distance between the empirical CDF and a reference.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_distance(const SpacingHistogram& hist, const std::function<double(double)>& cdf);

std::vector<double> uniform_edges(double lo, double hi, int bins);

}  // namespace kicklue
