#pragma once

#include <string>

#include "kicklue/ensemble.hpp"

namespace kicklue {

// Options for the table-emitting analyses. Defaults follow the estimator
// conventions: 0.1-wide bins in omega/spacing units, bulk spacing window
// [10, N-10], 0.05 pinning window at the edges.
struct AnalyzeOptions {
    std::string analysis;  // r1 | cluster-hard | cluster-bulk | cluster-soft | spacing
    int expected_n = 0;    // when > 0, must match the ensemble file
    double bin_width = 0.1;
    double max_separation = 6.0;  // cluster sections
    double max_spacing = 4.0;
    double pin_window = 0.05;
    int rotations = 32;
    double r1_bin_width = 0.0;     // <= 0 selects (4N + tail) / 256
    double window_lo = -1.0;       // spacing window; < 0 selects 10
    double window_hi = -1.0;       // spacing window; < 0 selects N - 10
};

// Emits a four-column table (abscissa, empirical value, standard error,
// analytic reference) for the requested analysis of a persisted ensemble.
void run_analyze(const SpectraEnsemble& ensemble, const std::string& source_label,
                 const AnalyzeOptions& options, const std::string& out_path);

void run_analyze_file(const std::string& ensemble_path, const AnalyzeOptions& options,
                      const std::string& out_path);

}  // namespace kicklue
