#include "kicklue/analyze.hpp"

#include <cmath>
#include <stdexcept>

#include "kicklue/io.hpp"
#include "kicklue/laguerre.hpp"
#include "kicklue/stats.hpp"

namespace kicklue {

namespace {

std::vector<double> bin_centers(const std::vector<double>& edges) {
    std::vector<double> centers(edges.size() - 1);
    for (std::size_t b = 0; b + 1 < edges.size(); ++b)
        centers[b] = 0.5 * (edges[b] + edges[b + 1]);
    return centers;
}

// In-bin average of the reference curve (3-point Simpson), mirroring the
// estimator's averaging of the abscissa over each bin.
template <typename F>
std::vector<double> bin_averaged(const std::vector<double>& edges, const F& f) {
    std::vector<double> out(edges.size() - 1);
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        const double a = edges[b];
        const double c = edges[b + 1];
        out[b] = (f(a) + 4.0 * f(0.5 * (a + c)) + f(c)) / 6.0;
    }
    return out;
}

std::vector<std::string> base_header(const SpectraEnsemble& ens, const std::string& label,
                                     const AnalyzeOptions& opt) {
    return {
        "kicklue analyze",
        "analysis = " + opt.analysis,
        "ensemble = " + label,
        "N = " + std::to_string(ens.n()),
        "source = " + ens.meta().source,
        "spectra = " + std::to_string(ens.count()),
        "unfolding = analytic sigma_N (quadrature)",
    };
}

}  // namespace

void run_analyze(const SpectraEnsemble& ens, const std::string& source_label,
                 const AnalyzeOptions& opt, const std::string& out_path) {
    if (opt.expected_n > 0 && opt.expected_n != ens.n())
        throw std::invalid_argument("analyze: ensemble N = " + std::to_string(ens.n()) +
                                    " does not match requested N = " +
                                    std::to_string(opt.expected_n));
    const int n = ens.n();
    const LaguerreKernel kernel(n);

    if (opt.analysis == "r1") {
        const double eps_max = 4.0 * n + 40.0 + 12.0 * std::cbrt(static_cast<double>(n));
        const double width = opt.r1_bin_width > 0.0 ? opt.r1_bin_width : eps_max / 256.0;
        const int bins = std::max(1, static_cast<int>(std::ceil(eps_max / width)));
        const auto edges = uniform_edges(0.0, bins * width, bins);
        const BinnedEstimate est = estimate_r1(ens, edges);
        const auto centers = bin_centers(edges);
        std::vector<double> analytic(centers.size());
        for (std::size_t b = 0; b < centers.size(); ++b) analytic[b] = kernel.density(centers[b]);
        write_table(out_path, base_header(ens, source_label, opt),
                    {"epsilon", "empirical", "stderr", "analytic"},
                    {centers, est.values, est.stderrs, analytic});
        return;
    }

    if (opt.analysis == "cluster-hard" || opt.analysis == "cluster-bulk" ||
        opt.analysis == "cluster-soft") {
        const ClusterRegime regime = opt.analysis == "cluster-hard" ? ClusterRegime::hard
                                     : opt.analysis == "cluster-bulk"
                                         ? ClusterRegime::bulk
                                         : ClusterRegime::soft;
        const UnfoldingMap map = UnfoldingMap::build(kernel);
        const int bins =
            std::max(1, static_cast<int>(std::round(opt.max_separation / opt.bin_width)));
        const auto edges = uniform_edges(0.0, bins * opt.bin_width, bins);
        ClusterOptions copt;
        copt.pin_window = opt.pin_window;
        copt.rotations = opt.rotations;
        const BinnedEstimate est = estimate_renormalized_cluster(ens, map, regime, edges, copt);

        std::vector<double> analytic;
        if (regime == ClusterRegime::bulk) {
            // the window average is expensive; evaluate it once on the
            // shared edge/midpoint grid and Simpson over each bin
            std::vector<double> grid_values(2 * bins + 1);
            for (int g = 0; g <= 2 * bins; ++g)
                grid_values[static_cast<std::size_t>(g)] = bulk_averaged_cluster(
                    kernel, map, 0.5 * g * opt.bin_width, 10.0, n - 10.0);
            analytic.resize(static_cast<std::size_t>(bins));
            for (int b = 0; b < bins; ++b)
                analytic[static_cast<std::size_t>(b)] =
                    (grid_values[2 * b] + 4.0 * grid_values[2 * b + 1] +
                     grid_values[2 * b + 2]) /
                    6.0;
        } else if (regime == ClusterRegime::hard) {
            analytic = bin_averaged(
                edges, [&](double u) { return renormalized_cluster(kernel, map, 0.0, u); });
        } else {
            // omega = N is singular (eps -> inf); anchor the reference at the
            // midpoint of the conditioning window like the estimator does.
            const double anchor = n - 0.5 * opt.pin_window;
            analytic = bin_averaged(edges, [&](double u) {
                return renormalized_cluster(kernel, map, anchor - u, anchor);
            });
        }
        write_table(out_path, base_header(ens, source_label, opt),
                    {"omega", "empirical", "stderr", "analytic"},
                    {bin_centers(edges), est.values, est.stderrs, analytic});
        return;
    }

    if (opt.analysis == "spacing") {
        const UnfoldingMap map = UnfoldingMap::build(kernel);
        const double lo = opt.window_lo >= 0.0 ? opt.window_lo : 10.0;
        const double hi = opt.window_hi >= 0.0 ? opt.window_hi : n - 10.0;
        const int bins =
            std::max(1, static_cast<int>(std::round(opt.max_spacing / opt.bin_width)));
        const auto edges = uniform_edges(0.0, bins * opt.bin_width, bins);
        const SpacingHistogram hist = spacing_distribution(ens, map, lo, hi, edges);
        const auto analytic = bin_averaged(edges, wigner_surmise_gue);
        auto header = base_header(ens, source_label, opt);
        header.push_back("window = [" + format_full(lo) + ", " + format_full(hi) + "]");
        header.push_back("mean_spacing = " + format_full(hist.mean_spacing));
        write_table(out_path, header, {"s", "empirical", "stderr", "analytic"},
                    {bin_centers(edges), hist.density, hist.stderrs, analytic});
        return;
    }

    throw std::invalid_argument("analyze: unknown analysis '" + opt.analysis +
                                "' (expected r1 | cluster-hard | cluster-bulk | "
                                "cluster-soft | spacing)");
}

void run_analyze_file(const std::string& ensemble_path, const AnalyzeOptions& options,
                      const std::string& out_path) {
    const SpectraEnsemble ens = read_spectra_file(ensemble_path);
    run_analyze(ens, ensemble_path, options, out_path);
}

}  // namespace kicklue
