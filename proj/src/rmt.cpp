#include "kicklue/rmt.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kicklue/lattice.hpp"
#include "kicklue/rng.hpp"

namespace kicklue {

void SamplerConfig::validate() const {
    if (n < 1) throw std::invalid_argument("sampler: N must be >= 1");
}

Eigen::MatrixXcd lue_matrix(const SamplerConfig& cfg, std::uint64_t index) {
    cfg.validate();
    Rng rng = Rng::stream(cfg.seed, index);
    const double scale = std::sqrt(0.5);
    Eigen::MatrixXcd a(cfg.n, cfg.n);
    for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.n; ++j)
            a(i, j) = cplx(scale * rng.normal(), scale * rng.normal());
    return a;
}

std::vector<double> sample_lue_spectrum(const SamplerConfig& cfg, std::uint64_t index) {
    const Eigen::MatrixXcd a = lue_matrix(cfg, index);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    if (svd.info() != Eigen::Success) throw std::runtime_error("lue sampler: SVD failed");
    std::vector<double> eps(static_cast<std::size_t>(cfg.n));
    double trace = 0.0;
    for (int i = 0; i < cfg.n; ++i) {
        eps[static_cast<std::size_t>(i)] = svd.singularValues()(i) * svd.singularValues()(i);
        trace += eps[static_cast<std::size_t>(i)];
    }
    if (cfg.fixed_trace) {
        const double target = static_cast<double>(cfg.n) * cfg.n;
        const double factor = target / trace;
        for (double& e : eps) e *= factor;
    }
    return eps;  // singular values come out descending
}

namespace {

SpectraEnsemble lue_ensemble_impl(const SamplerConfig& cfg, int count, bool parallel) {
    cfg.validate();
    if (count < 1) throw std::invalid_argument("lue sampler: count must be >= 1");

    std::vector<double> levels(static_cast<std::size_t>(count) * cfg.n);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < count; ++i) {
            const auto eps = sample_lue_spectrum(cfg, static_cast<std::uint64_t>(i));
            std::copy(eps.begin(), eps.end(),
                      levels.begin() + static_cast<std::size_t>(i) * cfg.n);
        }
    } else {
        for (long long i = 0; i < count; ++i) {
            const auto eps = sample_lue_spectrum(cfg, static_cast<std::uint64_t>(i));
            std::copy(eps.begin(), eps.end(),
                      levels.begin() + static_cast<std::size_t>(i) * cfg.n);
        }
    }

    EnsembleMetadata meta;
    meta.source = "lue-sampler";
    meta.n = cfg.n;
    meta.seed = cfg.seed;
    meta.count = count;
    meta.fixed_trace = cfg.fixed_trace;
    return SpectraEnsemble(std::move(meta), std::move(levels));
}

// Semicircle cumulative level count for variance-1 entries: eigenvalues lie
// in [-2 sqrt(N), 2 sqrt(N)] with density sqrt(4N - x^2) / (2 pi).
double semicircle_cumulative(double x, int n) {
    const double r = 2.0 * std::sqrt(static_cast<double>(n));
    const double t = std::clamp(x, -r, r);
    return (t * std::sqrt(r * r - t * t) / 2.0 +
            (r * r / 2.0) * (std::asin(t / r) + std::numbers::pi / 2.0)) /
           (2.0 * std::numbers::pi);
}

std::vector<double> gue_matrix_spacings(int n, std::uint64_t seed, std::uint64_t index) {
    Rng rng = Rng::stream(seed, index);
    Eigen::MatrixXcd h(n, n);
    const double offdiag = std::sqrt(0.5);
    for (int i = 0; i < n; ++i) {
        h(i, i) = rng.normal();
        for (int j = i + 1; j < n; ++j) {
            h(i, j) = cplx(offdiag * rng.normal(), offdiag * rng.normal());
            h(j, i) = std::conj(h(i, j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gue sampler: eigen-decomposition failed");

    // Unfold and keep the central half, where the semicircle density is
    // smooth and the unit-mean-spacing normalization is accurate.
    std::vector<double> spacings;
    const int lo = n / 4;
    const int hi = 3 * n / 4;
    double prev = semicircle_cumulative(solver.eigenvalues()(lo), n);
    for (int i = lo + 1; i < hi; ++i) {
        const double cur = semicircle_cumulative(solver.eigenvalues()(i), n);
        spacings.push_back(cur - prev);
        prev = cur;
    }
    return spacings;
}

std::vector<double> gue_spacings_impl(int n, int count, std::uint64_t seed, bool parallel) {
    if (n < 8) throw std::invalid_argument("gue sampler: N must be >= 8");
    if (count < 1) throw std::invalid_argument("gue sampler: count must be >= 1");

    std::vector<std::vector<double>> per_matrix(static_cast<std::size_t>(count));
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < count; ++i)
            per_matrix[static_cast<std::size_t>(i)] =
                gue_matrix_spacings(n, seed, static_cast<std::uint64_t>(i));
    } else {
        for (long long i = 0; i < count; ++i)
            per_matrix[static_cast<std::size_t>(i)] =
                gue_matrix_spacings(n, seed, static_cast<std::uint64_t>(i));
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count) * (static_cast<std::size_t>(n) / 2));
    for (const auto& v : per_matrix) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

SpectraEnsemble sample_lue_ensemble(const SamplerConfig& cfg, int count) {
    return lue_ensemble_impl(cfg, count, true);
}
SpectraEnsemble sample_lue_ensemble_serial(const SamplerConfig& cfg, int count) {
    return lue_ensemble_impl(cfg, count, false);
}

std::vector<double> sample_gue_unfolded_spacings(int n, int count, std::uint64_t seed) {
    return gue_spacings_impl(n, count, seed, true);
}
std::vector<double> sample_gue_unfolded_spacings_serial(int n, int count, std::uint64_t seed) {
    return gue_spacings_impl(n, count, seed, false);
}

}  // namespace kicklue
