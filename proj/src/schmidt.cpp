#include "kicklue/schmidt.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace kicklue {

SchmidtSpectrum schmidt_decompose(const WaveFunction2D& psi) {
    if (!psi.all_finite()) throw std::domain_error("schmidt: non-finite amplitudes");
    const double nrm = psi.norm();
    if (std::abs(nrm - 1.0) > 1e-6)
        throw std::invalid_argument("schmidt: wavefunction not normalized");

    const int n = psi.n();
    using RowMat =
        Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> a(psi.data().data(), n, n);

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    if (svd.info() != Eigen::Success) throw std::runtime_error("schmidt: SVD did not converge");

    SchmidtSpectrum out;
    out.weights.resize(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = svd.singularValues()(i) * svd.singularValues()(i);
        out.weights[i] = w;
        sum += w;
    }
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw std::runtime_error("schmidt: degenerate singular value sum");
    for (double& w : out.weights) w /= sum;  // singularValues() is already sorted descending
    return out;
}

double von_neumann_entropy(const SchmidtSpectrum& spectrum) {
    if (spectrum.weights.empty()) throw std::invalid_argument("entropy: empty spectrum");
    double sum = 0.0;
    double s = 0.0;
    for (double w : spectrum.weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("entropy: weights must be finite and non-negative");
        sum += w;
        if (w > 1e-300) s -= w * std::log(w);
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("entropy: weights must sum to 1");
    return s < 0.0 ? 0.0 : s;
}

ScaledSpectrum scale_spectrum(const SchmidtSpectrum& spectrum, int n) {
    if (static_cast<int>(spectrum.weights.size()) != n)
        throw std::invalid_argument("scale_spectrum: weight count must equal N");
    ScaledSpectrum out;
    out.n = n;
    out.epsilons.resize(spectrum.weights.size());
    const double n2 = static_cast<double>(n) * n;
    for (std::size_t i = 0; i < spectrum.weights.size(); ++i)
        out.epsilons[i] = n2 * spectrum.weights[i];
    return out;
}

std::optional<std::size_t> detect_saturation(const std::vector<double>& entropy_series,
                                             int window, double slope_tol) {
    if (window < 2) throw std::invalid_argument("detect_saturation: window must be >= 2");
    if (entropy_series.size() < static_cast<std::size_t>(window))
        throw std::invalid_argument("detect_saturation: series shorter than window");

    const double w = window;
    const double tbar = (w - 1.0) / 2.0;
    const double denom = w * (w * w - 1.0) / 12.0;  // sum (t - tbar)^2 over t = 0..w-1

    for (std::size_t end = window - 1; end < entropy_series.size(); ++end) {
        double cov = 0.0;
        for (int t = 0; t < window; ++t)
            cov += (t - tbar) * entropy_series[end - window + 1 + t];
        const double slope = cov / denom;
        if (std::abs(slope) < slope_tol) return end;
    }
    return std::nullopt;
}

}  // namespace kicklue
