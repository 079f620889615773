#include "kicklue/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace kicklue {

SpectraEnsemble::SpectraEnsemble(EnsembleMetadata meta, std::vector<double> levels)
    : meta_(std::move(meta)), levels_(std::move(levels)) {
    if (meta_.n < 1) throw std::invalid_argument("ensemble: N must be >= 1");
    if (levels_.size() % static_cast<std::size_t>(meta_.n) != 0)
        throw std::invalid_argument("ensemble: level count not a multiple of N");
}

void SpectraEnsemble::validate() const {
    const std::size_t m = count();
    const double n2 = static_cast<double>(meta_.n) * meta_.n;
    const bool trace_constrained = meta_.source == "simulation" || meta_.fixed_trace;
    for (std::size_t s = 0; s < m; ++s) {
        auto spec = spectrum(s);
        double sum = 0.0;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            if (!std::isfinite(spec[i]) || spec[i] < 0.0)
                throw std::invalid_argument("ensemble: levels must be finite and >= 0");
            if (i > 0 && spec[i] > spec[i - 1] * (1.0 + 1e-12) + 1e-12)
                throw std::invalid_argument("ensemble: spectra must be descending");
            sum += spec[i];
        }
        if (trace_constrained && std::abs(sum - n2) > n2 * 1e-6)
            throw std::invalid_argument("ensemble: spectrum trace deviates from N^2");
    }
}

}  // namespace kicklue
