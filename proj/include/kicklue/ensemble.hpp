#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kicklue {

// Provenance carried with every ensemble, simulated or sampled. All fields
// are persisted in the spectra file header.
struct EnsembleMetadata {
    std::string source;  // "simulation" | "lue-sampler"
    int n = 0;
    double k1 = 0.0, k2 = 0.0, cpp = 0.0, sigma = 0.0;
    std::string burn_in = "0";  // integer or "auto"
    int stride = 0;
    std::uint64_t seed = 0;
    int count = 0;
    bool fixed_trace = false;
    std::string init = "none";  // "fixed" | "random" | "none"
    int trajectories = 0;
};

// Collection of scaled spectra (eps-vectors, each length N, descending),
// stored flat.
class SpectraEnsemble {
public:
    SpectraEnsemble() = default;
    SpectraEnsemble(EnsembleMetadata meta, std::vector<double> levels);

    const EnsembleMetadata& meta() const { return meta_; }
    EnsembleMetadata& meta() { return meta_; }

    int n() const { return meta_.n; }
    std::size_t count() const {
        return meta_.n == 0 ? 0 : levels_.size() / static_cast<std::size_t>(meta_.n);
    }

    std::span<const double> spectrum(std::size_t i) const {
        return {levels_.data() + i * static_cast<std::size_t>(meta_.n),
                static_cast<std::size_t>(meta_.n)};
    }
    std::span<double> spectrum(std::size_t i) {
        return {levels_.data() + i * static_cast<std::size_t>(meta_.n),
                static_cast<std::size_t>(meta_.n)};
    }

    const std::vector<double>& levels() const { return levels_; }
    std::vector<double>& levels() { return levels_; }

    // Shape, finiteness and ordering for all sources; the trace constraint
    // sum(eps) = N^2 only where the source guarantees it (simulated spectra
    // and fixed-trace sampler output — a free Gaussian trace fluctuates).
    void validate() const;

private:
    EnsembleMetadata meta_;
    std::vector<double> levels_;
};

}  // namespace kicklue
