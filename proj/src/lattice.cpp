#include "kicklue/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kicklue {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kWindings = 5;
}  // namespace

LatticeConfig LatticeConfig::make(int n) {
    if (n < 2) throw std::invalid_argument("lattice: N must be >= 2");
    if (n % 2 != 0) throw std::invalid_argument("lattice: N must be even");
    LatticeConfig cfg;
    cfg.n = n;
    cfg.hbar = kTwoPi / n;
    return cfg;
}

double LatticeConfig::default_sigma() const { return std::sqrt(hbar / 2.0); }

void SystemParams::validate() const {
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(cpp))
        throw std::invalid_argument("system params must be finite");
}

void CoherentStateSpec::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("coherent state: sigma must be > 0");
    if (!(x0 >= 0.0 && x0 < kTwoPi))
        throw std::invalid_argument("coherent state: x0 outside [0, 2pi)");
    if (!(p0 >= -std::numbers::pi && p0 < std::numbers::pi))
        throw std::invalid_argument("coherent state: p0 outside [-pi, pi)");
}

WaveFunction2D::WaveFunction2D(LatticeConfig lattice, std::vector<cplx> amplitudes)
    : lattice_(lattice), amp_(std::move(amplitudes)) {
    if (amp_.size() != static_cast<std::size_t>(lattice_.n) * lattice_.n)
        throw std::invalid_argument("wavefunction: amplitude grid size mismatch");
}

double WaveFunction2D::norm() const {
    double s = 0.0;
    for (const cplx& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

void WaveFunction2D::normalize() {
    const double nrm = norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::domain_error("wavefunction: cannot normalize, norm is zero or non-finite");
    for (cplx& a : amp_) a /= nrm;
}

bool WaveFunction2D::all_finite() const {
    for (const cplx& a : amp_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
}

namespace {

// Periodized Gaussian wavepacket sampled on the position grid. Each winding
// image carries the p0 plane-wave phase measured from its own center.
std::vector<cplx> coherent_axis(const CoherentStateSpec& spec, const LatticeConfig& lattice) {
    std::vector<cplx> phi(lattice.n);
    for (int j = 0; j < lattice.n; ++j) {
        const double x = lattice.position(j);
        cplx sum = 0.0;
        for (int w = -kWindings; w <= kWindings; ++w) {
            const double d = x - spec.x0 - kTwoPi * w;
            const double gauss = std::exp(-d * d / (2.0 * spec.sigma * spec.sigma));
            const double phase = spec.p0 * d / lattice.hbar;
            sum += gauss * cplx(std::cos(phase), std::sin(phase));
        }
        phi[j] = sum;
    }
    double nrm2 = 0.0;
    for (const cplx& a : phi) nrm2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(nrm2);
    for (cplx& a : phi) a *= inv;
    return phi;
}

}  // namespace

WaveFunction2D build_coherent_product(const CoherentStateSpec& spec1,
                                      const CoherentStateSpec& spec2,
                                      const LatticeConfig& lattice) {
    if (lattice.n < 2) throw std::invalid_argument("lattice: N must be >= 2");
    spec1.validate();
    spec2.validate();
    const std::vector<cplx> phi1 = coherent_axis(spec1, lattice);
    const std::vector<cplx> phi2 = coherent_axis(spec2, lattice);
    std::vector<cplx> grid(static_cast<std::size_t>(lattice.n) * lattice.n);
    for (int j1 = 0; j1 < lattice.n; ++j1)
        for (int j2 = 0; j2 < lattice.n; ++j2)
            grid[static_cast<std::size_t>(j1) * lattice.n + j2] = phi1[j1] * phi2[j2];
    WaveFunction2D psi(lattice, std::move(grid));
    psi.normalize();
    return psi;
}

}  // namespace kicklue
