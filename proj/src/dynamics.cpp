#include "kicklue/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace kicklue {

FloquetOperator::FloquetOperator(const LatticeConfig& lattice, const SystemParams& params,
                                 StepOrder order)
    : lattice_(lattice), params_(params), order_(order), fft_(lattice.n) {
    params_.validate();
    const int n = lattice_.n;
    const double inv_hbar = 1.0 / lattice_.hbar;

    kick_phase_.resize(static_cast<std::size_t>(n) * n);
    for (int j1 = 0; j1 < n; ++j1) {
        const double v1 = params_.k1 * std::sin(lattice_.position(j1));
        for (int j2 = 0; j2 < n; ++j2) {
            const double v = v1 + params_.k2 * std::sin(lattice_.position(j2));
            const double phase = -v * inv_hbar;
            kick_phase_[static_cast<std::size_t>(j1) * n + j2] =
                cplx(std::cos(phase), std::sin(phase));
        }
    }

    kinetic_phase_.resize(static_cast<std::size_t>(n) * n);
    for (int m1 = 0; m1 < n; ++m1) {
        const double s1 = std::sin(0.5 * lattice_.momentum(m1));
        for (int m2 = 0; m2 < n; ++m2) {
            const double s2 = std::sin(0.5 * lattice_.momentum(m2));
            const double t = 2.0 * s1 * s1 + 2.0 * s2 * s2 + 4.0 * params_.cpp * s1 * s2;
            const double phase = -t * inv_hbar;
            kinetic_phase_[static_cast<std::size_t>(m1) * n + m2] =
                cplx(std::cos(phase), std::sin(phase));
        }
    }
}

void FloquetOperator::apply_kick_phase(WaveFunction2D& psi) const {
    auto& amp = psi.data();
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= kick_phase_[i];
}

void FloquetOperator::apply_kinetic_phase(WaveFunction2D& psi) const {
    auto& amp = psi.data();
    fft_.to_momentum(amp);
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= kinetic_phase_[i];
    fft_.to_position(amp);
}

void FloquetOperator::step(WaveFunction2D& psi) const {
    if (psi.n() != lattice_.n) throw std::invalid_argument("floquet: lattice mismatch");
    if (order_ == StepOrder::kick_then_kinetic) {
        apply_kick_phase(psi);
        apply_kinetic_phase(psi);
    } else {
        apply_kinetic_phase(psi);
        apply_kick_phase(psi);
    }
    const double nrm = psi.norm();
    if (!std::isfinite(nrm)) throw std::domain_error("floquet: non-finite amplitudes");
}

WaveFunction2D floquet_step(const WaveFunction2D& psi, const SystemParams& params) {
    FloquetOperator op(psi.lattice(), params);
    WaveFunction2D out = psi;
    op.step(out);
    return out;
}

WaveFunction2D evolve(const WaveFunction2D& psi, const SystemParams& params, int steps,
                      const StepObserver& observer) {
    if (steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
    FloquetOperator op(psi.lattice(), params);
    WaveFunction2D state = psi;
    for (int s = 1; s <= steps; ++s) {
        op.step(state);
        if (observer) observer(s, state);
    }
    return state;
}

}  // namespace kicklue
