#pragma once

#include <functional>
#include <vector>

#include "kicklue/fft.hpp"
#include "kicklue/lattice.hpp"

namespace kicklue {

// The delta-kicked Hamiltonian factorizes one period exactly into a
// position-diagonal kick phase and a momentum-diagonal kinetic phase; the
// ordering convention is a parameter so the swap-order regression test can
// document that the stationary statistics do not depend on it.
enum class StepOrder { kick_then_kinetic, kinetic_then_kick };

// One-period propagator with phases precomputed per (lattice, params) pair.
// const and shareable: distinct trajectories may step through the same
// operator concurrently.
class FloquetOperator {
public:
    FloquetOperator(const LatticeConfig& lattice, const SystemParams& params,
                    StepOrder order = StepOrder::kick_then_kinetic);

    const LatticeConfig& lattice() const { return lattice_; }
    const SystemParams& params() const { return params_; }

    // One full period, in place. Throws std::domain_error if the state
    // picks up non-finite amplitudes.
    void step(WaveFunction2D& psi) const;

    // The two factors, exposed separately. Both are local unitaries when
    // cpp = 0 (the kick always is), which the Schmidt-invariance tests use.
    void apply_kick_phase(WaveFunction2D& psi) const;
    void apply_kinetic_phase(WaveFunction2D& psi) const;  // includes transforms

    void to_momentum(WaveFunction2D& psi) const { fft_.to_momentum(psi.data()); }
    void to_position(WaveFunction2D& psi) const { fft_.to_position(psi.data()); }

private:
    LatticeConfig lattice_;
    SystemParams params_;
    StepOrder order_;
    Fft2D fft_;
    std::vector<cplx> kick_phase_;
    std::vector<cplx> kinetic_phase_;
};

using StepObserver = std::function<void(int step, const WaveFunction2D& psi)>;

WaveFunction2D floquet_step(const WaveFunction2D& psi, const SystemParams& params);

// `steps` >= 1 repetitions of the period map; the observer (if any) sees the
// state after each step together with the 1-based step index.
WaveFunction2D evolve(const WaveFunction2D& psi, const SystemParams& params, int steps,
                      const StepObserver& observer = nullptr);

}  // namespace kicklue
