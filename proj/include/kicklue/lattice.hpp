#pragma once

#include <complex>
#include <vector>

namespace kicklue {

using cplx = std::complex<double>;

// Doubly periodic position lattice for one pair of degrees of freedom.
// Positions live on [0, 2pi), momenta on [-pi, pi), and the effective
// Planck constant is tied to the grid: hbar * N = 2pi.
struct LatticeConfig {
    int n = 0;
    double hbar = 0.0;

    static LatticeConfig make(int n);

    double position(int j) const { return 6.283185307179586476925286766559 * j / n; }

    // FFT index -> momentum, wrapped to the centered window [-pi, pi).
    // sin(p/2) is single-valued on the lattice only with this wrap.
    double momentum(int m) const {
        int c = (m + n / 2) % n - n / 2;
        return hbar * c;
    }

    double default_sigma() const;  // sqrt(hbar/2), symmetric minimal packet
};

struct SystemParams {
    double k1 = 0.0;
    double k2 = 0.0;
    double cpp = 0.0;

    void validate() const;
};

struct CoherentStateSpec {
    double x0 = 0.0;     // in [0, 2pi)
    double p0 = 0.0;     // in [-pi, pi)
    double sigma = 1.0;  // position-space width, > 0

    void validate() const;
};

// N x N complex amplitude grid; entry (j1, j2) is the amplitude at
// x1 = 2pi*j1/N, x2 = 2pi*j2/N. The grid doubles as the coefficient
// matrix whose singular values carry the Schmidt spectrum.
class WaveFunction2D {
public:
    WaveFunction2D() = default;
    WaveFunction2D(LatticeConfig lattice, std::vector<cplx> amplitudes);

    const LatticeConfig& lattice() const { return lattice_; }
    int n() const { return lattice_.n; }

    cplx& at(int j1, int j2) { return amp_[static_cast<std::size_t>(j1) * lattice_.n + j2]; }
    const cplx& at(int j1, int j2) const {
        return amp_[static_cast<std::size_t>(j1) * lattice_.n + j2];
    }

    std::vector<cplx>& data() { return amp_; }
    const std::vector<cplx>& data() const { return amp_; }

    double norm() const;
    void normalize();
    bool all_finite() const;

private:
    LatticeConfig lattice_;
    std::vector<cplx> amp_;
};

// Product of two torus-periodized Gaussian wavepackets, renormalized to
// unit norm on the grid. Periodization sums winding images w = -5..5,
// which keeps the truncation error below 1e-14 for sigma >= sqrt(hbar/2).
WaveFunction2D build_coherent_product(const CoherentStateSpec& spec1,
                                      const CoherentStateSpec& spec2,
                                      const LatticeConfig& lattice);

}  // namespace kicklue
