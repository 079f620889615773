#pragma once

#include <memory>
#include <vector>

#include "kicklue/lattice.hpp"

namespace kicklue {

// In-place 2D complex FFT between the position and momentum representations.
// Both directions carry a 1/n factor so each transform is unitary and a
// round trip is the identity to machine precision.
//
// Plan creation is serialized internally (the FFTW planner is not thread
// safe); executing one Fft2D from many threads on distinct buffers is safe.
class Fft2D {
public:
    explicit Fft2D(int n);
    ~Fft2D();

    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    int size() const { return n_; }

    void to_momentum(std::vector<cplx>& grid) const;
    void to_position(std::vector<cplx>& grid) const;

private:
    struct Plans;
    int n_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace kicklue
