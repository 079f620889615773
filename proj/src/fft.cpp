#include "kicklue/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace kicklue {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Fft2D::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

Fft2D::Fft2D(int n) : n_(n), plans_(std::make_unique<Plans>()) {
    if (n < 2) throw std::invalid_argument("fft: size must be >= 2");
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_UNALIGNED lets the plans execute on any std::vector storage;
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    std::vector<cplx> scratch(static_cast<std::size_t>(n) * n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    plans_->forward =
        fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_->backward =
        fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plans_->forward || !plans_->backward) throw std::runtime_error("fft: planning failed");
}

Fft2D::~Fft2D() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plans_->forward) fftw_destroy_plan(plans_->forward);
    if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

void Fft2D::to_momentum(std::vector<cplx>& grid) const {
    if (grid.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("fft: grid size mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(grid.data());
    fftw_execute_dft(plans_->forward, buf, buf);
    const double scale = 1.0 / n_;
    for (cplx& a : grid) a *= scale;
}

void Fft2D::to_position(std::vector<cplx>& grid) const {
    if (grid.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("fft: grid size mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(grid.data());
    fftw_execute_dft(plans_->backward, buf, buf);
    const double scale = 1.0 / n_;
    for (cplx& a : grid) a *= scale;
}

}  // namespace kicklue
