#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "kicklue/dynamics.hpp"
#include "kicklue/lattice.hpp"
#include "kicklue/rng.hpp"
#include "kicklue/schmidt.hpp"

using namespace kicklue;

namespace {

WaveFunction2D random_state(int n, std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 0);
    std::vector<cplx> amp(static_cast<std::size_t>(n) * n);
    for (auto& a : amp) a = cplx(rng.normal(), rng.normal());
    WaveFunction2D psi(LatticeConfig::make(n), std::move(amp));
    psi.normalize();
    return psi;
}

}  // namespace

TEST_CASE("schmidt decomposition basics") {
    // rank-1 product state
    const LatticeConfig lat = LatticeConfig::make(32);
    CoherentStateSpec s;
    s.x0 = 1.0;
    s.p0 = 0.5;
    s.sigma = lat.default_sigma();
    const SchmidtSpectrum product = schmidt_decompose(build_coherent_product(s, s, lat));
    CHECK(std::abs(product.weights[0] - 1.0) < 1e-12);
    for (std::size_t i = 1; i < product.weights.size(); ++i)
        CHECK(product.weights[i] < 1e-12);

    // hand case: A = (1/2) [[1, 1], [1, -1]] has A A^dag = I/2
    WaveFunction2D two(LatticeConfig::make(2), {0.5, 0.5, 0.5, -0.5});
    const SchmidtSpectrum half = schmidt_decompose(two);
    CHECK(half.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half.weights[1] == doctest::Approx(0.5).epsilon(1e-12));

    // generic: weights sum to one, sorted non-increasing
    const SchmidtSpectrum generic = schmidt_decompose(random_state(16, 7));
    double sum = 0.0;
    for (std::size_t i = 0; i < generic.weights.size(); ++i) {
        CHECK(generic.weights[i] >= 0.0);
        if (i) CHECK(generic.weights[i] <= generic.weights[i - 1]);
        sum += generic.weights[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schmidt decomposition rejects bad input") {
    WaveFunction2D psi = random_state(8, 1);
    for (auto& a : psi.data()) a *= 2.0;  // not normalized
    CHECK_THROWS_AS(schmidt_decompose(psi), std::invalid_argument);
    WaveFunction2D nan_psi = random_state(8, 2);
    nan_psi.at(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(schmidt_decompose(nan_psi), std::domain_error);
}

TEST_CASE("squared singular values match the A A^dag eigenvalue oracle for small N") {
    for (int n : {2, 4, 8}) {
        const WaveFunction2D psi = random_state(n, 100 + static_cast<std::uint64_t>(n));
        const SchmidtSpectrum spec = schmidt_decompose(psi);

        using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        Eigen::Map<const RowMat> a(psi.data().data(), n, n);
        Eigen::MatrixXcd rho = a * a.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
        REQUIRE(eig.info() == Eigen::Success);

        for (int i = 0; i < n; ++i) {
            const double oracle = eig.eigenvalues()(n - 1 - i);  // ascending -> descending
            CHECK(std::abs(spec.weights[static_cast<std::size_t>(i)] - oracle) < 1e-10);
        }
    }
}

TEST_CASE("von Neumann entropy closed forms and bounds") {
    SchmidtSpectrum pure;
    pure.weights = {1.0, 0.0, 0.0, 0.0};
    CHECK(von_neumann_entropy(pure) == 0.0);

    SchmidtSpectrum even;
    even.weights = {0.5, 0.5};
    CHECK(von_neumann_entropy(even) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    for (int n : {4, 16, 64}) {
        SchmidtSpectrum uniform;
        uniform.weights.assign(static_cast<std::size_t>(n), 1.0 / n);
        CHECK(von_neumann_entropy(uniform) == doctest::Approx(std::log(n)).epsilon(1e-12));
    }

    // random spectra stay within [0, ln N]
    Rng rng = Rng::stream(5, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 30);
        SchmidtSpectrum spec;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = -std::log(1.0 - rng.uniform());
            spec.weights.push_back(w);
            sum += w;
        }
        for (double& w : spec.weights) w /= sum;
        std::sort(spec.weights.rbegin(), spec.weights.rend());
        const double s = von_neumann_entropy(spec);
        CHECK(s >= 0.0);
        CHECK(s <= std::log(static_cast<double>(n)) + 1e-12);
    }

    SchmidtSpectrum bad;
    bad.weights = {0.7, 0.7};
    CHECK_THROWS_AS(von_neumann_entropy(bad), std::invalid_argument);
}

TEST_CASE("scale_spectrum arithmetic") {
    SchmidtSpectrum uniform;
    uniform.weights.assign(4, 0.25);
    const ScaledSpectrum scaled = scale_spectrum(uniform, 4);
    for (double e : scaled.epsilons) CHECK(e == doctest::Approx(4.0).epsilon(1e-15));

    SchmidtSpectrum pure;
    pure.weights = {1.0, 0.0};
    const ScaledSpectrum two = scale_spectrum(pure, 2);
    CHECK(two.epsilons[0] == 4.0);
    CHECK(two.epsilons[1] == 0.0);

    const SchmidtSpectrum generic = schmidt_decompose(random_state(16, 3));
    const ScaledSpectrum g = scale_spectrum(generic, 16);
    double sum = 0.0;
    for (double e : g.epsilons) sum += e;
    CHECK(std::abs(sum - 256.0) < 256.0 * 1e-9);

    CHECK_THROWS_AS(scale_spectrum(pure, 3), std::invalid_argument);
}

TEST_CASE("local unitaries leave the Schmidt spectrum unchanged") {
    const int n = 32;
    WaveFunction2D psi = random_state(n, 11);
    const SchmidtSpectrum before = schmidt_decompose(psi);

    FloquetOperator kick_op(psi.lattice(), SystemParams{2.3, 1.7, 0.0});
    WaveFunction2D kicked = psi;
    kick_op.apply_kick_phase(kicked);  // position-diagonal local unitary
    const SchmidtSpectrum after_kick = schmidt_decompose(kicked);

    FloquetOperator free_op(psi.lattice(), SystemParams{0.0, 0.0, 0.0});
    WaveFunction2D drifted = psi;
    free_op.apply_kinetic_phase(drifted);  // separable kinetic phase at cpp = 0
    const SchmidtSpectrum after_drift = schmidt_decompose(drifted);

    for (std::size_t i = 0; i < before.weights.size(); ++i) {
        CHECK(std::abs(after_kick.weights[i] - before.weights[i]) < 1e-10);
        CHECK(std::abs(after_drift.weights[i] - before.weights[i]) < 1e-10);
    }
}

TEST_CASE("detect_saturation on synthetic series") {
    std::vector<double> constant(100, 3.0);
    CHECK(detect_saturation(constant, 10, 1e-3) == 9);

    std::vector<double> ramp;
    for (int i = 0; i < 100; ++i) ramp.push_back(0.01 * i);
    CHECK(!detect_saturation(ramp, 10, 1e-3).has_value());

    CHECK_THROWS_AS(detect_saturation(constant, 1, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(detect_saturation({1.0, 2.0}, 10, 1e-3), std::invalid_argument);
}

TEST_CASE("detect_saturation fires on the strong-chaos entropy series and stays put") {
    const LatticeConfig lat = LatticeConfig::make(64);
    CoherentStateSpec s;
    s.x0 = std::numbers::pi / 2;
    s.p0 = std::numbers::pi / 4;
    s.sigma = lat.default_sigma();
    WaveFunction2D psi = build_coherent_product(s, s, lat);

    std::vector<double> entropy;
    evolve(psi, SystemParams{3.0, 2.5, 0.05}, 500, [&](int, const WaveFunction2D& state) {
        entropy.push_back(von_neumann_entropy(schmidt_decompose(state)));
    });
    const auto sat = detect_saturation(entropy, 50, 1e-3);
    REQUIRE(sat.has_value());
    REQUIRE(*sat + 200 < entropy.size());

    double at = 0.0, later = 0.0;
    for (std::size_t i = *sat; i < *sat + 100; ++i) at += entropy[i];
    for (std::size_t i = *sat + 100; i < *sat + 200; ++i) later += entropy[i];
    CHECK(std::abs(later - at) / 100.0 < 0.02 * (at / 100.0));
}
