#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>

#include "kicklue/rmt.hpp"
#include "kicklue/stats.hpp"

using namespace kicklue;

TEST_CASE("LUE sampler: N=1 spectra follow the unit-mean exponential law") {
    SamplerConfig cfg{1, 4242, false};
    const int draws = 100000;
    double mean = 0.0;
    for (int i = 0; i < draws; ++i) mean += sample_lue_spectrum(cfg, static_cast<std::uint64_t>(i))[0];
    mean /= draws;
    CHECK(std::abs(mean - 1.0) < 0.02);
}

TEST_CASE("LUE sampler: fixed trace is exact, free trace averages to N^2") {
    SamplerConfig fixed{16, 9, true};
    for (int i = 0; i < 20; ++i) {
        const auto eps = sample_lue_spectrum(fixed, static_cast<std::uint64_t>(i));
        double sum = 0.0;
        for (double e : eps) sum += e;
        CHECK(std::abs(sum - 256.0) < 256.0 * 1e-9);
        for (std::size_t j = 1; j < eps.size(); ++j) CHECK(eps[j] <= eps[j - 1]);
    }

    SamplerConfig free_cfg{32, 20250810, false};
    const SpectraEnsemble ens = sample_lue_ensemble(free_cfg, 3000);
    double mean_trace = 0.0;
    for (std::size_t s = 0; s < ens.count(); ++s) {
        double sum = 0.0;
        for (double e : ens.spectrum(s)) sum += e;
        mean_trace += sum;
    }
    mean_trace /= static_cast<double>(ens.count());
    CHECK(std::abs(mean_trace - 1024.0) < 1024.0 * 0.01);
}

TEST_CASE("LUE sampler: identical seeds reproduce, different streams differ") {
    SamplerConfig cfg{8, 123, false};
    const auto a = sample_lue_spectrum(cfg, 5);
    const auto b = sample_lue_spectrum(cfg, 5);
    CHECK(a == b);
    const auto c = sample_lue_spectrum(cfg, 6);
    CHECK(a != c);
}

TEST_CASE("LUE sampler: scaling the matrix by c scales every eps by c^2") {
    SamplerConfig cfg{4, 55, false};
    const Eigen::MatrixXcd g = lue_matrix(cfg, 3);
    Eigen::BDCSVD<Eigen::MatrixXcd> base(g);
    Eigen::BDCSVD<Eigen::MatrixXcd> doubled(Eigen::MatrixXcd(2.0 * g));
    for (int i = 0; i < 4; ++i) {
        const double e_base = base.singularValues()(i) * base.singularValues()(i);
        const double e_doubled = doubled.singularValues()(i) * doubled.singularValues()(i);
        CHECK(e_doubled == doctest::Approx(4.0 * e_base).epsilon(1e-12));
    }
}

TEST_CASE("LUE ensemble: OpenMP path equals the serial reference exactly") {
    SamplerConfig cfg{12, 31, true};
    const SpectraEnsemble par = sample_lue_ensemble(cfg, 300);
    const SpectraEnsemble ser = sample_lue_ensemble_serial(cfg, 300);
    CHECK(par.levels() == ser.levels());
    CHECK(par.meta().source == "lue-sampler");
    par.validate();
}

TEST_CASE("GUE spacings: unit mean, non-negative, surmise-shaped") {
    const auto small = sample_gue_unfolded_spacings(64, 200, 2024);
    double mean = 0.0;
    for (double s : small) {
        CHECK(s >= 0.0);
        mean += s;
    }
    mean /= static_cast<double>(small.size());
    CHECK(std::abs(mean - 1.0) < 0.02);

    const auto big = sample_gue_unfolded_spacings(64, 330, 2025);
    REQUIRE(big.size() >= 10000);
    CHECK(ks_distance(big, wigner_surmise_gue_cdf) < 0.02);

    CHECK(sample_gue_unfolded_spacings(64, 3, 7) ==
          sample_gue_unfolded_spacings_serial(64, 3, 7));
    CHECK_THROWS_AS(sample_gue_unfolded_spacings(4, 10, 1), std::invalid_argument);
}
