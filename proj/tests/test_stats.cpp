#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kicklue/laguerre.hpp"
#include "kicklue/rmt.hpp"
#include "kicklue/rng.hpp"
#include "kicklue/stats.hpp"

using namespace kicklue;

namespace {

// Shared fixtures: sampling and the unfolding table dominate the runtime of
// this file, so both are built once.
const SpectraEnsemble& lue32() {
    static const SpectraEnsemble ens = sample_lue_ensemble(SamplerConfig{32, 616, false}, 4000);
    return ens;
}

const UnfoldingMap& map32() {
    static const UnfoldingMap map = UnfoldingMap::build(LaguerreKernel(32));
    return map;
}

SpectraEnsemble ensemble_from(std::vector<std::vector<double>> spectra,
                              const std::string& source = "synthetic") {
    EnsembleMetadata meta;
    meta.source = source;
    meta.n = static_cast<int>(spectra.front().size());
    meta.count = static_cast<int>(spectra.size());
    std::vector<double> flat;
    for (auto& s : spectra) {
        std::sort(s.rbegin(), s.rend());
        flat.insert(flat.end(), s.begin(), s.end());
    }
    return SpectraEnsemble(std::move(meta), std::move(flat));
}

// Spectra whose levels are i.i.d. draws from the density sigma_N / N:
// uniform in the unfolded coordinate, pulled back through the map.
SpectraEnsemble poisson_synthetic(const UnfoldingMap& map, int count, std::uint64_t seed) {
    const int n = map.dim();
    Rng rng = Rng::stream(seed, 0);
    std::vector<std::vector<double>> spectra;
    for (int s = 0; s < count; ++s) {
        std::vector<double> eps(static_cast<std::size_t>(n));
        for (double& e : eps) e = map.invert(map.total_omega() * rng.uniform());
        spectra.push_back(std::move(eps));
    }
    return ensemble_from(std::move(spectra));
}

double integral(const BinnedEstimate& est) {
    double sum = 0.0;
    for (std::size_t b = 0; b < est.values.size(); ++b)
        sum += est.values[b] * (est.edges[b + 1] - est.edges[b]);
    return sum;
}

}  // namespace

TEST_CASE("R1: degenerate ensemble puts all mass in the atoms' bins") {
    const SpectraEnsemble ens = ensemble_from({{9.0, 2.0}, {9.0, 2.0}, {9.0, 2.0}});
    const auto est = estimate_r1(ens, uniform_edges(0.0, 12.0, 12));
    for (std::size_t b = 0; b < est.values.size(); ++b) {
        const double c = 0.5 * (est.edges[b] + est.edges[b + 1]);
        const bool atom = (c > 2.0 && c < 3.0) || (c > 9.0 && c < 10.0);
        CHECK(est.counts[b] == (atom ? 3.0 : 0.0));
    }
    CHECK(integral(est) == doctest::Approx(2.0).epsilon(1e-9));  // N = 2
}

TEST_CASE("R1 integrates to N and matches sigma_N bin by bin on LUE input") {
    const auto& ens = lue32();
    const auto& map = map32();

    const auto est = estimate_r1(ens, uniform_edges(0.0, 400.0, 100));
    CHECK(integral(est) == doctest::Approx(32.0).epsilon(1e-9));

    // exact per-bin expectations from the unfolding map; Poisson 3-sigma
    const auto fine = estimate_r1(ens, uniform_edges(0.0, 140.0, 140));
    int tested = 0;
    for (std::size_t b = 0; b < fine.values.size(); ++b) {
        const double expect = static_cast<double>(ens.count()) *
                              (map.unfold(fine.edges[b + 1]) - map.unfold(fine.edges[b]));
        if (expect < 50.0) continue;
        ++tested;
        CHECK(std::abs(fine.counts[b] - expect) <= 3.0 * std::sqrt(expect));
    }
    CHECK(tested > 80);

    CHECK(estimate_r1(ens, uniform_edges(0.0, 140.0, 140)).values ==
          estimate_r1_serial(ens, uniform_edges(0.0, 140.0, 140)).values);

    CHECK_THROWS_AS(estimate_r1(ens, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_r1(ens, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("R1 estimator consistency: halved bins, doubled samples") {
    // first half of the fixture vs the whole fixture at twice the resolution
    std::vector<double> half(lue32().levels().begin(),
                             lue32().levels().begin() + 2000 * 32);
    EnsembleMetadata meta = lue32().meta();
    meta.count = 2000;
    const SpectraEnsemble base(meta, std::move(half));

    const auto coarse = estimate_r1(base, uniform_edges(0.0, 132.0, 66));
    const auto fine = estimate_r1(lue32(), uniform_edges(0.0, 132.0, 132));
    for (std::size_t b = 0; b < coarse.values.size(); ++b) {
        const double fine_avg = 0.5 * (fine.values[2 * b] + fine.values[2 * b + 1]);
        const double fine_err =
            0.5 * std::hypot(fine.stderrs[2 * b], fine.stderrs[2 * b + 1]);
        const double combined = std::hypot(coarse.stderrs[b], fine_err);
        if (combined == 0.0) continue;
        CHECK(std::abs(coarse.values[b] - fine_avg) <= 3.0 * combined + 1e-12);
    }
}

TEST_CASE("R2: ordered pairs, integral, and eigenvalue repulsion") {
    const SpectraEnsemble tiny = ensemble_from({{7.0, 3.0}});
    const auto est2 = estimate_r2(tiny, uniform_edges(0.0, 10.0, 10), uniform_edges(0.0, 10.0, 10));
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j) {
            const bool ab = (i == 7 && j == 3) || (i == 3 && j == 7);
            CHECK(est2.counts[i * 10 + j] == (ab ? 1.0 : 0.0));
        }

    const auto& ens = lue32();
    const auto full =
        estimate_r2(ens, uniform_edges(0.0, 400.0, 40), uniform_edges(0.0, 400.0, 40));
    double total = 0.0;
    for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 40; ++j)
            total += full.values[i * 40 + j] * 10.0 * 10.0;
    CHECK(total == doctest::Approx(32.0 * 31.0).epsilon(1e-9));

    // bulk repulsion: R1(a) R1(b) - R2(a, b) >= 0 within statistical error
    const auto r1 = estimate_r1(ens, uniform_edges(0.0, 400.0, 40));
    for (const auto& [i, j] : std::vector<std::pair<int, int>>{{3, 4}, {5, 8}, {4, 10}}) {
        const double prod = r1.values[i] * r1.values[j];
        const double prod_err = r1.values[i] * r1.stderrs[j] + r1.values[j] * r1.stderrs[i];
        const double t2 = prod - full.values[static_cast<std::size_t>(i) * 40 + j];
        CHECK(t2 >= -3.0 * (prod_err + full.stderrs[static_cast<std::size_t>(i) * 40 + j]));
    }

    CHECK(full.values == estimate_r2_serial(ens, uniform_edges(0.0, 400.0, 40),
                                            uniform_edges(0.0, 400.0, 40))
                             .values);
}

TEST_CASE("renormalized cluster: Poisson-like synthetic ensemble is flat zero") {
    const UnfoldingMap map = UnfoldingMap::build(LaguerreKernel(64));
    const SpectraEnsemble ens = poisson_synthetic(map, 400, 99);
    const auto est =
        estimate_renormalized_cluster(ens, map, ClusterRegime::bulk, uniform_edges(0.0, 5.0, 25));
    for (std::size_t b = 0; b < est.values.size(); ++b) {
        const double c = 0.5 * (est.edges[b] + est.edges[b + 1]);
        if (c < 0.25) continue;  // i.i.d. sampling leaves a 1/N self-pair offset near u = 0
        CHECK(std::abs(est.values[b]) <= 3.0 * est.stderrs[b] + 0.01);
    }
}

TEST_CASE("renormalized cluster: LUE bulk tracks the analytic curve") {
    const auto& ens = lue32();
    const auto& map = map32();
    const LaguerreKernel kernel(32);
    const auto est = estimate_renormalized_cluster(ens, map, ClusterRegime::bulk,
                                                   uniform_edges(0.0, 4.5, 45));
    for (int b : {2, 5, 9, 14, 22, 33}) {
        const double ana =
            (bulk_averaged_cluster(kernel, map, est.edges[static_cast<std::size_t>(b)], 10.0,
                                   22.0) +
             4.0 * bulk_averaged_cluster(kernel, map, 0.05 + 0.1 * b, 10.0, 22.0) +
             bulk_averaged_cluster(kernel, map, est.edges[static_cast<std::size_t>(b) + 1], 10.0,
                                   22.0)) /
            6.0;
        CHECK(std::abs(est.values[static_cast<std::size_t>(b)] - ana) <=
              3.0 * est.stderrs[static_cast<std::size_t>(b)]);
    }

    CHECK(est.values == estimate_renormalized_cluster_serial(ens, map, ClusterRegime::bulk,
                                                             uniform_edges(0.0, 4.5, 45))
                            .values);
}

TEST_CASE("renormalized cluster: sections, windows and error paths") {
    const auto& ens = lue32();
    const auto& map = map32();

    const auto hard = estimate_renormalized_cluster(ens, map, ClusterRegime::hard,
                                                    uniform_edges(0.0, 4.0, 20));
    const auto soft = estimate_renormalized_cluster(ens, map, ClusterRegime::soft,
                                                    uniform_edges(0.0, 4.0, 20));
    for (std::size_t b = 0; b < 20; ++b) {
        CHECK(std::isfinite(hard.values[b]));
        CHECK(std::isfinite(soft.values[b]));
        CHECK(hard.stderrs[b] >= 0.0);
        CHECK(soft.stderrs[b] >= 0.0);
    }

    // N <= 20: the bulk anchor window [10, N-10] is empty
    const SpectraEnsemble small = sample_lue_ensemble(SamplerConfig{16, 5, false}, 50);
    const UnfoldingMap map16 = UnfoldingMap::build(LaguerreKernel(16));
    CHECK_THROWS_AS(estimate_renormalized_cluster(small, map16, ClusterRegime::bulk,
                                                  uniform_edges(0.0, 4.0, 20)),
                    std::invalid_argument);

    // conditioning window so narrow that no spectrum anchors
    ClusterOptions narrow;
    narrow.pin_window = 1e-12;
    CHECK_THROWS_AS(estimate_renormalized_cluster(ens, map, ClusterRegime::hard,
                                                  uniform_edges(0.0, 4.0, 20), narrow),
                    std::runtime_error);

    CHECK_THROWS_AS(estimate_renormalized_cluster(ens, map16, ClusterRegime::bulk,
                                                  uniform_edges(0.0, 4.0, 20)),
                    std::invalid_argument);  // N mismatch
}

TEST_CASE("spacing distribution: picket fence, LUE bulk, normalization") {
    const auto& map = map32();

    // picket fence: unfolded levels at 0.5, 1.5, ..., N - 0.5
    std::vector<double> ladder;
    for (int i = 0; i < 32; ++i) ladder.push_back(map.invert(0.5 + i));
    const SpectraEnsemble fence = ensemble_from({ladder, ladder});
    const auto hist = spacing_distribution(fence, map, 0.0, 32.0, uniform_edges(0.0, 3.0, 30));
    CHECK(hist.mean_spacing == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t b = 0; b < hist.density.size(); ++b) {
        const bool unit_bin = hist.edges[b] <= 1.0 && 1.0 < hist.edges[b + 1];
        CHECK(hist.density[b] == (unit_bin ? doctest::Approx(10.0).epsilon(1e-9)
                                           : doctest::Approx(0.0)));
    }

    // LUE bulk: unit-normalized density, raw mean within 2%, surmise shape
    const auto lue_hist =
        spacing_distribution(lue32(), map, 10.0, 22.0, uniform_edges(0.0, 4.0, 40));
    double norm = 0.0;
    for (std::size_t b = 0; b < lue_hist.density.size(); ++b)
        norm += lue_hist.density[b] * 0.1;
    CHECK(std::abs(norm - 1.0) < 1e-6);
    CHECK(std::abs(lue_hist.mean_spacing - 1.0) < 0.02);
    REQUIRE(lue_hist.spacing_count > 10000);
    CHECK(ks_distance(lue_hist, wigner_surmise_gue_cdf) < 0.03);

    auto raw = collect_spacings(lue32(), map, 10.0, 22.0);
    double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / static_cast<double>(raw.size());
    for (double& s : raw) s /= mean;
    CHECK(ks_distance(raw, wigner_surmise_gue_cdf) < 0.03);

    CHECK(lue_hist.density ==
          spacing_distribution_serial(lue32(), map, 10.0, 22.0, uniform_edges(0.0, 4.0, 40))
              .density);

    CHECK_THROWS_AS(spacing_distribution(lue32(), map, -1.0, 22.0, uniform_edges(0.0, 4.0, 40)),
                    std::invalid_argument);
    CHECK_THROWS_AS(spacing_distribution(lue32(), map, 10.0, 40.0, uniform_edges(0.0, 4.0, 40)),
                    std::invalid_argument);
}

TEST_CASE("KS distance: self-consistency, degenerate input, order invariance") {
    Rng rng = Rng::stream(31415, 0);
    std::vector<double> uniform;
    for (int i = 0; i < 10000; ++i) uniform.push_back(rng.uniform());
    const auto identity_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_distance(uniform, identity_cdf) < 0.02);

    std::vector<double> zeros(100, 0.0);
    CHECK(ks_distance(zeros, wigner_surmise_gue_cdf) == doctest::Approx(1.0));

    std::vector<double> shuffled = uniform;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[3], shuffled[47]);
    CHECK(ks_distance(shuffled, identity_cdf) == ks_distance(uniform, identity_cdf));

    CHECK_THROWS_AS(ks_distance(std::vector<double>{}, identity_cdf), std::invalid_argument);
}
