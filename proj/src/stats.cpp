#include "kicklue/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kicklue {

namespace {

// Fixed chunk size: partial accumulators are merged in chunk order, so the
// result is independent of thread count and scheduling.
constexpr std::size_t kChunk = 64;

void check_edges(const std::vector<double>& edges, const char* who) {
    if (edges.size() < 2) throw std::invalid_argument(std::string(who) + ": need >= 2 bin edges");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw std::invalid_argument(std::string(who) + ": edges must be strictly increasing");
}

// Bin index, or -1 when x falls outside [edges.front(), edges.back()).
int find_bin(const std::vector<double>& edges, double x) {
    if (!(x >= edges.front()) || !(x < edges.back())) return -1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    return static_cast<int>(it - edges.begin()) - 1;
}

template <typename Body>
void for_chunks(std::size_t total, std::vector<std::vector<double>>& partials,
                std::size_t partial_size, bool parallel, const Body& body) {
    const std::size_t chunks = (total + kChunk - 1) / kChunk;
    partials.assign(chunks, std::vector<double>(partial_size, 0.0));
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
            const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
            body(begin, std::min(begin + kChunk, total), partials[static_cast<std::size_t>(c)]);
        }
    } else {
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = c * kChunk;
            body(begin, std::min(begin + kChunk, total), partials[c]);
        }
    }
}

std::vector<double> merge(const std::vector<std::vector<double>>& partials,
                          std::size_t partial_size) {
    std::vector<double> out(partial_size, 0.0);
    for (const auto& p : partials)
        for (std::size_t i = 0; i < partial_size; ++i) out[i] += p[i];
    return out;
}

BinnedEstimate r1_impl(const SpectraEnsemble& ens, const std::vector<double>& edges,
                       bool parallel) {
    check_edges(edges, "estimate_r1");
    if (ens.count() == 0) throw std::invalid_argument("estimate_r1: empty ensemble");

    const std::size_t bins = edges.size() - 1;
    std::vector<std::vector<double>> partials;
    for_chunks(ens.count(), partials, bins, parallel,
               [&](std::size_t begin, std::size_t end, std::vector<double>& acc) {
                   for (std::size_t s = begin; s < end; ++s)
                       for (double eps : ens.spectrum(s)) {
                           const int b = find_bin(edges, eps);
                           if (b >= 0) acc[static_cast<std::size_t>(b)] += 1.0;
                       }
               });

    BinnedEstimate out;
    out.coordinate = "epsilon";
    out.edges = edges;
    out.counts = merge(partials, bins);
    out.samples = ens.count();
    out.values.resize(bins);
    out.stderrs.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double width = edges[b + 1] - edges[b];
        const double norm = static_cast<double>(out.samples) * width;
        out.values[b] = out.counts[b] / norm;
        out.stderrs[b] = std::sqrt(out.counts[b]) / norm;
    }
    return out;
}

BinnedEstimate2D r2_impl(const SpectraEnsemble& ens, const std::vector<double>& edges1,
                         const std::vector<double>& edges2, bool parallel) {
    check_edges(edges1, "estimate_r2");
    check_edges(edges2, "estimate_r2");
    if (ens.count() == 0) throw std::invalid_argument("estimate_r2: empty ensemble");
    if (ens.n() < 2) throw std::invalid_argument("estimate_r2: needs N >= 2");

    const std::size_t b1 = edges1.size() - 1;
    const std::size_t b2 = edges2.size() - 1;
    std::vector<std::vector<double>> partials;
    for_chunks(ens.count(), partials, b1 * b2, parallel,
               [&](std::size_t begin, std::size_t end, std::vector<double>& acc) {
                   for (std::size_t s = begin; s < end; ++s) {
                       const auto spec = ens.spectrum(s);
                       for (std::size_t i = 0; i < spec.size(); ++i) {
                           const int bi = find_bin(edges1, spec[i]);
                           if (bi < 0) continue;
                           for (std::size_t j = 0; j < spec.size(); ++j) {
                               if (j == i) continue;
                               const int bj = find_bin(edges2, spec[j]);
                               if (bj >= 0)
                                   acc[static_cast<std::size_t>(bi) * b2 + bj] += 1.0;
                           }
                       }
                   }
               });

    BinnedEstimate2D out;
    out.edges1 = edges1;
    out.edges2 = edges2;
    out.counts = merge(partials, b1 * b2);
    out.samples = ens.count();
    out.values.resize(b1 * b2);
    out.stderrs.resize(b1 * b2);
    for (std::size_t i = 0; i < b1; ++i)
        for (std::size_t j = 0; j < b2; ++j) {
            const double area = (edges1[i + 1] - edges1[i]) * (edges2[j + 1] - edges2[j]);
            const double norm = static_cast<double>(out.samples) * area;
            out.values[i * b2 + j] = out.counts[i * b2 + j] / norm;
            out.stderrs[i * b2 + j] = std::sqrt(out.counts[i * b2 + j]) / norm;
        }
    return out;
}

struct ClusterWindows {
    double w_lo = 0.0, w_hi = 0.0;  // bulk anchor window
};

// Accumulator layout per bin: [0,bins) same-spectrum weighted pairs,
// [bins,2bins) their squared weights, [2bins,3bins) cross-spectrum pairs,
// [3bins,4bins) squared, plus one trailing slot counting anchors.
BinnedEstimate cluster_impl(const SpectraEnsemble& ens, const UnfoldingMap& map,
                            ClusterRegime regime, const std::vector<double>& edges,
                            const ClusterOptions& opt, bool parallel) {
    check_edges(edges, "estimate_renormalized_cluster");
    if (!(edges.front() >= 0.0))
        throw std::invalid_argument("estimate_renormalized_cluster: separations must be >= 0");
    if (ens.n() != map.dim())
        throw std::invalid_argument("estimate_renormalized_cluster: ensemble/map N mismatch");
    if (ens.count() < 2)
        throw std::invalid_argument("estimate_renormalized_cluster: need >= 2 spectra");
    if (regime == ClusterRegime::bulk && ens.n() <= 20)
        throw std::invalid_argument(
            "estimate_renormalized_cluster: bulk window [10, N-10] empty, requires N > 20");
    if (!(opt.pin_window > 0.0) || opt.rotations < 1)
        throw std::invalid_argument("estimate_renormalized_cluster: bad options");

    const UnfoldedEnsemble unf = unfold_ensemble(ens, map);
    const std::size_t S = unf.count;
    const int rotations = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(opt.rotations), S - 1));
    // Partners are spread across the whole ensemble rather than taken from
    // adjacent slots: adjacent spectra can be consecutive snapshots of one
    // trajectory, and serial correlation there would contaminate the
    // product term.
    const std::size_t jump = std::max<std::size_t>(
        1, S / (static_cast<std::size_t>(rotations) + 1));
    const double n = ens.n();
    const ClusterWindows win{10.0, n - 10.0};
    const std::size_t bins = edges.size() - 1;
    const double u_min = edges.front();
    const double u_max = edges.back();

    const std::size_t acc_size = 4 * bins + 1;
    std::vector<std::vector<double>> partials;

    const auto body = [&](std::size_t begin, std::size_t end, std::vector<double>& acc) {
        for (std::size_t s = begin; s < end; ++s) {
            const auto om = unf.omegas(s);
            const auto wt = unf.weights(s);

            // anchors for this spectrum: every bulk-window level, or the
            // pinned extreme level if it falls in the conditioning window
            std::vector<std::pair<std::size_t, double>> anchors;  // (index, sign)
            if (regime == ClusterRegime::bulk) {
                for (std::size_t i = 0; i < om.size(); ++i)
                    if (om[i] >= win.w_lo && om[i] < win.w_hi) anchors.emplace_back(i, +1.0);
            } else if (regime == ClusterRegime::hard) {
                if (!om.empty() && om.front() <= opt.pin_window) anchors.emplace_back(0, +1.0);
            } else {
                if (!om.empty() && om.back() >= n - opt.pin_window)
                    anchors.emplace_back(om.size() - 1, -1.0);
            }
            acc[4 * bins] += static_cast<double>(anchors.size());

            for (const auto& [ai, sign] : anchors) {
                const double w_a = om[ai];
                const double wt_a = wt[ai];
                // same-spectrum pairs -> R2 term
                for (std::size_t j = 0; j < om.size(); ++j) {
                    if (j == ai) continue;
                    const double u = sign * (om[j] - w_a);
                    const int b = (u >= u_min && u < u_max) ? find_bin(edges, u) : -1;
                    if (b < 0) continue;
                    const double w = wt_a * wt[j];
                    acc[static_cast<std::size_t>(b)] += w;
                    acc[bins + static_cast<std::size_t>(b)] += w * w;
                }
                // cross-spectrum pairs -> R1*R1 term
                for (int r = 1; r <= rotations; ++r) {
                    const std::size_t partner = (s + static_cast<std::size_t>(r) * jump) % S;
                    const auto pom = unf.omegas(partner);
                    const auto pwt = unf.weights(partner);
                    for (std::size_t j = 0; j < pom.size(); ++j) {
                        const double u = sign * (pom[j] - w_a);
                        const int b = (u >= u_min && u < u_max) ? find_bin(edges, u) : -1;
                        if (b < 0) continue;
                        const double w = wt_a * pwt[j];
                        acc[2 * bins + static_cast<std::size_t>(b)] += w;
                        acc[3 * bins + static_cast<std::size_t>(b)] += w * w;
                    }
                }
            }
        }
    };
    for_chunks(S, partials, acc_size, parallel, body);
    const std::vector<double> acc = merge(partials, acc_size);

    const double anchor_count = acc[4 * bins];
    if (!(anchor_count > 0.0))
        throw std::runtime_error("estimate_renormalized_cluster: conditioning window is empty");

    // Bulk: anchors are levels, normalize per spectrum and window length.
    // Hard/soft: anchors are conditioned spectra, normalize per anchor.
    const double denom2 = regime == ClusterRegime::bulk
                              ? static_cast<double>(S) * (win.w_hi - win.w_lo)
                              : anchor_count;
    const double denom11 = denom2 * rotations;

    BinnedEstimate out;
    out.coordinate = "omega";
    out.edges = edges;
    out.samples = S;
    out.counts.resize(bins);
    out.values.resize(bins);
    out.stderrs.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double width = edges[b + 1] - edges[b];
        const double f2 = acc[b] / (denom2 * width);
        const double f11 = acc[2 * bins + b] / (denom11 * width);
        const double var2 = acc[bins + b] / (denom2 * width * denom2 * width);
        const double var11 = acc[3 * bins + b] / (denom11 * width * denom11 * width);
        out.counts[b] = acc[b];
        out.values[b] = f11 - f2;
        out.stderrs[b] = std::sqrt(var2 + var11);
    }
    return out;
}

SpacingHistogram spacing_impl(const SpectraEnsemble& ens, const UnfoldingMap& map,
                              double omega_lo, double omega_hi,
                              const std::vector<double>& edges, bool parallel) {
    check_edges(edges, "spacing_distribution");
    if (ens.n() != map.dim())
        throw std::invalid_argument("spacing_distribution: ensemble/map N mismatch");
    if (!(omega_lo >= 0.0) || !(omega_hi <= static_cast<double>(ens.n())) ||
        !(omega_lo < omega_hi))
        throw std::invalid_argument("spacing_distribution: window must satisfy 0 <= lo < hi <= N");
    if (ens.count() == 0) throw std::invalid_argument("spacing_distribution: empty ensemble");

    const UnfoldedEnsemble unf = unfold_ensemble(ens, map);
    const std::size_t bins = edges.size() - 1;
    // layout: per-bin counts, then [total spacings, sum of spacings, in-range count]
    const std::size_t acc_size = bins + 3;
    std::vector<std::vector<double>> partials;
    for_chunks(unf.count, partials, acc_size, parallel,
               [&](std::size_t begin, std::size_t end, std::vector<double>& acc) {
                   for (std::size_t s = begin; s < end; ++s) {
                       const auto om = unf.omegas(s);
                       for (std::size_t i = 0; i + 1 < om.size(); ++i) {
                           if (om[i] < omega_lo || om[i + 1] > omega_hi) continue;
                           const double sp = om[i + 1] - om[i];
                           acc[bins] += 1.0;
                           acc[bins + 1] += sp;
                           const int b = find_bin(edges, sp);
                           if (b >= 0) {
                               acc[static_cast<std::size_t>(b)] += 1.0;
                               acc[bins + 2] += 1.0;
                           }
                       }
                   }
               });
    const std::vector<double> acc = merge(partials, acc_size);

    const double total = acc[bins];
    if (!(total > 0.0))
        throw std::runtime_error("spacing_distribution: no spacings in the window");
    const double mean = acc[bins + 1] / total;

    // Rebin after rescaling to unit mean. The analytic map normalizes the
    // mean density of the matching ensemble only; an ensemble whose density
    // deviates from sigma_N (weak chaos) comes out with a stretched scale,
    // and the distribution comparison is between shapes at unit mean.
    std::vector<std::vector<double>> partials2;
    for_chunks(unf.count, partials2, bins + 1, parallel,
               [&](std::size_t begin, std::size_t end, std::vector<double>& a2) {
                   for (std::size_t s = begin; s < end; ++s) {
                       const auto om = unf.omegas(s);
                       for (std::size_t i = 0; i + 1 < om.size(); ++i) {
                           if (om[i] < omega_lo || om[i + 1] > omega_hi) continue;
                           const double sp = (om[i + 1] - om[i]) / mean;
                           const int b = find_bin(edges, sp);
                           if (b >= 0) {
                               a2[static_cast<std::size_t>(b)] += 1.0;
                               a2[bins] += 1.0;
                           }
                       }
                   }
               });
    const std::vector<double> acc2 = merge(partials2, bins + 1);
    const double in_range = acc2[bins];
    if (!(in_range > 0.0))
        throw std::runtime_error("spacing_distribution: no spacings inside the bin range");

    SpacingHistogram out;
    out.edges = edges;
    out.omega_lo = omega_lo;
    out.omega_hi = omega_hi;
    out.spacing_count = static_cast<std::size_t>(in_range);
    out.mean_spacing = mean;
    out.density.resize(bins);
    out.stderrs.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double width = edges[b + 1] - edges[b];
        out.density[b] = acc2[b] / (in_range * width);
        out.stderrs[b] = std::sqrt(acc2[b]) / (in_range * width);
    }
    return out;
}

}  // namespace

UnfoldedEnsemble unfold_ensemble(const SpectraEnsemble& ens, const UnfoldingMap& map) {
    if (ens.n() != map.dim())
        throw std::invalid_argument("unfold_ensemble: ensemble/map N mismatch");
    ens.validate();  // the chunked bodies below must not throw
    UnfoldedEnsemble out;
    out.n = ens.n();
    out.count = ens.count();
    out.omega.resize(ens.levels().size());
    out.weight.resize(ens.levels().size());
    const LaguerreKernel kernel(map.dim());
    const std::size_t n = static_cast<std::size_t>(ens.n());

    std::vector<std::vector<double>> partials;
    for_chunks(out.count, partials, 1, true,
               [&](std::size_t begin, std::size_t end, std::vector<double>&) {
                   for (std::size_t s = begin; s < end; ++s) {
                       const auto spec = ens.spectrum(s);
                       double* om = out.omega.data() + s * n;
                       double* wt = out.weight.data() + s * n;
                       // spectra are stored descending; emit ascending omega
                       for (std::size_t i = 0; i < n; ++i) {
                           const double eps = spec[n - 1 - i];
                           om[i] = map.unfold(eps);
                           wt[i] = std::sqrt(std::max(0.0, kernel.density(eps)));
                       }
                   }
               });
    return out;
}

BinnedEstimate estimate_r1(const SpectraEnsemble& ens, const std::vector<double>& edges) {
    return r1_impl(ens, edges, true);
}
BinnedEstimate estimate_r1_serial(const SpectraEnsemble& ens, const std::vector<double>& edges) {
    return r1_impl(ens, edges, false);
}

BinnedEstimate2D estimate_r2(const SpectraEnsemble& ens, const std::vector<double>& edges1,
                             const std::vector<double>& edges2) {
    return r2_impl(ens, edges1, edges2, true);
}
BinnedEstimate2D estimate_r2_serial(const SpectraEnsemble& ens,
                                    const std::vector<double>& edges1,
                                    const std::vector<double>& edges2) {
    return r2_impl(ens, edges1, edges2, false);
}

BinnedEstimate estimate_renormalized_cluster(const SpectraEnsemble& ens,
                                             const UnfoldingMap& map, ClusterRegime regime,
                                             const std::vector<double>& separation_edges,
                                             const ClusterOptions& options) {
    return cluster_impl(ens, map, regime, separation_edges, options, true);
}
BinnedEstimate estimate_renormalized_cluster_serial(const SpectraEnsemble& ens,
                                                    const UnfoldingMap& map,
                                                    ClusterRegime regime,
                                                    const std::vector<double>& separation_edges,
                                                    const ClusterOptions& options) {
    return cluster_impl(ens, map, regime, separation_edges, options, false);
}

SpacingHistogram spacing_distribution(const SpectraEnsemble& ens, const UnfoldingMap& map,
                                      double omega_lo, double omega_hi,
                                      const std::vector<double>& edges) {
    return spacing_impl(ens, map, omega_lo, omega_hi, edges, true);
}
SpacingHistogram spacing_distribution_serial(const SpectraEnsemble& ens,
                                             const UnfoldingMap& map, double omega_lo,
                                             double omega_hi,
                                             const std::vector<double>& edges) {
    return spacing_impl(ens, map, omega_lo, omega_hi, edges, false);
}

std::vector<double> collect_spacings(const SpectraEnsemble& ens, const UnfoldingMap& map,
                                     double omega_lo, double omega_hi) {
    if (ens.n() != map.dim())
        throw std::invalid_argument("collect_spacings: ensemble/map N mismatch");
    const UnfoldedEnsemble unf = unfold_ensemble(ens, map);
    std::vector<double> out;
    for (std::size_t s = 0; s < unf.count; ++s) {
        const auto om = unf.omegas(s);
        for (std::size_t i = 0; i + 1 < om.size(); ++i) {
            if (om[i] < omega_lo || om[i + 1] > omega_hi) continue;
            out.push_back(om[i + 1] - om[i]);
        }
    }
    return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: need >= 1 sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

double ks_distance(const SpacingHistogram& hist, const std::function<double(double)>& cdf) {
    if (hist.density.empty()) throw std::invalid_argument("ks_distance: empty histogram");
    double d = std::abs(cdf(hist.edges.front()));
    double cum = 0.0;
    for (std::size_t b = 0; b < hist.density.size(); ++b) {
        cum += hist.density[b] * (hist.edges[b + 1] - hist.edges[b]);
        d = std::max(d, std::abs(cum - cdf(hist.edges[b + 1])));
    }
    return d;
}

std::vector<double> uniform_edges(double lo, double hi, int bins) {
    if (bins < 1 || !(hi > lo)) throw std::invalid_argument("uniform_edges: bad range");
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
    return edges;
}

}  // namespace kicklue
