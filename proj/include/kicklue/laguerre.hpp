#pragma once

#include <vector>

namespace kicklue {

/// Weighted Laguerre function phi_k(eps) = e^{-eps/2} L_k(eps), with L_k the
/// standard Laguerre polynomial (orthonormal on [0, inf) against e^{-eps}).
/// The weight is carried inside the three-term recurrence from k = 0, so the
/// value stays representable where the bare polynomial would overflow (the
/// soft edge needs eps of order 4N).
double laguerre_phi(int k, double eps);

/// Spectral kernel K_N(a, b) = sum_{k<N} phi_k(a) phi_k(b) and the densities
/// derived from it. Evaluation is the direct sum (unconditionally stable at
/// coincident points); the Christoffel-Darboux closed form is kept to the
/// test suite as a cross-check only.
class LaguerreKernel {
public:
    explicit LaguerreKernel(int n);

    int dim() const { return n_; }

    /// K_N(eps1, eps2); symmetric in its arguments.
    double operator()(double eps1, double eps2) const;

    /// One-level density sigma_N(eps) = K_N(eps, eps) >= 0.
    double density(double eps) const;

    /// Two-level cluster function T_2(eps1, eps2) = K_N(eps1, eps2)^2.
    double two_level_cluster(double eps1, double eps2) const;

private:
    int n_;
};

/// Monotone map omega(eps) = integral_0^eps sigma_N, tabulated on
/// oscillation-aware nodes with Gauss-Legendre panels. omega(0) = 0 and
/// omega -> N as eps -> inf. unfold() resolves within a node interval by
/// quadrature (better than 1e-8); invert() brackets monotonically and
/// polishes with Newton to 1e-10 in eps.
class UnfoldingMap {
public:
    static UnfoldingMap build(const LaguerreKernel& kernel);

    int dim() const { return n_; }
    double eps_max() const { return nodes_.back(); }
    double total_omega() const { return omega_.back(); }

    double unfold(double eps) const;
    double invert(double omega) const;  // rejects omega outside [0, N]

    const std::vector<double>& nodes() const { return nodes_; }

private:
    UnfoldingMap() = default;

    int n_ = 0;
    std::vector<double> nodes_;   // strictly increasing, nodes_[0] = 0
    std::vector<double> omega_;   // cumulative integral at nodes_
    std::vector<double> sigma_;   // density at nodes_
};

/// Renormalized two-level cluster function
///   T2bar(w, w') = T_2(eps(w), eps(w')) / sqrt(sigma(eps(w)) sigma(eps(w'))).
/// Throws std::domain_error where the density vanishes at an evaluation point.
double renormalized_cluster(const LaguerreKernel& kernel, const UnfoldingMap& map,
                            double omega1, double omega2);

/// Average of T2bar(w', w' + separation) over w' in [w_lo, w_hi], the bulk
/// reference curve. Composite quadrature over the window.
double bulk_averaged_cluster(const LaguerreKernel& kernel, const UnfoldingMap& map,
                             double separation, double w_lo, double w_hi);

/// GUE nearest-neighbor spacing surmise P(s) = (32/pi^2) s^2 exp(-4 s^2 / pi)
/// and its cumulative form erf(2s/sqrt(pi)) - (4s/pi) exp(-4 s^2 / pi).
double wigner_surmise_gue(double s);
double wigner_surmise_gue_cdf(double s);

}  // namespace kicklue
