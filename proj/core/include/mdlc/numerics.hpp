#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mdlc {

// Reductions are plain left-to-right sums throughout: bit-reproducible
// output beats the marginal accuracy of fancier summation at these sizes.

inline double plain_sum(std::span<const double> a) {
    double acc = 0.0;
    for (double x : a) acc += x;
    return acc;
}

/// Trapezoid weights over the closed index interval [lo, hi] of f
/// (no dx factor). A zero-width interval integrates to zero.
inline double trapezoid(std::span<const double> f, std::size_t lo, std::size_t hi) {
    if (hi <= lo) return 0.0;
    double acc = 0.5 * f[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) acc += f[i];
    acc += 0.5 * f[hi];
    return acc;
}

/// Prefix sums with P[0] = 0, P[k] = sum of f[0..k-1]; plain sums over
/// [lo, hi] become P[hi+1] - P[lo].
inline std::vector<double> prefix_sums(std::span<const double> f) {
    std::vector<double> p(f.size() + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) p[i + 1] = p[i] + f[i];
    return p;
}

/// Trapezoid over [lo, hi] out of precomputed prefix sums of f.
inline double trapezoid_prefix(std::span<const double> p, std::span<const double> f,
                               std::size_t lo, std::size_t hi) {
    if (hi <= lo) return 0.0;
    return p[hi + 1] - p[lo] - 0.5 * f[lo] - 0.5 * f[hi];
}

inline std::vector<double> charge_density(std::span<const std::complex<double>> u,
                                          std::span<const std::complex<double>> v) {
    std::vector<double> rho(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) rho[i] = std::norm(u[i]) + std::norm(v[i]);
    return rho;
}

/// Observed convergence orders log2(d[k] / d[k+1]) for a halving chain.
inline std::vector<double> observed_orders(std::span<const double> distances) {
    std::vector<double> orders;
    for (std::size_t k = 0; k + 1 < distances.size(); ++k) {
        orders.push_back(std::log2(distances[k] / distances[k + 1]));
    }
    return orders;
}

/// e^{mt} m (mt + 1), the pointwise-bound amplification factor.
inline double growth_factor(double m, double t) {
    return std::exp(m * t) * m * (m * t + 1.0);
}

inline double sup_norm(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s = std::max(s, std::abs(x));
    return s;
}

}  // namespace mdlc
