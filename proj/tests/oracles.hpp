// Test-side oracles, independent of the library's implementation paths.
#pragma once

#include "mixedheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

// Romberg integration on [a,b]; independent of the library's quadratures.
inline double romberg(const std::function<double(double)>& f, double a, double b,
                      int levels = 18, double tol = 1e-12) {
    std::vector<std::vector<double>> r(1);
    double h = b - a;
    r[0].push_back(0.5 * h * (f(a) + f(b)));
    for (int k = 1; k < levels; ++k) {
        h *= 0.5;
        double sum = 0.0;
        const std::size_t steps = std::size_t(1) << (k - 1);
        for (std::size_t i = 0; i < steps; ++i) sum += f(a + (2.0 * i + 1.0) * h);
        r.emplace_back();
        r[k].push_back(0.5 * r[k - 1][0] + h * sum);
        double p4 = 4.0;
        for (int j = 1; j <= k; ++j) {
            r[k].push_back(r[k][j - 1] + (r[k][j - 1] - r[k - 1][j - 1]) / (p4 - 1.0));
            p4 *= 4.0;
        }
        if (k > 3 && std::abs(r[k][k] - r[k - 1][k - 1]) < tol * (1.0 + std::abs(r[k][k])))
            return r[k][k];
    }
    return r.back().back();
}

// Gamma function by direct quadrature of the Euler integral (substituting
// u = x^z on [0,1] to remove the endpoint singularity for z < 1).
inline double gamma_by_quadrature(double z) {
    const double head =
        romberg([z](double u) { return std::exp(-std::pow(u, 1.0 / z)); }, 0.0, 1.0) / z;
    const double tail =
        romberg([z](double x) { return std::pow(x, z - 1.0) * std::exp(-x); }, 1.0, 60.0);
    return head + tail;
}

// Direct trigonometric synthesis of a spectrum at an arbitrary 1-D point:
// f(x) = (2pi)^{-1/2} dxi * sum_k c_k e^{i x xi_k}. Spectral interpolation
// without the FFT path.
inline double synthesize_1d(const mixedheat::SpectrumField& F, double x) {
    const auto& g = F.grid;
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const int k = g.freq_component(int(i));
        const double xi = g.dxi() * k;
        acc += F.coeffs[i] * std::exp(std::complex<double>(0.0, x * xi));
    }
    return (acc * (g.dxi() / std::sqrt(2.0 * M_PI))).real();
}

inline double poisson_kernel(double t, double x) { return (1.0 / M_PI) * t / (t * t + x * x); }

// Closed-form blow-up time of u' = u^p from level a.
inline double ode_blowup_time(double a, double p) {
    return std::pow(a, 1.0 - p) / (p - 1.0);
}

// Exact one-step solution of u' = u^p from level a.
inline double ode_exact_step(double a, double p, double dt) {
    return a * std::pow(1.0 - (p - 1.0) * std::pow(a, p - 1.0) * dt, -1.0 / (p - 1.0));
}

// 95% Kolmogorov critical value.
inline double ks_critical(std::size_t count) { return 1.36 / std::sqrt(double(count)); }

// Brute-force majorant recursion: does delta_{n+1} = delta0 + delta_n^p stay
// bounded over n_iters iterations?
inline bool schedule_converges_brute_force(double delta0, double p, std::size_t n_iters = 100000,
                                           double bound = 1e6) {
    double d = delta0;
    for (std::size_t n = 0; n < n_iters; ++n) {
        d = delta0 + std::pow(d, p);
        if (!std::isfinite(d) || d > bound) return false;
    }
    return true;
}

// Inverse-CDF sampler from a 1-D kernel's own discrete point masses.
inline std::vector<double> sample_from_kernel_cdf(const mixedheat::Field& k, std::size_t count,
                                                  std::uint64_t seed) {
    std::vector<double> cdf(k.values.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < k.values.size(); ++i) {
        acc += std::max(k.values[i], 0.0);
        cdf[i] = acc;
    }
    std::mt19937_64 eng(seed);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = (double(eng() >> 11) + 0.5) * 0x1p-53 * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t j = std::size_t(it - cdf.begin());
        out[i] = k.grid.point(j)[0];
    }
    return out;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracles
