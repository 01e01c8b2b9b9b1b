#pragma once

#include "mixedheat/grid.hpp"

#include <cstdint>
#include <random>

namespace mixedheat {

/// Configuration of one Monte Carlo density run.
struct SamplerConfig {
    double s = 0.5;
    double t = 1.0;
    std::size_t count = 1000000;
    std::uint64_t seed = 0;
    double bin_width = 0.0; ///< 0 selects the grid spacing

    void validate() const {
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("SamplerConfig: s must be in (0,1)");
        if (!(t >= 0.0)) throw std::invalid_argument("SamplerConfig: t must be >= 0");
        if (count < 10000) throw std::invalid_argument("SamplerConfig: need at least 1e4 samples");
        if (bin_width < 0.0) throw std::invalid_argument("SamplerConfig: bin width must be > 0");
    }
};

/// Binned empirical law on a box. Probabilities sum to 1 - tail_fraction;
/// samples falling outside the box are never clamped into edge bins.
struct EmpiricalDensity {
    std::vector<double> edges;  ///< bin_count + 1 ascending edges
    std::vector<double> probs;  ///< per-bin probability relative to all samples
    std::size_t count = 0;
    double tail_fraction = 0.0;
    double s = 0.0, t = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

// Sampling is split into fixed-size chunks; chunk c draws from an engine
// seeded with splitmix64(seed + c * golden_gamma). Chunk boundaries depend
// only on the sample count, so the stream is identical no matter how the
// chunks are scheduled.
constexpr std::size_t kChunkSamples = 1 << 16;
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct ChunkRng {
    std::mt19937_64 eng;
    explicit ChunkRng(std::uint64_t seed, std::size_t chunk)
        : eng(splitmix64(seed + chunk * kGoldenGamma)) {}
    /// Uniform in the open interval (0,1); the stdlib distributions are
    /// implementation-defined, this mapping is not.
    double uniform() { return (double(eng() >> 11) + 0.5) * 0x1p-53; }
    double exponential() { return -std::log(uniform()); }
    std::pair<double, double> normal_pair() {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double a = 2.0 * M_PI * uniform();
        return {r * std::cos(a), r * std::sin(a)};
    }
};

// Chambers-Mallows-Stuck, symmetric case: characteristic function e^{-|xi|^alpha}.
inline double cms_symmetric(double alpha, double u, double e) {
    const double U = M_PI * (u - 0.5);
    if (std::abs(alpha - 1.0) < 1e-12) return std::tan(U); // Cauchy branch
    return std::sin(alpha * U) / std::pow(std::cos(U), 1.0 / alpha) *
           std::pow(std::cos((1.0 - alpha) * U) / e, (1.0 - alpha) / alpha);
}

// Kanter's representation of the one-sided rho-stable law with Laplace
// transform E e^{-lambda A} = e^{-lambda^rho}, 0 < rho < 1.
inline double kanter_positive(double rho, double v, double e) {
    const double V = M_PI * v;
    const double a = std::pow(std::pow(std::sin(rho * V), rho) *
                                  std::pow(std::sin((1.0 - rho) * V), 1.0 - rho) / std::sin(V),
                              1.0 / (1.0 - rho));
    return std::pow(a / e, (1.0 - rho) / rho);
}

template <class Body>
void chunked(std::size_t count, std::uint64_t seed, Body&& body) {
    const std::size_t chunks = (count + kChunkSamples - 1) / kChunkSamples;
    for (std::size_t c = 0; c < chunks; ++c) {
        ChunkRng rng(seed, c);
        const std::size_t lo = c * kChunkSamples;
        const std::size_t hi = std::min(count, lo + kChunkSamples);
        for (std::size_t i = lo; i < hi; ++i) body(i, rng);
    }
}

} // namespace detail

/// Symmetric (2s)-stable variates with characteristic function e^{-t|xi|^{2s}}
/// (stable index alpha = 2s, scale t^{1/(2s)}). Fixed seed gives a
/// byte-identical sample stream.
inline std::vector<double> sample_stable(double s, double t, std::size_t count,
                                         std::uint64_t seed) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("sample_stable: s must be in (0,1)");
    if (!(t >= 0.0)) throw std::invalid_argument("sample_stable: t must be >= 0");
    std::vector<double> out(count, 0.0);
    if (t == 0.0) return out; // degenerate law
    const double alpha = 2.0 * s;
    const double scale = std::pow(t, 1.0 / alpha);
    detail::chunked(count, seed, [&](std::size_t i, detail::ChunkRng& rng) {
        const double u = rng.uniform();
        const double e = rng.exponential();
        out[i] = scale * detail::cms_symmetric(alpha, u, e);
    });
    return out;
}

/// One-sided rho-stable variates, E e^{-lambda A} = e^{-lambda^rho}.
inline std::vector<double> sample_positive_stable(double rho, std::size_t count,
                                                  std::uint64_t seed) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("sample_positive_stable: rho must be in (0,1)");
    std::vector<double> out(count);
    detail::chunked(count, seed, [&](std::size_t i, detail::ChunkRng& rng) {
        out[i] = detail::kanter_positive(rho, rng.uniform(), rng.exponential());
    });
    return out;
}

namespace detail {

inline EmpiricalDensity make_histogram(const std::vector<double>& samples, double lo, double hi,
                                       double width, const SamplerConfig& cfg) {
    const std::size_t bins = std::size_t(std::llround((hi - lo) / width));
    EmpiricalDensity d;
    d.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) d.edges[b] = lo + double(b) * width;
    d.probs.assign(bins, 0.0);
    std::size_t out_of_box = 0;
    for (double x : samples) {
        if (x < lo || x >= hi) {
            ++out_of_box;
            continue;
        }
        std::size_t b = std::size_t((x - lo) / width);
        if (b >= bins) b = bins - 1;
        d.probs[b] += 1.0;
    }
    for (double& p : d.probs) p /= double(samples.size());
    d.count = samples.size();
    d.tail_fraction = double(out_of_box) / double(samples.size());
    d.s = cfg.s;
    d.t = cfg.t;
    d.seed = cfg.seed;
    return d;
}

} // namespace detail

/// Law of W_t + J_t: a Gaussian of variance 2t (matching e^{-t|xi|^2}) plus an
/// independent stable variate from sample_stable, binned over the grid box.
inline EmpiricalDensity sample_mixed_process(const SamplerConfig& cfg, const GridSpec& g) {
    cfg.validate();
    if (g.dim != 1)
        throw std::invalid_argument("sample_mixed_process: expects a 1-D grid (use the radial "
                                    "variant for N=2)");
    const double alpha = 2.0 * cfg.s;
    const double jscale = cfg.t > 0.0 ? std::pow(cfg.t, 1.0 / alpha) : 0.0;
    const double wscale = std::sqrt(2.0 * cfg.t);
    std::vector<double> x(cfg.count);
    detail::chunked(cfg.count, cfg.seed, [&](std::size_t i, detail::ChunkRng& rng) {
        const double u = rng.uniform();
        const double e = rng.exponential();
        const auto [z, z2] = rng.normal_pair();
        (void)z2;
        const double J = jscale == 0.0 ? 0.0 : jscale * detail::cms_symmetric(alpha, u, e);
        x[i] = wscale * z + J;
    });
    const double width = cfg.bin_width > 0.0 ? cfg.bin_width : g.dx();
    return detail::make_histogram(x, -g.half_length, g.half_length, width, cfg);
}

/// Radial law |W_t + J_t| of the 2-D mixed process. The isotropic stable part
/// is drawn by subordination: J = sqrt(2 A) G with A one-sided s-stable scaled
/// by t^{1/s} and G a standard 2-D Gaussian.
inline EmpiricalDensity sample_mixed_radial_2d(const SamplerConfig& cfg, const GridSpec& g) {
    cfg.validate();
    if (g.dim != 2) throw std::invalid_argument("sample_mixed_radial_2d: expects a 2-D grid");
    const double ascale = cfg.t > 0.0 ? std::pow(cfg.t, 1.0 / cfg.s) : 0.0;
    const double wscale = std::sqrt(2.0 * cfg.t);
    std::vector<double> r(cfg.count);
    detail::chunked(cfg.count, cfg.seed, [&](std::size_t i, detail::ChunkRng& rng) {
        const double A = ascale * detail::kanter_positive(cfg.s, rng.uniform(), rng.exponential());
        const auto [g1, g2] = rng.normal_pair();
        const auto [w1, w2] = rng.normal_pair();
        const double js = std::sqrt(2.0 * A);
        const double x0 = js * g1 + wscale * w1;
        const double x1 = js * g2 + wscale * w2;
        r[i] = std::hypot(x0, x1);
    });
    const double width = cfg.bin_width > 0.0 ? cfg.bin_width : g.dx();
    return detail::make_histogram(r, 0.0, 0.5 * g.half_length, width, cfg);
}

/// Binned comparison of an empirical law against a sampled kernel: KS distance
/// between the in-box-normalized CDFs plus the largest per-bin z-score.
struct DensityComparison {
    double ks = 0.0;
    double max_abs_z = 0.0;
    std::size_t bins = 0;
};

/// Kernel samples are treated as point masses value * dx^N at their grid
/// points; a 2-D kernel is binned by radius, matching sample_mixed_radial_2d.
inline DensityComparison compare_density(const EmpiricalDensity& e, const Field& kernel_field) {
    if (e.count == 0 || e.probs.empty())
        throw std::invalid_argument("compare_density: empty empirical density");
    const GridSpec& g = kernel_field.grid;
    if (g.dim != 1 && g.dim != 2)
        throw std::invalid_argument("compare_density: kernel must be 1-D or 2-D radial");
    const double lo = e.edges.front(), hi = e.edges.back();
    const double limit = g.dim == 1 ? g.half_length : 0.5 * g.half_length;
    if (lo < -limit - 1e-12 || hi > limit + 1e-12)
        throw std::invalid_argument("compare_density: bins exceed the kernel box");

    const std::size_t bins = e.probs.size();
    std::vector<double> kmass(bins, 0.0);
    const double cell = g.cell_volume();
    for (std::size_t i = 0; i < kernel_field.values.size(); ++i) {
        const double pos = g.dim == 1 ? g.point(i)[0] : g.radius(i);
        if (pos < lo || pos >= hi) continue;
        std::size_t b = std::size_t((pos - lo) / (e.edges[1] - e.edges[0]));
        if (b >= bins) b = bins - 1;
        kmass[b] += kernel_field.values[i] * cell;
    }
    double ktotal = 0.0, etotal = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        ktotal += kmass[b];
        etotal += e.probs[b];
    }
    if (!(ktotal > 0.0) || !(etotal > 0.0))
        throw std::invalid_argument("compare_density: no mass overlap between inputs");

    DensityComparison cmp;
    cmp.bins = bins;
    double ck = 0.0, ce = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        ck += kmass[b] / ktotal;
        ce += e.probs[b] / etotal;
        cmp.ks = std::max(cmp.ks, std::abs(ck - ce));
        const double expect = kmass[b] / ktotal * etotal; // expected in-box probability
        const double n_eff = double(e.count);
        const double var = expect * (1.0 - expect) / n_eff;
        if (var > 0.0) {
            const double z = (e.probs[b] - expect) / std::sqrt(var);
            cmp.max_abs_z = std::max(cmp.max_abs_z, std::abs(z));
        }
    }
    return cmp;
}

} // namespace mixedheat
