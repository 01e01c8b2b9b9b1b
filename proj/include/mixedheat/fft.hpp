#pragma once

#include "mixedheat/grid.hpp"

#include <complex>
#include <fftw3.h>
#include <map>
#include <mutex>

namespace mixedheat {

namespace detail {

// One cached FFTW plan per (shape, direction). Plans are created with
// FFTW_ESTIMATE (deterministic) and FFTW_UNALIGNED so they can execute on
// arbitrary heap buffers via the new-array interface. Creation is guarded by
// a mutex; fftw_execute_dft itself is thread-safe on distinct buffers.
struct PlanKey {
    int n0, n1, n2, sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(n0, n1, n2, sign) < std::tie(o.n0, o.n1, o.n2, o.sign);
    }
};

inline fftw_plan acquire_plan(const GridSpec& g, int sign) {
    static std::map<PlanKey, fftw_plan> cache;
    static std::mutex mtx;
    const int n = g.points_per_axis;
    PlanKey key{g.dim > 0 ? n : 1, g.dim > 1 ? n : 1, g.dim > 2 ? n : 1, sign};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> a(g.size()), b(g.size());
    int dims[3] = {n, n, n};
    fftw_plan plan = fftw_plan_dft(g.dim, dims,
                                   reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()),
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, plan);
    return plan;
}

inline void execute(const GridSpec& g, int sign, std::complex<double>* in,
                    std::complex<double>* out) {
    fftw_execute_dft(acquire_plan(g, sign),
                     reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace detail

/// Discrete analogue of the isometric Fourier transform
///   F(xi) = (2pi)^{-N/2} \int e^{-i<x,xi>} f(x) dx,
/// i.e. c_k = (2pi)^{-N/2} dx^N (-1)^{k_1+...+k_N} DFT_k[f].
///
/// Volume-element convention (used consistently everywhere): the discrete
/// Plancherel identity reads
///   sum_k |c_k|^2 * dxi^N = sum_j |f_j|^2 * dx^N
/// and holds to machine precision.
inline SpectrumField forward_transform(const Field& f) {
    if (!f.all_finite())
        throw std::invalid_argument("forward_transform: input contains non-finite values");
    const GridSpec& g = f.grid;
    std::vector<std::complex<double>> in(g.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = f.values[i];
    SpectrumField out(g);
    detail::execute(g, FFTW_FORWARD, in.data(), out.coeffs.data());
    const double scale = std::pow(2.0 * M_PI, -0.5 * g.dim) * g.cell_volume();
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] *= scale * g.parity_sign(i);
    return out;
}

/// Largest conjugate-symmetry defect |c_k - conj(c_{-k})| of a spectrum.
inline double symmetry_defect(const SpectrumField& F) {
    double d = 0.0;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const auto m = F.grid.mirror(i);
        d = std::max(d, std::abs(F.coeffs[i] - std::conj(F.coeffs[m])));
    }
    return d;
}

/// Adjoint of forward_transform: f_j = (2pi)^{-N/2} dxi^N IDFT_j[(-1)^k c_k].
/// A lone zero mode c_0 = c therefore synthesizes the constant field
/// (2pi)^{-N/2} dxi^N c. Rejects spectra that are not conjugate-symmetric.
inline Field inverse_transform(const SpectrumField& F) {
    double norm = 0.0;
    for (const auto& c : F.coeffs) norm = std::max(norm, std::abs(c));
    if (symmetry_defect(F) > 1e-9 * std::max(norm, 1e-300))
        throw std::invalid_argument("inverse_transform: spectrum is not conjugate-symmetric");
    const GridSpec& g = F.grid;
    std::vector<std::complex<double>> in(g.size()), out(g.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = F.coeffs[i] * g.parity_sign(i);
    detail::execute(g, FFTW_BACKWARD, in.data(), out.data());
    const double scale = std::pow(2.0 * M_PI, -0.5 * g.dim) * g.spectral_cell();
    Field f(g);
    for (std::size_t i = 0; i < out.size(); ++i) f.values[i] = out[i].real() * scale;
    return f;
}

/// Circular convolution (f * g)(x) = \int f(y) g(x-y) dy on the torus,
/// evaluated spectrally via F(f*g) = (2pi)^{N/2} F(f) F(g).
inline Field convolve(const Field& f, const Field& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("convolve: grid mismatch");
    SpectrumField F = forward_transform(f);
    const SpectrumField G = forward_transform(g);
    const double scale = std::pow(2.0 * M_PI, 0.5 * f.grid.dim);
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) F.coeffs[i] *= scale * G.coeffs[i];
    return inverse_transform(F);
}

/// Pointwise spectral multiplier application: f -> invT(m .* fwT(f)).
inline Field apply_multiplier(const Field& f, const std::vector<double>& mult) {
    if (mult.size() != f.grid.size())
        throw std::invalid_argument("apply_multiplier: multiplier size mismatch");
    SpectrumField F = forward_transform(f);
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) F.coeffs[i] *= mult[i];
    return inverse_transform(F);
}

} // namespace mixedheat
