#pragma once

#include "mixedheat/grid.hpp"

namespace mixedheat {

namespace detail {

inline void require_order(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("symbol: order s must lie in (0,1)");
}

inline void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("symbol: time must be finite and >= 0");
}

} // namespace detail

/// Eigenvalues |xi|^2 + |xi|^{2s} of the mixed operator on the grid's
/// wavenumbers. The zero mode is exactly 0 (|0|^{2s} = 0, no regularization).
inline std::vector<double> operator_eigenvalues(const GridSpec& g, double s) {
    detail::require_order(s);
    std::vector<double> lam(g.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double xi = g.xi_magnitude(i);
        lam[i] = xi * xi + std::pow(xi, 2.0 * s);
    }
    return lam;
}

namespace detail {

template <class Lambda>
SpectrumField exp_symbol(const GridSpec& g, double t, Lambda&& lam) {
    SpectrumField out(g);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = std::exp(-t * lam(g.xi_magnitude(i)));
    return out;
}

} // namespace detail

/// Heat multiplier e^{-t(|xi|^2 + |xi|^{2s})} of the mixed operator.
/// All entries lie in (0,1] for t > 0, the zero mode is exactly 1, and the
/// entries are nonincreasing in |xi|.
inline SpectrumField symbol(const GridSpec& g, double s, double t) {
    detail::require_order(s);
    detail::require_time(t);
    return detail::exp_symbol(g, t, [s](double xi) { return xi * xi + std::pow(xi, 2.0 * s); });
}

/// Fractional multiplier e^{-t|xi|^{2s}}.
inline SpectrumField symbol_fractional(const GridSpec& g, double s, double t) {
    detail::require_order(s);
    detail::require_time(t);
    return detail::exp_symbol(g, t, [s](double xi) { return std::pow(xi, 2.0 * s); });
}

/// Local (Gauss-Weierstrass) multiplier e^{-t|xi|^2}.
inline SpectrumField symbol_local(const GridSpec& g, double t) {
    detail::require_time(t);
    return detail::exp_symbol(g, t, [](double xi) { return xi * xi; });
}

} // namespace mixedheat
