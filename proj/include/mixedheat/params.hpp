#pragma once

#include <cmath>
#include <stdexcept>

namespace mixedheat {

/// Normalization constant of the fractional Laplacian,
///   C_{N,s} = 2^{2s-1} * 2s * Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s)).
/// Rejected at s in {0,1} (Gamma(1-s) pole / degenerate order).
inline double normalization_constant(int dim, double s) {
    if (dim < 1) throw std::invalid_argument("normalization_constant: dimension must be >= 1");
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("normalization_constant: s must lie strictly in (0,1)");
    return std::pow(2.0, 2.0 * s - 1.0) * 2.0 * s * std::tgamma(0.5 * (dim + 2.0 * s)) /
           (std::pow(M_PI, 0.5 * dim) * std::tgamma(1.0 - s));
}

/// Critical power 1 + 2s/N separating blow-up from small-data global existence.
inline double critical_exponent(int dim, double s) {
    if (dim < 1) throw std::invalid_argument("critical_exponent: dimension must be >= 1");
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("critical_exponent: s must lie strictly in (0,1)");
    return 1.0 + 2.0 * s / dim;
}

/// Model parameters of the mixed operator -Laplace + (-Laplace)^s.
struct ModelParams {
    int dim = 1;
    double s = 0.5;
    double c_norm = 0.0;      ///< C_{N,s}
    double p_critical = 0.0;  ///< 1 + 2s/N

    static ModelParams make(int dim, double s) {
        ModelParams p;
        p.dim = dim;
        p.s = s;
        p.c_norm = normalization_constant(dim, s);
        p.p_critical = critical_exponent(dim, s);
        return p;
    }
};

} // namespace mixedheat
