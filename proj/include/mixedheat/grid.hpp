#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedheat {

/// Truncated periodic computational box [-R, R)^N with n points per axis.
///
/// Spatial samples sit at x_j = -R + j*dx with dx = 2R/n. The discrete
/// wavenumbers are xi_k = pi*k/R for integer k in [-n/2, n/2); this is the
/// single source of the wavenumber convention for the whole library.
/// Spectra are stored in DFT layout: per axis, index i < n/2 carries
/// frequency k = i and index i >= n/2 carries k = i - n.
struct GridSpec {
    int dim = 1;               ///< spatial dimension N, 1..3
    double half_length = 40.0; ///< box half-length R
    int points_per_axis = 1024;

    static GridSpec make(int dim, double half_length, int points_per_axis) {
        if (dim < 1 || dim > 3)
            throw std::invalid_argument("GridSpec: dimension must be 1, 2 or 3");
        if (!(half_length > 0.0))
            throw std::invalid_argument("GridSpec: half-length must be positive");
        if (points_per_axis < 8 || points_per_axis % 2 != 0)
            throw std::invalid_argument("GridSpec: points per axis must be even and >= 8");
        double total = std::pow(double(points_per_axis), dim);
        if (total > 1.6e8)
            throw std::invalid_argument("GridSpec: total point count too large");
        return GridSpec{dim, half_length, points_per_axis};
    }

    /// Default resolutions: 1024 (N=1), 256 (N=2), 64 (N=3).
    static GridSpec with_defaults(int dim, double half_length = 40.0) {
        const int n = dim == 1 ? 1024 : dim == 2 ? 256 : 64;
        return make(dim, half_length, n);
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < dim; ++a) s *= std::size_t(points_per_axis);
        return s;
    }

    double dx() const { return 2.0 * half_length / points_per_axis; }
    double dxi() const { return M_PI / half_length; }
    double cell_volume() const { return std::pow(dx(), dim); }
    double spectral_cell() const { return std::pow(dxi(), dim); }

    std::array<int, 3> decode(std::size_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        const std::size_t n = std::size_t(points_per_axis);
        for (int a = dim - 1; a >= 0; --a) {
            idx[std::size_t(a)] = int(flat % n);
            flat /= n;
        }
        return idx;
    }

    std::size_t encode(const std::array<int, 3>& idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < dim; ++a)
            flat = flat * std::size_t(points_per_axis) + std::size_t(idx[std::size_t(a)]);
        return flat;
    }

    /// Physical coordinates of the grid point with flat index `flat`.
    std::array<double, 3> point(std::size_t flat) const {
        const auto idx = decode(flat);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a)
            x[std::size_t(a)] = -half_length + dx() * idx[std::size_t(a)];
        return x;
    }

    double radius(std::size_t flat) const {
        const auto x = point(flat);
        double r2 = 0.0;
        for (int a = 0; a < dim; ++a) r2 += x[std::size_t(a)] * x[std::size_t(a)];
        return std::sqrt(r2);
    }

    /// Signed integer frequency of a per-axis storage index.
    int freq_component(int i) const { return i < points_per_axis / 2 ? i : i - points_per_axis; }

    /// |xi| at a flat spectral index.
    double xi_magnitude(std::size_t flat) const {
        const auto idx = decode(flat);
        double k2 = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double k = freq_component(idx[std::size_t(a)]);
            k2 += k * k;
        }
        return dxi() * std::sqrt(k2);
    }

    /// (-1)^(k_1+...+k_N) for the flat spectral index; with n even the parity
    /// of the stored index equals the parity of the signed frequency.
    double parity_sign(std::size_t flat) const {
        const auto idx = decode(flat);
        int par = 0;
        for (int a = 0; a < dim; ++a) par += idx[std::size_t(a)];
        return (par & 1) ? -1.0 : 1.0;
    }

    /// Index of -x (spatial) or -k (spectral); the axis map is i -> (n-i) mod n.
    std::size_t mirror(std::size_t flat) const {
        auto idx = decode(flat);
        for (int a = 0; a < dim; ++a) {
            const int i = idx[std::size_t(a)];
            idx[std::size_t(a)] = i == 0 ? 0 : points_per_axis - i;
        }
        return encode(idx);
    }

    bool operator==(const GridSpec& o) const = default;
};

/// Real scalar samples on a grid.
struct Field {
    GridSpec grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const GridSpec& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
    Field(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw std::invalid_argument("Field: value count does not match grid");
    }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    double min_value() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::min(m, v);
        return m;
    }

    double max_value() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::max(m, v);
        return m;
    }

    /// Discrete integral: sum of samples times the cell volume.
    double mass() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s * grid.cell_volume();
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Complex Fourier coefficients on the grid's wavenumbers, DFT layout.
struct SpectrumField {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;

    SpectrumField() = default;
    explicit SpectrumField(const GridSpec& g) : grid(g), coeffs(g.size()) {}
    SpectrumField(const GridSpec& g, std::vector<std::complex<double>> c)
        : grid(g), coeffs(std::move(c)) {
        if (coeffs.size() != grid.size())
            throw std::invalid_argument("SpectrumField: coefficient count does not match grid");
    }
};

inline Field operator+(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("Field+: grid mismatch");
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] + b.values[i];
    return out;
}

inline Field operator-(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("Field-: grid mismatch");
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] - b.values[i];
    return out;
}

inline Field operator*(double c, const Field& a) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = c * a.values[i];
    return out;
}

/// z^p with negative spectral ringing clamped away for fractional powers;
/// genuine integer exponents are evaluated without clamping.
inline double power_clamped(double z, double p) {
    const double pr = std::round(p);
    if (std::abs(p - pr) < 1e-12) return std::pow(z, pr);
    return std::pow(std::max(z, 0.0), p);
}

inline Field pow_field(const Field& a, double p) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = power_clamped(a.values[i], p);
    return out;
}

} // namespace mixedheat
