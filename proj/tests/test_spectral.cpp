#include "mixedheat/fft.hpp"
#include "mixedheat/symbols.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace mixedheat;

namespace {

Field random_field(const GridSpec& g, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    Field f(g);
    for (double& v : f.values) v = 2.0 * ((double(eng() >> 11) + 0.5) * 0x1p-53) - 1.0;
    return f;
}

} // namespace

TEST_CASE("grid validation", "[spectral]") {
    CHECK_THROWS_AS(GridSpec::make(0, 40.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(4, 40.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(1, -1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(1, 40.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(1, 40.0, 6), std::invalid_argument);
    const GridSpec g = GridSpec::with_defaults(2);
    CHECK(g.points_per_axis == 256);
    CHECK(g.size() == 256u * 256u);
    CHECK(g.dx() == Catch::Approx(80.0 / 256.0));
}

TEST_CASE("round-trip identity on random fields", "[spectral]") {
    for (int dim : {1, 2, 3}) {
        const GridSpec g = GridSpec::make(dim, 10.0, dim == 1 ? 64 : dim == 2 ? 24 : 12);
        const Field f = random_field(g, 17 + std::uint64_t(dim));
        const Field back = inverse_transform(forward_transform(f));
        double err = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            err = std::max(err, std::abs(back.values[i] - f.values[i]));
        CHECK(err < 1e-12);
    }
}

TEST_CASE("Plancherel identity", "[spectral]") {
    for (int dim : {1, 2, 3}) {
        const GridSpec g = GridSpec::make(dim, 7.0, dim == 1 ? 128 : dim == 2 ? 32 : 10);
        const Field f = random_field(g, 23 + std::uint64_t(dim));
        const SpectrumField F = forward_transform(f);
        double sum_f = 0.0, sum_c = 0.0;
        for (double v : f.values) sum_f += v * v;
        for (const auto& c : F.coeffs) sum_c += std::norm(c);
        const double lhs = sum_c * g.spectral_cell();
        const double rhs = sum_f * g.cell_volume();
        CHECK(std::abs(lhs - rhs) < 1e-10 * rhs);
    }
}

TEST_CASE("constant field transforms to a lone zero mode", "[spectral]") {
    const GridSpec g = GridSpec::make(1, 5.0, 32);
    const Field f(g, 1.0);
    const SpectrumField F = forward_transform(f);
    for (std::size_t i = 1; i < F.coeffs.size(); ++i)
        CHECK(std::abs(F.coeffs[i]) < 1e-13 * std::abs(F.coeffs[0]));
    // zero mode of the unit field: (2pi)^{-1/2} dx n = (2pi)^{-1/2} 2R
    CHECK(F.coeffs[0].real() ==
          Catch::Approx(2.0 * g.half_length / std::sqrt(2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("single cosine mode lands on k = +-1", "[spectral]") {
    const GridSpec g = GridSpec::make(1, 13.0, 256);
    Field f(g);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = std::cos(M_PI * g.point(i)[0] / g.half_length);
    const SpectrumField F = forward_transform(f);
    const std::size_t plus = 1, minus = F.coeffs.size() - 1;
    // analytic transform of one Fourier mode: c_{+-1} = R / sqrt(2 pi)
    const double expected = g.half_length / std::sqrt(2.0 * M_PI);
    CHECK(F.coeffs[plus].real() == Catch::Approx(expected).epsilon(1e-12));
    CHECK(F.coeffs[minus].real() == Catch::Approx(expected).epsilon(1e-12));
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        if (i == plus || i == minus) continue;
        CHECK(std::abs(F.coeffs[i]) < 1e-12 * expected);
    }
}

TEST_CASE("inverse transform basics", "[spectral]") {
    const GridSpec g = GridSpec::make(1, 5.0, 32);
    SECTION("zero spectrum gives the zero field") {
        const Field f = inverse_transform(SpectrumField(g));
        CHECK(f.sup_norm() == 0.0);
    }
    SECTION("lone zero mode gives the documented constant") {
        SpectrumField F(g);
        F.coeffs[0] = 3.0;
        const Field f = inverse_transform(F);
        const double expected = 3.0 * g.dxi() / std::sqrt(2.0 * M_PI);
        for (double v : f.values) CHECK(v == Catch::Approx(expected).epsilon(1e-14));
    }
    SECTION("asymmetric spectrum is rejected") {
        SpectrumField F(g);
        F.coeffs[1] = {1.0, 1.0}; // mirror stays zero
        CHECK_THROWS_AS(inverse_transform(F), std::invalid_argument);
    }
}

TEST_CASE("Gaussian transform pair", "[spectral]") {
    const GridSpec g = GridSpec::make(1, 40.0, 1024);
    Field f(g);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double x = g.point(i)[0];
        f.values[i] = std::exp(-0.5 * x * x);
    }
    const SpectrumField F = forward_transform(f);
    // closed form: unit-width Gaussian maps to e^{-xi^2/2}
    double err = 0.0;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const double xi = g.xi_magnitude(i);
        err = std::max(err, std::abs(F.coeffs[i].real() - std::exp(-0.5 * xi * xi)));
        err = std::max(err, std::abs(F.coeffs[i].imag()));
    }
    CHECK(err < 1e-10);
    const Field back = inverse_transform(F);
    double err2 = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err2 = std::max(err2, std::abs(back.values[i] - f.values[i]));
    CHECK(err2 < 1e-10);
}

TEST_CASE("non-finite input is rejected", "[spectral]") {
    const GridSpec g = GridSpec::make(1, 5.0, 32);
    Field f(g, 1.0);
    f.values[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(forward_transform(f), std::invalid_argument);
}

TEST_CASE("symbol values and edge cases", "[spectral]") {
    const GridSpec g = GridSpec::make(1, M_PI, 64);
    SECTION("t = 0 gives the all-ones multiplier") {
        const SpectrumField S = symbol(g, 0.5, 0.0);
        for (const auto& c : S.coeffs) CHECK(c.real() == 1.0);
    }
    SECTION("zero mode is exactly 1 for any t") {
        for (double t : {0.1, 1.0, 7.5}) CHECK(symbol(g, 0.3, t).coeffs[0].real() == 1.0);
    }
    SECTION("R = pi puts mode k=1 at |xi| = 1, so the t=1 entry is e^{-2}") {
        for (double s : {0.2, 0.5, 0.9}) {
            const SpectrumField S = symbol(g, s, 1.0);
            CHECK(S.coeffs[1].real() == Catch::Approx(std::exp(-2.0)).epsilon(1e-14));
        }
    }
    SECTION("entries lie in (0,1] and decrease with |xi|") {
        const SpectrumField S = symbol(g, 0.7, 0.3);
        for (std::size_t i = 0; i < S.coeffs.size(); ++i) {
            CHECK(S.coeffs[i].real() > 0.0);
            CHECK(S.coeffs[i].real() <= 1.0);
        }
        // monotone along the positive-frequency half
        for (std::size_t i = 1; i + 1 < std::size_t(g.points_per_axis) / 2; ++i)
            CHECK(S.coeffs[i + 1].real() <= S.coeffs[i].real());
    }
    SECTION("order outside (0,1) is rejected") {
        CHECK_THROWS_AS(symbol(g, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(symbol(g, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(symbol(g, 1.5, 1.0), std::invalid_argument);
    }
}

TEST_CASE("symbol factorization and semigroup", "[spectral]") {
    const GridSpec g = GridSpec::make(1, 9.0, 128);
    std::mt19937_64 eng(5);
    auto uni = [&] { return (double(eng() >> 11) + 0.5) * 0x1p-53; };
    for (int rep = 0; rep < 10; ++rep) {
        const double s = 0.05 + 0.9 * uni();
        const double t = 2.0 * uni(), tau = 2.0 * uni();
        const SpectrumField a = symbol(g, s, t);
        const SpectrumField b = symbol(g, s, tau);
        const SpectrumField c = symbol(g, s, t + tau);
        const SpectrumField fr = symbol_fractional(g, s, t);
        const SpectrumField lo = symbol_local(g, t);
        for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
            CHECK(std::abs(a.coeffs[i].real() * b.coeffs[i].real() - c.coeffs[i].real()) <=
                  1e-14);
            CHECK(std::abs(fr.coeffs[i].real() * lo.coeffs[i].real() - a.coeffs[i].real()) <=
                  1e-14);
        }
    }
}

TEST_CASE("symbol_local spot value and s -> 1 continuity", "[spectral]") {
    const GridSpec g = GridSpec::make(1, M_PI, 64); // |xi_k| = |k|
    const SpectrumField lo = symbol_local(g, 0.5);
    CHECK(lo.coeffs[2].real() == Catch::Approx(std::exp(-2.0)).epsilon(1e-14)); // |xi|=2
    const SpectrumField near = symbol_fractional(g, 0.999, 1.0);
    const SpectrumField loc = symbol_local(g, 1.0);
    for (std::size_t i = 0; i < near.coeffs.size(); ++i) {
        if (g.xi_magnitude(i) > 4.0) continue;
        CHECK(std::abs(near.coeffs[i].real() - loc.coeffs[i].real()) < 1e-2);
    }
}

TEST_CASE("convolution theorem sanity", "[spectral]") {
    // convolving with a discrete delta (mass 1) reproduces the field
    const GridSpec g = GridSpec::make(1, 6.0, 64);
    Field delta(g);
    delta.values[0] = 1.0 / g.cell_volume();
    const Field f = random_field(g, 99);
    const Field conv = convolve(f, delta);
    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(conv.values[i] - f.values[i]));
    CHECK(err < 1e-12);
}
