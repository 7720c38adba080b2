#include "harma/spectral.hpp"

#include "harma/errors.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace harma;
using testutil::close;

namespace {

constexpr double kPi = std::numbers::pi;

HarmaModel fractional(Variant variant, int m, double nu, double u, double sigma2 = 1.0) {
    HarmaModel model;
    model.family = PolyFamily{variant, m, nu, u};
    model.sigma2 = sigma2;
    return model;
}

}  // namespace

TEST_CASE("kernel values at known points") {
    CHECK(u_function(PolyFamily{Variant::type2, 2, 0.3, 0.5}, kPi / 3.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(u_function(PolyFamily{Variant::type1, 3, 0.3, 0.0}, kPi / 3.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(u_function(PolyFamily{Variant::type1, 3, 0.3, 0.4}, 0.0) ==
          doctest::Approx(0.64).epsilon(1e-13));
}

TEST_CASE("kernel equals the complex modulus squared on a grid") {
    for (int m : {1, 2, 3, 4, 8}) {
        for (Variant variant : {Variant::type1, Variant::type2}) {
            const double umax = variant == Variant::type1 ? 2.0 / m : 1.0;
            for (double u : {0.0, 0.3 * umax, umax}) {
                const PolyFamily fam{variant, m, 0.3, u};
                for (int i = 0; i < 2000; ++i) {
                    const double w = -kPi + 2.0 * kPi * (i + 0.5) / 2000.0;
                    CHECK(std::abs(u_function(fam, w) - u_function_modsq(fam, w)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("kernel is even in omega") {
    const PolyFamily fam{Variant::type1, 3, 0.3, 0.4};
    for (int i = 1; i < 100; ++i) {
        const double w = kPi * i / 100.0;
        CHECK(u_function(fam, w) == doctest::Approx(u_function(fam, -w)).epsilon(1e-14));
    }
}

TEST_CASE("cubic-in-cosine form of the m=3 type 1 kernel") {
    for (double u : {0.0, 0.1, 0.4, 2.0 / 3.0}) {
        const PolyFamily fam{Variant::type1, 3, 0.3, u};
        const double C = 6.0 + 6.0 * u;
        const double D = 2.0 + 6.0 * u + 9.0 * u * u;
        for (int i = 0; i < 2000; ++i) {
            const double w = -kPi + 2.0 * kPi * (i + 0.5) / 2000.0;
            const double c = std::cos(w);
            const double cubic = 8.0 * c * c * c - 12.0 * u * c * c - C * c + D;
            CHECK(std::abs(u_function(fam, w) - cubic) < 1e-12);
        }
    }
}

TEST_CASE("spectral density: white noise and closed forms") {
    const HarmaModel white = fractional(Variant::type1, 3, 0.0, 0.37, 2.0);
    for (double w : {-2.0, -0.5, 0.0, 1.0, 3.0})
        CHECK(spectral_density(white, w) == doctest::Approx(2.0 / (2.0 * kPi)));

    const HarmaModel pin = fractional(Variant::type1, 3, 0.3, 0.0);
    for (double w : {-2.5, -1.2, 0.3, 2.8}) {
        const double ref = std::pow(2.0 + 2.0 * std::cos(3.0 * w), -0.3) / (2.0 * kPi);
        CHECK(spectral_density(pin, w) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("spectral density at a kernel zero: infinity for nu > 0, zero for nu < 0") {
    const HarmaModel pos = fractional(Variant::type2, 2, 0.3, 0.5);
    const HarmaModel neg = fractional(Variant::type2, 2, -0.3, 0.5);
    // cos(pi/3) = 0.5 exactly is not representable; use the m=3 u=0 pole at
    // omega where the kernel is clamped to zero
    const HarmaModel pin = fractional(Variant::type1, 3, 0.3, 0.0);
    const double w0 = kPi / 3.0;
    const double U = u_function(pin.family, w0);
    if (U == 0.0) {
        CHECK(std::isinf(spectral_density(pin, w0)));
    }
    const HarmaModel pin_neg = fractional(Variant::type1, 3, -0.3, 0.0);
    if (u_function(pin_neg.family, w0) == 0.0) {
        CHECK(spectral_density(pin_neg, w0) == 0.0);
    }
    // at acos(0.5) the kernel is zero up to round-off: the density is either
    // the infinite marker or enormous for nu > 0, near zero for nu < 0
    const double at_pole = spectral_density(pos, std::acos(0.5));
    const bool blows_up = std::isinf(at_pole) || at_pole > 1e4;
    CHECK(blows_up);
    CHECK(spectral_density(neg, std::acos(0.5)) < 1e-4);
}

TEST_CASE("spectral density requires a stationary model") {
    CHECK_THROWS_AS(spectral_density(fractional(Variant::type1, 3, 0.6, 0.1), 1.0),
                    ValidationError);
}

TEST_CASE("singular frequencies: seasonal pole of the m=3 type 1 family at u=0") {
    const auto list = singular_frequencies(PolyFamily{Variant::type1, 3, 0.3, 0.0});
    REQUIRE(list.size() == 2);
    CHECK(list[0].omega == doctest::Approx(-kPi / 3.0).epsilon(1e-14));
    CHECK(list[1].omega == doctest::Approx(kPi / 3.0).epsilon(1e-14));
    CHECK(list[0].tag == SingularTag::type_a);
    CHECK(list[1].tag == SingularTag::type_a);
}

TEST_CASE("singular frequencies: m=2 pole at +-acos(u)") {
    const auto list = singular_frequencies(PolyFamily{Variant::type2, 2, 0.3, 0.3});
    REQUIRE(list.size() == 2);
    const double w0 = std::acos(0.3);
    CHECK(list[0].omega == doctest::Approx(-w0).epsilon(1e-14));
    CHECK(list[1].omega == doctest::Approx(w0).epsilon(1e-14));
    CHECK(list[0].tag == SingularTag::m2_cosinv);
}

TEST_CASE("singular frequencies: interior u of m=1,3,4 has none") {
    CHECK(singular_frequencies(PolyFamily{Variant::type1, 3, 0.3, 0.4}).empty());
    CHECK(singular_frequencies(PolyFamily{Variant::type1, 1, 0.3, 0.5}).empty());
    CHECK(singular_frequencies(PolyFamily{Variant::type1, 4, 0.3, 0.2}).empty());
    CHECK(singular_frequencies(PolyFamily{Variant::type2, 3, 0.3, 0.5}).empty());
}

TEST_CASE("singular frequencies: lattice pole at matching u, m=8") {
    // at u = 2/m the kernel vanishes at omega = 0
    const auto list = singular_frequencies(PolyFamily{Variant::type1, 8, 0.3, 0.25});
    REQUIRE(list.size() == 1);
    CHECK(list[0].omega == doctest::Approx(0.0));
    CHECK(list[0].tag == SingularTag::type_b);

    // nearby u does not qualify
    CHECK(singular_frequencies(PolyFamily{Variant::type1, 8, 0.3, 0.2}).empty());
}

TEST_CASE("singular frequencies: nonzero lattice point for m=7") {
    // a = 2 cos(2 pi/5) makes the kernel vanish at omega = 2 pi/5
    const double ustar = 2.0 / 7.0 * std::cos(2.0 * kPi / 5.0);
    const auto list = singular_frequencies(PolyFamily{Variant::type1, 7, 0.3, ustar});
    REQUIRE(list.size() == 2);
    CHECK(list[0].omega == doctest::Approx(-2.0 * kPi / 5.0).epsilon(1e-12));
    CHECK(list[1].omega == doctest::Approx(2.0 * kPi / 5.0).epsilon(1e-12));
    CHECK(list[1].tag == SingularTag::type_b);
}

TEST_CASE("singular frequencies: m=1 boundary pole at u = 2") {
    const auto list = singular_frequencies(PolyFamily{Variant::type1, 1, 0.3, 2.0});
    REQUIRE(list.size() == 1);
    CHECK(list[0].omega == doctest::Approx(0.0));
}

TEST_CASE("every fine-grid kernel zero is near a reported frequency") {
    for (int m : {1, 2, 3, 4, 6, 7, 8}) {
        for (Variant variant : {Variant::type1, Variant::type2}) {
            const double umax = variant == Variant::type1 ? 2.0 / m : 1.0;
            for (double u : {0.0, 0.3 * umax, 0.5 * umax, umax}) {
                const PolyFamily fam{variant, m, 0.3, u};
                const auto poles = singular_frequencies(fam, 1e-8);
                const int G = 20000;
                const double spacing = 2.0 * kPi / (G + 1);
                // flattest possible zero is quartic (m=2, |u|=1), whose
                // sub-tol level set has half-width tol^(1/4)
                const double radius = std::max(spacing, 1.5 * std::pow(1e-8, 0.25));
                for (int i = 1; i <= G; ++i) {
                    const double w = -kPi + spacing * i;
                    if (u_function(fam, w) < 1e-8) {
                        bool covered = false;
                        for (const auto& s : poles)
                            if (std::abs(s.omega - w) <= radius) covered = true;
                        CAPTURE(m);
                        CAPTURE(u);
                        CAPTURE(w);
                        CHECK(covered);
                    }
                }
                // soundness: reported frequencies really are kernel zeros
                for (const auto& s : poles) CHECK(u_function(fam, s.omega) < 1e-8);
            }
        }
    }
}

TEST_CASE("spectrum grid: flat for nu = 0, infinite markers on pole nodes") {
    const SpectrumGrid flat = spectrum_grid(fractional(Variant::type1, 2, 0.0, 0.25, 2.0), 11);
    for (double v : flat.values) CHECK(v == doctest::Approx(2.0 / (2.0 * kPi)));

    // grid of 5 points contains +-pi/3 = +-acos(0.5) exactly
    const SpectrumGrid g = spectrum_grid(fractional(Variant::type2, 2, 0.3, 0.5), 5);
    REQUIRE(g.omegas.size() == 5);
    CHECK(g.omegas[1] == doctest::Approx(-kPi / 3.0));
    CHECK(g.omegas[3] == doctest::Approx(kPi / 3.0));
    CHECK(std::isinf(g.values[1]));
    CHECK(std::isinf(g.values[3]));
    CHECK_FALSE(std::isinf(g.values[0]));
    CHECK_FALSE(std::isinf(g.values[2]));
}

TEST_CASE("spectrum grid values are symmetric in omega") {
    const SpectrumGrid g = spectrum_grid(fractional(Variant::type1, 3, 0.3, 0.1), 101);
    const size_t n = g.omegas.size();
    for (size_t i = 0; i < n / 2; ++i) {
        CHECK(g.omegas[i] == doctest::Approx(-g.omegas[n - 1 - i]));
        CHECK(g.values[i] == doctest::Approx(g.values[n - 1 - i]).epsilon(1e-12));
    }
}

TEST_CASE("spectrum grid argument checks") {
    CHECK_THROWS_AS(spectrum_grid(fractional(Variant::type1, 3, 0.3, 0.1), 1),
                    std::invalid_argument);
}

TEST_CASE("periodogram: constant series vanishes after mean removal") {
    const std::vector<double> series(64, 3.25);
    const SpectrumGrid g = periodogram(series);
    for (double v : g.values) CHECK(std::abs(v) < 1e-24);
}

TEST_CASE("periodogram: a pure Fourier cosine concentrates at its frequency") {
    const int n = 128, j = 10;
    std::vector<double> x(n);
    for (int t = 1; t <= n; ++t) x[t - 1] = std::cos(2.0 * kPi * j * t / n);
    const SpectrumGrid g = periodogram(x);
    size_t argmax = 0;
    for (size_t k = 1; k < g.values.size(); ++k)
        if (g.values[k] > g.values[argmax]) argmax = k;
    CHECK(g.omegas[argmax] == doctest::Approx(2.0 * kPi * j / n));
    // the concentrated ordinate carries essentially all the power
    CHECK(g.values[argmax] > 1000.0 * g.values[(argmax + 5) % g.values.size()]);
}

TEST_CASE("periodogram: direct and radix-2 paths agree") {
    // n = 48 exercises the direct path, n = 64 the fft path; compare both
    // against the defining sum at a few frequencies
    for (int n : {48, 64}) {
        std::vector<double> x(n);
        for (int t = 0; t < n; ++t) x[t] = std::sin(0.7 * t) + 0.25 * std::cos(2.1 * t + 0.3);
        const SpectrumGrid g = periodogram(x);
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= n;
        for (int k : {1, n / 4, (n - 1) / 2}) {
            double re = 0.0, im = 0.0;
            const double w = 2.0 * kPi * k / n;
            for (int t = 1; t <= n; ++t) {
                re += (x[t - 1] - mean) * std::cos(w * t);
                im -= (x[t - 1] - mean) * std::sin(w * t);
            }
            const double ref = (re * re + im * im) / (2.0 * kPi * n);
            CHECK(g.values[k - 1] == doctest::Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("periodogram length error") {
    CHECK_THROWS_AS(periodogram(std::vector<double>{1.0}), std::invalid_argument);
}
