#include "harma/spectral.hpp"

#include "harma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace harma {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDedupTol = 1e-12;
constexpr double kGridPoleMatch = 1e-9;

std::complex<double> horner_at(const std::vector<double>& tail_coeffs, double lead,
                               std::complex<double> z) {
    // lead + c1 z + c2 z^2 + ...
    std::complex<double> acc(0.0, 0.0);
    for (auto it = tail_coeffs.rbegin(); it != tail_coeffs.rend(); ++it) acc = (acc + *it) * z;
    return acc + lead;
}

double arma_ratio(const HarmaModel& model, double omega) {
    if (model.p() == 0 && model.q() == 0) return 1.0;
    const std::complex<double> z = std::polar(1.0, -omega);
    std::vector<double> neg_phi(model.phi);
    for (double& c : neg_phi) c = -c;
    const double num = std::norm(horner_at(model.theta, 1.0, z));
    const double den = std::norm(horner_at(neg_phi, 1.0, z));
    return num / den;
}

double density_unchecked(const HarmaModel& model, double omega) {
    const double base = model.sigma2 / (2.0 * kPi) * arma_ratio(model, omega);
    const double U = u_function(model.family, omega);
    const double nu = model.family.nu;
    if (U == 0.0) {
        if (nu > 0.0) return std::numeric_limits<double>::infinity();
        if (nu < 0.0) return 0.0;
        return base;
    }
    return base * std::pow(U, -nu);
}

void append_candidate(std::vector<SingularFrequency>& out, double omega, SingularTag tag) {
    if (std::abs(omega) >= kPi - kDedupTol) return;  // open interval (-pi, pi)
    for (const auto& s : out)
        if (std::abs(s.omega - omega) < kDedupTol) return;
    out.push_back({omega, tag});
}

// In-place radix-2 Cooley-Tukey; n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / double(len);
        const std::complex<double> wlen = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> even = a[i + k];
                const std::complex<double> odd = a[i + k + len / 2] * w;
                a[i + k] = even + odd;
                a[i + k + len / 2] = even - odd;
                w *= wlen;
            }
        }
    }
}

}  // namespace

std::string to_string(SingularTag tag) {
    switch (tag) {
        case SingularTag::type_a: return "type_a";
        case SingularTag::type_b: return "type_b";
        case SingularTag::m2_cosinv: return "m2_cosinv";
    }
    return "unknown";
}

double u_function(const PolyFamily& family, double omega) {
    const double a = family.trinomial_a();
    const int m = family.m;
    const double v = 2.0 + a * a - 2.0 * a * (std::cos(omega) + std::cos((1.0 - m) * omega)) +
                     2.0 * std::cos(m * omega);
    return v < 0.0 ? 0.0 : v;  // modulus squared; negatives are round-off
}

double u_function(const HarmaModel& model, double omega) { return u_function(model.family, omega); }

double u_function_modsq(const PolyFamily& family, double omega) {
    const double a = family.trinomial_a();
    const std::complex<double> z = std::polar(1.0, -omega);
    const std::complex<double> zm = std::polar(1.0, -family.m * omega);
    return std::norm(1.0 - a * z + zm);
}

double spectral_density(const HarmaModel& model, double omega) {
    require_stationary(model);
    return density_unchecked(model, omega);
}

std::vector<SingularFrequency> singular_frequencies(const PolyFamily& family, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    if (family.m < 1) throw std::invalid_argument("polynomial order m must be >= 1");

    std::vector<SingularFrequency> candidates;
    const int m = family.m;
    if (m == 2) {
        // 1 - 2u z + z^2 factors over the unit circle; zeros at +-acos(u)
        if (std::abs(family.u) <= 1.0) {
            const double w0 = std::acos(family.u);
            append_candidate(candidates, w0, SingularTag::m2_cosinv);
            append_candidate(candidates, -w0, SingularTag::m2_cosinv);
        }
    } else {
        // kernel zeros need cos(m w/2) = 0 (odd multiples of pi/m, live when
        // a = 0) or sin((m-2) w/2) = 0 (the 2 n pi/(m-2) lattice, live when
        // a matches 2 cos(2 n pi/(m-2)))
        for (int j = -(m - 1); j <= m - 1; ++j)
            if (j % 2 != 0) append_candidate(candidates, j * kPi / m, SingularTag::type_a);
        const int d = m - 2;
        const int dd = std::abs(d);
        for (int n = -dd; n <= dd; ++n)
            if (2 * std::abs(n) < dd) append_candidate(candidates, 2.0 * n * kPi / d, SingularTag::type_b);
    }

    std::vector<SingularFrequency> verified;
    for (const auto& c : candidates)
        if (u_function(family, c.omega) < tol) verified.push_back(c);
    std::sort(verified.begin(), verified.end(),
              [](const SingularFrequency& a, const SingularFrequency& b) { return a.omega < b.omega; });
    return verified;
}

std::vector<SingularFrequency> singular_frequencies(const HarmaModel& model, double tol) {
    return singular_frequencies(model.family, tol);
}

SpectrumGrid spectrum_grid(const HarmaModel& model, int n_points, double tol) {
    if (n_points < 2) throw std::invalid_argument("spectrum grid needs at least 2 points");
    require_stationary(model);

    SpectrumGrid grid;
    grid.singular_omegas = singular_frequencies(model.family, tol);
    grid.omegas.resize(n_points);
    grid.values.resize(n_points);
    const double step = 2.0 * kPi / (n_points + 1);
    for (int i = 0; i < n_points; ++i) {
        const double w = -kPi + step * (i + 1);
        grid.omegas[i] = w;
        bool at_pole = false;
        if (model.family.nu > 0.0)
            for (const auto& s : grid.singular_omegas)
                if (std::abs(w - s.omega) < kGridPoleMatch) {
                    at_pole = true;
                    break;
                }
        grid.values[i] = at_pole ? std::numeric_limits<double>::infinity()
                                 : density_unchecked(model, w);
    }
    return grid;
}

SpectrumGrid periodogram(const std::vector<double>& series) {
    const int n = static_cast<int>(series.size());
    if (n < 2) throw std::invalid_argument("periodogram requires series length >= 2");

    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= n;

    const int K = (n - 1) / 2;
    SpectrumGrid grid;
    grid.omegas.resize(K);
    grid.values.resize(K);

    const bool pow2 = (n & (n - 1)) == 0;
    if (pow2) {
        std::vector<std::complex<double>> buf(n);
        for (int t = 0; t < n; ++t) buf[t] = series[t] - mean;
        fft_pow2(buf);
        for (int k = 1; k <= K; ++k) {
            grid.omegas[k - 1] = 2.0 * kPi * k / n;
            grid.values[k - 1] = std::norm(buf[k]) / (2.0 * kPi * n);
        }
    } else {
        for (int k = 1; k <= K; ++k) {
            const double w = 2.0 * kPi * k / n;
            // incremental rotation avoids n sin/cos pairs per frequency
            const std::complex<double> rot = std::polar(1.0, -w);
            std::complex<double> ph(1.0, 0.0);
            std::complex<double> acc(0.0, 0.0);
            for (int t = 0; t < n; ++t) {
                acc += (series[t] - mean) * ph;
                ph *= rot;
            }
            grid.omegas[k - 1] = w;
            grid.values[k - 1] = std::norm(acc) / (2.0 * kPi * n);
        }
    }
    return grid;
}

SpectrumGrid periodogram(const TimeSeries& series) { return periodogram(series.values); }

}  // namespace harma
