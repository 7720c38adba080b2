#pragma once

#include "harma/model.hpp"
#include "harma/simulate.hpp"

#include <vector>

namespace harma {

enum class SingularTag { type_a, type_b, m2_cosinv };

std::string to_string(SingularTag tag);

struct SingularFrequency {
    double omega = 0.0;
    SingularTag tag = SingularTag::type_a;
};

/**
 * Trigonometric kernel of the fractional operator,
 *
 *   U(w) = 2 + a^2 - 2a(cos w + cos((1-m)w)) + 2 cos(mw),
 *
 * algebraically equal to |1 - a e^{-iw} + e^{-imw}|^2 with a the trinomial's
 * linear coefficient.  Round-off negatives are clamped to 0.
 */
double u_function(const PolyFamily& family, double omega);
double u_function(const HarmaModel& model, double omega);

/// Same kernel through complex arithmetic; partner of the identity check,
/// and better conditioned very close to a kernel zero.
double u_function_modsq(const PolyFamily& family, double omega);

/**
 * Closed-form spectral density
 *
 *   f(w) = sigma2/(2 pi) |Theta(z)|^2/|Phi(z)|^2 U(w)^(-nu),  z = e^{-iw}.
 *
 * Where U(w) = 0: returns +infinity for nu > 0 and 0 for nu < 0.
 * Requires a stationary model.
 */
double spectral_density(const HarmaModel& model, double omega);

/**
 * All verified kernel zeros in the open interval (-pi, pi).  Candidates are
 * enumerated from the closed-form clauses for the given (variant, m):
 * odd multiples of pi/m (type_a, live only when u = 0), the lattice
 * 2 n pi/(m-2) for m != 2 (type_b, live at matching u), and +-acos(u) for
 * m = 2 (m2_cosinv).  Each candidate is kept only if U(candidate) < tol,
 * so the returned list is sound for every parameter point.
 */
std::vector<SingularFrequency> singular_frequencies(const PolyFamily& family, double tol = 1e-8);
std::vector<SingularFrequency> singular_frequencies(const HarmaModel& model, double tol = 1e-8);

/// Frequencies in (-pi, pi) with density values; +infinity marks grid nodes
/// that coincide with a verified singular frequency.
struct SpectrumGrid {
    std::vector<double> omegas;
    std::vector<double> values;
    std::vector<SingularFrequency> singular_omegas;
};

/// Uniform symmetric grid w_i = -pi + 2 pi i/(n_points+1), i = 1..n_points.
SpectrumGrid spectrum_grid(const HarmaModel& model, int n_points, double tol = 1e-8);

/**
 * Periodogram at the Fourier frequencies w_k = 2 pi k/n, k = 1..(n-1)/2,
 * after mean removal: I(w_k) = |sum_t x_t e^{-i w_k t}|^2 / (2 pi n).
 * Direct DFT, with a radix-2 fast path for power-of-two lengths.
 */
SpectrumGrid periodogram(const std::vector<double>& series);
SpectrumGrid periodogram(const TimeSeries& series);

}  // namespace harma
