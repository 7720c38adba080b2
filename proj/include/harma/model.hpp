#pragma once

#include "harma/poly.hpp"

#include <string>
#include <vector>

namespace harma {

/**
 * Full parameterization of a HARMA(p, nu, u, q) process
 *
 *   Phi(B) (1 - a*B + B^m)^nu X_t = Theta(B) eps_t,
 *
 * with Phi(B) = 1 - sum phi_j B^j, Theta(B) = 1 + sum theta_j B^j and
 * Gaussian white-noise innovations of variance sigma2.  Immutable by
 * convention after construction; all operations take it by const reference.
 */
struct HarmaModel {
    PolyFamily family;
    std::vector<double> phi;    // AR coefficients phi_1..phi_p
    std::vector<double> theta;  // MA coefficients theta_1..theta_q
    double sigma2 = 1.0;

    int p() const { return static_cast<int>(phi.size()); }
    int q() const { return static_cast<int>(theta.size()); }
};

/// Root moduli, parameter-range checks, and combined verdicts.
struct StationarityReport {
    std::vector<double> ar_root_moduli;  // ascending
    std::vector<double> ma_root_moduli;  // ascending
    bool nu_ok = false;
    bool u_ok = false;
    bool stationary = false;
    bool invertible = false;
    std::vector<std::string> boundary_flags;
};

/// Moduli (ascending) of the roots of c0 + c1 z + ... + cd z^d, computed as
/// companion-matrix eigenvalues.  Throws std::invalid_argument when the
/// leading coefficient collapses the degree.
std::vector<double> polynomial_root_moduli(const std::vector<double>& coeffs);

/**
 * Admissibility check: AR/MA roots strictly outside the unit circle
 * (tolerance 1e-10, near-boundary flagged within 1e-6), |nu| < 1/2, and
 * u in the closed interval [0, u_max].  Boundary u values are admitted
 * but flagged, since spectral poles can appear there.
 */
StationarityReport validate(const HarmaModel& model);

/// Throws ValidationError unless validate() reports stationary.
void require_stationary(const HarmaModel& model);

/// Throws ValidationError unless stationary and invertible.
void require_stationary_invertible(const HarmaModel& model);

/// ARMA transfer-function weights: Theta(B)/Phi(B) = sum psi_j B^j, with
/// psi_0 = 1.  Throws ValidationError when Phi has a root on or inside the
/// unit circle.
CoeffSeries psi_weights(const std::vector<double>& phi, const std::vector<double>& theta, int N);

/// MA(infinity) coefficients of the composite operator: convolution of the
/// psi-weights with the family's generating-function coefficients.
CoeffSeries ma_coefficients(const HarmaModel& model, int N);

struct VarianceSeriesResult {
    double value = 0.0;      // partial sum through n = N
    double last_term = 0.0;  // magnitude of the final term, as a convergence estimate
};

/// Diagnostic partial sum sigma2 * sum_n ((nu)_n/n!)^2 (a-1)^(2n) for the
/// pure fractional case p = q = 0.  This collapsed series does not match
/// the convolution structure of the composite operator; the authoritative
/// variance is sigma2 * sum c_k^2 from ma_coefficients.
VarianceSeriesResult variance_series(const HarmaModel& model, int N);

/// Truncation heuristic: smallest N with the coefficient tail bound
/// n^(2 nu - 2) / Gamma(nu)^2 below `tail_target`, clamped to [50, 200000].
int suggested_truncation(const PolyFamily& family, double tail_target = 1e-10);

/// Library default truncation for simulation and ACVF work.
int default_truncation(const PolyFamily& family);

}  // namespace harma
