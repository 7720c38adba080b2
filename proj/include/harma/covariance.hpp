#pragma once

#include "harma/model.hpp"
#include "harma/spectral.hpp"

#include <utility>
#include <vector>

namespace harma {

enum class AcvfMethod { ma_convolution, spectral_quadrature };

std::string to_string(AcvfMethod method);

/// Autocovariances over lags 0..H with per-lag error estimates.
struct AcvfTable {
    std::vector<double> values;           // index h = 0..H
    std::vector<double> error_estimates;  // truncation tail (MA) or quadrature error
    AcvfMethod method = AcvfMethod::ma_convolution;
    int truncation_index = 0;  // MA route only
    bool tail_warning = false;
};

/**
 * MA-convolution route: gamma(h) = sigma2 sum_{k} c_k c_{k+h} with c the
 * MA(infinity) coefficients truncated at N.  The attached tail estimate is
 * N/(1-2 nu) * max of c_k^2 over the last window of coefficients (the
 * windowed maximum guards against sampling an oscillation zero); the table
 * is flagged when the estimate exceeds 1e-6 * gamma(0).
 */
AcvfTable acvf_ma(const HarmaModel& model, int H, int N);

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/**
 * Spectral route: gamma(h) = 2 int_0^pi f(w) cos(wh) dw by adaptive
 * Gauss-Kronrod quadrature.  The interval is split at every verified
 * singular frequency (and at an endpoint kernel zero at pi) and at the
 * zeros of cos(wh); pole-adjacent pieces are regularized by the power
 * substitution that absorbs the |w-w0|^(-2 nu) factor.  Throws
 * NumericalError if the error estimate cannot be brought under abs_tol.
 */
Estimate acvf_spectral(const HarmaModel& model, int h, double abs_tol = 1e-8);

/// Tabulated spectral route over lags 0..H.
AcvfTable acvf_spectral_table(const HarmaModel& model, int H, double abs_tol = 1e-8);

/// Seasonal long-memory asymptote h^(2 nu - 1) cos(h w0).
/// Requires 0 < nu < 1/2, w0 in (0, pi), h >= 1.
double lrd_asymptote(double nu, double omega0, long h);

/**
 * Empirical probe of the asymptote: for each admissible lag returns
 * (h, gamma(h) h^(1-2 nu) / cos(h w0)) with gamma from the spectral route.
 * Stabilization of the ratios indicates the asymptote; no constant is
 * asserted.  Lags with |cos(h w0)| < 0.5 are rejected.
 */
std::vector<std::pair<long, double>> lrd_ratio_probe(const HarmaModel& model, double omega0,
                                                     const std::vector<long>& lags,
                                                     double abs_tol = 1e-8);

}  // namespace harma
