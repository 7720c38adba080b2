#pragma once

#include "harma/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace harma {

/// Deterministic RNG scheme used by all simulation entry points:
/// std::mt19937_64 driving the Marsaglia polar transform.  Both halves are
/// pinned by the standard, so identical seeds replay bit-identically across
/// platforms.
inline constexpr const char* kGeneratorId = "mt19937_64-polar-v1";

/// Simulated sample path with its full provenance.
struct TimeSeries {
    std::vector<double> values;
    std::uint64_t seed = 0;
    HarmaModel model;
    int truncation_index = 0;  // N of the fractional filter
    int burn_in = 0;
    std::string generator_id = kGeneratorId;
    std::vector<std::string> warnings;
};

/// n i.i.d. N(0, sigma2) draws from the named generator.
std::vector<double> gaussian_noise(std::uint64_t seed, int n, double sigma2);

/// Truncated fractional filter Z_t = sum_{k=0}^{N} c_k eps_{t-k}, with c the
/// family's generating-function coefficients and zero padding before t = 0.
/// Output has the same length as eps.
std::vector<double> fractional_filter(const PolyFamily& family, const std::vector<double>& eps,
                                      int N);

/// ARMA recursion X_t = sum phi_i X_{t-i} + Z_t + sum theta_j Z_{t-j} with
/// zero initial conditions.
std::vector<double> arma_filter(const std::vector<double>& phi, const std::vector<double>& theta,
                                const std::vector<double>& z);

/// Burn-in sized to the filter startup: N plus ten AR decay lengths, where
/// the decay length is ceil(1 / min log|root|) (0 when p = 0).
int default_burn_in(const HarmaModel& model, int N);

/**
 * Seeded simulation: generates n + burn_in innovations, applies the
 * truncated fractional filter and the ARMA recursion, then discards the
 * first burn_in values.  Requires a stationary and invertible model.
 * A burn_in below default_burn_in(model, N) is accepted but recorded in
 * the result's warnings.
 */
TimeSeries simulate(const HarmaModel& model, int n, std::uint64_t seed, int N, int burn_in);

/// Same, with N = default_truncation(family) and the default burn-in.
TimeSeries simulate(const HarmaModel& model, int n, std::uint64_t seed);

}  // namespace harma
