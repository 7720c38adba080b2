#include "harma/model.hpp"

#include "harma/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harma {

namespace {

constexpr double kUnitCircleTol = 1e-10;
constexpr double kNearBoundary = 1e-6;

std::vector<double> ar_polynomial(const std::vector<double>& phi) {
    std::vector<double> c(phi.size() + 1);
    c[0] = 1.0;
    for (size_t j = 0; j < phi.size(); ++j) c[j + 1] = -phi[j];
    return c;
}

std::vector<double> ma_polynomial(const std::vector<double>& theta) {
    std::vector<double> c(theta.size() + 1);
    c[0] = 1.0;
    for (size_t j = 0; j < theta.size(); ++j) c[j + 1] = theta[j];
    return c;
}

bool roots_outside(const std::vector<double>& moduli) {
    for (double r : moduli)
        if (r <= 1.0 + kUnitCircleTol) return false;
    return true;
}

}  // namespace

std::vector<double> polynomial_root_moduli(const std::vector<double>& coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d <= 0) return {};
    if (coeffs[d] == 0.0)
        throw std::invalid_argument(
            "degenerate polynomial: leading coefficient is zero (degree collapses)");

    if (d == 1) return {std::abs(coeffs[0] / coeffs[1])};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -coeffs[i] / coeffs[d];

    const Eigen::VectorXcd ev = companion.eigenvalues();
    std::vector<double> moduli(d);
    for (int i = 0; i < d; ++i) moduli[i] = std::abs(ev[i]);
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

StationarityReport validate(const HarmaModel& model) {
    if (model.sigma2 <= 0.0) throw std::invalid_argument("sigma2 must be positive");
    if (model.family.m < 1) throw std::invalid_argument("polynomial order m must be >= 1");

    StationarityReport rep;
    rep.ar_root_moduli = polynomial_root_moduli(ar_polynomial(model.phi));
    rep.ma_root_moduli = polynomial_root_moduli(ma_polynomial(model.theta));

    const double nu = model.family.nu;
    const double u = model.family.u;
    const double umax = model.family.u_max();

    rep.nu_ok = std::abs(nu) < 0.5;
    rep.u_ok = u >= 0.0 && u <= umax;

    if (rep.u_ok && u <= 1e-12)
        rep.boundary_flags.push_back("u at closed boundary 0 (spectral poles possible)");
    if (rep.u_ok && u >= umax - 1e-12)
        rep.boundary_flags.push_back("u at closed boundary " + std::to_string(umax) +
                                     " (spectral poles possible)");
    if (rep.nu_ok && std::abs(nu) >= 0.45)
        rep.boundary_flags.push_back("|nu| near 1/2: slow coefficient decay");

    for (double r : rep.ar_root_moduli)
        if (r > 1.0 + kUnitCircleTol && r <= 1.0 + kNearBoundary)
            rep.boundary_flags.push_back("AR root modulus near unit circle");
    for (double r : rep.ma_root_moduli)
        if (r > 1.0 + kUnitCircleTol && r <= 1.0 + kNearBoundary)
            rep.boundary_flags.push_back("MA root modulus near unit circle");

    rep.stationary = rep.nu_ok && rep.u_ok && roots_outside(rep.ar_root_moduli);
    rep.invertible = rep.nu_ok && rep.u_ok && roots_outside(rep.ma_root_moduli);
    return rep;
}

void require_stationary(const HarmaModel& model) {
    const StationarityReport rep = validate(model);
    if (!rep.stationary)
        throw ValidationError(
            "model is not stationary: check AR roots, |nu| < 1/2 and the u range");
}

void require_stationary_invertible(const HarmaModel& model) {
    const StationarityReport rep = validate(model);
    if (!rep.stationary || !rep.invertible)
        throw ValidationError("model is not stationary and invertible");
}

CoeffSeries psi_weights(const std::vector<double>& phi, const std::vector<double>& theta, int N) {
    if (N < 0) throw std::invalid_argument("truncation index must be >= 0");
    if (!phi.empty()) {
        const auto moduli = polynomial_root_moduli(ar_polynomial(phi));
        if (!roots_outside(moduli))
            throw ValidationError("psi_weights: AR polynomial has a root on or inside the unit circle");
    }

    const int p = static_cast<int>(phi.size());
    const int q = static_cast<int>(theta.size());

    CoeffSeries out;
    out.values.assign(N + 1, 0.0);
    out.truncation_index = N;
    out.method = CoeffMethod::recurrence;
    out.note = "psi_weights";
    out.values[0] = 1.0;
    for (int j = 1; j <= N; ++j) {
        double v = j <= q ? theta[j - 1] : 0.0;
        for (int i = 1; i <= std::min(j, p); ++i) v += phi[i - 1] * out.values[j - i];
        out.values[j] = v;
    }
    return out;
}

CoeffSeries ma_coefficients(const HarmaModel& model, int N) {
    require_stationary(model);
    const CoeffSeries frac = coeff_recurrence(model.family, N);
    if (model.p() == 0 && model.q() == 0) {
        CoeffSeries out = frac;
        out.method = CoeffMethod::convolution;
        out.note = "pure fractional (psi = delta)";
        return out;
    }
    const CoeffSeries psi = psi_weights(model.phi, model.theta, N);

    CoeffSeries out;
    out.values.assign(N + 1, 0.0);
    out.truncation_index = N;
    out.method = CoeffMethod::convolution;
    out.family = model.family;
    out.note = "psi * fractional";
    out.precision_warning = frac.precision_warning;
    for (int k = 0; k <= N; ++k) {
        long double acc = 0.0L;
        for (int i = 0; i <= k; ++i) acc += (long double)psi.values[i] * frac.values[k - i];
        out.values[k] = double(acc);
    }
    return out;
}

VarianceSeriesResult variance_series(const HarmaModel& model, int N) {
    if (model.p() != 0 || model.q() != 0)
        throw std::invalid_argument("variance_series is defined for the pure fractional case p = q = 0");
    if (N < 0) throw std::invalid_argument("truncation index must be >= 0");

    const double nu = model.family.nu;
    const double b = model.family.trinomial_a() - 1.0;  // (mu - 1) for type 1
    const double b2 = b * b;

    double term = 1.0;  // ((nu)_n / n!)^2 (a-1)^(2n) at n = 0
    double sum = term;
    for (int n = 1; n <= N; ++n) {
        const double f = (nu + n - 1) / n;
        term *= f * f * b2;
        sum += term;
    }
    return VarianceSeriesResult{model.sigma2 * sum, model.sigma2 * std::abs(term)};
}

int suggested_truncation(const PolyFamily& family, double tail_target) {
    if (family.nu == 0.0) return 50;
    const double lg = std::lgamma(family.nu);  // log|Gamma|, defined for negative nu too
    // n^(2 nu - 2) / Gamma(nu)^2 < target  =>  n > (target * Gamma(nu)^2)^(1/(2nu-2))
    const double expo = 2.0 * family.nu - 2.0;
    const double n = std::exp((std::log(tail_target) + 2.0 * lg) / expo);
    return static_cast<int>(std::clamp(n, 50.0, 200000.0));
}

int default_truncation(const PolyFamily& family) { return family.nu > 0.0 ? 1000 : 50; }

}  // namespace harma
