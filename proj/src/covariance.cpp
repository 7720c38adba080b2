#include "harma/covariance.hpp"

#include "harma/errors.hpp"
#include "harma/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace harma {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleMatch = 1e-12;
constexpr double kPoleOffsetFloor = 1e-10;  // below this, use the local expansion

double transfer_modsq(const HarmaModel& model, double omega) {
    if (model.p() == 0 && model.q() == 0) return 1.0;
    const std::complex<double> z = std::polar(1.0, -omega);
    std::complex<double> num(0.0, 0.0), den(0.0, 0.0);
    for (int j = model.q(); j >= 1; --j) num = (num + model.theta[j - 1]) * z;
    for (int j = model.p(); j >= 1; --j) den = (den - model.phi[j - 1]) * z;
    return std::norm(num + 1.0) / std::norm(den + 1.0);
}

// Kernel evaluated in a form that stays accurate close to its zeros: the
// complex-modulus route degrades gracefully (error ~ eps/delta rather than
// eps/delta^2), and the m = 2 factorization 4(cos w - u)^2 avoids the
// catastrophic trig-sum cancellation entirely.  At |u| = 1 the half-angle
// identity removes even the cos w -+ 1 subtraction.
double kernel_stable(const PolyFamily& family, double omega) {
    if (family.m == 2) {
        const double u = family.u;
        double diff;
        if (u == 1.0) {
            const double s = std::sin(omega / 2.0);
            diff = -2.0 * s * s;
        } else if (u == -1.0) {
            const double c = std::cos(omega / 2.0);
            diff = 2.0 * c * c;
        } else {
            diff = std::cos(omega) - u;
        }
        return 4.0 * diff * diff;
    }
    return u_function_modsq(family, omega);
}

double density_stable(const HarmaModel& model, double omega) {
    const double U = kernel_stable(model.family, omega);
    const double base = model.sigma2 / (2.0 * kPi) * transfer_modsq(model, omega);
    const double nu = model.family.nu;
    if (U == 0.0) return nu > 0.0 ? std::numeric_limits<double>::infinity()
                                  : (nu < 0.0 ? 0.0 : base);
    return base * std::pow(U, -nu);
}

struct PoleLocal {
    int order = 2;       // multiplicity of the kernel zero (4 only for m=2, |u|=1)
    double coeff = 1.0;  // U(w0 + d) ~ coeff * d^order
};

PoleLocal pole_local(const PolyFamily& family, double omega0) {
    const double a = family.trinomial_a();
    const int m = family.m;
    const std::complex<double> z0 = std::polar(1.0, -omega0);
    const std::complex<double> t1 = -a + double(m) * std::pow(z0, m - 1);
    const double mod_t1 = std::abs(t1);
    if (mod_t1 > 1e-8) return {2, mod_t1 * mod_t1};
    const double c2 = m * (m - 1) / 2.0;  // |T''/2| at a double root of the trinomial
    return {4, c2 * c2};
}

struct Piece {
    double a = 0.0, b = 0.0;
    bool pole_left = false, pole_right = false;
    double pole_omega = 0.0;
    PoleLocal local;
};

quadrature::Result integrate_piece(const HarmaModel& model, int h, const Piece& piece,
                                   double tol, int max_intervals) {
    const double nu = model.family.nu;
    auto g = [&](double w) { return density_stable(model, w) * std::cos(w * h); };

    if ((!piece.pole_left && !piece.pole_right) || nu <= 0.0)
        return quadrature::integrate_adaptive(g, piece.a, piece.b, tol, max_intervals);

    const int order = piece.local.order;
    if (order * nu >= 1.0)
        throw NumericalError("spectral pole of order " + std::to_string(order) +
                             " is not integrable for nu = " + std::to_string(nu));

    const double p = 1.0 / (1.0 - order * nu);
    const double w0 = piece.pole_omega;
    const double len = piece.b - piece.a;
    const double sign = piece.pole_left ? 1.0 : -1.0;
    const double plateau = p * model.sigma2 / (2.0 * kPi) * transfer_modsq(model, w0) *
                           std::pow(piece.local.coeff, -nu) * std::cos(w0 * h);
    auto transformed = [&](double s) {
        const double delta = std::pow(s, p);
        if (delta < kPoleOffsetFloor) return plateau;
        const double w = w0 + sign * delta;
        return p * g(w) * std::pow(s, p - 1.0);
    };
    const double S = std::pow(len, 1.0 / p);
    return quadrature::integrate_adaptive(transformed, 0.0, S, tol, max_intervals);
}

}  // namespace

std::string to_string(AcvfMethod method) {
    return method == AcvfMethod::ma_convolution ? "ma_convolution" : "spectral_quadrature";
}

AcvfTable acvf_ma(const HarmaModel& model, int H, int N) {
    if (H < 0) throw std::invalid_argument("max lag must be >= 0");
    if (N < H) throw std::invalid_argument("truncation N must be >= max lag H");

    const CoeffSeries c = ma_coefficients(model, N);
    AcvfTable table;
    table.method = AcvfMethod::ma_convolution;
    table.truncation_index = N;
    table.values.resize(H + 1);
    for (int h = 0; h <= H; ++h) {
        long double acc = 0.0L;
        for (int k = 0; k + h <= N; ++k) acc += (long double)c.values[k] * c.values[k + h];
        table.values[h] = model.sigma2 * double(acc);
    }

    // truncation tail ~ N^(2 nu - 1): windowed max guards oscillation zeros
    double cmax2 = 0.0;
    for (int k = std::max(0, N - 31); k <= N; ++k)
        cmax2 = std::max(cmax2, c.values[k] * c.values[k]);
    const double tail =
        model.sigma2 * cmax2 * double(N) / std::max(1.0 - 2.0 * model.family.nu, 1e-6);
    table.error_estimates.assign(H + 1, tail);
    table.tail_warning = tail > 1e-6 * std::abs(table.values[0]);
    return table;
}

Estimate acvf_spectral(const HarmaModel& model, int h, double abs_tol) {
    require_stationary(model);
    if (h < 0) throw std::invalid_argument("lag must be >= 0");
    if (abs_tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (std::abs(model.family.nu) >= 0.5)
        throw std::domain_error("spectral route requires |nu| < 1/2");

    // poles inside [0, pi]: verified singular frequencies, plus a kernel
    // zero at the endpoint pi, which lies outside the open frequency
    // interval but on the integration path
    std::vector<double> poles;
    for (const auto& s : singular_frequencies(model.family, 1e-8))
        if (s.omega >= -kPoleMatch) poles.push_back(std::max(s.omega, 0.0));
    if (u_function(model.family, kPi) < 1e-8) poles.push_back(kPi);

    std::vector<double> breaks{0.0, kPi};
    breaks.insert(breaks.end(), poles.begin(), poles.end());
    for (int k = 0; k < h; ++k) {
        const double w = (k + 0.5) * kPi / h;
        breaks.push_back(w);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double x, double y) { return std::abs(x - y) < kPoleMatch; }),
                 breaks.end());

    auto is_pole = [&](double w) {
        for (double q : poles)
            if (std::abs(w - q) < kPoleMatch) return true;
        return false;
    };

    std::vector<Piece> pieces;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        Piece piece;
        piece.a = breaks[i];
        piece.b = breaks[i + 1];
        piece.pole_left = is_pole(piece.a);
        piece.pole_right = is_pole(piece.b);
        if (piece.pole_left && piece.pole_right) {
            const double mid = 0.5 * (piece.a + piece.b);
            Piece left = piece, right = piece;
            left.b = mid;
            left.pole_right = false;
            left.pole_omega = left.a;
            left.local = pole_local(model.family, left.a);
            right.a = mid;
            right.pole_left = false;
            right.pole_omega = right.b;
            right.local = pole_local(model.family, right.b);
            pieces.push_back(left);
            pieces.push_back(right);
        } else {
            if (piece.pole_left) {
                piece.pole_omega = piece.a;
                piece.local = pole_local(model.family, piece.a);
            } else if (piece.pole_right) {
                piece.pole_omega = piece.b;
                piece.local = pole_local(model.family, piece.b);
            }
            pieces.push_back(piece);
        }
    }

    const double piece_tol = abs_tol / (2.0 * double(pieces.size()));
    double value = 0.0, error = 0.0;
    bool converged = true;
    for (const auto& piece : pieces) {
        const auto r = integrate_piece(model, h, piece, piece_tol, 600);
        value += r.value;
        error += r.error;
        converged &= r.converged;
    }
    value *= 2.0;
    error *= 2.0;
    if (!converged && error > abs_tol)
        throw NumericalError("acvf_spectral: quadrature error " + std::to_string(error) +
                             " above tolerance after subdivision budget");
    return Estimate{value, error};
}

AcvfTable acvf_spectral_table(const HarmaModel& model, int H, double abs_tol) {
    if (H < 0) throw std::invalid_argument("max lag must be >= 0");
    AcvfTable table;
    table.method = AcvfMethod::spectral_quadrature;
    table.values.resize(H + 1);
    table.error_estimates.resize(H + 1);
    for (int h = 0; h <= H; ++h) {
        const Estimate e = acvf_spectral(model, h, abs_tol);
        table.values[h] = e.value;
        table.error_estimates[h] = e.error;
    }
    return table;
}

double lrd_asymptote(double nu, double omega0, long h) {
    if (!(nu > 0.0 && nu < 0.5)) throw std::domain_error("lrd_asymptote requires 0 < nu < 1/2");
    if (!(omega0 > 0.0 && omega0 < kPi)) throw std::domain_error("omega0 must lie in (0, pi)");
    if (h < 1) throw std::domain_error("lag must be >= 1");
    return std::pow(double(h), 2.0 * nu - 1.0) * std::cos(h * omega0);
}

std::vector<std::pair<long, double>> lrd_ratio_probe(const HarmaModel& model, double omega0,
                                                     const std::vector<long>& lags,
                                                     double abs_tol) {
    const double nu = model.family.nu;
    if (!(nu > 0.0 && nu < 0.5))
        throw std::domain_error("lrd_ratio_probe requires 0 < nu < 1/2");
    if (!(omega0 > 0.0 && omega0 < kPi)) throw std::domain_error("omega0 must lie in (0, pi)");
    for (long h : lags) {
        if (h < 1) throw std::invalid_argument("lags must be >= 1");
        if (std::abs(std::cos(h * omega0)) < 0.5)
            throw std::invalid_argument("lag " + std::to_string(h) +
                                        " violates the cosine guard |cos(h w0)| >= 0.5");
    }
    std::vector<std::pair<long, double>> out;
    out.reserve(lags.size());
    for (long h : lags) {
        const Estimate g = acvf_spectral(model, static_cast<int>(h), abs_tol);
        const double ratio =
            g.value * std::pow(double(h), 1.0 - 2.0 * nu) / std::cos(h * omega0);
        out.emplace_back(h, ratio);
    }
    return out;
}

}  // namespace harma
