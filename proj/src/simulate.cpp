#include "harma/simulate.hpp"

#include "harma/errors.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace harma {

namespace {

// Marsaglia polar method over mt19937_64.  std::normal_distribution is not
// pinned across standard library implementations; this transform is.
class PolarGaussian {
public:
    explicit PolarGaussian(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    double uniform01() {
        // 53-bit mantissa draw in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace

std::vector<double> gaussian_noise(std::uint64_t seed, int n, double sigma2) {
    if (n < 1) throw std::invalid_argument("gaussian_noise requires n >= 1");
    if (sigma2 <= 0.0) throw std::invalid_argument("sigma2 must be positive");
    PolarGaussian rng(seed);
    const double sigma = std::sqrt(sigma2);
    std::vector<double> out(n);
    for (double& x : out) x = sigma * rng.next();
    return out;
}

std::vector<double> fractional_filter(const PolyFamily& family, const std::vector<double>& eps,
                                      int N) {
    if (N < 0) throw std::invalid_argument("truncation index must be >= 0");
    if (eps.empty()) throw std::invalid_argument("input series must be non-empty");

    const CoeffSeries coeff = coeff_recurrence(family, N);
    const int n = static_cast<int>(eps.size());
    std::vector<double> out(n, 0.0);
    for (int t = 0; t < n; ++t) {
        const int kmax = std::min(N, t);
        double acc = 0.0;
        for (int k = 0; k <= kmax; ++k) acc += coeff.values[k] * eps[t - k];
        out[t] = acc;
    }
    return out;
}

std::vector<double> arma_filter(const std::vector<double>& phi, const std::vector<double>& theta,
                                const std::vector<double>& z) {
    const int p = static_cast<int>(phi.size());
    const int q = static_cast<int>(theta.size());
    const int n = static_cast<int>(z.size());
    std::vector<double> x(n, 0.0);
    for (int t = 0; t < n; ++t) {
        double v = z[t];
        for (int j = 1; j <= std::min(q, t); ++j) v += theta[j - 1] * z[t - j];
        for (int i = 1; i <= std::min(p, t); ++i) v += phi[i - 1] * x[t - i];
        x[t] = v;
    }
    return x;
}

int default_burn_in(const HarmaModel& model, int N) {
    int decay = 0;
    if (model.p() > 0) {
        std::vector<double> c(model.phi.size() + 1);
        c[0] = 1.0;
        for (size_t j = 0; j < model.phi.size(); ++j) c[j + 1] = -model.phi[j];
        const auto moduli = polynomial_root_moduli(c);
        double min_log = std::numeric_limits<double>::infinity();
        for (double r : moduli)
            if (r > 1.0) min_log = std::min(min_log, std::log(r));
        decay = std::isfinite(min_log) && min_log > 0
                    ? static_cast<int>(std::ceil(1.0 / min_log))
                    : 0;
    }
    return N + 10 * decay;
}

TimeSeries simulate(const HarmaModel& model, int n, std::uint64_t seed, int N, int burn_in) {
    if (n < 1) throw std::invalid_argument("series length must be >= 1");
    if (burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");
    require_stationary_invertible(model);

    TimeSeries ts;
    ts.seed = seed;
    ts.model = model;
    ts.truncation_index = N;
    ts.burn_in = burn_in;

    if (burn_in < default_burn_in(model, N))
        ts.warnings.push_back("burn-in shorter than N + 10 AR decay lengths; startup transients may remain");

    // when the trinomial has roots inside the unit circle the one-sided
    // coefficients grow with lag and the truncation sets the path scale
    const CoeffSeries coeff = coeff_recurrence(model.family, N);
    double head = 0.0, tail = 0.0;
    for (int k = 0; k <= std::min(N, 31); ++k) head = std::max(head, std::abs(coeff.values[k]));
    for (int k = std::max(0, N - 31); k <= N; ++k) tail = std::max(tail, std::abs(coeff.values[k]));
    if (tail > 10.0 * head)
        ts.warnings.push_back(
            "fractional-filter coefficients grow with lag; the one-sided expansion diverges at "
            "this parameter point and the truncation dominates the path scale");

    const std::vector<double> eps = gaussian_noise(seed, n + burn_in, model.sigma2);
    const std::vector<double> z = fractional_filter(model.family, eps, N);
    std::vector<double> x = arma_filter(model.phi, model.theta, z);
    ts.values.assign(x.begin() + burn_in, x.end());
    return ts;
}

TimeSeries simulate(const HarmaModel& model, int n, std::uint64_t seed) {
    const int N = default_truncation(model.family);
    return simulate(model, n, seed, N, default_burn_in(model, N));
}

}  // namespace harma
