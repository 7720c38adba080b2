#include "harma/poly.hpp"

#include "harma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harma {

namespace {

// Extended-precision accumulation absorbs the cancellation of the
// alternating sums: with ~1e-34 term error, a cancellation factor up to
// ~1e24 still leaves 1e-10 relative accuracy in the result.
using quad = __float128;

// Largest n for which n! fits in __float128 (overflow near 1755!).
constexpr int kQuadDirectMax = 1600;

// Estimated relative error above which a result is flagged.
constexpr double kPrecisionTarget = 1e-10;
constexpr double kQuadEps = 1.93e-34;
constexpr double kLongDoubleEps = 1.1e-19;

double to_double(quad x) { return static_cast<double>(x); }

quad qabs(quad x) { return x < 0 ? -x : x; }

quad qpow_int(quad base, long long e) {
    quad r = 1;
    quad b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

quad qfactorial(int n) {
    quad r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

quad qpochhammer(double nu, int n) {
    quad r = 1;
    for (int i = 0; i < n; ++i) r *= quad(nu) + i;
    return r;
}

void check_coeff_domain(const PolyFamily& family) {
    if (family.m < 1) throw std::invalid_argument("polynomial order m must be >= 1");
    if (!std::isfinite(family.nu) || !std::isfinite(family.u))
        throw std::invalid_argument("nu and u must be finite");
    if (std::abs(family.nu) >= 1.0)
        throw std::domain_error("coefficient evaluation requires |nu| < 1");
    if (std::abs(family.u) > family.u_max() + 1e-12)
        throw std::domain_error("coefficient evaluation requires |u| <= " +
                                std::to_string(family.u_max()));
}

// Signed log-magnitude of (nu)_n, via prefix sums supplied by the caller.
struct PochLog {
    std::vector<double> logabs;  // logabs[n] = log|(nu)_n|, -inf if zero
    std::vector<int> sign;       // 0 when the product vanishes

    explicit PochLog(double nu, int nmax) {
        logabs.assign(nmax + 1, 0.0);
        sign.assign(nmax + 1, 1);
        double acc = 0.0;
        int s = 1;
        for (int i = 0; i < nmax; ++i) {
            const double f = nu + i;
            if (f == 0.0) {
                s = 0;
                acc = -std::numeric_limits<double>::infinity();
            } else if (s != 0) {
                acc += std::log(std::abs(f));
                if (f < 0) s = -s;
            }
            logabs[i + 1] = acc;
            sign[i + 1] = s;
        }
    }
};

struct TermAccumulator {
    quad sum = 0;
    quad abs_sum = 0;

    void add(quad t) {
        sum += t;
        abs_sum += qabs(t);
    }

    CoeffEval finish(double path_eps) const {
        CoeffEval out;
        out.value = to_double(sum);
        const double a = to_double(abs_sum);
        const double v = std::abs(out.value);
        out.cancellation = (v > 0) ? a / v : (a > 0 ? std::numeric_limits<double>::infinity() : 1.0);
        // estimated relative error of the accumulated result
        out.precision_warning = out.cancellation * path_eps > kPrecisionTarget;
        return out;
    }
};

// Log-space fallback used once factorials leave the quad range.  Terms are
// rescaled by the largest magnitude before summing.
CoeffEval explicit_sum_logspace(int m, double nu, double u, int n) {
    const PochLog poch(nu, n + 1);
    const double two_u = 2.0 * u;
    const double log2u = two_u != 0.0 ? std::log(std::abs(two_u)) : 0.0;
    const int sign2u = two_u > 0 ? 1 : (two_u < 0 ? -1 : 0);
    const int kmax = n / m;

    std::vector<double> logs(kmax + 1);
    std::vector<int> signs(kmax + 1);
    double lmax = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kmax; ++k) {
        const int j = n - (m - 1) * k;
        const int e = n - m * k;
        if (poch.sign[j] == 0 || (sign2u == 0 && e > 0)) {
            signs[k] = 0;
            logs[k] = -std::numeric_limits<double>::infinity();
            continue;
        }
        logs[k] = poch.logabs[j] - std::lgamma(double(k) + 1.0) - std::lgamma(double(e) + 1.0) +
                  (sign2u == 0 ? 0.0 : e * log2u);
        signs[k] = poch.sign[j] * ((k % 2 == 0) ? 1 : -1) * ((e % 2 == 0 || sign2u > 0) ? 1 : -1);
        lmax = std::max(lmax, logs[k]);
    }

    CoeffEval out;
    if (!std::isfinite(lmax)) return out;  // all terms vanish; value 0 unless n == 0
    long double s = 0.0L, a = 0.0L;
    for (int k = 0; k <= kmax; ++k) {
        if (signs[k] == 0) continue;
        const long double t = signs[k] * std::exp((long double)(logs[k] - lmax));
        s += t;
        a += std::abs(t);
    }
    out.value = double(s) * std::exp(lmax);
    out.cancellation = s != 0.0L ? double(a / std::abs(s)) : std::numeric_limits<double>::infinity();
    out.precision_warning = out.cancellation * kLongDoubleEps > kPrecisionTarget;
    if (!std::isfinite(out.value)) out.precision_warning = true;
    return out;
}

CoeffEval explicit_sum_type2(int m, double nu, double u, int n) {
    if (n == 0) return CoeffEval{1.0, 1.0, false};
    if (n > kQuadDirectMax) return explicit_sum_logspace(m, nu, u, n);

    const quad two_u = quad(2.0) * quad(u);
    TermAccumulator acc;
    for (int k = 0; k <= n / m; ++k) {
        const int j = n - (m - 1) * k;
        const int e = n - m * k;
        quad t = qpochhammer(nu, j) / (qfactorial(k) * qfactorial(e));
        if (k % 2 != 0) t = -t;
        t *= qpow_int(two_u, e);
        acc.add(t);
    }
    return acc.finish(kQuadEps);
}

}  // namespace

std::string to_string(CoeffMethod method) {
    switch (method) {
        case CoeffMethod::explicit_sum: return "explicit";
        case CoeffMethod::recurrence: return "recurrence";
        case CoeffMethod::series_oracle: return "series_oracle";
        case CoeffMethod::convolution: return "convolution";
    }
    return "unknown";
}

double pochhammer(double nu, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer requires n >= 0");
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= nu + i;
    return r;
}

CoeffEval coeff_explicit_eval(const PolyFamily& family, int n) {
    check_coeff_domain(family);
    if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
    const double arg = family.variant == Variant::type1 ? family.m * family.u / 2.0 : family.u;
    return explicit_sum_type2(family.m, family.nu, arg, n);
}

double coeff_explicit_type2(int m, double nu, double u, int n) {
    return coeff_explicit_eval(PolyFamily{Variant::type2, m, nu, u}, n).value;
}

double coeff_explicit_type1(int m, double nu, double u, int n) {
    return coeff_explicit_eval(PolyFamily{Variant::type1, m, nu, u}, n).value;
}

double coeff_explicit(const PolyFamily& family, int n) {
    return coeff_explicit_eval(family, n).value;
}

CoeffSeries coeff_series_explicit(const PolyFamily& family, int N) {
    if (N < 0) throw std::invalid_argument("truncation index must be >= 0");
    CoeffSeries out;
    out.values.resize(N + 1);
    out.truncation_index = N;
    out.method = CoeffMethod::explicit_sum;
    out.family = family;
    for (int n = 0; n <= N; ++n) {
        const CoeffEval e = coeff_explicit_eval(family, n);
        out.values[n] = e.value;
        out.precision_warning |= e.precision_warning;
    }
    if (out.precision_warning) out.note = "cancellation above precision target";
    return out;
}

CoeffSeries coeff_series_oracle(const PolyFamily& family, int N) {
    check_coeff_domain(family);
    if (N < 0) throw std::invalid_argument("truncation index must be >= 0");

    CoeffSeries out;
    out.values.assign(N + 1, 0.0);
    out.truncation_index = N;
    out.method = CoeffMethod::series_oracle;
    out.family = family;

    const int m = family.m;
    const double a = family.trinomial_a();

    if (N <= kQuadDirectMax) {
        std::vector<TermAccumulator> acc(N + 1);
        const quad qa = quad(a);
        for (int n = 0; n <= N; ++n) {
            const quad w = qpochhammer(family.nu, n) / qfactorial(n);
            if (w == 0) continue;
            quad binom = 1;  // C(n, r), updated incrementally
            for (int r = 0; r <= n; ++r) {
                const long j = long(n) + long(m - 1) * r;
                if (j <= N) {
                    quad t = w * binom * qpow_int(qa, n - r);
                    if (r % 2 != 0) t = -t;
                    acc[j].add(t);
                }
                if (m >= 2 && j > N) break;
                binom = binom * (n - r) / (r + 1);
            }
        }
        for (int j = 0; j <= N; ++j) {
            const CoeffEval e = acc[j].finish(kQuadEps);
            out.values[j] = e.value;
            out.precision_warning |= e.precision_warning;
        }
    } else {
        // log-space rescaled accumulation; signals rather than overflows
        const PochLog poch(family.nu, N + 1);
        const double loga = a != 0.0 ? std::log(std::abs(a)) : 0.0;
        const int signa = a > 0 ? 1 : (a < 0 ? -1 : 0);
        std::vector<std::vector<std::pair<double, int>>> terms(N + 1);
        for (int n = 0; n <= N; ++n) {
            if (poch.sign[n] == 0 && n > 0) continue;
            const double lw = poch.logabs[n] - std::lgamma(double(n) + 1.0);
            for (int r = 0; r <= n; ++r) {
                const long j = long(n) + long(m - 1) * r;
                if (j > N) {
                    if (m >= 2) break;
                    continue;
                }
                const int e = n - r;
                if (signa == 0 && e > 0) continue;
                const double lt = lw + std::lgamma(double(n) + 1.0) - std::lgamma(double(r) + 1.0) -
                                  std::lgamma(double(e) + 1.0) + (signa == 0 ? 0.0 : e * loga);
                int s = poch.sign[n] * ((r % 2 == 0) ? 1 : -1) *
                        ((e % 2 == 0 || signa > 0) ? 1 : -1);
                terms[j].emplace_back(lt, s);
            }
        }
        for (int j = 0; j <= N; ++j) {
            if (terms[j].empty()) {
                out.values[j] = (j == 0) ? 1.0 : 0.0;
                continue;
            }
            double lmax = -std::numeric_limits<double>::infinity();
            for (auto& [lt, s] : terms[j]) lmax = std::max(lmax, lt);
            long double ssum = 0.0L, asum = 0.0L;
            for (auto& [lt, s] : terms[j]) {
                const long double t = s * std::exp((long double)(lt - lmax));
                ssum += t;
                asum += std::abs(t);
            }
            out.values[j] = double(ssum) * std::exp(lmax);
            const double canc =
                ssum != 0.0L ? double(asum / std::abs(ssum)) : std::numeric_limits<double>::infinity();
            out.precision_warning |= canc * kLongDoubleEps > kPrecisionTarget;
        }
    }
    if (out.precision_warning) out.note = "cancellation above precision target";
    return out;
}

CoeffSeries coeff_recurrence(const PolyFamily& family, int N) {
    check_coeff_domain(family);
    if (N < 0) throw std::invalid_argument("truncation index must be >= 0");

    CoeffSeries out;
    out.values.resize(N + 1);
    out.truncation_index = N;
    out.method = CoeffMethod::recurrence;
    out.family = family;

    const int m = family.m;
    const double a = family.trinomial_a();
    const double nu = family.nu;

    // seeds from the explicit sum; the recurrence never runs below n = m-1
    for (int n = 0; n <= std::min(N, m - 1); ++n) {
        const CoeffEval e = coeff_explicit_eval(family, n);
        out.values[n] = e.value;
        out.precision_warning |= e.precision_warning;
    }
    if (N < m) {
        out.note = "seeds only";
        return out;
    }

    auto run = [&](double sign, std::vector<double>& c, int upto) {
        for (int n = m - 1; n < upto; ++n) {
            c[n + 1] =
                (a * (n + nu) * c[n] + sign * (n + m * nu - m + 1) * c[n - m + 1]) / (n + 1);
        }
    };

    // Select the third-term sign against the oracle.  The generating
    // function forces the minus convention; it is tried first.
    const int K = std::min(N, 20);
    const CoeffSeries oracle = coeff_series_oracle(family, K);
    double chosen = 0.0;
    for (double sign : {-1.0, +1.0}) {
        std::vector<double> c(out.values.begin(), out.values.begin() + std::min(N, m - 1) + 1);
        c.resize(K + 1, 0.0);
        run(sign, c, K);
        bool ok = true;
        for (int n = 0; n <= K; ++n) {
            const double ref = oracle.values[n];
            if (std::abs(c[n] - ref) > std::max(1e-8 * std::abs(ref), 1e-12)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            chosen = sign;
            break;
        }
    }
    if (chosen == 0.0)
        throw NumericalError("recurrence-mismatch: neither sign convention reproduces the series oracle");

    run(chosen, out.values, N);
    out.note = chosen < 0 ? "third-term sign: minus (generating-function convention)"
                          : "third-term sign: plus (alternate convention)";
    return out;
}

PolyFamily specialization(Specialization name, double nu, double u) {
    switch (name) {
        case Specialization::gegenbauer: return PolyFamily{Variant::type2, 2, nu, u};
        case Specialization::pincherle: return PolyFamily{Variant::type1, 3, nu, u};
        case Specialization::horadam: return PolyFamily{Variant::type2, 1, nu, u};
        case Specialization::horadam_pethe: return PolyFamily{Variant::type2, 3, nu, u};
    }
    throw std::invalid_argument("unknown specialization");
}

PolyFamily specialization(const std::string& name, double nu, double u) {
    if (name == "gegenbauer") return specialization(Specialization::gegenbauer, nu, u);
    if (name == "pincherle") return specialization(Specialization::pincherle, nu, u);
    if (name == "horadam") return specialization(Specialization::horadam, nu, u);
    if (name == "horadam-pethe" || name == "horadam_pethe")
        return specialization(Specialization::horadam_pethe, nu, u);
    throw std::invalid_argument("unknown specialization name: " + name);
}

}  // namespace harma
