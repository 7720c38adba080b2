#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace harma::quadrature {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes: {abscissa, Gauss weight, Kronrod weight}
inline constexpr double kGk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
std::pair<double, double> gk15(F&& f, double a, double b) {
    const double x0 = 0.5 * (a + b);
    const double h = b - x0;
    const double y0 = f(x0);
    double g7 = kGk15[0][1] * y0;
    double k15 = kGk15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGk15[i][0];
        const double yi = f(x0 + dx) + f(x0 - dx);
        k15 += kGk15[i][2] * yi;
        g7 += kGk15[i][1] * yi;
    }
    g7 *= h;
    k15 *= h;
    const double err = std::pow(200.0 * std::abs(g7 - k15), 1.5);
    return {k15, err};
}

}  // namespace detail

/// Adaptive bisection over a LIFO interval stack.  An interval is accepted
/// when its error estimate fits its share of abs_tol (proportional to
/// length) or it has shrunk below resolution; `converged` reports whether
/// the subdivision budget sufficed.
template <class F>
Result integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_intervals = 4000) {
    Result out;
    if (a == b) return out;
    const double total_len = std::abs(b - a);
    std::vector<std::pair<double, double>> stack{{a, b}};
    while (!stack.empty()) {
        const auto [ai, bi] = stack.back();
        stack.pop_back();
        ++out.intervals;
        const auto [s, e] = detail::gk15(f, ai, bi);
        const double budget = abs_tol * std::abs(bi - ai) / total_len;
        if (e <= budget || std::abs(bi - ai) < 1e-14 * total_len || out.intervals >= max_intervals) {
            out.value += s;
            out.error += e;
            if (e > budget && std::abs(bi - ai) >= 1e-14 * total_len) out.converged = false;
            continue;
        }
        const double mid = 0.5 * (ai + bi);
        stack.emplace_back(ai, mid);
        stack.emplace_back(mid, bi);
    }
    return out;
}

}  // namespace harma::quadrature
