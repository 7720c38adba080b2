#pragma once

#include <optional>
#include <string>
#include <vector>

namespace harma {

enum class Variant { type1, type2 };

/**
 * Polynomial family behind the trinomial generating function
 *
 *     (1 - a*t + t^m)^(-nu),   a = m*u (type 1)  or  a = 2*u (type 2).
 *
 * Type 1 expands into Humbert polynomials Pi_{n,m}^nu(u); type 2 into the
 * Milovanovic-Dordevic generalization Q_{n,m}^nu(u).  The two are linked by
 * Pi_{n,m}^nu(u) = Q_{n,m}^nu(m*u/2) and coincide at m = 2 (Gegenbauer).
 *
 * Coefficient evaluation accepts |u| <= u_max() and |nu| < 1; the tighter
 * process-level ranges (u in [0, u_max], |nu| < 1/2) are enforced by
 * model validation, not here.
 */
struct PolyFamily {
    Variant variant = Variant::type1;
    int m = 2;
    double nu = 0.0;
    double u = 0.0;

    /// Linear coefficient of the generating trinomial.
    double trinomial_a() const { return variant == Variant::type1 ? m * u : 2.0 * u; }

    /// Upper end of the admissible u range for this variant.
    double u_max() const { return variant == Variant::type1 ? 2.0 / m : 1.0; }
};

enum class CoeffMethod { explicit_sum, recurrence, series_oracle, convolution };

std::string to_string(CoeffMethod method);

/// Finite prefix of an infinite coefficient sequence, with provenance.
struct CoeffSeries {
    std::vector<double> values;  // indices 0..truncation_index
    int truncation_index = 0;
    CoeffMethod method = CoeffMethod::explicit_sum;
    std::optional<PolyFamily> family;
    std::string note;  // route details, e.g. the recurrence sign convention
    bool precision_warning = false;
};

/// Rising factorial (nu)_n = nu (nu+1) ... (nu+n-1); (nu)_0 = 1.
double pochhammer(double nu, int n);

/**
 * Explicit finite sum for the type 2 coefficient
 *
 *   Q_{n,m}^nu(u) = sum_{k=0}^{floor(n/m)} (-1)^k (nu)_{n-(m-1)k}
 *                   / (k! (n-mk)!) * (2u)^{n-mk}.
 *
 * Terms are accumulated in extended precision; for n beyond the directly
 * representable factorial range the terms switch to log-magnitude plus sign
 * form.  The alternating sum can cancel severely for large n; use
 * coeff_explicit_eval() to obtain the measured cancellation.
 */
double coeff_explicit_type2(int m, double nu, double u, int n);

/// Type 1 coefficient via the substitution Pi_{n,m}^nu(u) = Q_{n,m}^nu(m*u/2).
double coeff_explicit_type1(int m, double nu, double u, int n);

/// Explicit-sum coefficient for either variant.
double coeff_explicit(const PolyFamily& family, int n);

struct CoeffEval {
    double value = 0.0;
    double cancellation = 1.0;  // sum of |terms| / |result|
    bool precision_warning = false;
};

CoeffEval coeff_explicit_eval(const PolyFamily& family, int n);

/// All coefficients 0..N by the explicit sum.
CoeffSeries coeff_series_explicit(const PolyFamily& family, int N);

/**
 * Independent oracle: expand (1 - a*t + t^m)^(-nu) through the binomial
 * series sum_n (nu)_n/n! (a*t - t^m)^n, collecting powers of t up to N.
 * Term n contributes (nu)_n/n! C(n,r) (-1)^r a^(n-r) at index n+(m-1)r.
 * Deliberately kept naive; it is the ground truth the other routes are
 * checked against.
 */
CoeffSeries coeff_series_oracle(const PolyFamily& family, int N);

/**
 * Forward three-term recurrence
 *
 *   (n+1) c_{n+1} = a (n+nu) c_n  -+  (n + m*nu - m + 1) c_{n-m+1},
 *
 * seeded with explicit values c_0..c_{m-1}.  The sign of the third term is
 * auto-selected against the series oracle over n <= 20 and recorded in the
 * result's note; NumericalError if neither convention matches.
 */
CoeffSeries coeff_recurrence(const PolyFamily& family, int N);

enum class Specialization { gegenbauer, pincherle, horadam, horadam_pethe };

/// Named specializations: gegenbauer (type2, m=2), pincherle (type1, m=3),
/// horadam (type2, m=1), horadam_pethe (type2, m=3).
PolyFamily specialization(Specialization name, double nu, double u);

/// String-keyed variant; accepts "horadam-pethe" or "horadam_pethe".
PolyFamily specialization(const std::string& name, double nu, double u);

}  // namespace harma
