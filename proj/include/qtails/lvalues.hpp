#pragma once
#include "qtails/series.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace qtails {

// variable-precision real; precision is set per scope via PrecisionGuard
using Real = boost::multiprecision::mpfr_float;

struct numeric_instability_error : series_error {
    using series_error::series_error;
};

// decimal digits for numeric work, from QTAILS_DIGITS (default 60)
unsigned env_digits();

// sets the thread default precision on construction, restores on destruction
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned decimal_digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// value = sum_{m<order} c_m x^m; tail_bound = coeff_bound * |x|^order / (1 - |x|)
struct EvalResult {
    Real value;
    Real tail_bound;
};
EvalResult qs_eval_numeric(const QSeries& A, const Real& x, const Rational& coeff_bound);

struct LValueEstimate {
    int n = 0;
    Real value;
    Real uncertainty;  // fit residual + tail bound + basis-truncation probe
};

struct FitOptions {
    // -1 means max(nmax + 1, 14), capped so the design matrix stays overdetermined
    int degree = -1;
    // nuisance columns t^{-1/2} e^{-pi^2/(8t)}, t^{1/2} e^{-pi^2/(8t)}; they absorb
    // the sharp right-edge correction the polynomial basis would otherwise amplify
    bool modular_columns = true;
    double condition_limit = 1e45;
    // bound on dropped series coefficients for the tail estimate
    Rational coeff_bound = 64;
};

std::vector<Real> chebyshev_grid(double t1, double t2, int samples);
std::vector<Real> uniform_grid(double t1, double t2, int samples);

// G(t) = sum_m c_m (-1)^m e^{-mt} read off a truncated series
Real g_eval(const QSeries& coeffs, const Real& t);

// least-squares Chebyshev fit of G on the grid, returning L(-n) = (-1)^n n! a_n
// for n <= nmax together with propagated uncertainties
std::vector<LValueEstimate> lvalue_extract(const QSeries& coeff_source, int nmax,
                                           const std::vector<Real>& t_grid,
                                           int qorder_numeric, const FitOptions& opts = {});

// infinite product (-x; x^2)_inf / (x; x^2)_inf at x = -e^{-t}
Real q_limit_numeric(const Real& t);

// sum_{n=0}^{M} (Q - Theta_n) at x = -e^{-t}; double-sum exponents capped at qorder
Real theta_tails_numeric(int M, const Real& t, int qorder);

// -sum_{n=0}^{M} Theta_n(-e^{-t}); differs from theta_tails_numeric by the
// drift term (M+1) * Q(-e^{-t}), which is super-exponentially small in 1/t
Real theta_sum_numeric(int M, const Real& t, int qorder);

// default window sits below the point where the exact Lambert-product term
// of the tails identity (size ~ (ln2/t) Q(-e^{-t})) survives the fit gain
struct Theorem2Params {
    int M = 1200;
    double t1 = 0.016;
    double t2 = 0.0235;
    int samples = 12;
    int degree = 9;
    int qorder_e2 = 6000;
    double tolerance = 1e-6;
};

struct Theorem2Report {
    int matched_sign = 0;  // 0 when neither or both match
    Real diff_plus;        // max coefficient discrepancy for s = +1
    Real diff_minus;       // and for s = -1
    std::vector<Real> lhat_e2;     // L(-n) read from the series side
    std::vector<Real> lhat_theta;  // L(-n) read from the theta side (matched sign applied)
    bool pass = false;
};

// fits the drift-corrected theta partial sum against the series side and
// reports which overall sign reproduces the same Taylor data
Theorem2Report verify_theorem2(int nmax, const Theorem2Params& params = {});

}  // namespace qtails
