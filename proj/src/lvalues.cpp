#include "qtails/lvalues.hpp"

#include "qtails/sequences.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>
#include <vector>

namespace qtails {

using boost::multiprecision::abs;
using boost::multiprecision::acos;
using boost::multiprecision::exp;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

unsigned env_digits() {
    const char* s = std::getenv("QTAILS_DIGITS");
    if (!s || !*s) return 60;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end || v < 15 || v > 100000) throw series_error("QTAILS_DIGITS must be an integer in [15, 100000]");
    return static_cast<unsigned>(v);
}

PrecisionGuard::PrecisionGuard(unsigned decimal_digits) : saved_(Real::default_precision()) {
    Real::default_precision(decimal_digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

namespace {

// the generic rational -> mpfr conversion is far too slow; go via the integers
Real int_to_real(const Int& z) {
    static const Int kLoLL = std::numeric_limits<long long>::min();
    static const Int kHiLL = std::numeric_limits<long long>::max();
    if (z >= kLoLL && z <= kHiLL) return Real(z.convert_to<long long>());
    return Real(z.str());
}

Real rat_to_real(const Rational& v) {
    Real r = int_to_real(boost::multiprecision::numerator(v));
    const Int& den = boost::multiprecision::denominator(v);
    if (den != 1) r /= int_to_real(den);
    return r;
}

}  // namespace

EvalResult qs_eval_numeric(const QSeries& A, const Real& x, const Rational& coeff_bound) {
    Real ax = abs(x);
    if (ax >= 1) throw series_error("qs_eval_numeric requires |x| < 1");
    Real value = 0;
    Real xm = 1;
    for (int m = 0; m < A.order(); ++m) {
        if (m) xm *= x;
        const Rational& cm = A.c[static_cast<size_t>(m)];
        if (cm != 0) value += rat_to_real(cm) * xm;
    }
    Real tail = rat_to_real(coeff_bound) * pow(ax, A.order()) / (1 - ax);
    return {value, tail};
}

Real g_eval(const QSeries& coeffs, const Real& t) {
    // sum_m c_m (-1)^m e^{-mt} is the series evaluated at x = -e^{-t}
    return qs_eval_numeric(coeffs, -exp(-t), 0).value;
}

std::vector<Real> chebyshev_grid(double t1, double t2, int samples) {
    if (samples < 1 || !(t1 < t2)) throw series_error("bad grid parameters");
    Real mid = (Real(t1) + Real(t2)) / 2;
    Real half = (Real(t2) - Real(t1)) / 2;
    Real pi = acos(Real(-1));
    std::vector<Real> ts;
    ts.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
        ts.push_back(mid + half * cos(pi * (2 * i + 1) / (2 * samples)));
    return ts;
}

std::vector<Real> uniform_grid(double t1, double t2, int samples) {
    if (samples < 2 || !(t1 < t2)) throw series_error("bad grid parameters");
    std::vector<Real> ts;
    ts.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
        ts.push_back(Real(t1) + (Real(t2) - Real(t1)) * i / (samples - 1));
    return ts;
}

namespace {

struct FitOutput {
    std::vector<Real> taylor;  // a_0 .. a_nmax of the polynomial part
    std::vector<Real> gain;    // 1-norm of the data -> a_n linear map rows
    std::vector<std::vector<Real>> rows;  // the map rows themselves, per n
    Real max_resid;            // max |A c - b| over the nodes
};

// least squares in the Chebyshev basis on [t1,t2] with optional nuisance
// columns, solved by Householder QR; returns Taylor coefficients of the
// polynomial part around t = 0 plus the error-propagation row norms
FitOutput cheb_fit(const std::vector<Real>& ts, const std::vector<Real>& bs, double t1,
                   double t2, int deg, bool modular, int nmax, double condition_limit) {
    int S = static_cast<int>(ts.size());
    int K = modular ? 2 : 0;
    int ncol = deg + 1 + K;
    if (S < ncol) throw series_error("fit needs at least as many samples as basis columns");
    Real al = 2 / (Real(t2) - Real(t1));
    Real be = -(Real(t2) + Real(t1)) / (Real(t2) - Real(t1));

    std::vector<std::vector<Real>> A(static_cast<size_t>(S), std::vector<Real>(static_cast<size_t>(ncol)));
    Real c8 = acos(Real(-1));
    c8 = c8 * c8 / 8;
    for (int i = 0; i < S; ++i) {
        auto& row = A[static_cast<size_t>(i)];
        Real u = al * ts[static_cast<size_t>(i)] + be;
        row[0] = 1;
        if (deg >= 1) row[1] = u;
        for (int k = 2; k <= deg; ++k) row[static_cast<size_t>(k)] = 2 * u * row[static_cast<size_t>(k - 1)] - row[static_cast<size_t>(k - 2)];
        if (modular) {
            Real w = exp(-c8 / ts[static_cast<size_t>(i)]);
            Real rs = sqrt(ts[static_cast<size_t>(i)]);
            row[static_cast<size_t>(deg + 1)] = w / rs;
            row[static_cast<size_t>(deg + 2)] = w * rs;
        }
    }

    // normalize columns so the triangular-diagonal condition probe is meaningful
    std::vector<Real> scale(static_cast<size_t>(ncol));
    for (int k = 0; k < ncol; ++k) {
        Real m = 0;
        for (int i = 0; i < S; ++i) {
            Real a = abs(A[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            if (a > m) m = a;
        }
        if (m == 0) m = 1;
        scale[static_cast<size_t>(k)] = m;
        for (int i = 0; i < S; ++i) A[static_cast<size_t>(i)][static_cast<size_t>(k)] /= m;
    }

    auto R = A;
    std::vector<Real> y = bs;
    std::vector<std::vector<Real>> V(static_cast<size_t>(ncol));
    std::vector<Real> vn2s(static_cast<size_t>(ncol));
    for (int j = 0; j < ncol; ++j) {
        Real nx = 0;
        for (int i = j; i < S; ++i) nx += R[static_cast<size_t>(i)][static_cast<size_t>(j)] * R[static_cast<size_t>(i)][static_cast<size_t>(j)];
        nx = sqrt(nx);
        if (nx == 0) throw numeric_instability_error("degenerate fit column; widen the t-grid or raise the precision");
        Real alpha = R[static_cast<size_t>(j)][static_cast<size_t>(j)] >= 0 ? -nx : nx;
        std::vector<Real> v(static_cast<size_t>(S - j));
        v[0] = R[static_cast<size_t>(j)][static_cast<size_t>(j)] - alpha;
        for (int i = j + 1; i < S; ++i) v[static_cast<size_t>(i - j)] = R[static_cast<size_t>(i)][static_cast<size_t>(j)];
        Real vn2 = 0;
        for (auto& q : v) vn2 += q * q;
        if (vn2 != 0) {
            for (int col = j; col < ncol; ++col) {
                Real s = 0;
                for (int i = j; i < S; ++i) s += v[static_cast<size_t>(i - j)] * R[static_cast<size_t>(i)][static_cast<size_t>(col)];
                s = 2 * s / vn2;
                for (int i = j; i < S; ++i) R[static_cast<size_t>(i)][static_cast<size_t>(col)] -= s * v[static_cast<size_t>(i - j)];
            }
            Real s = 0;
            for (int i = j; i < S; ++i) s += v[static_cast<size_t>(i - j)] * y[static_cast<size_t>(i)];
            s = 2 * s / vn2;
            for (int i = j; i < S; ++i) y[static_cast<size_t>(i)] -= s * v[static_cast<size_t>(i - j)];
        }
        V[static_cast<size_t>(j)] = std::move(v);
        vn2s[static_cast<size_t>(j)] = vn2;
    }

    Real rmax = 0, rmin;
    bool first = true;
    for (int j = 0; j < ncol; ++j) {
        Real d = abs(R[static_cast<size_t>(j)][static_cast<size_t>(j)]);
        if (d > rmax) rmax = d;
        if (first || d < rmin) {
            rmin = d;
            first = false;
        }
    }
    if (rmin == 0 || rmax / rmin > Real(condition_limit))
        throw numeric_instability_error("ill-conditioned fit; widen the t-grid or raise the precision");

    std::vector<Real> x(static_cast<size_t>(ncol));
    for (int i = ncol - 1; i >= 0; --i) {
        Real s = y[static_cast<size_t>(i)];
        for (int k = i + 1; k < ncol; ++k) s -= R[static_cast<size_t>(i)][static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
        x[static_cast<size_t>(i)] = s / R[static_cast<size_t>(i)][static_cast<size_t>(i)];
    }

    FitOutput out;
    out.max_resid = 0;
    for (int i = 0; i < S; ++i) {
        Real s = -bs[static_cast<size_t>(i)];
        for (int k = 0; k < ncol; ++k) s += A[static_cast<size_t>(i)][static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
        Real a = abs(s);
        if (a > out.max_resid) out.max_resid = a;
    }

    // exact integer Chebyshev -> monomial data, then the affine unscaling
    std::vector<std::vector<Int>> T(static_cast<size_t>(deg + 1), std::vector<Int>(static_cast<size_t>(deg + 1)));
    T[0][0] = 1;
    if (deg >= 1) T[1][1] = 1;
    for (int k = 2; k <= deg; ++k)
        for (int j = 0; j <= deg; ++j)
            T[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                (j >= 1 ? 2 * T[static_cast<size_t>(k - 1)][static_cast<size_t>(j - 1)] : Int(0)) - T[static_cast<size_t>(k - 2)][static_cast<size_t>(j)];
    std::vector<std::vector<Int>> binom(static_cast<size_t>(deg + 1), std::vector<Int>(static_cast<size_t>(deg + 1)));
    for (int i = 0; i <= deg; ++i) {
        binom[static_cast<size_t>(i)][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                binom[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] + (j <= i - 1 ? binom[static_cast<size_t>(i - 1)][static_cast<size_t>(j)] : Int(0));
    }

    // conv[n][k]: contribution of the k-th (normalized) basis column to a_n
    std::vector<Real> bepow(static_cast<size_t>(deg + 1));
    bepow[0] = 1;
    for (int j = 1; j <= deg; ++j) bepow[static_cast<size_t>(j)] = bepow[static_cast<size_t>(j - 1)] * be;
    Real alpow = 1;
    std::vector<std::vector<Real>> conv(static_cast<size_t>(nmax + 1),
                                        std::vector<Real>(static_cast<size_t>(ncol), Real(0)));
    for (int n = 0; n <= nmax; ++n) {
        if (n) alpow *= al;
        for (int k = 0; k <= deg; ++k) {
            Real s = 0;
            for (int j = n; j <= k; ++j) {
                const Int& tkj = T[static_cast<size_t>(k)][static_cast<size_t>(j)];
                if (tkj != 0)
                    s += int_to_real(tkj) * int_to_real(binom[static_cast<size_t>(j)][static_cast<size_t>(n)]) * bepow[static_cast<size_t>(j - n)];
            }
            conv[static_cast<size_t>(n)][static_cast<size_t>(k)] = s * alpow / scale[static_cast<size_t>(k)];
        }
    }

    out.taylor.assign(static_cast<size_t>(nmax + 1), Real(0));
    for (int n = 0; n <= nmax; ++n) {
        Real s = 0;
        for (int k = 0; k <= deg; ++k) s += conv[static_cast<size_t>(n)][static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
        out.taylor[static_cast<size_t>(n)] = s;
    }

    // error propagation: a_n = conv_n . R^{-1} Q^T b, so the row is Q (R^{-T} conv_n padded)
    out.gain.assign(static_cast<size_t>(nmax + 1), Real(0));
    for (int n = 0; n <= nmax; ++n) {
        std::vector<Real> w(static_cast<size_t>(ncol));
        for (int i = 0; i < ncol; ++i) {
            Real s = conv[static_cast<size_t>(n)][static_cast<size_t>(i)];
            for (int k = 0; k < i; ++k) s -= R[static_cast<size_t>(k)][static_cast<size_t>(i)] * w[static_cast<size_t>(k)];
            w[static_cast<size_t>(i)] = s / R[static_cast<size_t>(i)][static_cast<size_t>(i)];
        }
        std::vector<Real> z(static_cast<size_t>(S), Real(0));
        for (int i = 0; i < ncol; ++i) z[static_cast<size_t>(i)] = w[static_cast<size_t>(i)];
        for (int j = ncol - 1; j >= 0; --j) {
            if (vn2s[static_cast<size_t>(j)] == 0) continue;
            const auto& v = V[static_cast<size_t>(j)];
            Real s = 0;
            for (int i = j; i < S; ++i) s += v[static_cast<size_t>(i - j)] * z[static_cast<size_t>(i)];
            s = 2 * s / vn2s[static_cast<size_t>(j)];
            for (int i = j; i < S; ++i) z[static_cast<size_t>(i)] -= s * v[static_cast<size_t>(i - j)];
        }
        Real g = 0;
        for (int i = 0; i < S; ++i) g += abs(z[static_cast<size_t>(i)]);
        out.gain[static_cast<size_t>(n)] = g;
        out.rows.push_back(std::move(z));
    }
    return out;
}

}  // namespace

std::vector<LValueEstimate> lvalue_extract(const QSeries& coeff_source, int nmax,
                                           const std::vector<Real>& t_grid,
                                           int qorder_numeric, const FitOptions& opts) {
    if (nmax < 0) throw series_error("nmax must be nonnegative");
    int S = static_cast<int>(t_grid.size());
    if (nmax + 2 > S) throw series_error("lvalue_extract needs at least nmax + 2 grid points");
    Real tmin = t_grid[0], tmax = t_grid[0];
    for (const auto& t : t_grid) {
        if (!(t > 0 && t < 1)) throw series_error("t-grid values must lie in (0, 1)");
        if (t < tmin) tmin = t;
        if (t > tmax) tmax = t;
    }
    int eff_order = std::min(coeff_source.order(), qorder_numeric);
    if (Real(eff_order) * tmin < 30)
        throw series_error("tail control requires qorder_numeric * min(t_grid) >= 30");

    int K = opts.modular_columns ? 2 : 0;
    int deg = opts.degree;
    if (deg < 0) deg = std::max(nmax + 1, 14);
    if (deg + 1 + K > S) deg = S - 1 - K;
    if (deg < nmax + 1) throw series_error("t-grid too small for the requested degree");

    QSeries src = coeff_source.order() == eff_order ? coeff_source : qs_truncate(coeff_source, eff_order);
    std::vector<Real> bs;
    bs.reserve(static_cast<size_t>(S));
    for (const auto& t : t_grid) bs.push_back(qs_eval_numeric(src, -exp(-t), opts.coeff_bound).value);

    double t1 = tmin.convert_to<double>();
    double t2 = tmax.convert_to<double>();
    FitOutput fit = cheb_fit(t_grid, bs, t1, t2, deg, opts.modular_columns, nmax, opts.condition_limit);

    // basis-truncation probe: redo the fit two degrees lower and take the shift
    std::vector<Real> probe(static_cast<size_t>(nmax + 1), Real(0));
    if (deg - 2 >= nmax + 1) {
        FitOutput low = cheb_fit(t_grid, bs, t1, t2, deg - 2, opts.modular_columns, nmax, opts.condition_limit);
        for (int n = 0; n <= nmax; ++n)
            probe[static_cast<size_t>(n)] = abs(fit.taylor[static_cast<size_t>(n)] - low.taylor[static_cast<size_t>(n)]);
    }

    // dropped-tail response: the coefficients past eff_order perturb each node
    // value by at most B * e^{-m t_i} per exponent m, so push each exponential
    // mode through the map rows and sum; signs are unknown, so absolute values
    std::vector<Real> tail_resp(static_cast<size_t>(nmax + 1), Real(0));
    {
        int digits = static_cast<int>(Real::default_precision());
        double tmin_d = tmin.convert_to<double>();
        long mstop = static_cast<long>(eff_order) +
                     static_cast<long>((static_cast<double>(digits) + 80.0) * 2.302585 / tmin_d) + 1;
        std::vector<Real> em(static_cast<size_t>(S)), step(static_cast<size_t>(S));
        for (int i = 0; i < S; ++i) {
            step[static_cast<size_t>(i)] = exp(-t_grid[static_cast<size_t>(i)]);
            em[static_cast<size_t>(i)] = exp(-Real(eff_order + 1) * t_grid[static_cast<size_t>(i)]);
        }
        for (long m = eff_order + 1; m <= mstop; ++m) {
            for (int n = 0; n <= nmax; ++n) {
                const auto& row = fit.rows[static_cast<size_t>(n)];
                Real w = 0;
                for (int i = 0; i < S; ++i) w += row[static_cast<size_t>(i)] * em[static_cast<size_t>(i)];
                tail_resp[static_cast<size_t>(n)] += abs(w);
            }
            for (int i = 0; i < S; ++i) em[static_cast<size_t>(i)] *= step[static_cast<size_t>(i)];
        }
        // geometric closure for m > mstop via the row 1-norm
        Real rem = exp(-Real(mstop + 1) * tmin) / (1 - exp(-tmin));
        Real bound = Real(opts.coeff_bound);
        for (int n = 0; n <= nmax; ++n) {
            tail_resp[static_cast<size_t>(n)] += fit.gain[static_cast<size_t>(n)] * rem;
            tail_resp[static_cast<size_t>(n)] *= bound;
        }
    }

    std::vector<LValueEstimate> out;
    out.reserve(static_cast<size_t>(nmax + 1));
    Real fact = 1;
    for (int n = 0; n <= nmax; ++n) {
        if (n) fact *= n;
        LValueEstimate e;
        e.n = n;
        e.uncertainty = fact * (fit.gain[static_cast<size_t>(n)] * fit.max_resid +
                                tail_resp[static_cast<size_t>(n)] + probe[static_cast<size_t>(n)]);
        e.value = (n % 2 ? -fact : fact) * fit.taylor[static_cast<size_t>(n)];
        out.push_back(std::move(e));
    }
    return out;
}

Real q_limit_numeric(const Real& t) {
    if (!(t > 0 && t < 1)) throw series_error("t must lie in (0, 1)");
    Real x = -exp(-t);
    double td = t.convert_to<double>();
    long kmax = static_cast<long>((static_cast<double>(Real::default_precision()) * 2.302585 + 8) / td) | 1;
    Real x2 = x * x;
    Real xe = x;
    Real p = 1;
    for (long k = 1; k <= kmax; k += 2) {
        p *= (1 + xe) / (1 - xe);
        xe *= x2;
    }
    return p;
}

Real theta_tails_numeric(int M, const Real& t, int qorder) {
    if (M < 0) throw series_error("M must be nonnegative");
    if (!(t > 0 && t < 1)) throw series_error("t must lie in (0, 1)");
    if (qorder < 1) throw series_error("qorder must be positive");
    Real x = -exp(-t);
    Real Q = q_limit_numeric(t);

    std::vector<Real> qf(static_cast<size_t>(M) + 2), iqf(static_cast<size_t>(M) + 2);
    qf[0] = 1;
    Real xa = 1;
    for (int a = 1; a <= M + 1; ++a) {
        xa *= x;
        qf[static_cast<size_t>(a)] = qf[static_cast<size_t>(a - 1)] * (1 - xa);
    }
    for (int a = 0; a <= M + 1; ++a) iqf[static_cast<size_t>(a)] = 1 / qf[static_cast<size_t>(a)];

    std::vector<Real> xp(static_cast<size_t>(qorder) + 1);
    xp[0] = 1;
    for (int e = 1; e <= qorder; ++e) xp[static_cast<size_t>(e)] = xp[static_cast<size_t>(e - 1)] * x;

    int jcap = 0;
    while ((jcap + 1) * (jcap + 2) / 2 <= qorder && jcap < M) ++jcap;

    // values of [j, k] at x for the inner factor, j small by the exponent cap
    std::vector<std::vector<Real>> gb1(static_cast<size_t>(jcap) + 1);
    for (int j = 0; j <= jcap; ++j) {
        gb1[static_cast<size_t>(j)].resize(static_cast<size_t>(j) + 1);
        for (int k = 0; k <= j; ++k)
            gb1[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                qf[static_cast<size_t>(j)] * iqf[static_cast<size_t>(k)] * iqf[static_cast<size_t>(j - k)];
    }

    Real v = 0;
    for (int n = 0; n <= M; ++n) {
        Real s = 0;
        int jmax = std::min(n, jcap);
        for (int j = 0; j <= jmax; ++j) {
            long long tj = static_cast<long long>(j) * (j + 1) / 2;
            if (tj > qorder) break;
            int kmax = std::min(j, n - j);
            for (int k = 0; k <= kmax; ++k) {
                long long e = tj + static_cast<long long>(k) * (k - 1) / 2;
                if (e > qorder) break;
                Real gb2 = qf[static_cast<size_t>(n - k)] * iqf[static_cast<size_t>(j)] * iqf[static_cast<size_t>(n - k - j)];
                s += gb1[static_cast<size_t>(j)][static_cast<size_t>(k)] * gb2 * xp[static_cast<size_t>(e)];
            }
        }
        v += Q - s;
    }
    return v;
}

Real theta_sum_numeric(int M, const Real& t, int qorder) {
    return theta_tails_numeric(M, t, qorder) - (M + 1) * q_limit_numeric(t);
}

Theorem2Report verify_theorem2(int nmax, const Theorem2Params& params) {
    if (nmax < 0) throw series_error("nmax must be nonnegative");
    if (params.degree < nmax + 1) throw series_error("fit degree must exceed nmax");
    std::vector<Real> ts = chebyshev_grid(params.t1, params.t2, params.samples);

    double digits = static_cast<double>(Real::default_precision());
    std::vector<Real> vs, gs;
    vs.reserve(ts.size());
    gs.reserve(ts.size());
    QSeries e2 = error_series(ErrorKind::E2, params.qorder_e2);
    for (const auto& t : ts) {
        int qo = static_cast<int>(digits * 2.302585 / t.convert_to<double>()) + 10;
        vs.push_back(theta_tails_numeric(params.M, t, qo));
        gs.push_back(g_eval(e2, t));
    }

    FitOutput fv = cheb_fit(ts, vs, params.t1, params.t2, params.degree, false, nmax, 1e45);
    FitOutput fg = cheb_fit(ts, gs, params.t1, params.t2, params.degree, false, nmax, 1e45);

    Theorem2Report rep;
    rep.diff_plus = 0;
    rep.diff_minus = 0;
    for (int n = 0; n <= nmax; ++n) {
        Real dp = abs(fv.taylor[static_cast<size_t>(n)] - fg.taylor[static_cast<size_t>(n)]);
        Real dm = abs(-fv.taylor[static_cast<size_t>(n)] - fg.taylor[static_cast<size_t>(n)]);
        if (dp > rep.diff_plus) rep.diff_plus = dp;
        if (dm > rep.diff_minus) rep.diff_minus = dm;
    }
    bool plus_ok = rep.diff_plus < Real(params.tolerance);
    bool minus_ok = rep.diff_minus < Real(params.tolerance);
    rep.pass = plus_ok != minus_ok;
    rep.matched_sign = rep.pass ? (plus_ok ? 1 : -1) : 0;

    int s = rep.matched_sign ? rep.matched_sign : 1;
    Real fact = 1;
    for (int n = 0; n <= nmax; ++n) {
        if (n) fact *= n;
        Real sign = n % 2 ? -fact : fact;
        rep.lhat_e2.push_back(sign * fg.taylor[static_cast<size_t>(n)]);
        rep.lhat_theta.push_back(sign * (s * fv.taylor[static_cast<size_t>(n)]));
    }
    return rep;
}

}  // namespace qtails
