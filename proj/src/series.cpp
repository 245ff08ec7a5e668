#include "qtails/series.hpp"

#include <algorithm>
#include <sstream>

namespace qtails {

static int common_order(const QSeries& A, const QSeries& B) {
    return std::min(A.order(), B.order());
}

QSeries qs_linear(const Rational& c1, const QSeries& A, const Rational& c2, const QSeries& B) {
    QSeries R(common_order(A, B));
    for (int m = 0; m < R.order(); ++m) R.c[m] = c1 * A.c[m] + c2 * B.c[m];
    return R;
}

QSeries qs_add(const QSeries& A, const QSeries& B) { return qs_linear(1, A, 1, B); }
QSeries qs_sub(const QSeries& A, const QSeries& B) { return qs_linear(1, A, -1, B); }

QSeries qs_scale(const Rational& c, const QSeries& A) {
    QSeries R(A.order());
    for (int m = 0; m < R.order(); ++m) R.c[m] = c * A.c[m];
    return R;
}

QSeries qs_mul(const QSeries& A, const QSeries& B) {
    const int n = common_order(A, B);
    QSeries R(n);
    for (int i = 0; i < n; ++i) {
        if (A.c[i] == 0) continue;
        for (int j = 0; i + j < n; ++j) {
            if (B.c[j] == 0) continue;
            R.c[i + j] += A.c[i] * B.c[j];
        }
    }
    return R;
}

QSeries qs_inv(const QSeries& A) {
    if (A.c[0] == 0) throw series_error("non-invertible series: zero constant term");
    const int n = A.order();
    QSeries R(n);
    R.c[0] = 1 / A.c[0];
    for (int m = 1; m < n; ++m) {
        Rational acc = 0;
        for (int k = 1; k <= m; ++k) acc += A.c[k] * R.c[m - k];
        R.c[m] = -acc / A.c[0];
    }
    return R;
}

QSeries qs_subst_signed_power(const QSeries& A, int sign, int k) {
    if (sign != 1 && sign != -1) throw series_error("sign must be +-1");
    if (k < 1) throw series_error("power must be positive");
    QSeries R(A.order());
    int flip = 1;
    for (int m = 0; m * k < A.order(); ++m) {
        R.c[static_cast<size_t>(m) * k] = flip > 0 ? A.c[m] : -A.c[m];
        flip *= sign;
    }
    return R;
}

QSeries qs_shift(const QSeries& A, int k) {
    if (k < 0) throw series_error("negative shift");
    QSeries R(A.order());
    for (int m = 0; m + k < A.order(); ++m) R.c[m + k] = A.c[m];
    return R;
}

Rational qs_coeff(const QSeries& A, int m) {
    if (m < 0 || m >= A.order()) throw series_error("coefficient index out of range");
    return A.c[m];
}

std::optional<int> qs_valuation(const QSeries& A) {
    for (int m = 0; m < A.order(); ++m)
        if (A.c[m] != 0) return m;
    return std::nullopt;
}

QSeries qs_truncate(const QSeries& A, int order) {
    if (order > A.order()) throw series_error("cannot extend truncation order");
    QSeries R(order);
    std::copy(A.c.begin(), A.c.begin() + order, R.c.begin());
    return R;
}

std::string qs_str(const QSeries& A, int max_terms) {
    std::ostringstream os;
    int shown = 0;
    bool first = true;
    for (int m = 0; m < A.order(); ++m) {
        if (A.c[m] == 0) continue;
        if (max_terms >= 0 && shown == max_terms) {
            os << " + ...";
            break;
        }
        Rational v = A.c[m];
        if (first) {
            if (v < 0) { os << "-"; v = -v; }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (v != 1 || m == 0) os << v.str();
        if (m > 0) {
            if (v != 1) os << "*";
            os << "q";
            if (m > 1) os << "^" << m;
        }
        first = false;
        ++shown;
    }
    if (first) os << "0";
    return os.str();
}

void TSeries::mul_tfactor(const Rational& s, int a, int b) {
    if (a < 1) throw series_error("t-factor exponent must be positive");
    for (int j = torder() - 1; j >= a; --j) {
        if (b == 0) {
            for (int m = 0; m < qorder(); ++m) rows[j].c[m] -= s * rows[j - a].c[m];
        } else {
            for (int m = qorder() - 1; m >= b; --m) rows[j].c[m] -= s * rows[j - a].c[m - b];
        }
    }
}

void TSeries::div_tfactor(const Rational& s, int a, int b) {
    if (a < 1) throw series_error("t-factor exponent must be positive");
    for (int j = a; j < torder(); ++j) {
        if (b == 0) {
            for (int m = 0; m < qorder(); ++m) rows[j].c[m] += s * rows[j - a].c[m];
        } else {
            for (int m = qorder() - 1; m >= b; --m) rows[j].c[m] += s * rows[j - a].c[m - b];
        }
    }
}

void TSeries::div_qfactor(const Rational& s, int b) {
    for (auto& row : rows) row.div_factor(s, b);
}

static void check_compatible(const TSeries& A, const TSeries& B) {
    if (A.qorder() != B.qorder()) throw series_error("TSeries qorder mismatch");
}

TSeries ts_add(const TSeries& A, const TSeries& B) {
    check_compatible(A, B);
    TSeries R(std::min(A.torder(), B.torder()), A.qorder());
    for (int j = 0; j < R.torder(); ++j) R.rows[j] = qs_add(A.rows[j], B.rows[j]);
    return R;
}

TSeries ts_sub(const TSeries& A, const TSeries& B) {
    check_compatible(A, B);
    TSeries R(std::min(A.torder(), B.torder()), A.qorder());
    for (int j = 0; j < R.torder(); ++j) R.rows[j] = qs_sub(A.rows[j], B.rows[j]);
    return R;
}

TSeries ts_mul(const TSeries& A, const TSeries& B) {
    check_compatible(A, B);
    TSeries R(std::min(A.torder(), B.torder()), A.qorder());
    for (int i = 0; i < R.torder(); ++i) {
        if (A.rows[i].is_zero()) continue;
        for (int j = 0; i + j < R.torder(); ++j)
            R.rows[i + j] = qs_add(R.rows[i + j], qs_mul(A.rows[i], B.rows[j]));
    }
    return R;
}

TSeries ts_scale(const Rational& c, const TSeries& A) {
    TSeries R(A.torder(), A.qorder());
    for (int j = 0; j < R.torder(); ++j) R.rows[j] = qs_scale(c, A.rows[j]);
    return R;
}

TSeries ts_shift(const TSeries& A, int a, int b) {
    if (a < 0 || b < 0) throw series_error("negative shift");
    TSeries R(A.torder(), A.qorder());
    for (int j = 0; j + a < A.torder(); ++j) R.rows[j + a] = qs_shift(A.rows[j], b);
    return R;
}

const QSeries& ts_coeff(const TSeries& A, int j) {
    if (j < 0 || j >= A.torder()) throw series_error("t-coefficient index out of range");
    return A.rows[j];
}

TSeries qs_to_tseries_neg_exp(const QSeries& A, int torder) {
    TSeries R(torder, 1);
    // t^j coefficient: sum_m c_m (-1)^m (-m)^j / j!
    Rational jfact = 1;
    std::vector<Rational> mpow(static_cast<size_t>(A.order()), 1);
    for (int j = 0; j < torder; ++j) {
        if (j > 0) jfact *= j;
        Rational acc = 0;
        for (int m = 0; m < A.order(); ++m) {
            if (j > 0) mpow[m] *= -m;
            if (A.c[m] == 0) continue;
            acc += A.c[m] * (m % 2 == 0 ? mpow[m] : -mpow[m]);
        }
        R.rows[j].c[0] = acc / jfact;
    }
    return R;
}

}  // namespace qtails
