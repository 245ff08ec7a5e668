#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtails {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct series_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated formal power series in q with exact rational coefficients.
// c[m] is the coefficient of q^m for m < order; nothing is known past order.
// Mixed-order arithmetic truncates to the smaller order, never extends.
struct QSeries {
    std::vector<Rational> c;

    QSeries() = default;
    explicit QSeries(int order) : c(static_cast<size_t>(order)) {
        if (order <= 0) throw series_error("QSeries order must be positive");
    }

    int order() const { return static_cast<int>(c.size()); }

    static QSeries one(int order) {
        QSeries s(order);
        s.c[0] = 1;
        return s;
    }
    static QSeries constant(const Rational& v, int order) {
        QSeries s(order);
        s.c[0] = v;
        return s;
    }
    // coef * q^pow, zero series if pow >= order
    static QSeries monomial(const Rational& coef, int pow, int order) {
        QSeries s(order);
        if (pow < 0) throw series_error("negative q exponent");
        if (pow < order) s.c[static_cast<size_t>(pow)] = coef;
        return s;
    }

    bool is_zero() const {
        for (auto& x : c)
            if (x != 0) return false;
        return true;
    }

    // in-place multiply by (1 - s*q^k); exact, order preserved
    void mul_factor(const Rational& s, int k) {
        if (k <= 0) throw series_error("factor exponent must be positive");
        for (int m = order() - 1; m >= k; --m) c[m] -= s * c[m - k];
    }
    // in-place divide by (1 - s*q^k); exact since the factor is a unit
    void div_factor(const Rational& s, int k) {
        if (k <= 0) throw series_error("factor exponent must be positive");
        for (int m = k; m < order(); ++m) c[m] += s * c[m - k];
    }

    bool operator==(const QSeries& o) const = default;
};

QSeries qs_linear(const Rational& c1, const QSeries& A, const Rational& c2, const QSeries& B);
QSeries qs_add(const QSeries& A, const QSeries& B);
QSeries qs_sub(const QSeries& A, const QSeries& B);
QSeries qs_scale(const Rational& c, const QSeries& A);
QSeries qs_mul(const QSeries& A, const QSeries& B);
QSeries qs_inv(const QSeries& A);
// A(sign*q^k) truncated to order(A)
QSeries qs_subst_signed_power(const QSeries& A, int sign, int k);
// multiply by q^k (coefficients past order drop off)
QSeries qs_shift(const QSeries& A, int k);
Rational qs_coeff(const QSeries& A, int m);
std::optional<int> qs_valuation(const QSeries& A);
// truncate (or error if order would grow)
QSeries qs_truncate(const QSeries& A, int order);
std::string qs_str(const QSeries& A, int max_terms = -1);

// Series in t whose coefficients are q-series sharing one qorder.
// rows[j] is the coefficient of t^j for j < torder.
struct TSeries {
    std::vector<QSeries> rows;

    TSeries() = default;
    TSeries(int torder, int qorder) {
        if (torder <= 0) throw series_error("TSeries torder must be positive");
        rows.assign(static_cast<size_t>(torder), QSeries(qorder));
    }

    int torder() const { return static_cast<int>(rows.size()); }
    int qorder() const { return rows.empty() ? 0 : rows[0].order(); }

    static TSeries one(int torder, int qorder) {
        TSeries s(torder, qorder);
        s.rows[0].c[0] = 1;
        return s;
    }

    // in-place multiply by (1 - s * t^a * q^b); a >= 1
    void mul_tfactor(const Rational& s, int a, int b);
    // in-place divide by (1 - s * t^a * q^b); a >= 1
    void div_tfactor(const Rational& s, int a, int b);
    // in-place divide by (1 - s * q^b), applied row-wise; b >= 1
    void div_qfactor(const Rational& s, int b);

    bool operator==(const TSeries& o) const = default;
};

TSeries ts_add(const TSeries& A, const TSeries& B);
TSeries ts_sub(const TSeries& A, const TSeries& B);
TSeries ts_mul(const TSeries& A, const TSeries& B);
TSeries ts_scale(const Rational& c, const TSeries& A);
// multiply by t^a q^b
TSeries ts_shift(const TSeries& A, int a, int b);
const QSeries& ts_coeff(const TSeries& A, int j);

// Taylor data of sum_m c_m (-1)^m e^{-mt}: t^j coefficient is
// sum_m c_m (-1)^m (-m)^j / j!, returned as a TSeries with qorder 1.
TSeries qs_to_tseries_neg_exp(const QSeries& A, int torder);

}  // namespace qtails
