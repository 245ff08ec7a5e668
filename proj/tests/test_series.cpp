#include "qtails/series.hpp"

#include <doctest.h>

using namespace qtails;

namespace {

// small deterministic pseudorandom series for the algebra checks
QSeries pseudo(int order, int seed) {
    QSeries s(order);
    unsigned long long x = static_cast<unsigned long long>(seed) * 2654435761ULL + 12345;
    for (int m = 0; m < order; ++m) {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        int num = static_cast<int>((x >> 33) % 19) - 9;
        int den = 1 + static_cast<int>((x >> 10) % 5);
        s.c[static_cast<size_t>(m)] = Rational(num, den);
    }
    return s;
}

}  // namespace

TEST_CASE("construction and accessors") {
    CHECK_THROWS_AS(QSeries(0), series_error);
    CHECK_THROWS_AS(QSeries(-3), series_error);

    QSeries z(4);
    CHECK(z.order() == 4);
    CHECK(z.is_zero());
    CHECK(!qs_valuation(z).has_value());

    QSeries one = QSeries::one(4);
    CHECK(qs_coeff(one, 0) == 1);
    CHECK(qs_coeff(one, 3) == 0);
    CHECK(qs_valuation(one) == 0);

    QSeries c = QSeries::constant(Rational(3, 2), 5);
    CHECK(qs_coeff(c, 0) == Rational(3, 2));

    QSeries m = QSeries::monomial(2, 3, 6);
    CHECK(qs_coeff(m, 3) == 2);
    CHECK(qs_valuation(m) == 3);
    CHECK(QSeries::monomial(7, 10, 4).is_zero());
    CHECK_THROWS_AS(QSeries::monomial(1, -1, 4), series_error);
}

TEST_CASE("ring axioms on pseudorandom series") {
    int ord = 14;
    QSeries a = pseudo(ord, 1), b = pseudo(ord, 2), c = pseudo(ord, 3);
    CHECK(qs_add(a, b) == qs_add(b, a));
    CHECK(qs_mul(a, b) == qs_mul(b, a));
    CHECK(qs_add(qs_add(a, b), c) == qs_add(a, qs_add(b, c)));
    CHECK(qs_mul(qs_mul(a, b), c) == qs_mul(a, qs_mul(b, c)));
    CHECK(qs_mul(a, qs_add(b, c)) == qs_add(qs_mul(a, b), qs_mul(a, c)));
    CHECK(qs_mul(a, QSeries::one(ord)) == a);
    CHECK(qs_sub(a, a).is_zero());
    CHECK(qs_linear(2, a, -3, b) == qs_sub(qs_scale(2, a), qs_scale(3, b)));
}

TEST_CASE("inversion round trip") {
    int ord = 20;
    QSeries a = pseudo(ord, 4);
    a.c[0] = Rational(5, 3);  // force a unit
    CHECK(qs_mul(a, qs_inv(a)) == QSeries::one(ord));
    CHECK(qs_inv(qs_inv(a)) == a);

    QSeries noninv = QSeries::monomial(1, 1, 5);
    CHECK_THROWS_AS(qs_inv(noninv), series_error);
}

TEST_CASE("factor multiply and divide invert each other") {
    int ord = 16;
    QSeries a = pseudo(ord, 5);
    QSeries saved = a;
    a.mul_factor(Rational(2, 3), 2);
    a.div_factor(Rational(2, 3), 2);
    CHECK(a == saved);

    // k >= order leaves the series unchanged
    a.mul_factor(7, ord + 1);
    CHECK(a == saved);

    CHECK_THROWS_AS(a.mul_factor(1, 0), series_error);
    CHECK_THROWS_AS(a.div_factor(1, -2), series_error);

    // 1/(1-q) is the geometric series
    QSeries g = QSeries::one(5);
    g.div_factor(1, 1);
    for (int m = 0; m < 5; ++m) CHECK(qs_coeff(g, m) == 1);
}

TEST_CASE("substitution of signed powers") {
    int ord = 18;
    QSeries a = pseudo(ord, 6);
    CHECK(qs_subst_signed_power(qs_subst_signed_power(a, -1, 1), -1, 1) == a);
    CHECK(qs_subst_signed_power(qs_subst_signed_power(a, 1, 2), 1, 3) ==
          qs_subst_signed_power(a, 1, 6));
    // substitution is a ring map
    QSeries b = pseudo(ord, 7);
    CHECK(qs_subst_signed_power(qs_mul(a, b), -1, 2) ==
          qs_mul(qs_subst_signed_power(a, -1, 2), qs_subst_signed_power(b, -1, 2)));
}

TEST_CASE("shift, truncate, valuation") {
    QSeries a = QSeries::one(6);
    a.c[1] = 2;
    QSeries sh = qs_shift(a, 2);
    CHECK(qs_coeff(sh, 2) == 1);
    CHECK(qs_coeff(sh, 3) == 2);
    CHECK(qs_valuation(sh) == 2);

    QSeries tr = qs_truncate(sh, 3);
    CHECK(tr.order() == 3);
    CHECK(qs_coeff(tr, 2) == 1);
    CHECK_THROWS_AS(qs_truncate(tr, 9), series_error);
}

TEST_CASE("string form") {
    QSeries a(6);
    a.c[0] = 1;
    a.c[2] = Rational(-1, 2);
    std::string s = qs_str(a);
    CHECK(s.find("1") != std::string::npos);
    CHECK(s.find("q^2") != std::string::npos);
    CHECK(qs_str(QSeries(3)).find("0") != std::string::npos);
    // max_terms caps the printed support
    QSeries b = QSeries::one(10);
    for (int m = 1; m < 10; ++m) b.c[static_cast<size_t>(m)] = 1;
    CHECK(qs_str(b, 2).size() < qs_str(b).size());
}

TEST_CASE("t-series arithmetic") {
    CHECK_THROWS_AS(TSeries(0, 4), series_error);

    int to = 5, qo = 8;
    TSeries one = TSeries::one(to, qo);
    TSeries a = one;
    a.mul_tfactor(1, 1, 1);  // 1 - t q
    CHECK(ts_coeff(a, 0) == QSeries::one(qo));
    CHECK(ts_coeff(a, 1) == QSeries::monomial(-1, 1, qo));

    TSeries b = a;
    b.div_tfactor(1, 1, 1);
    CHECK(b == one);

    // geometric series in t q
    TSeries g = one;
    g.div_tfactor(1, 1, 1);
    for (int j = 0; j < to; ++j) CHECK(ts_coeff(g, j) == QSeries::monomial(1, j, qo));

    // ts_mul against the factored form
    TSeries prod = ts_mul(a, g);
    CHECK(prod == one);

    TSeries sh = ts_shift(one, 2, 3);
    CHECK(ts_coeff(sh, 2) == QSeries::monomial(1, 3, qo));
    CHECK(ts_add(sh, sh) == ts_scale(2, sh));
    CHECK(ts_sub(sh, sh) == TSeries(to, qo));

    TSeries rowdiv = one;
    rowdiv.div_qfactor(1, 1);
    CHECK(ts_coeff(rowdiv, 0) == qs_inv(qs_sub(QSeries::one(qo), QSeries::monomial(1, 1, qo))));
}

TEST_CASE("exponential taylor data") {
    // c_1 = 1: sum is -e^{-t}, so t^j coefficient is -(-1)^j / j!
    QSeries a = QSeries::monomial(1, 1, 4);
    TSeries ts = qs_to_tseries_neg_exp(a, 5);
    CHECK(qs_coeff(ts_coeff(ts, 0), 0) == -1);
    CHECK(qs_coeff(ts_coeff(ts, 1), 0) == 1);
    CHECK(qs_coeff(ts_coeff(ts, 2), 0) == Rational(-1, 2));
    CHECK(qs_coeff(ts_coeff(ts, 3), 0) == Rational(1, 6));

    // linearity
    QSeries b = QSeries::monomial(1, 3, 4);
    TSeries lhs = qs_to_tseries_neg_exp(qs_add(a, b), 5);
    CHECK(lhs == ts_add(qs_to_tseries_neg_exp(a, 5), qs_to_tseries_neg_exp(b, 5)));
}
