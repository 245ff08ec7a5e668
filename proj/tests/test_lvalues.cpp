#include "qtails/lvalues.hpp"

#include "qtails/sequences.hpp"

#include <doctest.h>

#include <boost/multiprecision/mpfr.hpp>

using namespace qtails;

namespace {

double to_double(const Real& x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("precision control") {
    CHECK(env_digits() == 60);  // QTAILS_DIGITS unset in the test run
    unsigned before = boost::multiprecision::mpfr_float::default_precision();
    {
        PrecisionGuard guard(80);
        CHECK(boost::multiprecision::mpfr_float::default_precision() == 80);
        {
            PrecisionGuard inner(30);
            CHECK(boost::multiprecision::mpfr_float::default_precision() == 30);
        }
        CHECK(boost::multiprecision::mpfr_float::default_precision() == 80);
    }
    CHECK(boost::multiprecision::mpfr_float::default_precision() == before);
}

TEST_CASE("series evaluation with tail bounds") {
    PrecisionGuard guard(60);
    int ord = 40;
    QSeries g = QSeries::one(ord);
    g.div_factor(1, 1);  // geometric series
    Real x = Real(3) / 10;
    EvalResult r = qs_eval_numeric(g, x, 1);
    Real exact = 1 / (1 - x);
    // the dropped geometric tail saturates its own bound
    CHECK(to_double(abs(r.value - exact)) <= to_double(r.tail_bound) * (1 + 1e-12));
    CHECK(to_double(r.tail_bound) < 2e-20);

    EvalResult r2 = qs_eval_numeric(g, x, 64);
    CHECK(r2.tail_bound == 64 * r.tail_bound);
}

TEST_CASE("grids") {
    PrecisionGuard guard(60);
    auto cheb = chebyshev_grid(0.01, 0.02, 9);
    auto unif = uniform_grid(0.01, 0.02, 9);
    CHECK(cheb.size() == 9);
    CHECK(unif.size() == 9);
    for (const Real& t : cheb) {
        CHECK(to_double(t) >= 0.01);
        CHECK(to_double(t) <= 0.02);
    }
    CHECK(to_double(unif.front()) == doctest::Approx(0.01));
    CHECK(to_double(unif.back()) == doctest::Approx(0.02));
}

TEST_CASE("alternating exponential sums") {
    PrecisionGuard guard(60);
    QSeries src = QSeries::monomial(1, 1, 6);
    Real t = Real(1) / 2;
    CHECK(to_double(abs(g_eval(src, t) + exp(-t))) < 1e-50);

    QSeries src2 = QSeries::monomial(1, 1, 6);
    src2.c[3] = -1;  // q - q^3
    Real expect = -exp(-t) + exp(-3 * t);
    CHECK(to_double(abs(g_eval(src2, t) - expect)) < 1e-50);
}

TEST_CASE("special values recovered from forced inputs") {
    PrecisionGuard guard(60);
    auto grid = chebyshev_grid(0.0195, 0.021, 30);

    // coeff source q: G(t) = -e^{-t}, so every L(-n) = -1
    QSeries src = QSeries::monomial(1, 1, 8);
    auto est = lvalue_extract(src, 4, grid, 2000);
    REQUIRE(est.size() == 5);
    for (int n = 0; n <= 4; ++n) {
        double err = to_double(abs(est[static_cast<size_t>(n)].value + 1));
        CHECK(err < 1e-10);
        CHECK(err <= to_double(est[static_cast<size_t>(n)].uncertainty));
    }

    // q - q^3: L(-n) = 3^n - 1
    QSeries src2 = QSeries::monomial(1, 1, 8);
    src2.c[3] = -1;
    auto est2 = lvalue_extract(src2, 4, grid, 2000);
    long long truth[5] = {0, 2, 8, 26, 80};
    for (int n = 0; n <= 4; ++n) {
        double denom = truth[n] ? static_cast<double>(truth[n]) : 1.0;
        double err = to_double(abs(est2[static_cast<size_t>(n)].value - truth[n])) / denom;
        CHECK(err < 1e-10);
    }
}

TEST_CASE("conditioning guards") {
    PrecisionGuard guard(60);
    QSeries src = QSeries::monomial(1, 1, 8);

    FitOptions tight;
    tight.condition_limit = 10;
    auto grid = chebyshev_grid(0.0195, 0.021, 30);
    CHECK_THROWS_AS(lvalue_extract(src, 4, grid, 2000, tight), numeric_instability_error);

    // fewer samples than fit parameters cannot be solved
    auto tiny = chebyshev_grid(0.0195, 0.021, 4);
    CHECK_THROWS_AS(lvalue_extract(src, 4, tiny, 2000), series_error);
}

TEST_CASE("theta partial sums differ from the tails by the drift term") {
    PrecisionGuard guard(60);
    Real t = Real(1) / 2;
    int M = 30, qorder = 300;
    Real tails = theta_tails_numeric(M, t, qorder);
    Real partial = theta_sum_numeric(M, t, qorder);
    Real drift = (M + 1) * q_limit_numeric(t);
    CHECK(to_double(abs(tails - (partial + drift))) < 1e-40);
}
