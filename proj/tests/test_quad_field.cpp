#include "qtails/quad_field.hpp"

#include "qtails/sequences.hpp"

#include <doctest.h>

#include <numeric>

using namespace qtails;

TEST_CASE("ideal counts by splitting type") {
    IdealCountTable t = ideal_counts(100);
    CHECK(t.max_norm == 100);
    REQUIRE(t.counts.size() == 101);

    CHECK(t.counts[1] == 1);
    CHECK(t.counts[2] == 1);   // ramified
    CHECK(t.counts[3] == 0);   // inert
    CHECK(t.counts[4] == 1);   // (sqrt2)^4
    CHECK(t.counts[7] == 2);   // 7 = +-1 mod 8 splits
    CHECK(t.counts[9] == 1);   // 3^2 is the inert prime's norm
    CHECK(t.counts[17] == 2);
    CHECK(t.counts[49] == 3);  // p^2 for split p: 3 ideals
}

TEST_CASE("counts are multiplicative") {
    int n = 10000;
    IdealCountTable t = ideal_counts(n);
    for (int a = 2; a <= n; ++a) {
        for (int b = a; static_cast<long long>(a) * b <= n; ++b) {
            if (std::gcd(a, b) != 1) continue;
            CHECK(t.counts[static_cast<size_t>(a) * static_cast<size_t>(b)] ==
                  t.counts[static_cast<size_t>(a)] * t.counts[static_cast<size_t>(b)]);
        }
    }
}

TEST_CASE("element norms agree with the table in a class-number-one field") {
    IdealCountTable t = ideal_counts(500);
    for (int m = 1; m <= 500; ++m)
        CHECK(element_norm_represented(m) == (t.counts[static_cast<size_t>(m)] > 0));
}

TEST_CASE("first error series coefficients count ideals of norm 8m+1") {
    IdentityReport r = verify_2_5(60);
    CHECK(r.pass);
    CHECK(r.identity_id == "2.5");

    // direct spot checks of the signed correspondence
    QSeries e1 = error_series(ErrorKind::E1, 40);
    IdealCountTable t = ideal_counts(8 * 39 + 1);
    for (int m = 0; m < 40; ++m) {
        Rational expect = Rational((m % 2 ? -1 : 1) * t.counts[static_cast<size_t>(8 * m + 1)]);
        CHECK(qs_coeff(e1, m) == expect);
    }
}
