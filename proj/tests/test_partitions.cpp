#include "qtails/partitions.hpp"

#include "qtails/builders.hpp"
#include "qtails/sequences.hpp"
#include "qtails/tails.hpp"

#include <doctest.h>

using namespace qtails;

TEST_CASE("stats and class membership") {
    Partition p{{5, 3, 2}};
    PartitionStats s = partition_stats(p);
    CHECK(s.num_parts == 3);
    CHECK(s.largest == 5);
    CHECK(s.rank == 2);
    CHECK(s.num_odd == 2);

    CHECK(in_class(p, PartitionClass::all()));
    CHECK(in_class(p, PartitionClass::distinct()));
    CHECK(!in_class(p, PartitionClass::odd()));
    CHECK(in_class(p, PartitionClass::distinct_evens()));
    CHECK(in_class(p, PartitionClass::distinct_max_le(5)));
    CHECK(!in_class(p, PartitionClass::distinct_max_le(4)));
    CHECK(in_class(p, PartitionClass::distinct_exactly(3)));

    Partition rep{{3, 3, 2, 2}};
    CHECK(!in_class(rep, PartitionClass::distinct()));
    CHECK(!in_class(rep, PartitionClass::distinct_evens()));  // 2 repeats
    Partition oddrep{{3, 3, 3, 2}};
    CHECK(in_class(oddrep, PartitionClass::distinct_evens()));
}

TEST_CASE("enumeration counts") {
    static const long long pn[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n)
        CHECK(enumerate_partitions(n, PartitionClass::all()).size() ==
              static_cast<size_t>(pn[n]));

    // Euler: distinct and odd classes are equinumerous
    for (int n = 0; n <= 20; ++n)
        CHECK(enumerate_partitions(n, PartitionClass::distinct()).size() ==
              enumerate_partitions(n, PartitionClass::odd()).size());

    CHECK(enumerate_partitions(5, PartitionClass::distinct_exactly(2)).size() == 2);
    CHECK_THROWS_AS(enumerate_partitions(kEnumerationCap + 1, PartitionClass::all()),
                    series_error);
}

TEST_CASE("class series match the product generating functions") {
    int ord = 22;
    CHECK(class_series(PartitionClass::all(), WeightId::One, ord) == pn_gen(ord));
    CHECK(class_series(PartitionClass::distinct(), WeightId::One, ord) == dist_gen(ord));
    CHECK(class_series(PartitionClass::odd(), WeightId::One, ord) == odd_inv_gen(ord));

    // weight algebra: rank + parity + 2*count = largest + count + parity
    QSeries lhs = qs_add(class_series(PartitionClass::distinct(), WeightId::RankPlusParity, ord),
                         qs_scale(2, class_series(PartitionClass::distinct(), WeightId::NumParts, ord)));
    CHECK(lhs == class_series(PartitionClass::distinct(), WeightId::LargestPlusPartsPlusParity, ord));

    // number of parts over all partitions, checked against the Lambert form
    QSeries parts = class_series(PartitionClass::all(), WeightId::NumParts, ord);
    CHECK(parts == qs_mul(pn_gen(ord), lambert_sum(1, 0, 1, 1, ord)));

    CHECK_THROWS_AS(class_series(PartitionClass::all(), WeightId::One, kEnumerationCap + 2),
                    series_error);
}

TEST_CASE("rank statistics") {
    for (int n = 0; n <= 18; ++n) {
        auto counts = rank_counts(n);
        long long total = 0;
        long long first_moment = 0;
        for (auto [m, c] : counts) {
            total += c;
            first_moment += m * c;
            auto it = counts.find(-m);
            REQUIRE(it != counts.end());
            CHECK(it->second == c);  // rank symmetry under conjugation
        }
        CHECK(total == static_cast<long long>(
                           enumerate_partitions(n, PartitionClass::all()).size()));
        CHECK(first_moment == 0);
    }

    // alternating rank sums give the mock theta coefficients
    QSeries f = mock_theta_f(21);
    CHECK(class_series(PartitionClass::all(), WeightId::SignedRankParity, 21) == f);

    auto pc = parts_counts(9);
    long long total = 0;
    for (auto [k, c] : pc) total += c;
    CHECK(total == static_cast<long long>(
                       enumerate_partitions(9, PartitionClass::all()).size()));
}

TEST_CASE("pair space") {
    QSeries pares = pair_series(6);
    long long expect[6] = {0, 2, 4, 10, 16, 28};
    for (int i = 0; i < 6; ++i) CHECK(qs_coeff(pares, i) == expect[i]);

    // rebuild all three aggregates from the table
    int nmax = 14;
    auto table = pair_table(nmax);
    QSeries sum(nmax), eps(nmax), sign(nmax);
    for (auto& [w, pairs] : table) {
        for (auto [count1, largest2] : pairs) {
            long long gamma = count1 + largest2;
            sum.c[static_cast<size_t>(w)] += Rational(gamma + (gamma % 2));
            eps.c[static_cast<size_t>(w)] += Rational(gamma);
            sign.c[static_cast<size_t>(w)] += Rational(gamma % 2 ? -1 : 1);
        }
    }
    CHECK(sum == pair_series(nmax));
    CHECK(eps == pair_eps_series(nmax));
    CHECK(sign == pair_sign_series(nmax));
}

TEST_CASE("pair aggregates expand the defining sum") {
    // the pair generating function is (1-t) times the first defining sum, so
    // the epsilon weight equals the sum of j*(omega_j - omega_{j-1})
    int ord = 16;
    TSeries l1 = family_tseries(FamilyId::L1, ord + 2, ord);
    l1.mul_tfactor(1, 1, 0);
    CHECK(pair_eps_series(ord) == epsilon_of_tseries(l1));
}

TEST_CASE("largest plus parts oracle") {
    GaussianCache cache(20);
    for (int n = 0; n <= 10; ++n) CHECK(j_oracle(n, 20) == j_n(n, 20, &cache));
}
