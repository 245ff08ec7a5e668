#include "qtails/quad_field.hpp"

#include "qtails/sequences.hpp"

#include <algorithm>
#include <cmath>

namespace qtails {

IdealCountTable ideal_counts(int max_norm) {
    if (max_norm < 1) throw series_error("ideal_counts requires max_norm >= 1");
    int n = max_norm;
    // smallest prime factor sieve
    std::vector<int> spf(static_cast<size_t>(n) + 1, 0);
    for (int i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (long long j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = i;
    }
    IdealCountTable table;
    table.max_norm = n;
    table.counts.assign(static_cast<size_t>(n) + 1, 0);
    table.counts[1] = 1;
    // local count at one prime power p^k
    auto local = [](int p, int k) -> long long {
        if (p == 2) return 1;
        int r = p % 8;
        if (r == 1 || r == 7) return k + 1;
        return k % 2 == 0 ? 1 : 0;
    };
    for (int m = 2; m <= n; ++m) {
        int p = spf[m];
        int rest = m;
        int k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        table.counts[m] = local(p, k) * table.counts[rest];
    }
    return table;
}

bool element_norm_represented(int m) {
    if (m < 1) return false;
    for (long long y = 0; y <= 2LL * m; ++y) {
        // |x^2 - 2y^2| = m means x^2 = 2y^2 +- m
        for (long long target : {2 * y * y + m, 2 * y * y - m}) {
            if (target < 0) continue;
            long long x = std::llround(std::sqrt(static_cast<double>(target)));
            for (long long xx = std::max(0LL, x - 2); xx <= x + 2; ++xx)
                if (xx * xx == target && xx <= 3LL * m) return true;
        }
    }
    return false;
}

IdentityReport verify_2_5(int qorder) {
    if (qorder < 6) throw series_error("verify_2_5 requires qorder >= 6");
    QSeries e1 = error_series(ErrorKind::E1, qorder);
    IdealCountTable table = ideal_counts(8 * (qorder - 1) + 1);
    QSeries residual(qorder);
    for (int m = 1; m < qorder; ++m) {
        Rational expected = table.counts[static_cast<size_t>(8 * m + 1)];
        if (m % 2) expected = -expected;
        residual.c[static_cast<size_t>(m)] = e1.c[static_cast<size_t>(m)] - expected;
    }
    return make_report("2.5", qorder, residual);
}

}  // namespace qtails
