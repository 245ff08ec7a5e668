#include "qtails/sequences.hpp"

namespace qtails {

const QSeries& GaussianCache::get(int n, int m) {
    if (m < 0 || m > n) return zero_;
    auto key = std::make_pair(n, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    QSeries val = gaussian_binomial(n, m, qorder_);
    return memo_.emplace(key, std::move(val)).first->second;
}

static long long tri(long long n) { return n * (n + 1) / 2; }

// shared shape of the two double sums; inner_exp gives the k-dependent power
template <typename ExpFn>
static QSeries double_sum(int n, int qorder, GaussianCache* cache, ExpFn inner_exp) {
    GaussianCache local(qorder);
    GaussianCache& gb = cache ? *cache : local;
    QSeries acc(qorder);
    for (int j = 0; j <= n; ++j) {
        if (tri(j) >= qorder && j > 0) break;
        for (int k = 0; k <= j; ++k) {
            long long e = tri(j) + inner_exp(k);
            if (e >= qorder) break;
            QSeries term = qs_mul(gb.get(j, k), gb.get(n - k, j));
            if (term.is_zero()) continue;
            acc = qs_add(acc, qs_shift(term, static_cast<int>(e)));
        }
    }
    return acc;
}

QSeries omega_n(int n, int qorder, GaussianCache* cache) {
    if (n < 0) throw series_error("index must be nonnegative");
    return double_sum(n, qorder, cache, [](int k) { return tri(k); });
}

QSeries theta_n(int n, int qorder, GaussianCache* cache) {
    if (n < 0) throw series_error("index must be nonnegative");
    return double_sum(n, qorder, cache, [](int k) { return static_cast<long long>(k) * (k - 1) / 2; });
}

QSeries v_m(int m, int qorder, GaussianCache* cache) {
    if (m < 0) throw series_error("index must be nonnegative");
    GaussianCache local(qorder);
    GaussianCache& gb = cache ? *cache : local;
    QSeries acc(qorder);
    for (int n = 0;; ++n) {
        long long e = tri(n);
        if (e >= qorder) break;
        acc = qs_add(acc, qs_shift(gb.get(n + m, n), static_cast<int>(e)));
    }
    return acc;
}

QSeries j_n(int n, int qorder, GaussianCache* cache) {
    if (n < 0) throw series_error("index must be nonnegative");
    if (n == 0) return QSeries::one(qorder);
    GaussianCache local(qorder);
    GaussianCache& gb = cache ? *cache : local;
    QSeries acc(qorder);
    for (int m = 0; m <= n - 1 && m < qorder; ++m)
        acc = qs_add(acc, qs_shift(gb.get(n - 1, m), m));
    return acc;
}

QSeries sigma_series(int qorder) {
    QSeries acc(qorder);
    QSeries recip = QSeries::one(qorder);  // 1/(-q)_n
    for (int n = 0;; ++n) {
        if (n > 0) recip.div_factor(-1, n);
        long long e = tri(n);
        if (e >= qorder) break;
        acc = qs_add(acc, qs_shift(recip, static_cast<int>(e)));
    }
    return acc;
}

QSeries error_series(ErrorKind which, int qorder) {
    QSeries acc(qorder);
    if (which == ErrorKind::E1) {
        QSeries ratio = QSeries::one(qorder);  // (q)_n/(-q)_n
        for (int n = 0;; ++n) {
            if (n > 0) {
                ratio.mul_factor(1, n);
                ratio.div_factor(-1, n);
            }
            long long e = tri(n);
            if (e >= qorder) break;
            QSeries term = qs_shift(ratio, static_cast<int>(e));
            acc = (n % 2 == 0) ? qs_add(acc, term) : qs_sub(acc, term);
        }
        return acc;
    }
    QSeries ratio = QSeries::one(qorder);  // (q)_{n-1}/(-q)_n
    for (int n = 1;; ++n) {
        ratio.div_factor(-1, n);
        if (n > 1) ratio.mul_factor(1, n - 1);
        long long e = tri(n);
        if (e >= qorder) break;
        QSeries term = qs_shift(ratio, static_cast<int>(e));
        acc = (n % 2 == 0) ? qs_add(acc, term) : qs_sub(acc, term);
    }
    return acc;
}

QSeries mock_theta_f(int qorder) {
    QSeries acc(qorder);
    QSeries recip = QSeries::one(qorder);  // 1/(-q)_n^2
    for (int n = 0;; ++n) {
        if (n > 0) {
            recip.div_factor(-1, n);
            recip.div_factor(-1, n);
        }
        long long e = static_cast<long long>(n) * n;
        if (e >= qorder) break;
        acc = qs_add(acc, qs_shift(recip, static_cast<int>(e)));
    }
    return acc;
}

TSeries family_tseries(FamilyId family, int torder, int qorder) {
    TSeries acc(torder, qorder);
    TSeries base = TSeries::one(torder, qorder);
    base.div_tfactor(1, 1, 0);  // every family starts from 1/(1-t)
    for (int n = 0;; ++n) {
        if (n > 0) {
            switch (family) {
                case FamilyId::L1:
                    base.mul_tfactor(-1, 1, n);
                    base.div_tfactor(1, 1, n);
                    break;
                case FamilyId::L2:
                    base.mul_tfactor(-1, 1, n - 1);
                    base.div_tfactor(1, 1, n);
                    break;
                case FamilyId::FineV:
                    base.div_tfactor(1, 1, n);
                    break;
                case FamilyId::M:
                    base.div_tfactor(1, 1, n);
                    base.div_tfactor(1, 1, n);
                    break;
            }
        }
        long long qshift = (family == FamilyId::M) ? static_cast<long long>(n) * n : tri(n);
        long long tshift = (family == FamilyId::M) ? 2LL * n : (family == FamilyId::FineV ? 0 : n);
        if (qshift >= qorder || tshift >= torder) {
            // FineV terms all sit at t-valuation 0; only the q-shift ends them
            if (family != FamilyId::FineV || qshift >= qorder) break;
        }
        acc = ts_add(acc, ts_shift(base, static_cast<int>(tshift), static_cast<int>(qshift)));
    }
    return acc;
}

QSeries family_tcoeff(FamilyId family, int n, int qorder) {
    if (n < 0) throw series_error("index must be nonnegative");
    TSeries full = family_tseries(family, n + 1, qorder);
    return ts_coeff(full, n);
}

QSeries family_at_minus_one(FamilyId family, int qorder) {
    if (family == FamilyId::L2)
        throw series_error("vanishing-factor anomaly; use error_series(E2)");
    QSeries acc(qorder);
    QSeries base = QSeries::one(qorder);
    Rational half(1, 2);
    for (int n = 0;; ++n) {
        if (n > 0) {
            switch (family) {
                case FamilyId::L1:
                    base.mul_factor(1, n);   // (q)_n grows
                    base.div_factor(-1, n);  // (-q)_n grows
                    break;
                case FamilyId::FineV:
                    base.div_factor(-1, n);
                    break;
                case FamilyId::M:
                    base.div_factor(-1, n);
                    base.div_factor(-1, n);
                    break;
                default:
                    break;
            }
        }
        long long e = (family == FamilyId::M) ? static_cast<long long>(n) * n : tri(n);
        if (e >= qorder) break;
        QSeries term = qs_scale(half, qs_shift(base, static_cast<int>(e)));
        bool negate = (family == FamilyId::L1) && (n % 2 == 1);  // t^n at t=-1
        acc = negate ? qs_sub(acc, term) : qs_add(acc, term);
    }
    return acc;
}

}  // namespace qtails
