#include "qtails/builders.hpp"

namespace qtails {

static void check_mono(const SignedMonomial& arg) {
    if (arg.sign != 1 && arg.sign != -1) throw series_error("monomial sign must be +1 or -1");
    if (arg.tpow < 0 || arg.qpow < 0) throw series_error("monomial exponents must be nonnegative");
}

QSeries pochhammer(const SignedMonomial& arg, int base_qpow, int n, int qorder) {
    check_mono(arg);
    if (arg.tpow != 0) throw series_error("t-argument Pochhammer requires the t-series variant");
    if (base_qpow < 0) throw series_error("base exponent must be nonnegative");
    QSeries out = QSeries::one(qorder);
    if (n == kInfinity) {
        if (arg.qpow < 1 || base_qpow < 1) throw series_error("non-stabilizing infinite product");
        long long cap = 10LL * qorder;
        long long j = 0;
        for (;; ++j) {
            long long e = arg.qpow + static_cast<long long>(base_qpow) * j;
            if (e >= qorder) break;
            if (j >= cap) throw series_error("non-stabilizing infinite product");
            out.mul_factor(arg.sign, static_cast<int>(e));
        }
        return out;
    }
    if (n < 0) throw series_error("factor count must be nonnegative or infinite");
    for (int j = 0; j < n; ++j) {
        long long e = arg.qpow + static_cast<long long>(base_qpow) * j;
        if (e >= qorder) break;  // remaining factors are 1 mod q^qorder
        // e = 0 means a constant factor (1 - sign)
        if (e == 0) {
            Rational c = 1 - Rational(arg.sign);
            out = qs_scale(c, out);
        } else {
            out.mul_factor(arg.sign, static_cast<int>(e));
        }
    }
    return out;
}

TSeries pochhammer_t(const SignedMonomial& arg, int base_qpow, int n, int qorder, int torder) {
    check_mono(arg);
    if (arg.tpow < 1) throw series_error("t-series Pochhammer requires tpow >= 1");
    if (base_qpow < 0) throw series_error("base exponent must be nonnegative");
    TSeries out = TSeries::one(torder, qorder);
    long long limit;
    if (n == kInfinity) {
        // factor j is (1 - s t^a q^{qpow + base*j}); with base 0 the kept rows
        // keep changing forever, so only a growing q-exponent stabilizes
        if (base_qpow < 1) throw series_error("non-stabilizing infinite product");
        limit = (qorder - arg.qpow + base_qpow - 1) / base_qpow;
        if (limit < 0) limit = 0;
        if (limit > 10LL * qorder) throw series_error("non-stabilizing infinite product");
    } else {
        if (n < 0) throw series_error("factor count must be nonnegative or infinite");
        limit = n;
    }
    for (long long j = 0; j < limit; ++j) {
        long long e = arg.qpow + static_cast<long long>(base_qpow) * j;
        if (e >= qorder) break;  // later exponents only grow
        out.mul_tfactor(arg.sign, arg.tpow, static_cast<int>(e));
    }
    return out;
}

QSeries gaussian_binomial(int n, int m, int qorder) {
    if (qorder <= 0) throw series_error("order must be positive");
    if (m < 0 || m > n) return QSeries(qorder);
    // q-Pascal: [r,k] = [r-1,k-1] + q^k [r-1,k]
    std::vector<QSeries> row(static_cast<size_t>(m) + 1, QSeries(qorder));
    row[0] = QSeries::one(qorder);
    for (int r = 1; r <= n; ++r) {
        int kmax = std::min(r, m);
        for (int k = kmax; k >= 1; --k) {
            QSeries shifted = qs_shift(row[static_cast<size_t>(k)], k);
            row[static_cast<size_t>(k)] = qs_add(row[static_cast<size_t>(k) - 1], shifted);
        }
    }
    return row[static_cast<size_t>(m)];
}

QSeries lambert_sum(int stride, int offset, int denom_sign, int start_n, int qorder) {
    if (qorder <= 0) throw series_error("order must be positive");
    if (denom_sign != 1 && denom_sign != -1) throw series_error("denominator sign must be +1 or -1");
    if (stride <= 0) throw series_error("stride must be positive");
    long long e0 = static_cast<long long>(stride) * start_n + offset;
    if (e0 <= 0) throw series_error("first exponent must be positive");
    QSeries out(qorder);
    for (long long nn = start_n;; ++nn) {
        long long e = stride * nn + offset;
        if (e >= qorder) break;
        // q^e/(1 - s q^e) = sum_{k>=1} s^{k-1} q^{ke}
        int sgn = 1;
        for (long long ke = e; ke < qorder; ke += e) {
            out.c[static_cast<size_t>(ke)] += sgn;
            sgn *= denom_sign;
        }
    }
    return out;
}

EtaQuotient eta_quotient(const EtaQuotientSpec& spec, int qorder) {
    for (size_t i = 0; i < spec.factors.size(); ++i) {
        if (spec.factors[i].first <= 0) throw series_error("eta scale must be positive");
        for (size_t j = i + 1; j < spec.factors.size(); ++j)
            if (spec.factors[i].first == spec.factors[j].first)
                throw series_error("eta scales must be distinct");
    }
    EtaQuotient out{Rational(0), QSeries::one(qorder)};
    for (auto [scale, expo] : spec.factors) {
        out.prefactor_exponent += Rational(static_cast<long long>(scale) * expo, 24);
        if (expo == 0) continue;
        QSeries base = pochhammer(qmono(1, scale), scale, kInfinity, qorder);
        if (expo < 0) base = qs_inv(base);
        for (int r = 0; r < std::abs(expo); ++r) out.series = qs_mul(out.series, base);
    }
    return out;
}

QSeries dist_gen(int qorder) { return pochhammer(qmono(-1, 1), 1, kInfinity, qorder); }
QSeries pn_gen(int qorder) { return qs_inv(pochhammer(qmono(1, 1), 1, kInfinity, qorder)); }
QSeries odd_inv_gen(int qorder) { return qs_inv(pochhammer(qmono(1, 1), 2, kInfinity, qorder)); }

QSeries p_limit(int qorder) {
    return qs_mul(pochhammer(qmono(-1, 2), 2, kInfinity, qorder), odd_inv_gen(qorder));
}

QSeries q_limit(int qorder) {
    return qs_mul(pochhammer(qmono(-1, 1), 2, kInfinity, qorder), odd_inv_gen(qorder));
}

}  // namespace qtails
