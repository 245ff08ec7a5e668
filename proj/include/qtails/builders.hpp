#pragma once
#include "qtails/series.hpp"

namespace qtails {

// sign * t^tpow * q^qpow, the admissible Pochhammer argument shape
struct SignedMonomial {
    int sign = 1;
    int tpow = 0;
    int qpow = 0;
};

inline SignedMonomial qmono(int sign, int qpow) { return SignedMonomial{sign, 0, qpow}; }
inline SignedMonomial tqmono(int sign, int tpow, int qpow) { return SignedMonomial{sign, tpow, qpow}; }

// n = kInfinity selects the coefficientwise-stabilizing infinite product
inline constexpr int kInfinity = -1;

// prod_{j=0}^{n-1} (1 - arg * q^{base_qpow * j}), truncated at qorder.
QSeries pochhammer(const SignedMonomial& arg, int base_qpow, int n, int qorder);
// t-argument variant; result rows are coefficients of t^0..t^{torder-1}
TSeries pochhammer_t(const SignedMonomial& arg, int base_qpow, int n, int qorder, int torder);

// Gaussian binomial polynomial via the q-Pascal recurrence; 0 when m < 0 or m > n.
QSeries gaussian_binomial(int n, int m, int qorder);

// sum_{n >= start_n} q^{e(n)} / (1 - denom_sign * q^{e(n)}), e(n) = stride*n + offset
QSeries lambert_sum(int stride, int offset, int denom_sign, int start_n, int qorder);

struct EtaQuotientSpec {
    // (scale, exponent) pairs; scales distinct
    std::vector<std::pair<int, int>> factors;
};

struct EtaQuotient {
    Rational prefactor_exponent;  // sum scale*exponent/24, carried separately
    QSeries series;
};

EtaQuotient eta_quotient(const EtaQuotientSpec& spec, int qorder);

// named infinite products used throughout the identity catalog
QSeries dist_gen(int qorder);       // (-q;q)_inf
QSeries pn_gen(int qorder);         // 1/(q;q)_inf
QSeries odd_inv_gen(int qorder);    // 1/(q;q^2)_inf
QSeries p_limit(int qorder);        // (-q^2;q^2)_inf / (q;q^2)_inf
QSeries q_limit(int qorder);        // (-q;q^2)_inf / (q;q^2)_inf

}  // namespace qtails
