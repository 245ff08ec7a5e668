#include "qtails/tails.hpp"

namespace qtails {

namespace {
constexpr int kStableWindow = 5;
}

QSeries tails_sum(const SeriesFamily& family, int qorder) {
    if (qorder <= 0) throw series_error("order must be positive");
    int cap = family.stabilization_cap > 0 ? family.stabilization_cap : 4 * qorder;
    QSeries acc(qorder);
    int quiet = 0;
    for (int n = 0; n <= cap; ++n) {
        QSeries diff = qs_sub(family.limit, family.approximant(n));
        auto val = qs_valuation(diff);
        if (!val.has_value()) {
            if (++quiet >= kStableWindow) return acc;
            continue;
        }
        quiet = 0;
        acc = qs_add(acc, diff);
    }
    throw series_error("family does not stabilize");
}

QSeries epsilon_limit(const std::function<QSeries(int)>& tcoeff, int qorder,
                      int stabilization_cap) {
    if (qorder <= 0) throw series_error("order must be positive");
    int cap = stabilization_cap > 0 ? stabilization_cap : 4 * qorder;
    QSeries acc(qorder);
    QSeries prev = tcoeff(0);
    int quiet = 0;
    for (int n = 1; n <= cap; ++n) {
        QSeries cur = tcoeff(n);
        QSeries diff = qs_sub(cur, prev);
        prev = cur;
        auto val = qs_valuation(diff);
        if (!val.has_value()) {
            if (++quiet >= kStableWindow) return acc;
            continue;
        }
        quiet = 0;
        acc = qs_add(acc, qs_scale(Rational(n), diff));
    }
    throw series_error("family does not stabilize");
}

QSeries epsilon_of_tseries(const TSeries& f) {
    QSeries acc(f.qorder());
    for (int j = 1; j < f.torder(); ++j)
        acc = qs_add(acc, qs_scale(Rational(j), f.rows[static_cast<size_t>(j)]));
    return acc;
}

}  // namespace qtails
