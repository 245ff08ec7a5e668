#pragma once
#include "qtails/series.hpp"

#include <functional>

namespace qtails {

struct SeriesFamily {
    std::function<QSeries(int)> approximant;  // a_n at the index n
    QSeries limit{1};                         // F
    int stabilization_cap = 0;                // 0 selects the default 4*qorder
};

// sum over n >= 0 of (F - a_n); stops once the difference has valuation >= qorder
// for 5 consecutive indices, errors at the cap
QSeries tails_sum(const SeriesFamily& family, int qorder);

// sum over n >= 1 of n*(a_n - a_{n-1}) with the same stabilization rule
QSeries epsilon_limit(const std::function<QSeries(int)>& tcoeff, int qorder,
                      int stabilization_cap = 0);

// sum of j*rows[j]: the same operator applied to an already-expanded t-series
QSeries epsilon_of_tseries(const TSeries& f);

}  // namespace qtails
