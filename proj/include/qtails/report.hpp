#pragma once
#include "qtails/series.hpp"

#include <optional>
#include <string>

namespace qtails {

struct IdentityReport {
    std::string identity_id;
    int order = 0;
    bool pass = false;
    std::optional<int> first_mismatch;   // valuation of the residual when failing
    QSeries residual{1};                 // LHS - RHS
    std::optional<std::string> matched_correction;
    std::optional<std::string> detail;   // free-form notes (aggregate sub-results)
};

// JSON text per the report schema; residual head limited to 8 coefficients
std::string report_to_json(const IdentityReport& r);

// convenience: build the pass/fail skeleton from a residual series
IdentityReport make_report(const std::string& id, int order, const QSeries& residual);

}  // namespace qtails
