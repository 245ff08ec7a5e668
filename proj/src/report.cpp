#include "qtails/report.hpp"

#include <json.hpp>

namespace qtails {

IdentityReport make_report(const std::string& id, int order, const QSeries& residual) {
    IdentityReport r;
    r.identity_id = id;
    r.order = order;
    r.residual = residual;
    auto val = qs_valuation(residual);
    r.pass = !val.has_value();
    if (val) r.first_mismatch = *val;
    return r;
}

std::string report_to_json(const IdentityReport& r) {
    nlohmann::json j;
    j["id"] = r.identity_id;
    j["order"] = r.order;
    j["status"] = r.pass ? "pass" : "fail";
    if (r.first_mismatch)
        j["first_mismatch"] = *r.first_mismatch;
    else
        j["first_mismatch"] = nullptr;
    nlohmann::json head = nlohmann::json::array();
    int n = std::min(8, r.residual.order());
    for (int i = 0; i < n; ++i) {
        const Rational& c = r.residual.c[static_cast<size_t>(i)];
        head.push_back(c.str());
    }
    j["residual"] = head;
    if (r.matched_correction)
        j["correction"] = *r.matched_correction;
    else
        j["correction"] = nullptr;
    if (r.detail) j["detail"] = *r.detail;
    return j.dump(2);
}

}  // namespace qtails
