#include "qtails/catalog.hpp"

#include "qtails/builders.hpp"
#include "qtails/sequences.hpp"

#include <json.hpp>

#include <doctest.h>

#include <algorithm>

using namespace qtails;

namespace {

constexpr int kOrd = 40;

const char* kPassing[] = {"1.1", "1.2",  "1.3",  "1.4",  "1.5",    "1.8",    "2.5",
                          "2.12", "2.22", "2.23", "2.24", "3.1",    "3.2",    "lemma2",
                          "lemma3"};
const char* kFailing[] = {"2.7", "2.8", "2.10", "2.13", "3.4", "chain2.14-19"};

}  // namespace

TEST_CASE("catalog enumerates every identity") {
    auto ids = catalog_ids();
    CHECK(ids.size() == 21);
    for (const char* id : kPassing)
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    for (const char* id : kFailing)
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());

    CHECK_THROWS_AS(verify_identity("9.99", kOrd), series_error);
    CHECK_THROWS_AS(verify_identity("1.2", 7), series_error);  // order too small
}

TEST_CASE("identities that hold as printed") {
    for (const char* id : kPassing) {
        IdentityReport r = verify_identity(id, kOrd);
        INFO("id ", id, " detail ", r.detail ? *r.detail : "");
        CHECK(r.pass);
        CHECK(!r.first_mismatch.has_value());
        CHECK(r.residual.is_zero());
        CHECK(r.order == kOrd);
    }
}

TEST_CASE("identities that fail as printed, with their exact residuals") {
    QSeries e2 = error_series(ErrorKind::E2, kOrd);

    auto check_fail = [](const char* id, int mismatch, const QSeries& expected) {
        IdentityReport r = verify_identity(id, kOrd);
        INFO("id ", id);
        CHECK(!r.pass);
        REQUIRE(r.first_mismatch.has_value());
        CHECK(*r.first_mismatch == mismatch);
        CHECK(r.residual == expected);
    };

    // missing n=0 Lambert term: P * q/(1+q)
    QSeries u7 = QSeries::monomial(1, 1, kOrd);
    u7.div_factor(-1, 1);
    check_fail("2.7", 1, qs_mul(p_limit(kOrd), u7));

    // error series entering with the wrong sign: residual -2*E2
    check_fail("2.8", 1, qs_scale(-2, e2));
    check_fail("2.13", 1, qs_scale(-2, e2));

    // middle expression printed with the wrong overall sign: 2*E2(-q)
    check_fail("2.10", 1, qs_scale(2, qs_subst_signed_power(e2, -1, 1)));

    // missing quarter of the partition generating function
    check_fail("3.4", 0, qs_scale(Rational(1, 4), pn_gen(kOrd)));

    // chain breaks where the second Lambert sum drops its n=0 term: P * q/(1-q)
    QSeries uc = QSeries::monomial(1, 1, kOrd);
    uc.div_factor(1, 1);
    check_fail("chain2.14-19", 1, qs_mul(p_limit(kOrd), uc));
}

TEST_CASE("diagnosis finds the unique in-space corrections") {
    auto correction = [](const char* id) {
        IdentityReport r = diagnose_identity(id, kOrd);
        CHECK(!r.pass);
        REQUIRE(r.matched_correction.has_value());
        return *r.matched_correction;
    };

    CHECK(correction("2.7") == "second Lambert sum starts at n=0 (include q/(1+q))");
    CHECK(correction("2.8") == "flip sign of the error-series term");
    CHECK(correction("2.13") == "flip sign of the error-series term");
    CHECK(correction("2.10") == "flip sign of the middle expression");
    CHECK(correction("3.4") == "add (1/4)·1/(q)_∞ to the right side");
    CHECK(correction("chain2.14-19") ==
          "second Lambert sum starts at n=0 (include q/(1-q))");
}

TEST_CASE("diagnosis respects the hypothesis space") {
    HypothesisSpace no_flips;
    no_flips.sign_flips = false;
    IdentityReport r = diagnose_identity("2.13", kOrd, no_flips);
    CHECK(!r.pass);
    CHECK(!r.matched_correction.has_value());

    HypothesisSpace no_shifts;
    no_shifts.index_shifts = false;
    IdentityReport r2 = diagnose_identity("2.7", kOrd, no_shifts);
    CHECK(!r2.matched_correction.has_value());

    // a passing identity reports that there is nothing to diagnose
    IdentityReport ok = diagnose_identity("2.12", kOrd);
    CHECK(ok.pass);
    REQUIRE(ok.detail.has_value());
    CHECK(ok.detail->find("nothing to diagnose") != std::string::npos);
}

TEST_CASE("aggregate identities expose their segments") {
    IdentityReport chain = verify_identity("chain2.14-19", kOrd);
    REQUIRE(chain.detail.has_value());
    CHECK(chain.detail->find("pass") != std::string::npos);
    CHECK(chain.detail->find("fail at q^1") != std::string::npos);

    IdentityReport two10 = verify_identity("2.10", kOrd);
    REQUIRE(two10.detail.has_value());
    CHECK(two10.detail->find("as printed: fail") != std::string::npos);
    CHECK(two10.detail->find("negated: pass") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
    for (const char* id : {"2.13", "1.2", "2.23"}) {
        IdentityReport a = verify_identity(id, kOrd);
        IdentityReport b = verify_identity(id, kOrd);
        CHECK(a.identity_id == b.identity_id);
        CHECK(a.pass == b.pass);
        CHECK(a.first_mismatch == b.first_mismatch);
        CHECK(a.residual == b.residual);
        CHECK(report_to_json(a) == report_to_json(b));
    }
}

TEST_CASE("lemma specializations validate their arguments") {
    // q-monomials only; t powers in the arguments are refused
    CHECK_THROWS_AS(verify_lemma2(tqmono(1, 1, 1), qmono(1, 2), qmono(1, 3), 20),
                    series_error);
    // b = 1 and b = -1 degenerate the transformation
    CHECK_THROWS_WITH_AS(verify_lemma2(qmono(1, 1), qmono(1, 0), qmono(1, 3), 20),
                         "b = 1 degenerates the prefactor", series_error);
    CHECK_THROWS_AS(verify_lemma2(qmono(1, 1), qmono(-1, 0), qmono(1, 3), 20), series_error);
    CHECK_THROWS_AS(verify_lemma3(qmono(1, 1), qmono(1, 0), 20), series_error);  // t = 1

    // a couple of direct instances beyond the catalog set
    CHECK(verify_lemma2(qmono(1, 2), qmono(1, 3), qmono(1, 1), 30).pass);
    CHECK(verify_lemma3(qmono(-1, 2), qmono(1, 2), 30).pass);
    CHECK(verify_lemma3(qmono(0, 0), qmono(1, 1), 30).pass);  // x = 0 degenerates cleanly
}

TEST_CASE("named series registry") {
    CHECK(named_series("sigma", 20) == sigma_series(20));
    CHECK(named_series("E2", 20) == error_series(ErrorKind::E2, 20));
    CHECK(named_series("P", 20) == p_limit(20));
    CHECK(named_series("Q", 20) == q_limit(20));
    CHECK(named_series("pn", 20) == pn_gen(20));
    CHECK_THROWS_AS(named_series("nope", 20), series_error);

    auto ids = named_series_ids();
    CHECK(!ids.empty());
    for (const auto& id : ids) CHECK(named_series(id, 12).order() == 12);
}

TEST_CASE("json reports follow the schema") {
    IdentityReport fail = verify_identity("2.13", kOrd);
    auto j = nlohmann::json::parse(report_to_json(fail));
    CHECK(j["id"] == "2.13");
    CHECK(j["order"] == kOrd);
    CHECK(j["status"] == "fail");
    CHECK(j["first_mismatch"] == 1);
    REQUIRE(j["residual"].is_array());
    CHECK(j["residual"].size() == 8);
    CHECK(j["residual"][1] == "2");
    CHECK(j["correction"].is_null());

    IdentityReport diag = diagnose_identity("2.13", kOrd);
    auto jd = nlohmann::json::parse(report_to_json(diag));
    CHECK(jd["correction"] == "flip sign of the error-series term");

    IdentityReport pass = verify_identity("1.2", kOrd);
    auto jp = nlohmann::json::parse(report_to_json(pass));
    CHECK(jp["status"] == "pass");
    CHECK(jp["first_mismatch"].is_null());

    // rational residual entries print exactly
    IdentityReport frac = make_report("x", 8, QSeries::constant(Rational(1, 2), 8));
    auto jf = nlohmann::json::parse(report_to_json(frac));
    CHECK(jf["residual"][0] == "1/2");
}
