#include <doctest.h>

#include "qtails/builders.hpp"
#include "qtails/catalog.hpp"
#include "qtails/dsl.hpp"
#include "qtails/sequences.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace qtails;

namespace {

QSeries evq(const std::string& text, int order) {
    return std::get<QSeries>(eval_expression(text, order));
}

const std::string kSigmaScript = "sum(n, 0, inf, q^((n*(n+1))/2) / poch(-q, 1, n))";

}  // namespace

TEST_CASE("pinned evaluation examples") {
    QSeries geo = evq("1/(1-q)", 4);
    QSeries want = QSeries::one(4);
    for (int i = 1; i < 4; ++i) want.c[i] = 1;
    CHECK(geo == want);

    QSeries tailgeo = evq("sum(n, 1, inf, q^n)", 4);
    CHECK(qs_coeff(tailgeo, 0) == 0);
    CHECK(qs_coeff(tailgeo, 1) == 1);
    CHECK(qs_coeff(tailgeo, 2) == 1);
    CHECK(qs_coeff(tailgeo, 3) == 1);

    auto res = run_script_text("assert_eq(qbinom(2, 1), 1 + q)", 10);
    REQUIRE(res.asserts.size() == 1);
    CHECK(res.all_pass);
    CHECK(res.asserts[0].pass);
    CHECK(res.asserts[0].identity_id == "stmt1");

    auto mixed = run_script_text("let a = q\nassert_eq(a, q^2)\ndump(a)", 6);
    REQUIRE(mixed.asserts.size() == 1);
    CHECK_FALSE(mixed.all_pass);
    CHECK_FALSE(mixed.asserts[0].pass);
    REQUIRE(mixed.asserts[0].first_mismatch.has_value());
    CHECK(*mixed.asserts[0].first_mismatch == 1);
    CHECK(mixed.asserts[0].identity_id == "stmt2");
    CHECK(mixed.dumps.size() == 1);
}

TEST_CASE("scripted sums match the native builders") {
    QSeries sig = evq(kSigmaScript, 5);
    CHECK(qs_coeff(sig, 0) == 1);
    CHECK(qs_coeff(sig, 1) == 1);
    CHECK(qs_coeff(sig, 2) == -1);
    CHECK(qs_coeff(sig, 3) == 2);
    CHECK(qs_coeff(sig, 4) == -2);
    CHECK(evq(kSigmaScript, 40) == sigma_series(40));

    CHECK(evq("sum(n, 0, inf, (-1)^n * poch(q,1,n) / poch(-q,1,n) * q^((n*(n+1))/2))", 40) ==
          error_series(ErrorKind::E1, 40));
    CHECK(evq("sum(n, 1, inf, (-1)^n * poch(q,1,n-1) / poch(-q,1,n) * q^((n*(n+1))/2))", 40) ==
          error_series(ErrorKind::E2, 40));
    CHECK(evq("sum(n, 0, inf, q^(n^2) / poch(-q,1,n)^2)", 40) == mock_theta_f(40));

    CHECK(evq("sum(j, 0, 6, sum(k, 0, j, qbinom(j,k) * qbinom(6-k, j) * "
              "q^((j*(j+1))/2 + (k*(k+1))/2)))",
              40) == omega_n(6, 40));
    CHECK(evq("sum(j, 0, 6, sum(k, 0, j, qbinom(j,k) * qbinom(6-k, j) * "
              "q^((j*(j+1))/2 + (k*(k-1))/2)))",
              40) == theta_n(6, 40));

    CHECK(evq("lambert(1, 0, 1, 1)", 5) == lambert_sum(1, 0, 1, 1, 5));
    CHECK(evq("catalog(sigma)", 12) == sigma_series(12));
    CHECK(run_script_text("assert_eq(catalog(sigma), " + kSigmaScript + ")", 30).all_pass);
}

TEST_CASE("unicode minus and integer powers") {
    CHECK(evq("1 \xe2\x88\x92 q", 4) == qs_sub(QSeries::one(4), QSeries::monomial(1, 1, 4)));

    Value p = eval_expression("2^3^2", 2);
    REQUIRE(std::holds_alternative<Rational>(p));
    CHECK(std::get<Rational>(p) == 512);

    QSeries inv = evq("(1-q)^-2", 4);
    CHECK(qs_coeff(inv, 0) == 1);
    CHECK(qs_coeff(inv, 1) == 2);
    CHECK(qs_coeff(inv, 2) == 3);
    CHECK(qs_coeff(inv, 3) == 4);

    CHECK_THROWS_AS(evq("q^-1", 4), series_error);
}

TEST_CASE("t-variable evaluation and the eps weighting") {
    CHECK(run_script_text("assert_eq(1/(1-t), sum(n, 0, inf, t^n))", 8).all_pass);
    CHECK(run_script_text("assert_eq(eps(t^2 * q), 2*q)", 8).all_pass);

    auto res = run_script_text("assert_eq(t, q)", 8);
    REQUIRE(res.asserts.size() == 1);
    CHECK_FALSE(res.all_pass);
    REQUIRE(res.asserts[0].detail.has_value());
    CHECK(res.asserts[0].detail->find("t-power") != std::string::npos);

    // pochhammer with a t-monomial argument builds the t-factor product
    Value v = eval_expression("poch(t, 1, 2)", 6);
    REQUIRE(std::holds_alternative<TSeries>(v));
    TSeries want = TSeries::one(8, 6);
    want.mul_tfactor(1, 1, 0);
    want.mul_tfactor(1, 1, 1);
    CHECK(std::get<TSeries>(v) == want);

    CHECK_THROWS_WITH_AS(eval_expression("eps(q)", 8), "eps expects a series in t", series_error);
}

TEST_CASE("parse errors carry line and column positions") {
    CHECK_THROWS_WITH_AS(parse_script(""),
                         "empty script: expected let, assert_eq, or dump at line 1, column 1",
                         dsl_parse_error);

    auto expect_error = [](const std::string& src, const std::string& fragment, int line, int col) {
        try {
            parse_script(src);
            FAIL_CHECK("no parse error for: " << src);
        } catch (const dsl_parse_error& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
            if (line > 0) CHECK(e.line() == line);
            if (col > 0) CHECK(e.col() == col);
        }
    };
    expect_error("let q = 1", "'q' is a reserved name", 1, 5);
    expect_error("let x = foo(1)", "unknown builtin 'foo'", 1, 9);
    expect_error("let x = poch(q, 1)", "'poch' expects 3 arguments, got 2", 1, 9);
    expect_error("let x = sum(1+1, 0, 2, q)", "sum index must be a name", 1, 9);
    expect_error("let x = catalog(1+1)", "catalog takes a series name", 1, 9);
    expect_error("let x = 1 +", "expected an expression", 1, -1);
    expect_error("let x = poch(", "expected an expression", 1, -1);
    expect_error("let x =\n  poch(", "expected an expression", 2, -1);
    expect_error("let x = $", "unexpected character '$'", 1, 9);
    expect_error("let 1 = 2", "expected a name after let", 1, -1);
    expect_error("foo(q)", "expected let, assert_eq, or dump", 1, 1);

    CHECK_THROWS_AS(parse_expression("1 2"), dsl_parse_error);
}

TEST_CASE("evaluation errors name the statement and the cause") {
    CHECK_THROWS_WITH_AS(run_script_text("let a = 1\nlet b = c + 1", 8),
                         "statement 2: unknown name 'c'", series_error);
    CHECK_THROWS_WITH_AS(evq("q^(1/2)", 8), "non-integer exponent", series_error);
    CHECK_THROWS_WITH_AS(evq("poch(2*q, 1, 3)", 8), "pochhammer argument must be a signed monomial",
                         series_error);
    CHECK_THROWS_WITH_AS(evq("poch(q, 1, 0-1)", 8), "negative pochhammer count", series_error);
    CHECK_THROWS_WITH_AS(evq("sum(n, 0, inf, 1 + q^n)", 8), "sum does not stabilize", series_error);
    CHECK_THROWS_WITH_AS(eval_expression("1/(1-1)", 8), "division by zero", series_error);
    CHECK_THROWS_AS(eval_expression("q", 0), series_error);
    CHECK_THROWS_WITH_AS(run_script_file("/nonexistent/path.qid", 8),
                         "cannot read script: /nonexistent/path.qid", series_error);
}

TEST_CASE("printer round trips are stable") {
    const char* exprs[] = {
        "-q^2*(1+t)/(1 - q)^3 + sum(n,0,inf,(-1)^n*q^(n^2))",
        "q^-2",
        "-(q + t)^2",
        "1 - -q",
        "poch(-q, 1, 5) / pochinf(q, 2)",
        "2^3^2",
        "sum(n, 0, inf, q^((n*(n+1))/2) / poch(-q, 1, n))",
    };
    for (const char* s : exprs) {
        CAPTURE(s);
        std::string p1 = print_expr(parse_expression(s));
        std::string p2 = print_expr(parse_expression(p1));
        CHECK(p1 == p2);
    }

    std::string src =
        "# comment\nlet s = " + kSigmaScript + "\nassert_eq(s, catalog(sigma))\ndump(s)\n";
    Script sc = parse_script(src);
    std::string p1 = print_script(sc);
    std::string p2 = print_script(parse_script(p1));
    CHECK(p1 == p2);
    CHECK(run_script_text(p1, 25).all_pass);
}

TEST_CASE("shipped scripts parse and print round trip") {
    namespace fs = std::filesystem;
    std::vector<fs::path> scripts;
    for (const auto& entry : fs::directory_iterator(QTAILS_SCRIPTS_DIR)) {
        if (entry.path().extension() == ".qid") scripts.push_back(entry.path());
    }
    CHECK(scripts.size() >= 21);
    for (const auto& path : scripts) {
        CAPTURE(path.string());
        std::string text;
        {
            std::ifstream in(path);
            REQUIRE(in.good());
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        Script sc = parse_script(text);
        CHECK(!sc.statements.empty());
        std::string p1 = print_script(sc);
        std::string p2 = print_script(parse_script(p1));
        CHECK(p1 == p2);
    }
}

TEST_CASE("script files reproduce catalog verdicts on a cheap pair") {
    const std::string dir = QTAILS_SCRIPTS_DIR;

    auto pass24 = run_script_file(dir + "/2.24.qid", 20);
    CHECK(pass24.all_pass);
    CHECK(verify_identity("2.24", 20).pass);

    auto fail34 = run_script_file(dir + "/3.4.qid", 20);
    REQUIRE(!fail34.asserts.empty());
    CHECK_FALSE(fail34.all_pass);
    auto catalog34 = verify_identity("3.4", 20);
    CHECK_FALSE(catalog34.pass);
    REQUIRE(fail34.asserts.back().first_mismatch.has_value());
    REQUIRE(catalog34.first_mismatch.has_value());
    CHECK(*fail34.asserts.back().first_mismatch == *catalog34.first_mismatch);
}
