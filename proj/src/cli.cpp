#include "qtails/cli.hpp"

#include "qtails/builders.hpp"
#include "qtails/catalog.hpp"
#include "qtails/dsl.hpp"
#include "qtails/lvalues.hpp"
#include "qtails/partitions.hpp"
#include "qtails/quad_field.hpp"
#include "qtails/sequences.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace qtails {
namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnstable = 3;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw series_error("cannot write: " + path);
    out << text << "\n";
}

std::string describe(const IdentityReport& r) {
    std::ostringstream os;
    os << r.identity_id << ": " << (r.pass ? "pass" : "fail");
    if (!r.pass && r.first_mismatch) os << " at q^" << *r.first_mismatch;
    os << " (order " << r.order << ")";
    if (r.matched_correction) os << "\n  correction: " << *r.matched_correction;
    if (r.detail) os << "\n  detail: " << *r.detail;
    if (!r.pass) {
        os << "\n  residual head:";
        int n = std::min(8, r.residual.order());
        for (int i = 0; i < n; ++i) os << " " << r.residual.c[static_cast<size_t>(i)].str();
    }
    return os.str();
}

int emit_reports(const std::vector<IdentityReport>& reports, const std::string& json_path) {
    bool all_pass = true;
    for (const auto& r : reports) {
        std::cout << describe(r) << "\n";
        all_pass = all_pass && r.pass;
    }
    if (!json_path.empty()) {
        if (reports.size() == 1) {
            write_text(json_path, report_to_json(reports[0]));
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(nlohmann::json::parse(report_to_json(r)));
            write_text(json_path, arr.dump(2));
        }
    }
    return all_pass ? kExitPass : kExitFail;
}

int run_verify(const std::string& id, const std::string& script, int order,
               const std::string& json_path) {
    if (id.empty() == script.empty()) {
        std::cerr << "verify needs exactly one of --id or --script\n";
        return kExitUsage;
    }
    if (!id.empty()) return emit_reports({verify_identity(id, order)}, json_path);
    ScriptResult res = run_script_file(script, order);
    for (const auto& d : res.dumps) std::cout << d << "\n";
    return emit_reports(res.asserts, json_path);
}

int run_diagnose(const std::string& id, int order, const std::string& json_path) {
    return emit_reports({diagnose_identity(id, order)}, json_path);
}

int run_seq(const std::string& name, int n, int order, const std::string& format) {
    QSeries s(order);
    if (name == "omega") {
        s = omega_n(n, order);
    } else if (name == "theta") {
        s = theta_n(n, order);
    } else if (name == "v") {
        s = v_m(n, order);
    } else if (name == "j") {
        s = j_n(n, order);
    } else {
        std::cerr << "unknown sequence name: " << name << "\n";
        return kExitUsage;
    }
    if (format == "csv") {
        for (int i = 0; i < order; ++i)
            std::cout << (i ? "," : "") << s.c[static_cast<size_t>(i)].str();
        std::cout << "\n";
        return kExitPass;
    }
    nlohmann::json j;
    j["name"] = name;
    j["n"] = n;
    j["order"] = order;
    nlohmann::json coeffs = nlohmann::json::array();
    for (int i = 0; i < order; ++i) coeffs.push_back(s.c[static_cast<size_t>(i)].str());
    j["coeffs"] = coeffs;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

// coefficientwise check of one identity with the partition sides recomputed by
// direct enumeration up to weight max_n
int run_partitions(const std::string& id, int max_n) {
    if (max_n < 0 || max_n > kEnumerationCap) {
        std::cerr << "--max must lie in [0, " << kEnumerationCap << "]\n";
        return kExitUsage;
    }
    int ord = max_n + 1;
    QSeries lhs(ord), rhs(ord);
    if (id == "1.1") {
        lhs = class_series(PartitionClass::distinct(), WeightId::LargestPlusPartsPlusParity, ord);
        rhs = qs_scale(2, class_series(PartitionClass::odd(), WeightId::NumParts, ord));
    } else if (id == "1.3") {
        lhs = qs_add(class_series(PartitionClass::distinct(), WeightId::RankPlusParity, ord),
                     qs_scale(2, class_series(PartitionClass::distinct(), WeightId::NumParts, ord)));
        rhs = qs_scale(2, class_series(PartitionClass::odd(), WeightId::NumParts, ord));
    } else if (id == "1.4") {
        lhs = qs_mul(dist_gen(ord), lambert_sum(2, 0, 1, 1, ord));
        rhs = qs_sub(class_series(PartitionClass::odd(), WeightId::NumParts, ord),
                     class_series(PartitionClass::distinct(), WeightId::NumParts, ord));
    } else if (id == "2.22") {
        lhs = pair_series(ord);
        rhs = qs_scale(2, class_series(PartitionClass::distinct_evens(), WeightId::NumOdd, ord));
    } else {
        std::cerr << "unknown identity for partition checks: " << id << "\n";
        return kExitUsage;
    }
    bool ok = true;
    std::cout << "n,lhs,rhs,status\n";
    for (int n = 0; n <= max_n; ++n) {
        const Rational& a = lhs.c[static_cast<size_t>(n)];
        const Rational& b = rhs.c[static_cast<size_t>(n)];
        bool row_ok = a == b;
        ok = ok && row_ok;
        std::cout << n << "," << a.str() << "," << b.str() << "," << (row_ok ? "ok" : "MISMATCH")
                  << "\n";
    }
    std::cout << (ok ? "all coefficients agree" : "coefficient mismatch") << "\n";
    return ok ? kExitPass : kExitFail;
}

int run_ideals(int max_norm) {
    IdealCountTable table = ideal_counts(max_norm);
    std::cout << "norm,count\n";
    for (int m = 1; m <= table.max_norm; ++m)
        std::cout << m << "," << table.counts[static_cast<size_t>(m)] << "\n";
    return kExitPass;
}

std::string real_str(const Real& x, int digits) {
    return Real(x).str(static_cast<size_t>(digits), std::ios_base::scientific);
}

int run_lvalues(int nmax, int qorder, double tmin, double tmax, int samples, unsigned digits) {
    PrecisionGuard guard(digits);
    Theorem2Params params;
    params.qorder_e2 = qorder;
    params.t1 = tmin;
    params.t2 = tmax;
    params.samples = samples;
    Theorem2Report rep = verify_theorem2(nmax, params);
    std::cout << "n,series_side,theta_side\n";
    for (int n = 0; n <= nmax && n < static_cast<int>(rep.lhat_e2.size()); ++n)
        std::cout << n << "," << real_str(rep.lhat_e2[static_cast<size_t>(n)], 12) << ","
                  << real_str(rep.lhat_theta[static_cast<size_t>(n)], 12) << "\n";
    std::cout << "matched sign: " << rep.matched_sign << "\n";
    std::cout << "max discrepancy (s=+1): " << real_str(rep.diff_plus, 6) << "\n";
    std::cout << "max discrepancy (s=-1): " << real_str(rep.diff_minus, 6) << "\n";
    std::cout << (rep.pass ? "pass" : "fail") << "\n";
    return rep.pass ? kExitPass : kExitFail;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"exact q-series identity workbench"};
    app.require_subcommand(1);

    std::string id, script, json_path;
    int order = 40;
    auto* verify = app.add_subcommand("verify", "verify a catalog identity or a script");
    verify->add_option("--id", id, "catalog identity id");
    verify->add_option("--script", script, "script file (.qid)");
    verify->add_option("--order", order, "truncation order")->required();
    verify->add_option("--json", json_path, "write the JSON report to this path");

    std::string d_id, d_json;
    int d_order = 40;
    auto* diagnose = app.add_subcommand("diagnose", "search for a correction of a failing identity");
    diagnose->add_option("--id", d_id, "catalog identity id")->required();
    diagnose->add_option("--order", d_order, "truncation order")->required();
    diagnose->add_option("--json", d_json, "write the JSON report to this path");

    std::string s_name, s_format = "csv";
    int s_n = 0, s_order = 10;
    auto* seq = app.add_subcommand("seq", "dump a sequence polynomial");
    seq->add_option("--name", s_name, "omega|theta|v|j")->required();
    seq->add_option("--n", s_n, "sequence index")->required();
    seq->add_option("--order", s_order, "truncation order")->required();
    seq->add_option("--format", s_format, "csv|json");

    std::string p_id;
    int p_max = 20;
    auto* partitions = app.add_subcommand("partitions", "enumeration-side identity checks");
    partitions->add_option("--identity", p_id, "1.1|1.3|1.4|2.22")->required();
    partitions->add_option("--max", p_max, "largest weight to enumerate")->required();

    int i_max = 50;
    auto* ideals = app.add_subcommand("ideals", "dump the ideal count table");
    ideals->add_option("--max-norm", i_max, "largest norm")->required();

    int l_nmax = 3, l_qorder = 6000, l_samples = 12;
    double l_tmin = 0.016, l_tmax = 0.0235;
    unsigned l_digits = env_digits();
    auto* lvalues = app.add_subcommand("lvalues", "numeric special-value extraction");
    lvalues->add_option("--nmax", l_nmax, "largest derivative order");
    lvalues->add_option("--qorder", l_qorder, "series truncation order");
    lvalues->add_option("--tmin", l_tmin, "left end of the t window");
    lvalues->add_option("--tmax", l_tmax, "right end of the t window");
    lvalues->add_option("--samples", l_samples, "grid size");
    lvalues->add_option("--digits", l_digits, "working precision in decimal digits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(id, script, order, json_path);
        if (*diagnose) return run_diagnose(d_id, d_order, d_json);
        if (*seq) return run_seq(s_name, s_n, s_order, s_format);
        if (*partitions) return run_partitions(p_id, p_max);
        if (*ideals) return run_ideals(i_max);
        if (*lvalues) return run_lvalues(l_nmax, l_qorder, l_tmin, l_tmax, l_samples, l_digits);
    } catch (const numeric_instability_error& e) {
        std::cerr << "numeric instability: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const dsl_parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const series_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("qtails");
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace qtails
