// Command-line front end: generating functions, counts, exact moments,
// closed-form fits, normality limits, cross-method verification, and the
// machine-checked theorems report.
//
// Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage error,
// 3 work budget exceeded.

#include "core_moments/fibfit.hpp"
#include "core_moments/genfunc.hpp"
#include "core_moments/moments.hpp"
#include "core_moments/partition.hpp"
#include "core_moments/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace core_moments;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string latex_poly(const QPoly& p) {
    // Same ascending layout as to_string, with brace exponents and no '*'.
    std::string s = p.to_string("q");
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '*') continue;
        if (c == '^') {
            out += "^{";
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) out += s[j++];
            out += "}";
            i = j - 1;
            continue;
        }
        out += c;
    }
    return out;
}

ordered_json poly_json(const QPoly& p) {
    ordered_json coeffs = ordered_json::array();
    for (int n = 0; n <= p.degree(); ++n) coeffs.push_back(p.coeff(n).str());
    return coeffs;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream file(output_path);
        if (!file) throw std::invalid_argument("cannot open output file: " + output_path);
        file << text;
        if (!text.empty() && text.back() != '\n') file << "\n";
    }
}

QPoly compute_gf(int s, const std::string& method, std::uint64_t budget) {
    if (method == "sum") return size_gf_by_sum(s);
    if (method == "closed") return size_gf_closed_form(s);
    if (method == "recurrence") return size_gf_by_recurrence(s);
    if (method == "brute") return size_gf_brute_force(s, BruteVariant::PerimeterFilter, budget);
    throw std::invalid_argument("unknown method: " + method);
}

int run_gf(int s, const std::string& method, const std::string& format, std::uint64_t budget) {
    if (method != "cross-check") {
        QPoly g = compute_gf(s, method, budget);
        if (format == "latex") {
            std::cout << latex_poly(g) << "\n";
        } else if (format == "json") {
            ordered_json j{{"s", s}, {"method", method}, {"coeffs", poly_json(g)}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << g.to_string() << "\n";
        }
        return kExitOk;
    }

    std::vector<std::pair<std::string, QPoly>> results;
    results.emplace_back("sum", size_gf_by_sum(s));
    results.emplace_back("closed", size_gf_closed_form(s));
    results.emplace_back("recurrence", size_gf_by_recurrence(s));
    // Brute force only where the count F_{s+1} fits the budget.
    if (fibonacci(s + 1) <= Integer(budget)) {
        results.emplace_back("brute(perimeter)",
                             size_gf_brute_force(s, BruteVariant::PerimeterFilter, budget));
        results.emplace_back(
            "brute(hook)",
            size_gf_brute_force(s, BruteVariant::HookFilter, budget, results[2].second.degree()));
    }
    bool ok = true;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i].second != results[0].second) {
            ok = false;
            std::cerr << "mismatch: " << results[0].first << " vs " << results[i].first << " at s="
                      << s << ": " << detail::first_difference(results[0].second, results[i].second)
                      << "\n";
        }
    }
    std::cout << results[0].second.to_string() << "\n";
    for (const auto& [name, poly] : results)
        std::cout << "  " << name << ": " << (poly == results[0].second ? "ok" : "MISMATCH") << "\n";
    std::cout << "agreement: " << (ok ? "ok" : "MISMATCH") << "\n";
    return ok ? kExitOk : kExitMismatch;
}

int run_count(int max_s, const std::string& format) {
    bool ok = true;
    ordered_json rows = ordered_json::array();
    std::ostringstream table;
    table << "s\tG_s(1)\tF_{s+1}\tmatch\n";
    Integer fs = 1, fs1 = 1; // F_s, F_{s+1}
    for_each_gs_recurrence(max_s, [&](int s, const QPoly& g) {
        if (s > 1) {
            Integer next = fs + fs1;
            fs = fs1;
            fs1 = next;
        }
        Integer count = g.eval_one();
        bool match = count == fs1;
        ok = ok && match;
        if (format == "json") {
            rows.push_back(ordered_json{{"s", s},
                                        {"count", count.str()},
                                        {"fibonacci", fs1.str()},
                                        {"match", match}});
        } else {
            table << s << "\t" << count << "\t" << fs1 << "\t" << (match ? "ok" : "MISMATCH")
                  << "\n";
        }
    });
    if (format == "json") {
        std::cout << ordered_json{{"max_s", max_s}, {"rows", rows}}.dump(2) << "\n";
    } else {
        std::cout << table.str();
    }
    return ok ? kExitOk : kExitMismatch;
}

int run_moments(int s, int max_k, const std::string& kind, const std::string& format, int digits) {
    MomentEngine engine;
    ordered_json values = ordered_json::array();
    std::ostringstream text;
    for (int k = 0; k <= max_k; ++k) {
        if (kind == "raw" || kind == "central") {
            Rational v = kind == "raw" ? engine.raw_moment(s, k) : engine.central_moment(s, k);
            std::ostringstream val;
            val << v;
            if (format == "json") values.push_back(val.str());
            else text << "k = " << k << ": " << val.str() << "\n";
        } else {
            StandardizedMoment m = engine.standardized_moment(s, k);
            std::ostringstream exact;
            std::ostringstream value;
            value << m.value;
            if (m.squared && m.sign != 0) {
                exact << (m.sign < 0 ? "-" : "") << "sqrt(" << m.value << ")";
            } else {
                exact << (m.squared ? Rational(0) : m.value);
            }
            if (format == "json") {
                values.push_back(ordered_json{{"k", k},
                                              {"sign", m.sign},
                                              {"squared", m.squared},
                                              {"value", value.str()},
                                              {"decimal", m.to_decimal_string(digits)}});
            } else {
                text << "k = " << k << ": " << exact.str() << " ~ " << m.to_decimal_string(digits)
                     << "\n";
            }
        }
    }
    if (format == "json") {
        std::cout << ordered_json{{"s", s}, {"kind", kind}, {"values", values}}.dump(2) << "\n";
    } else {
        std::cout << text.str();
    }
    return kExitOk;
}

int run_fit(int k, const std::string& kind, std::optional<int> degree, int holdout,
            int extra_sample, int verify_max, const std::string& format) {
    MomentEngine engine;
    FitOptions options;
    options.degree = degree;
    options.holdout = holdout;
    options.extra_sample = extra_sample;

    FibExpr expr;
    std::string range;
    int confirmed = 0;
    if (kind == "raw") {
        FitResult fit = fit_raw_moment(engine, k, options);
        int last = std::max(fit.holdout_last, verify_max);
        ValidationReport full = validate_fit(engine, fit.expr, k, 2, last, MomentKind::Raw);
        if (!full.pass) {
            std::cerr << "fit validation failed at s = " << full.first_fail_s << ": expected "
                      << full.expected << ", got " << full.actual << "\n";
            return kExitMismatch;
        }
        expr = std::move(fit.expr);
        range = "s in [2, " + std::to_string(last) + "]";
        confirmed = full.values_confirmed;
    } else {
        std::vector<FibExpr> fits(static_cast<std::size_t>(k) + 1);
        for (int j = 1; j <= k; ++j)
            fits[static_cast<std::size_t>(j)] = fit_raw_moment(engine, j, options).expr;
        expr = central_moment_expr(k, fits);
        ValidationReport full = validate_fit(engine, expr, k, 2, verify_max, MomentKind::Central);
        if (!full.pass) {
            std::cerr << "central expression failed at s = " << full.first_fail_s << ": expected "
                      << full.expected << ", got " << full.actual << "\n";
            return kExitMismatch;
        }
        range = "s in [2, " + std::to_string(verify_max) + "]";
        confirmed = full.values_confirmed;
    }

    if (format == "json") {
        ordered_json j{{"k", k},
                       {"kind", kind},
                       {"identity_confirmed", range},
                       {"values_confirmed", confirmed},
                       {"expr", fibexpr_to_json(expr)},
                       {"text", expr.to_string()},
                       {"grouped", grouped_fraction_string(expr)}};
        std::cout << j.dump(2) << "\n";
    } else if (format == "latex") {
        std::cout << grouped_fraction_string(expr, /*latex=*/true) << "\n";
    } else {
        std::cout << expr.to_string() << "\n";
        std::cout << "grouped: " << grouped_fraction_string(expr) << "\n";
        std::cout << "identity confirmed for all " << range << " (" << confirmed << " values)\n";
    }
    return kExitOk;
}

int run_limits(int max_k, const std::string& format, int digits) {
    MomentEngine engine;
    std::vector<FibExpr> fits(static_cast<std::size_t>(max_k) + 1);
    for (int k = 1; k <= max_k; ++k)
        fits[static_cast<std::size_t>(k)] = fit_raw_moment(engine, k).expr;
    std::vector<FibExpr> central(static_cast<std::size_t>(max_k) + 1);
    for (int k = 2; k <= max_k; ++k)
        central[static_cast<std::size_t>(k)] = central_moment_expr(k, fits);

    bool ok = true;
    ordered_json rows = ordered_json::array();
    std::ostringstream text;
    for (int k = 1; k <= max_k; ++k) {
        // The first standardized central moment is identically zero.
        LimitResult limit;
        if (k >= 2)
            limit = standardized_moment_limit(k, central[static_cast<std::size_t>(k)], central[2]);
        Integer reference = normal_moment(k);
        bool match = !limit.diverges && limit.value == QuadExt(Rational(reference));
        ok = ok && match;
        if (format == "json") {
            rows.push_back(ordered_json{{"k", k},
                                        {"limit", limit.to_string()},
                                        {"normal", reference.str()},
                                        {"match", match}});
        } else {
            text << "k = " << k << ": " << limit.to_string();
            if (!limit.diverges && !limit.value.is_rational())
                text << " ~ " << limit.value.to_decimal_string(digits);
            text << " (normal: " << reference << ") " << (match ? "ok" : "MISMATCH") << "\n";
        }
    }
    if (format == "json") {
        std::cout << ordered_json{{"max_k", max_k}, {"limits", rows}}.dump(2) << "\n";
    } else {
        std::cout << text.str();
    }
    return ok ? kExitOk : kExitMismatch;
}

int run_verify(int max_s, int brute_max, const std::string& format, std::uint64_t budget) {
    VerificationReport report = verify_all_methods(max_s, brute_max, budget);
    if (format == "json") {
        ordered_json checks = ordered_json::array();
        for (const auto& c : report.checks)
            checks.push_back(
                ordered_json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        std::cout << ordered_json{{"max_s", max_s},
                                  {"brute_max", brute_max},
                                  {"all_pass", report.all_pass()},
                                  {"checks", checks}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& c : report.checks) {
            std::cout << (c.pass ? "ok   " : "FAIL ") << c.name;
            if (!c.pass) std::cout << " -- " << c.detail;
            std::cout << "\n";
        }
        std::cout << (report.all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return report.all_pass() ? kExitOk : kExitMismatch;
}

int run_theorems(int max_k, int verify_max, const std::string& format,
                 const std::string& output_path) {
    MomentEngine engine;
    TheoremsOptions options;
    options.max_k = max_k;
    options.verify_s_max = verify_max;
    options.latex_payload = format == "latex";
    ReportDocument doc = build_theorems_document(engine, options);
    std::string rendered;
    if (format == "json") rendered = report_to_json(doc).dump(2);
    else if (format == "latex") rendered = render_report_latex(doc);
    else rendered = render_report_text(doc);
    emit(rendered, output_path);
    return kExitOk;
}

std::uint64_t budget_from_env() {
    const char* env = std::getenv("CORE_MOMENTS_BUDGET");
    if (env == nullptr) return kDefaultWorkBudget;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw std::invalid_argument("CORE_MOMENTS_BUDGET is not a valid integer");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact moments of the size of an (s,s+1)-core partition with distinct parts"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("core-moments ") + kToolVersion);

    int digits = 30;
    app.add_option("--digits", digits, "decimal digits for float renderings")
        ->capture_default_str();
    std::optional<std::uint64_t> budget_flag;
    app.add_option("--budget", budget_flag, "work budget for brute-force enumeration");

    std::string format = "text";

    // gf
    auto* gf = app.add_subcommand("gf", "print the size generating function G_s(q)");
    gf->fallthrough();
    int gf_s = 0;
    std::string gf_method = "recurrence";
    gf->add_option("--s", gf_s, "parameter s")->required();
    gf->add_option("--method", gf_method, "sum|closed|recurrence|brute|cross-check")
        ->check(CLI::IsMember({"sum", "closed", "recurrence", "brute", "cross-check"}))
        ->capture_default_str();
    gf->add_option("--format", format, "text|latex|json")
        ->check(CLI::IsMember({"text", "latex", "json"}));

    // count
    auto* count = app.add_subcommand("count", "check G_s(1) = F_{s+1}");
    count->fallthrough();
    int count_max_s = 0;
    count->add_option("--max-s", count_max_s, "largest s")->required();
    count->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    // moments
    auto* moments = app.add_subcommand("moments", "exact moments at one s");
    moments->fallthrough();
    int mom_s = 0, mom_max_k = 4;
    std::string mom_kind = "raw";
    moments->add_option("--s", mom_s, "parameter s")->required();
    moments->add_option("--max-k", mom_max_k, "largest moment order")->capture_default_str();
    moments->add_option("--kind", mom_kind, "raw|central|standardized")
        ->check(CLI::IsMember({"raw", "central", "standardized"}))
        ->capture_default_str();
    moments->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    // fit
    auto* fit = app.add_subcommand("fit", "closed-form moment expression in s and F_s/F_{s+1}");
    fit->fallthrough();
    int fit_k = 1, fit_holdout = 20, fit_extra = 5, fit_verify_max = 70;
    std::string fit_kind = "raw";
    std::optional<int> fit_degree;
    fit->add_option("--k", fit_k, "moment order")->required();
    fit->add_option("--kind", fit_kind, "raw|central")
        ->check(CLI::IsMember({"raw", "central"}))
        ->capture_default_str();
    fit->add_option("--degree", fit_degree, "fixed polynomial degree bound (default: auto)");
    fit->add_option("--holdout", fit_holdout, "validation points after the sample")
        ->capture_default_str();
    fit->add_option("--extra-sample", fit_extra, "sample rows beyond the unknown count")
        ->capture_default_str();
    fit->add_option("--verify-max", fit_verify_max, "re-check the identity for s up to this bound")
        ->capture_default_str();
    fit->add_option("--format", format, "text|latex|json")
        ->check(CLI::IsMember({"text", "latex", "json"}));

    // limits
    auto* limits = app.add_subcommand("limits", "standardized-moment limits vs the normal law");
    limits->fallthrough();
    int lim_max_k = 10;
    limits->add_option("--max-k", lim_max_k, "largest moment order")->capture_default_str();
    limits->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    // verify
    auto* verify = app.add_subcommand("verify", "cross-check every generating-function route");
    verify->fallthrough();
    int ver_max_s = 40, ver_brute_max = 12;
    verify->add_option("--max-s", ver_max_s, "agreement range for the fast methods")
        ->capture_default_str();
    verify->add_option("--brute-max", ver_brute_max, "agreement range for brute force")
        ->capture_default_str();
    verify->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    // theorems
    auto* theorems = app.add_subcommand("theorems", "emit the full machine-checked report");
    theorems->fallthrough();
    int thm_max_k = 16, thm_verify_max = 70;
    std::string thm_output;
    theorems->add_option("--max-k", thm_max_k, "largest moment order")->capture_default_str();
    theorems->add_option("--verify-max", thm_verify_max, "identity check range")
        ->capture_default_str();
    theorems->add_option("--output", thm_output, "output file (default: stdout)");
    theorems->add_option("--format", format, "text|latex|json")
        ->check(CLI::IsMember({"text", "latex", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        std::uint64_t budget = budget_flag.value_or(budget_from_env());
        if (gf->parsed()) return run_gf(gf_s, gf_method, format, budget);
        if (count->parsed()) return run_count(count_max_s, format);
        if (moments->parsed()) return run_moments(mom_s, mom_max_k, mom_kind, format, digits);
        if (fit->parsed())
            return run_fit(fit_k, fit_kind, fit_degree, fit_holdout, fit_extra, fit_verify_max,
                           format);
        if (limits->parsed()) return run_limits(lim_max_k, format, digits);
        if (verify->parsed()) return run_verify(ver_max_s, ver_brute_max, format, budget);
        if (theorems->parsed()) return run_theorems(thm_max_k, thm_verify_max, format, thm_output);
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "work budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const FitError& e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
}
