#pragma once

#include "core_moments/fibexpr.hpp"
#include "core_moments/fibfit.hpp"
#include "core_moments/moments.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace core_moments {

inline constexpr const char* kToolVersion = "1.0.0";

enum class ClaimStatus { VerifiedOnRange, ExactIdentity, Limit };

inline const char* to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::VerifiedOnRange: return "verified-on-range";
        case ClaimStatus::ExactIdentity: return "exact-identity";
        case ClaimStatus::Limit: return "limit";
    }
    return "?";
}

inline ClaimStatus claim_status_from_string(const std::string& s) {
    if (s == "verified-on-range") return ClaimStatus::VerifiedOnRange;
    if (s == "exact-identity") return ClaimStatus::ExactIdentity;
    if (s == "limit") return ClaimStatus::Limit;
    throw std::invalid_argument("unknown claim status: " + s);
}

/// One checked claim. `range` records exactly the s- or k-range the claim was
/// confirmed on; no entry ever claims more than that.
struct ReportEntry {
    std::string claim;
    ClaimStatus status = ClaimStatus::VerifiedOnRange;
    std::string range;
    std::string payload;
};

struct ReportDocument {
    std::string tool_version = kToolVersion;
    std::vector<ReportEntry> entries;

    /// Wording guard: results are verified on explicit ranges, never proved.
    void check_wording() const {
        for (const auto& e : entries) {
            if (e.claim.find("proved") != std::string::npos ||
                e.claim.find("proven") != std::string::npos)
                throw std::logic_error("report entries must not claim proof: " + e.claim);
            if (e.range.empty())
                throw std::logic_error("report entry missing its checked range: " + e.claim);
        }
    }
};

// --- FibExpr structured serialization ---------------------------------------

/// { "r_terms": [ [ [num, den], ... ] per s-polynomial ] }, integers as
/// decimal strings.
inline nlohmann::ordered_json fibexpr_to_json(const FibExpr& e) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (int i = 0; i <= e.r_degree(); ++i) {
        nlohmann::ordered_json spoly = nlohmann::ordered_json::array();
        const SPoly& c = e.r_term(i);
        for (int j = 0; j <= c.degree(); ++j) {
            Rational x = c.coeff(j);
            spoly.push_back({numerator(x).str(), denominator(x).str()});
        }
        terms.push_back(std::move(spoly));
    }
    return nlohmann::ordered_json{{"r_terms", std::move(terms)}};
}

inline FibExpr fibexpr_from_json(const nlohmann::json& j) {
    std::vector<SPoly> terms;
    for (const auto& spoly : j.at("r_terms")) {
        std::vector<Rational> coeffs;
        for (const auto& pair : spoly) {
            Integer num(pair.at(0).get<std::string>());
            Integer den(pair.at(1).get<std::string>());
            coeffs.push_back(make_rational(num, den));
        }
        terms.push_back(SPoly::from_coeffs(std::move(coeffs)));
    }
    return FibExpr::from_r_terms(std::move(terms));
}

// --- ReportDocument serialization --------------------------------------------

inline nlohmann::ordered_json report_to_json(const ReportDocument& doc) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : doc.entries) {
        entries.push_back(nlohmann::ordered_json{{"claim", e.claim},
                                                 {"status", to_string(e.status)},
                                                 {"range", e.range},
                                                 {"payload", e.payload}});
    }
    return nlohmann::ordered_json{{"tool_version", doc.tool_version},
                                  {"entries", std::move(entries)}};
}

inline ReportDocument report_from_json(const nlohmann::json& j) {
    ReportDocument doc;
    doc.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& e : j.at("entries")) {
        ReportEntry entry;
        entry.claim = e.at("claim").get<std::string>();
        entry.status = claim_status_from_string(e.at("status").get<std::string>());
        entry.range = e.at("range").get<std::string>();
        entry.payload = e.at("payload").get<std::string>();
        doc.entries.push_back(std::move(entry));
    }
    return doc;
}

inline std::string render_report_text(const ReportDocument& doc) {
    std::ostringstream out;
    out << "moment report (tool " << doc.tool_version << ")\n";
    for (const auto& e : doc.entries) {
        out << "\n[" << to_string(e.status) << "] " << e.claim << "\n";
        out << "  range: " << e.range << "\n";
        out << "  " << e.payload << "\n";
    }
    return out.str();
}

inline std::string render_report_latex(const ReportDocument& doc) {
    std::ostringstream out;
    out << "% moment report (tool " << doc.tool_version << ")\n";
    out << "\\begin{itemize}\n";
    for (const auto& e : doc.entries) {
        out << "\\item " << e.claim << " [" << to_string(e.status) << ", " << e.range << "]\n";
        out << "$$" << e.payload << "$$\n";
    }
    out << "\\end{itemize}\n";
    return out.str();
}

// --- Theorems document --------------------------------------------------------

struct TheoremsOptions {
    int max_k = 2;
    int verify_s_max = 70; // central expressions re-checked on [2, verify_s_max]
    bool latex_payload = false;
    FitOptions fit;
};

/// Runs the full pipeline for k = 1..max_k: raw-moment fits with holdout
/// validation, central-moment expressions re-validated against exact central
/// moments, and standardized-moment limits compared to the normal sequence.
/// Throws FitError / std::runtime_error on any validation failure.
inline ReportDocument build_theorems_document(MomentEngine& engine, const TheoremsOptions& options) {
    if (options.max_k < 1) throw std::invalid_argument("build_theorems_document: max_k must be >= 1");
    ReportDocument doc;

    std::vector<FibExpr> raw_fits(static_cast<std::size_t>(options.max_k) + 1);
    for (int k = 1; k <= options.max_k; ++k) {
        FitResult fit = fit_raw_moment(engine, k, options.fit);
        // Re-check on the full reporting range so the stated range is honest.
        int check_last = std::max(fit.holdout_last, options.verify_s_max);
        ValidationReport check = validate_fit(engine, fit.expr, k, 2, check_last, MomentKind::Raw);
        if (!check.pass)
            throw std::runtime_error("raw moment expression failed at k = " + std::to_string(k) +
                                     ", s = " + std::to_string(check.first_fail_s) + ": expected " +
                                     check.expected + ", got " + check.actual);
        ReportEntry entry;
        entry.claim = k == 1 ? "expectation of the size statistic"
                             : "raw moment of order " + std::to_string(k) + " of the size statistic";
        entry.status = ClaimStatus::VerifiedOnRange;
        entry.range = "s in [2, " + std::to_string(check_last) + "]";
        entry.payload = grouped_fraction_string(fit.expr, options.latex_payload);
        doc.entries.push_back(std::move(entry));
        raw_fits[static_cast<std::size_t>(k)] = std::move(fit.expr);
    }

    std::vector<FibExpr> central(static_cast<std::size_t>(options.max_k) + 1);
    for (int k = 2; k <= options.max_k; ++k) {
        central[static_cast<std::size_t>(k)] = central_moment_expr(k, raw_fits);
        ValidationReport check = validate_fit(engine, central[static_cast<std::size_t>(k)], k, 2,
                                              options.verify_s_max, MomentKind::Central);
        if (!check.pass)
            throw std::runtime_error("central moment expression failed at k = " + std::to_string(k) +
                                     ", s = " + std::to_string(check.first_fail_s) + ": expected " +
                                     check.expected + ", got " + check.actual);
        ReportEntry entry;
        entry.claim = k == 2 ? "variance of the size statistic"
                             : "central moment of order " + std::to_string(k) + " of the size statistic";
        entry.status = ClaimStatus::VerifiedOnRange;
        entry.range = "s in [2, " + std::to_string(options.verify_s_max) + "]";
        entry.payload = grouped_fraction_string(central[static_cast<std::size_t>(k)], options.latex_payload);
        doc.entries.push_back(std::move(entry));
    }

    if (options.max_k >= 2) {
        const FibExpr& variance = central[2];
        for (int k = 2; k <= options.max_k; ++k) {
            LimitResult limit =
                standardized_moment_limit(k, central[static_cast<std::size_t>(k)], variance);
            Integer reference = normal_moment(k);
            bool match = !limit.diverges && limit.value == QuadExt(Rational(reference));
            if (!match)
                throw std::runtime_error("standardized moment limit at k = " + std::to_string(k) +
                                         " is " + limit.to_string() + ", normal reference is " +
                                         reference.str());
            ReportEntry entry;
            entry.claim = "limit of the standardized central moment of order " + std::to_string(k) +
                          ", equal to the normal moment";
            entry.status = ClaimStatus::Limit;
            entry.range = "s -> infinity; ingredient identities verified-on-range for s in [2, " +
                          std::to_string(options.verify_s_max) + "]";
            entry.payload = limit.to_string() + " (normal: " + reference.str() + ")";
            doc.entries.push_back(std::move(entry));
        }
    }

    doc.check_wording();
    return doc;
}

} // namespace core_moments
