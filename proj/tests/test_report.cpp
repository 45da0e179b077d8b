#include "core_moments/report.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace core_moments;

namespace {

constexpr const char* kExpectationFraction =
    "(5*s^2*F[s+1] - 6*s*F[s] + 7*s*F[s+1] - 6*F[s]) / (50*F[s+1])";

constexpr const char* kVarianceFraction =
    "(20*s^3*F[s]*F[s+1] + 10*s^3*F[s+1]^2 - 27*s^2*F[s]^2 + 33*s^2*F[s]*F[s+1] + "
    "57*s^2*F[s+1]^2 - 54*s*F[s]^2 - 32*s*F[s]*F[s+1] + 65*s*F[s+1]^2 - 27*F[s]^2 - "
    "45*F[s]*F[s+1]) / (1875*F[s+1]^2)";

} // namespace

TEST_CASE("fibexpr JSON round trip") {
    FibExpr e = FibExpr::from_r_terms({
        SPoly::from_coeffs({Rational(0), Rational(7, 50), Rational(1, 10)}),
        SPoly::from_coeffs({Rational(-3, 25), Rational(-3, 25)}),
    });
    auto j = fibexpr_to_json(e);
    CHECK(j.dump() ==
          R"({"r_terms":[[["0","1"],["7","50"],["1","10"]],[["-3","25"],["-3","25"]]]})");
    FibExpr back = fibexpr_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.r_term(0) == e.r_term(0));
    CHECK(back.r_term(1) == e.r_term(1));
}

TEST_CASE("report document JSON round trip") {
    ReportDocument doc;
    doc.entries.push_back({"expectation of the size statistic", ClaimStatus::VerifiedOnRange,
                           "s in [2, 70]", kExpectationFraction});
    doc.entries.push_back({"limit of the standardized central moment of order 4",
                           ClaimStatus::Limit, "s -> infinity", "3 (normal: 3)"});
    doc.check_wording();

    std::string dumped = report_to_json(doc).dump(2);
    ReportDocument parsed = report_from_json(nlohmann::json::parse(dumped));
    CHECK(report_to_json(parsed).dump(2) == dumped);
    CHECK(parsed.tool_version == kToolVersion);
    CHECK(parsed.entries.size() == 2);
    CHECK(parsed.entries[1].status == ClaimStatus::Limit);
}

TEST_CASE("wording guard rejects proof claims and missing ranges") {
    ReportDocument doc;
    doc.entries.push_back({"this identity is proved", ClaimStatus::ExactIdentity, "all s", "x"});
    CHECK_THROWS_AS(doc.check_wording(), std::logic_error);
    doc.entries[0] = {"identity", ClaimStatus::ExactIdentity, "", "x"};
    CHECK_THROWS_AS(doc.check_wording(), std::logic_error);
}

TEST_CASE("theorems document reproduces the closed forms") {
    MomentEngine engine;
    TheoremsOptions options;
    options.max_k = 2;
    ReportDocument doc = build_theorems_document(engine, options);

    REQUIRE(doc.entries.size() == 4); // E[X], E[X^2], Var, limit k=2
    CHECK(doc.entries[0].claim == "expectation of the size statistic");
    CHECK(doc.entries[0].payload == kExpectationFraction);
    CHECK(doc.entries[0].status == ClaimStatus::VerifiedOnRange);
    CHECK(doc.entries[0].range == "s in [2, 70]");

    CHECK(doc.entries[2].claim == "variance of the size statistic");
    CHECK(doc.entries[2].payload == kVarianceFraction);

    CHECK(doc.entries[3].status == ClaimStatus::Limit);
    CHECK(doc.entries[3].payload == "1 (normal: 1)");
}

TEST_CASE("theorems document through k = 4 limits") {
    MomentEngine engine;
    TheoremsOptions options;
    options.max_k = 4;
    ReportDocument doc = build_theorems_document(engine, options);
    // 4 raw fits + 3 central + 3 limits.
    REQUIRE(doc.entries.size() == 10);
    CHECK(doc.entries.back().payload == "3 (normal: 3)");
    std::string text = render_report_text(doc);
    CHECK(text.find("verified-on-range") != std::string::npos);
    CHECK(text.find(kVarianceFraction) != std::string::npos);
    CHECK(text.find("proved") == std::string::npos);
    std::string latex = render_report_latex(doc);
    CHECK(latex.find("\\item") != std::string::npos);
}
