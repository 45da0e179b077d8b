#include "core_moments/moments.hpp"

#include "core_moments/partition.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace core_moments;

namespace {

// Oracle: k-th raw moment as the plain average of |p|^k over the enumerated
// sample space, independent of the recurrence/power-sum pipeline.
Rational raw_moment_by_enumeration(int s, int k) {
    auto sample = enumerate_core_partitions(s);
    Integer total = 0;
    for (const Partition& p : sample)
        total += int_pow(Integer(p.size()), static_cast<unsigned>(k));
    return make_rational(total, Integer(sample.size()));
}

// Reference closed form for the expectation:
//   (5 s^2 F_{s+1} - 6 s F_s + 7 s F_{s+1} - 6 F_s) / (50 F_{s+1}).
Rational expectation_reference(MomentEngine& engine, int s) {
    Integer fs = engine.fibonacci(s), fs1 = engine.fibonacci(s + 1);
    Integer si(s);
    Integer num = 5 * si * si * fs1 - 6 * si * fs + 7 * si * fs1 - 6 * fs;
    return make_rational(num, 50 * fs1);
}

// Reference closed form for the variance: ten-term numerator over 1875 F_{s+1}^2.
Rational variance_reference(MomentEngine& engine, int s) {
    Integer f0 = engine.fibonacci(s), f1 = engine.fibonacci(s + 1);
    Integer si(s);
    Integer s2 = si * si, s3 = si * si * si;
    Integer num = 20 * s3 * f0 * f1 + 10 * s3 * f1 * f1 - 27 * s2 * f0 * f0 +
                  33 * s2 * f0 * f1 + 57 * s2 * f1 * f1 - 54 * si * f0 * f0 -
                  32 * si * f0 * f1 + 65 * si * f1 * f1 - 27 * f0 * f0 - 45 * f0 * f1;
    return make_rational(num, 1875 * f1 * f1);
}

} // namespace

TEST_CASE("raw moments at small s") {
    MomentEngine engine;
    CHECK(engine.raw_moment(2, 1) == Rational(1, 2));
    CHECK(engine.raw_moment(3, 1) == Rational(1));
    CHECK(engine.raw_moment(7, 0) == Rational(1));
    CHECK(engine.raw_moment(4, 2) == Rational(23, 5)); // sizes {0,1,2,3,3}
    CHECK_THROWS_AS(engine.raw_moment(0, 1), std::invalid_argument);
}

TEST_CASE("raw moments equal the enumeration average") {
    MomentEngine engine;
    for (int s = 1; s <= 12; ++s)
        for (int k = 0; k <= 6; ++k) {
            INFO("s=" << s << " k=" << k);
            CHECK(engine.raw_moment(s, k) == raw_moment_by_enumeration(s, k));
        }
}

TEST_CASE("central moments at small s") {
    MomentEngine engine;
    CHECK(engine.central_moment(2, 2) == Rational(1, 4));
    CHECK(engine.central_moment(4, 2) == Rational(34, 25));
    CHECK(engine.central_moment(4, 3) == Rational(-72, 125));
    CHECK(engine.central_moment(4, 4) == Rational(1882, 625));
    CHECK(engine.central_moment(9, 1) == 0);
    CHECK(engine.central_moment(9, 0) == 1);
}

TEST_CASE("central moment identity against raw moments") {
    MomentEngine engine;
    for (int s = 2; s <= 30; ++s) {
        Rational mu = engine.raw_moment(s, 1);
        CHECK(engine.central_moment(s, 2) == engine.raw_moment(s, 2) - mu * mu);
    }
}

TEST_CASE("closed-form references for expectation and variance") {
    MomentEngine engine;
    for (int s = 2; s <= 40; ++s) {
        INFO("s=" << s);
        CHECK(engine.raw_moment(s, 1) == expectation_reference(engine, s));
        CHECK(engine.variance(s) == variance_reference(engine, s));
    }
}

TEST_CASE("standardized moments") {
    MomentEngine engine;
    CHECK(engine.standardized_moment(5, 2).value == Rational(1));
    CHECK(engine.standardized_moment(5, 2).squared == false);
    CHECK(engine.standardized_moment(4, 1).sign == 0);
    CHECK(engine.standardized_moment(4, 1).value == 0);

    // s=4: central_4 / var^2 = (1882/625) / (34/25)^2 = 941/578.
    auto k4 = engine.standardized_moment(4, 4);
    CHECK(k4.squared == false);
    CHECK(k4.value == Rational(941, 578));

    // Odd k: only the square is rational. central_3^2 / var^3 = 648/4913.
    auto k3 = engine.standardized_moment(4, 3);
    CHECK(k3.squared == true);
    CHECK(k3.sign == -1);
    CHECK(k3.value == Rational(648, 4913));

    CHECK_THROWS_AS(engine.standardized_moment(1, 2), std::domain_error);
}

TEST_CASE("moment table shape") {
    MomentEngine engine;
    MomentTable t = engine.moment_table(4, 4);
    CHECK(t.raw[0] == 1);
    CHECK(t.central[0] == 1);
    CHECK(t.central[1] == 0);
    CHECK(t.central[2] == Rational(34, 25));
    CHECK(t.standardized[2].value == 1);
    CHECK(t.raw.size() == 5);
}

TEST_CASE("streaming path beyond the retained table") {
    MomentEngine small(16); // force the streaming route for s > 16
    MomentEngine big(64);
    for (int s : {20, 33}) {
        for (int k = 0; k <= 4; ++k) {
            INFO("s=" << s << " k=" << k);
            CHECK(small.raw_moment(s, k) == big.raw_moment(s, k));
        }
    }
    CHECK_THROWS_AS(small.gs(20), std::invalid_argument);
    CHECK(small.gs(12) == size_gf_by_recurrence(12));
}

TEST_CASE("decimal rendering of standardized moments") {
    MomentEngine engine;
    // -sqrt(648/4913) = -0.3631735...
    auto k3 = engine.standardized_moment(4, 3);
    CHECK(k3.to_decimal_string(6) == "-0.363173");
    auto k2 = engine.standardized_moment(4, 2);
    CHECK(k2.to_decimal_string(4) == "1.0");
}
