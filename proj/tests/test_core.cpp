#include <doctest.h>

#include "revdecide/error.hpp"
#include "revdecide/eval_matrix.hpp"
#include "support.hpp"

using namespace revdecide;
using namespace testsupport;

TEST_CASE("level_to_value centers the scale") {
    Scale s(2);
    CHECK(s.levels() == 5);
    CHECK(s.level_to_value(4) == 1.0);
    CHECK(s.level_to_value(5) == 2.0);
    CHECK(s.level_to_value(1) == -2.0);
    for (int tau = 1; tau <= 6; ++tau) {
        CHECK(Scale(tau).level_to_value(tau + 1) == 0.0);
    }
}

TEST_CASE("level_to_value is a strictly increasing bijection onto -tau..tau") {
    for (int tau = 1; tau <= 8; ++tau) {
        Scale s(tau);
        CHECK(s.levels() == 2 * tau + 1);
        double prev = -1e9;
        for (int level = 1; level <= s.levels(); ++level) {
            double v = s.level_to_value(level);
            CHECK(v > prev);
            CHECK(v == static_cast<double>(level - tau - 1));
            prev = v;
        }
        CHECK(s.level_to_value(1) == -tau);
        CHECK(s.level_to_value(s.levels()) == tau);
    }
}

TEST_CASE("level_to_value rejects out-of-range levels and names the review") {
    Scale s(2);
    for (int bad : {0, 6, 7, -1}) {
        try {
            s.level_to_value(bad, "(e3, x2)");
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::range);
            CHECK(e.message().find("(e3, x2)") != std::string::npos);
        }
    }
    CHECK_THROWS_AS(Scale(0), Error);
    CHECK_THROWS_AS(Scale(-3), Error);
}

TEST_CASE("polarity parsing") {
    CHECK(parse_polarity("positive") == Polarity::positive);
    CHECK(parse_polarity("NEGATIVE") == Polarity::negative);
    CHECK(parse_polarity("Neutral") == Polarity::neutral);
    CHECK(parse_polarity("conflict") == Polarity::neutral);
    CHECK_THROWS_AS(parse_polarity("great"), Error);
    CHECK(to_string(Polarity::negative) == "negative");
}

TEST_CASE("matrix get and set by label") {
    // first expert's textual matrix, first row
    auto ite = matrix({{2, NAN, NAN, NAN, NAN, 2}, {2, 2, NAN, NAN, NAN, NAN}});
    CHECK(ite.get(alt("x1"), crit("restaurant")) == 2.0);
    CHECK(ite.get(alt("x1"), crit("location")) == 2.0);
    CHECK_FALSE(ite.get(alt("x1"), crit("food")).has_value());

    ite.set(alt("x2"), crit("drinks"), -1.25);
    CHECK(ite.get(alt("x2"), crit("drinks")) == -1.25);
    ite.set(alt("x2"), crit("drinks"), std::nullopt);
    CHECK_FALSE(ite.get(alt("x2"), crit("drinks")).has_value());
    CHECK(ite.present_count() == 4);
    CHECK(ite.present_in_column(0) == 2);
}

TEST_CASE("matrix errors") {
    EvalMatrix m(alts({"x1", "x2"}), crits({"food", "service"}), Scale(2));
    SUBCASE("unknown label") {
        CHECK_THROWS_AS(m.get(alt("x9"), crit("food")), Error);
        try {
            m.set(alt("x1"), crit("parking"), 1.0);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::lookup);
        }
    }
    SUBCASE("out of range") {
        try {
            m.set(alt("x1"), crit("food"), 2.5);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::range);
        }
        CHECK_THROWS_AS(m.set_at(0, 1, -2.000001), Error);
        CHECK_THROWS_AS(m.set_at(0, 1, NAN), Error);
    }
    SUBCASE("tiny overshoot is clamped") {
        m.set_at(0, 0, 2.0 + 1e-12);
        CHECK(m.at(0, 0) == 2.0);
        m.set_at(0, 0, -2.0 - 1e-12);
        CHECK(m.at(0, 0) == -2.0);
    }
    SUBCASE("duplicate labels") {
        try {
            EvalMatrix dup(alts({"x1", "x1"}), crits({"food"}), Scale(2));
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::duplication);
        }
    }
}

TEST_CASE("preference vector lookup") {
    PreferenceVector fp(alts({"x1", "x2"}), {1.5, std::nullopt}, Scale(2));
    CHECK(fp.get(alt("x1")) == 1.5);
    CHECK_FALSE(fp.get(alt("x2")).has_value());
    CHECK_THROWS_AS(fp.get(alt("x3")), Error);
    CHECK_THROWS_AS(PreferenceVector(alts({"x1"}), {3.0}, Scale(2)), Error);
}

TEST_CASE("error stage is recorded once") {
    Error e(ErrorKind::mapping, "bad label");
    e.set_stage("opinions");
    e.set_stage("weighting");
    CHECK(e.stage() == "opinions");
    CHECK(std::string(e.what()).find("opinions") != std::string::npos);
    CHECK(std::string(e.what()).find("bad label") != std::string::npos);
    CHECK_FALSE(e.is_usage());
    CHECK(Error(ErrorKind::usage, "x").is_usage());
}
