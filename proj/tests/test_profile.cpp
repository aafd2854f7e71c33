#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "vcap/errors.hpp"
#include "vcap/profile.hpp"

using namespace vcap;

TEST_CASE("euclidean profile") {
    const WarpProfile p = WarpProfile::euclidean(3);
    CHECK(p(2.5) == 2.5);
    CHECK(p.derivative(7.0) == doctest::Approx(1.0));
    CHECK(p.pole_at_start());
    CHECK(p.unbounded());
}

TEST_CASE("cylindrical end profile") {
    for (double i : {2.0, 4.0, 8.0}) {
        const WarpProfile p = WarpProfile::cylindrical_end(3, i);
        CHECK(p(i - 0.5) == doctest::Approx(i - 0.5));
        CHECK(p(i + 1.0) == doctest::Approx(i + 1.0));
        CHECK(p(1e6) == i + 1.0);
        CHECK(p.derivative(i) == doctest::Approx(1.0));
        CHECK(p.derivative(i + 1.0) == doctest::Approx(0.0).epsilon(1e-12));
        for (double t = 0.0; t <= 1.0; t += 0.125) {
            const double s = i + t;
            CHECK(p(s) >= i);
            CHECK(p(s) <= i + 1.0 + 1e-12);
        }
    }
}

TEST_CASE("capped neck closes off with a pole") {
    for (double i : {1.0, 2.0, 8.0}) {
        const WarpProfile p = WarpProfile::capped_neck(i);
        CHECK(p.s_min() == -2.0 * i);
        CHECK(p.pole_at_start());
        CHECK(p(-2.0 * i) == 0.0);
        CHECK(p.derivative(-2.0 * i) == doctest::Approx(1.0));
        CHECK(p(0.0) == doctest::Approx(1.0));
        CHECK(p(3.0) == doctest::Approx(std::sqrt(10.0)));
        CHECK(p(-i) == doctest::Approx(std::sqrt(1.0 + i * i)));
        CHECK(p.derivative(-i) == doctest::Approx(-i / std::sqrt(1.0 + i * i)));
        for (int k = 1; k < 200; ++k) CHECK(p(-2.0 * i + k * i / 200.0) > 0.0);
    }
}

TEST_CASE("schwarzschild areal radius against the arclength closed form") {
    const double M = 2.0;
    const WarpProfile p = WarpProfile::schwarzschild(M);
    CHECK(p(0.0) == doctest::Approx(2 * M));
    for (double R : {4.5, 6.0, 20.0, 2000.0}) {
        const double s = oracle::schwarzschild_arclength(M, R);
        CHECK(p(s) == doctest::Approx(R).epsilon(1e-12));
        CHECK(p.derivative(s) == doctest::Approx(std::sqrt(1.0 - 2.0 * M / R)).epsilon(1e-10));
    }
}

TEST_CASE("construction rejects gaps, jumps and sign changes") {
    CHECK_THROWS_AS(WarpProfile(3, {{0.0, 1.0, PowerShape{1.0, 1.0}}, {1.5, kInfinity, ConstantShape{1.0}}}), DomainError);
    CHECK_THROWS_AS(WarpProfile(3, {{0.0, 1.0, PowerShape{1.0, 1.0}}, {1.0, kInfinity, ConstantShape{1.1}}}), DomainError);
    CHECK_THROWS_AS(WarpProfile(3, {{0.0, kInfinity, ConstantShape{-1.0}}}), DomainError);
    CHECK_THROWS_AS(WarpProfile(1, {{0.0, kInfinity, ConstantShape{1.0}}}), DomainError);
    CHECK_NOTHROW(WarpProfile(3, {{0.0, 1.0, PowerShape{1.0, 1.0}}, {1.0, kInfinity, ConstantShape{1.0}}}));
}

TEST_CASE("hermite pieces interpolate their samples") {
    const WarpProfile p(3, {{1.0, 3.0, HermiteShape{{1.0, 2.0, 3.0}, {1.0, 4.0, 9.0}, {}}}});
    CHECK(p(1.0) == doctest::Approx(1.0));
    CHECK(p(2.0) == doctest::Approx(4.0));
    CHECK(p(3.0) == doctest::Approx(9.0));
    // monotone data stays monotone
    double prev = 0.0;
    for (double s = 1.0; s <= 3.0; s += 0.01) {
        CHECK(p(s) >= prev);
        prev = p(s);
    }
}

TEST_CASE("rescaling is a homothety") {
    const WarpProfile p = WarpProfile::neck_half();
    const WarpProfile q = p.rescaled(3.0);
    for (double s : {0.0, 0.5, 4.0, 30.0}) CHECK(q(s) == doctest::Approx(3.0 * p(s / 3.0)));
}

TEST_CASE("json round trip") {
    for (const WarpProfile& p : {WarpProfile::cylindrical_end(4, 3.0), WarpProfile::capped_neck(2.0),
                                 WarpProfile::schwarzschild(1.5), WarpProfile::euclidean(3)}) {
        const nlohmann::json doc = profile_to_json(p);
        const WarpProfile q = profile_from_json(nlohmann::json::parse(doc.dump()));
        CHECK(q.m() == p.m());
        CHECK(profile_to_json(q) == doc);
        for (double t : {0.1, 0.37, 0.9}) {
            const double s = p.s_min() + t * (std::isfinite(p.s_max()) ? p.s_max() - p.s_min() : 20.0);
            CHECK(q(s) == p(s));
        }
    }
}

TEST_CASE("profile documents are validated strictly") {
    auto doc = nlohmann::json::parse(R"({"dimension": 3, "pieces": [{"kind": "power", "range": [0, null],
                                         "params": {"coeff": 1, "exponent": 1}}]})");
    CHECK(profile_from_json(doc)(2.0) == 2.0);
    auto extra = doc;
    extra["colour"] = "red";
    CHECK_THROWS_AS(profile_from_json(extra), ConfigError);
    auto bad_kind = doc;
    bad_kind["pieces"][0]["kind"] = "spline9";
    CHECK_THROWS_AS(profile_from_json(bad_kind), ConfigError);
    auto bad_param = doc;
    bad_param["pieces"][0]["params"]["exponant"] = 2;
    CHECK_THROWS_AS(profile_from_json(bad_param), ConfigError);
    auto no_pieces = doc;
    no_pieces.erase("pieces");
    CHECK_THROWS_AS(profile_from_json(no_pieces), ConfigError);
}
