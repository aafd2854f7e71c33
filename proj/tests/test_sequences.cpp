#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "vcap/errors.hpp"
#include "vcap/sequences.hpp"

using namespace vcap;
constexpr double pi = std::numbers::pi;

TEST_CASE("semicontinuity verdicts") {
    const std::vector<double> zeros{0, 0, 0};
    const std::vector<double> ones{1, 1, 1};
    CHECK(check_semicontinuity(zeros, 1.0, 1e-6).classification == Classification::ConsistentStrictJump);
    CHECK(check_semicontinuity(ones, 1.0, 1e-6).classification == Classification::ConsistentEqual);
    CHECK(check_semicontinuity(ones, 0.0, 1e-6).classification == Classification::Violated);
    // only the tail half counts
    const std::vector<double> early{5, 5, 0, 0};
    CHECK(check_semicontinuity(early, 1.0, 1e-6).limsup_estimate == 0.0);
    const std::vector<double> odd{9, 0, 0.5, 0.2, 0.1};
    CHECK(check_semicontinuity(odd, 1.0, 1e-6).limsup_estimate == 0.5);
    const std::vector<double> two{1, 1};
    CHECK_THROWS_AS(check_semicontinuity(two, 1.0, 1e-6), PreconditionError);
    CHECK(classification_name(Classification::Violated) == "violated");
    CHECK(classification_name(Classification::ConsistentEqual) == "consistent-equal");
    CHECK(classification_name(Classification::ConsistentStrictJump) == "consistent-strict-jump");
}

TEST_CASE("cylindrical ends: capacity jumps up in the limit") {
    const SequenceExperiment ex = run_example1({});
    REQUIRE(ex.rows.size() == 3);
    for (const auto& r : ex.rows) {
        CHECK(r.capacity <= 1e-2);
        CHECK(r.capacity >= 0.0);
        CHECK(*ex.diagnostic("closed_form_i" + std::to_string(r.i)) == 0.0);
        const double ramp = *ex.diagnostic("ramp_energy_i" + std::to_string(r.i));
        CHECK(ramp == doctest::Approx(*ex.diagnostic("ramp_bound_i" + std::to_string(r.i))).epsilon(1e-10));
    }
    CHECK(ex.limit_capacity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ex.verdict.classification == Classification::ConsistentStrictJump);

    Example1Config far;
    far.truncation_radii = {2e2, 2e3, 2e4};
    const SequenceExperiment ex2 = run_example1(far);
    for (std::size_t k = 0; k < ex.rows.size(); ++k) CHECK(ex2.rows[k].capacity < ex.rows[k].capacity);

    Example1Config bad;
    bad.r = 2.0;
    CHECK_THROWS_AS(run_example1(bad), DomainError);
}

TEST_CASE("new end: capacity halves") {
    const SequenceExperiment ex = run_example2({});
    for (const auto& r : ex.rows) CHECK(r.capacity == doctest::Approx(2.0 / pi).epsilon(1e-3));
    CHECK(ex.limit_capacity == doctest::Approx(4.0 / pi).epsilon(1e-10));
    CHECK(*ex.diagnostic("limit_fem") == doctest::Approx(4.0 / pi).epsilon(1e-3));
    CHECK(*ex.diagnostic("ratio_max_deviation") <= 1e-3);
    CHECK(*ex.diagnostic("pole_side_energy_max") <= 1e-12);
    // i -> infinity leaves the capacity unchanged
    for (const auto& r : ex.rows) CHECK(r.capacity == doctest::Approx(ex.rows.front().capacity).epsilon(1e-9));
    CHECK(ex.verdict.classification == Classification::ConsistentStrictJump);
}

TEST_CASE("sheets over a hole: disconnected energy") {
    Example3Config cfg;
    cfg.grid_study = {cfg.h};
    const SequenceExperiment ex = run_example3(cfg);
    for (const auto& r : ex.rows) {
        CHECK(r.capacity == 0.0);
        CHECK(*r.region_measure == *ex.limit_region_measure);
    }
    CHECK(ex.limit_capacity > 0.6);
    CHECK(ex.limit_capacity < 1.0 / std::log(4.0));
    CHECK(ex.verdict.classification == Classification::ConsistentStrictJump);
    CHECK(std::abs(*ex.limit_region_measure - pi) <= 2 * pi * cfg.h);

    Example3Config coarse;
    coarse.h = 0.2;
    CHECK_THROWS_AS(run_example3(coarse), PreconditionError);

    Example3Config close;
    close.rim_radius = 1.5;
    close.grid_study = {close.h};
    const SequenceExperiment w = run_example3(close);
    bool warned = false;
    for (const auto& n : w.notes) warned = warned || n.find("warning") != std::string::npos;
    CHECK(warned);
}

TEST_CASE("thin strip: capacity of order 1/i") {
    Example3Config cfg;
    cfg.strip = true;
    cfg.grid_study = {cfg.h};
    const SequenceExperiment ex = run_example3(cfg);
    for (const auto& r : ex.rows) CHECK(r.capacity > 0.0);
    for (std::size_t k = 1; k < ex.rows.size(); ++k) CHECK(ex.rows[k].capacity < ex.rows[k - 1].capacity);
    CHECK(*ex.diagnostic("strip_exponent") == doctest::Approx(1.0).epsilon(0.15));
    CHECK(ex.verdict.classification == Classification::ConsistentStrictJump);
}

TEST_CASE("cancelling annulus: semicontinuity fails") {
    const SequenceExperiment ex = run_example4({});
    for (const auto& r : ex.rows) CHECK(std::abs(r.capacity - ex.rows.front().capacity) <= 1e-12);
    CHECK(ex.rows.front().capacity > 0.0);
    CHECK(ex.limit_capacity == 0.0);
    CHECK(ex.verdict.classification == Classification::Violated);
}

TEST_CASE("experiments are deterministic") {
    const SequenceExperiment a = run_example4({});
    const SequenceExperiment b = run_example4({});
    for (std::size_t k = 0; k < a.rows.size(); ++k) CHECK(a.rows[k].capacity == b.rows[k].capacity);
    CHECK(a.limit_capacity == b.limit_capacity);
}
