#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vcap/errors.hpp"
#include "vcap/warped.hpp"

using namespace vcap;
constexpr double pi = std::numbers::pi;

namespace {

RadialCondenser one_end(WarpProfile p, double s0) { return {std::move(p), s0, Ends::One, std::nullopt, 0.0}; }

}  // namespace

TEST_CASE("end resistance closed forms") {
    const EndResistance e = end_resistance(WarpProfile::euclidean(3), 1.0);
    CHECK_FALSE(e.divergent);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));

    const EndResistance neck = end_resistance(WarpProfile::neck_half(), 0.0);
    CHECK(neck.value == doctest::Approx(pi / 2).epsilon(1e-10));

    // int_2^inf s^{-3} ds in dimension 4
    CHECK(end_resistance(WarpProfile::euclidean(4), 2.0).value == doctest::Approx(1.0 / 8.0).epsilon(1e-10));

    const EndResistance cyl = end_resistance(WarpProfile::cylindrical_end(3, 2.0), 1.0);
    CHECK(cyl.divergent);
    CHECK(std::isinf(cyl.value));

    // logarithmic divergence in the plane
    CHECK(end_resistance(WarpProfile::euclidean(2), 1.0).divergent);

    const WarpProfile bounded(3, {{0.0, 5.0, PowerShape{1.0, 1.0}}});
    CHECK_THROWS_AS(end_resistance(bounded, 1.0), DomainError);
}

TEST_CASE("euclidean balls have capacity r^(m-2)") {
    for (int m = 3; m <= 8; ++m) {
        for (double r : {0.5, 1.0, 2.0, 3.7}) {
            CHECK(radial_capacity(one_end(WarpProfile::euclidean(m), r)) ==
                  doctest::Approx(std::pow(r, m - 2)).epsilon(1e-10));
        }
    }
}

TEST_CASE("cylindrical end carries no capacity") {
    for (double i : {2.0, 4.0, 8.0}) {
        for (double s0 : {0.5, 1.0, i + 3.0}) CHECK(radial_capacity(one_end(WarpProfile::cylindrical_end(3, i), s0)) == 0.0);
    }
}

TEST_CASE("two-ended neck") {
    const RadialCondenser sym{WarpProfile::neck_half(), 0.0, Ends::Two, std::nullopt, 0.0};
    CHECK(radial_capacity(sym) == doctest::Approx(4.0 / pi).epsilon(1e-10));
    CHECK(radial_capacity(one_end(WarpProfile::neck_half(), 0.0)) == doctest::Approx(2.0 / pi).epsilon(1e-10));

    // asymmetric ends add in parallel: Euclidean end beyond s0 = 1 and a neck end
    const RadialCondenser mixed{WarpProfile::euclidean(3), 1.0, Ends::Two, WarpProfile::neck_half(), 0.0};
    CHECK(radial_capacity(mixed) == doctest::Approx(1.0 + 2.0 / pi).epsilon(1e-10));
}

TEST_CASE("schwarzschild capacity against the harmonic-function closed form") {
    const double M = 2.0;
    const WarpProfile p = WarpProfile::schwarzschild(M);
    for (double R : {5.0, 20.0, 200.0, 2000.0}) {
        const double s = oracle::schwarzschild_arclength(M, R);
        CHECK(radial_capacity(one_end(p, s)) == doctest::Approx(oracle::schwarzschild_capacity(M, R)).epsilon(1e-9));
    }
}

TEST_CASE("capacity vanishes exactly when the end resistance diverges") {
    for (const WarpProfile& p : {WarpProfile::cylindrical_end(3, 2.0), WarpProfile::euclidean(2), WarpProfile::euclidean(3),
                                 WarpProfile::neck_half(), WarpProfile::schwarzschild(1.0)}) {
        const double s0 = 1.5;
        CHECK((radial_capacity(one_end(p, s0)) == 0.0) == end_resistance(p, s0).divergent);
    }
}

TEST_CASE("capacity is nondecreasing in the radius of K") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        // f = a s on [0, 1], then c s^p with p in [0.6, 1.6], rescaled to be continuous
        const double a = 0.5 + u(rng);
        const double p = 0.6 + u(rng);
        const int m = 3 + static_cast<int>(3 * u(rng));
        const WarpProfile prof(m, {{0.0, 1.0, PowerShape{a, 1.0}}, {1.0, kInfinity, PowerShape{a, p}}});
        double s1 = 0.1 + 4 * u(rng);
        double s2 = 0.1 + 4 * u(rng);
        if (s1 > s2) std::swap(s1, s2);
        CHECK(radial_capacity(one_end(prof, s1)) <= radial_capacity(one_end(prof, s2)) * (1 + 1e-12));
    }
}

TEST_CASE("ramp energy of the cutoff function") {
    // Euclidean: (4 pi / L^2) int_L^{2L} s^2 ds = 28 pi L / 3
    for (double L : {1.0, 2.5}) {
        const RampEnergy e = truncated_ramp_energy(WarpProfile::euclidean(3), L);
        CHECK(e.energy == doctest::Approx(28.0 * pi * L / 3.0).epsilon(1e-12));
        CHECK_FALSE(e.on_cylinder);
    }
    // On the cylindrical end the cross-sections have radius i + 1.
    const WarpProfile cyl = WarpProfile::cylindrical_end(3, 2.0);
    const RampEnergy e10 = truncated_ramp_energy(cyl, 10.0);
    CHECK(e10.on_cylinder);
    CHECK(e10.energy == doctest::Approx(4.0 * pi * 9.0 / 10.0).epsilon(1e-12));
    CHECK(truncated_ramp_energy(cyl, 20.0).energy == doctest::Approx(e10.energy / 2).epsilon(1e-12));
    for (double L : {5.0, 50.0, 1e3, 1e5}) {
        CHECK(truncated_ramp_energy(cyl, L).energy * L == doctest::Approx(4.0 * pi * 9.0).epsilon(1e-10));
    }
    // a unit cylinder gives omega / L exactly
    const WarpProfile unit(3, {{1.0, kInfinity, ConstantShape{1.0}}});
    CHECK(truncated_ramp_energy(unit, 7.0).energy == doctest::Approx(4.0 * pi / 7.0).epsilon(1e-12));
    // L inside the bridge: quadrature still answers, flag off
    CHECK_FALSE(truncated_ramp_energy(cyl, 1.2).on_cylinder);
}

TEST_CASE("volume and boundary area") {
    const VolumeArea b1 = volume_and_boundary(WarpProfile::euclidean(3), 1.0);
    CHECK(b1.volume == doctest::Approx(4 * pi / 3).epsilon(1e-13));
    CHECK(b1.area == doctest::Approx(4 * pi).epsilon(1e-13));
    const VolumeArea b2 = volume_and_boundary(WarpProfile::euclidean(3), 2.0);
    CHECK(b2.volume == doctest::Approx(32 * pi / 3).epsilon(1e-13));
    CHECK(b2.area == doctest::Approx(16 * pi).epsilon(1e-13));
    CHECK_THROWS_AS(volume_and_boundary(WarpProfile::euclidean(4), 1.0), DomainError);

    const double M = 1.0;
    const double R = 10.0 * M;
    const VolumeArea s = volume_and_boundary(WarpProfile::schwarzschild(M), oracle::schwarzschild_arclength(M, R));
    CHECK(s.area == doctest::Approx(4 * pi * R * R).epsilon(1e-12));
    CHECK(s.volume == doctest::Approx(oracle::schwarzschild_volume(M, R)).epsilon(1e-10));
}

TEST_CASE("condenser validation") {
    CHECK_THROWS_AS(one_end(WarpProfile::euclidean(3), 0.0).validate(), DomainError);
    CHECK_THROWS_AS(one_end(WarpProfile::euclidean(3), -1.0).validate(), DomainError);
    CHECK_NOTHROW(one_end(WarpProfile::euclidean(3), 0.2).validate());
}
