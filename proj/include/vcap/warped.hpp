#pragma once

#include <optional>

#include "vcap/profile.hpp"
#include "vcap/quadrature.hpp"

namespace vcap {

enum class Ends { One, Two };

/// Capacity problem for K = {s <= s0} in a rotationally symmetric manifold.
///
/// With Ends::Two the manifold has a second end on the other side of K. If `mirror`
/// is empty the second end is the reflection of `profile` (an even warp function);
/// otherwise `mirror` describes it in the reflected coordinate t = -s, with K reaching
/// out to t = mirror_s0.
struct RadialCondenser {
    WarpProfile profile;
    double s0 = 0.0;
    Ends ends = Ends::One;
    std::optional<WarpProfile> mirror;
    double mirror_s0 = 0.0;

    /// Throws DomainError when s0 is not interior to the profile domain.
    void validate() const;
};

struct EndResistanceOptions {
    QuadratureOptions quad;
    /// A window whose integral is at least this fraction of its predecessor counts as non-decaying.
    double stall_ratio = 0.99;
    int stall_windows = 12;
    int max_windows = 1000;
};

struct EndResistance {
    double value = 0.0;  ///< +inf when the tail is non-integrable
    double error = 0.0;
    bool divergent = false;
    int windows = 0;
};

/// C = int_{s0}^inf f(s)^{-(m-1)} ds, summed over doubling windows with a geometric
/// tail correction. Declares divergence after `stall_windows` consecutive non-decaying windows.
EndResistance end_resistance(const WarpProfile& profile, double s0, const EndResistanceOptions& opts = {});

struct CapacityValue {
    double value = 0.0;
    double error = 0.0;
};

/// Closed-form capacity omega/(gamma C) per end, combined in parallel for two ends.
CapacityValue radial_capacity_detail(const RadialCondenser& condenser, const EndResistanceOptions& opts = {});
double radial_capacity(const RadialCondenser& condenser, const EndResistanceOptions& opts = {});

struct RampEnergy {
    double energy = 0.0;
    double error = 0.0;
    bool on_cylinder = false;  ///< [L, 2L] lies inside a terminal constant piece
};

/// Dirichlet energy of the radial ramp that is 1 on s <= L, 2 - s/L on [L, 2L] and 0 beyond.
RampEnergy truncated_ramp_energy(const WarpProfile& profile, double L, const QuadratureOptions& quad = {});

struct VolumeArea {
    double volume = 0.0;
    double area = 0.0;
    double volume_error = 0.0;
};

/// Volume of {s <= R} and area of its boundary sphere; three-dimensional profiles only.
VolumeArea volume_and_boundary(const WarpProfile& profile, double R, const QuadratureOptions& quad = {});

}  // namespace vcap
