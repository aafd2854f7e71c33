#pragma once

#include <optional>
#include <string>

#include "vcap/space.hpp"

namespace vcap {

struct Disk {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 1.0;
};

/// Square lattice of spacing h on the plane z = height. Lattice sites sit at integer
/// multiples of h; a site is kept when it lies in the box, within `outer_radius` of the
/// origin (if set) and not strictly inside `hole` (if set).
struct SheetSpec {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = -1.0;
    double y_max = 1.0;
    std::optional<double> outer_radius;
    std::optional<Disk> hole;
    double h = 0.1;
    double height = 0.0;
    std::string prefix = "p";
};

/// Five-point-stencil sheet: weight h^2 per site, conductance 1 per lattice edge.
/// Sites are labelled `<prefix>:<i>,<j>`. An empty result is legal; callers decide
/// whether to warn.
FiniteMetricMeasureSpace build_planar_sheet(const SheetSpec& spec);

/// Sheet covering the disk of radius `radius` about the origin.
SheetSpec disk_sheet(double radius, double h, double height, std::string prefix);

/// Sheet covering the annulus inner <= |x| <= outer about the origin.
SheetSpec annulus_sheet(double inner, double outer, double h, double height, std::string prefix);

}  // namespace vcap
