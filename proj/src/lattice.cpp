#include "vcap/lattice.hpp"

#include <cmath>
#include <map>

#include "vcap/errors.hpp"

namespace vcap {

FiniteMetricMeasureSpace build_planar_sheet(const SheetSpec& spec) {
    if (!(spec.h > 0.0) || !std::isfinite(spec.h)) throw DomainError("build_planar_sheet: spacing must be positive");
    const double h = spec.h;
    constexpr double slack = 1e-9;
    const auto i_lo = static_cast<long>(std::ceil(spec.x_min / h - slack));
    const auto i_hi = static_cast<long>(std::floor(spec.x_max / h + slack));
    const auto j_lo = static_cast<long>(std::ceil(spec.y_min / h - slack));
    const auto j_hi = static_cast<long>(std::floor(spec.y_max / h + slack));

    std::vector<MetricPoint> points;
    std::map<std::pair<long, long>, std::size_t> site;
    for (long j = j_lo; j <= j_hi; ++j) {
        for (long i = i_lo; i <= i_hi; ++i) {
            const double x = static_cast<double>(i) * h;
            const double y = static_cast<double>(j) * h;
            const double r2 = x * x + y * y;
            if (spec.outer_radius) {
                const double R = *spec.outer_radius;
                if (r2 > R * R * (1.0 + 1e-12) + 1e-15) continue;
            }
            if (spec.hole) {
                const double dx = x - spec.hole->cx;
                const double dy = y - spec.hole->cy;
                const double R = spec.hole->radius;
                if (dx * dx + dy * dy < R * R * (1.0 - 1e-12)) continue;
            }
            site.emplace(std::make_pair(i, j), points.size());
            points.push_back({spec.prefix + ":" + std::to_string(i) + "," + std::to_string(j), Point3{x, y, spec.height},
                              h * h});
        }
    }
    std::vector<Edge> edges;
    for (const auto& [ij, k] : site) {
        const auto right = site.find({ij.first + 1, ij.second});
        if (right != site.end()) edges.push_back({k, right->second, 1.0});
        const auto up = site.find({ij.first, ij.second + 1});
        if (up != site.end()) edges.push_back({k, up->second, 1.0});
    }
    return FiniteMetricMeasureSpace::ambient(std::move(points), std::move(edges));
}

SheetSpec disk_sheet(double radius, double h, double height, std::string prefix) {
    SheetSpec s;
    s.x_min = s.y_min = -radius;
    s.x_max = s.y_max = radius;
    s.outer_radius = radius;
    s.h = h;
    s.height = height;
    s.prefix = std::move(prefix);
    return s;
}

SheetSpec annulus_sheet(double inner, double outer, double h, double height, std::string prefix) {
    SheetSpec s = disk_sheet(outer, h, height, std::move(prefix));
    s.hole = Disk{0.0, 0.0, inner};
    return s;
}

}  // namespace vcap
