#include "vcap/dimension.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vcap/errors.hpp"

namespace vcap {

double unit_sphere_area(int m) {
    if (m < 2) {
        throw DomainError("unit_sphere_area: dimension must be >= 2, got " + std::to_string(m));
    }
    const double half = 0.5 * static_cast<double>(m);
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

Dimension Dimension::of(int m) {
    Dimension d;
    d.m = m;
    d.omega = unit_sphere_area(m);
    d.gamma = (m == 2) ? 2.0 * std::numbers::pi : static_cast<double>(m - 2) * d.omega;
    return d;
}

}  // namespace vcap
