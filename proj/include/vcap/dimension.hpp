#pragma once

namespace vcap {

/// Hypersurface area of the unit (m-1)-sphere, 2 pi^{m/2} / Gamma(m/2).
/// Throws DomainError for m < 2.
double unit_sphere_area(int m);

/// Manifold dimension together with the constants of the capacity normalization.
struct Dimension {
    int m = 3;
    double omega = 0.0;  ///< area of the unit (m-1)-sphere
    double gamma = 0.0;  ///< (m-2) omega for m >= 3, 2 pi for m = 2

    static Dimension of(int m);
};

}  // namespace vcap
