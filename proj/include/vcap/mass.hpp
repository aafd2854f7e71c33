#pragma once

#include <functional>
#include <vector>

#include "vcap/profile.hpp"

namespace vcap {

/// Three-dimensional profile with an asymptotic-flatness witness: f(s)/s and f'(s)
/// sampled on s_af * 2^k approach 1.
struct AFProfile {
    WarpProfile profile;
    double s_af = 0.0;
    double epsilon = 0.0;        ///< max |f/s - 1| over the samples
    double slope_epsilon = 0.0;  ///< max |f' - 1| over the samples
    double witness_s = 0.0;      ///< sample attaining epsilon
    bool af_check = false;

    /// Throws DomainError unless the profile is three-dimensional and unbounded.
    static AFProfile check(WarpProfile profile, double s_af);
};

struct MassPoint {
    double R = 0.0;
    double A = 0.0;
    double V = 0.0;
    double cap = 0.0;
    double m_iso = 0.0;
    double m_cv = 0.0;
    double m_cv_alt = 0.0;  ///< (V / 4 pi)^{1/3} - cap, kept apart from m_cv
};

struct MassCurve {
    std::vector<MassPoint> points;
};

/// Capacity of {s <= R}; defaults to the closed-form radial capacity at infinity.
using CapacityFn = std::function<double(const WarpProfile&, double)>;

/// Fills R, A, V and m_iso = (2/A) [V - A^{3/2} / (6 sqrt(pi))].
MassCurve iso_mass_curve(const AFProfile& af, const std::vector<double>& radii);

/// Fills cap, m_cv = [V - (4 pi / 3) cap^3] / (4 pi cap^2) and m_cv_alt on an existing curve
/// (or a fresh one when `curve` is empty). Throws DomainError on zero capacity.
MassCurve cv_mass_curve(const AFProfile& af, const std::vector<double>& radii, const CapacityFn& capacity = {});

/// Both quasi-local masses on the same radii.
MassCurve mass_curve(const AFProfile& af, const std::vector<double>& radii, const CapacityFn& capacity = {});

struct MassExtrapolation {
    double m_iso = 0.0;
    double m_cv = 0.0;
    double m_iso_error = 0.0;
    double m_cv_error = 0.0;
    double m_iso_slope = 0.0;  ///< fitted coefficient of 1/R
    double m_cv_slope = 0.0;
    double max_cv_form_gap = 0.0;  ///< max |m_cv - m_cv_alt| over the curve
};

/// Least-squares fit of value + c/R over the tail (radii >= R_max / 10, at least 4 points).
/// Throws PreconditionError for fewer than 4 radii or a span under one decade, and
/// InconsistencyError when the tail does not fit the model.
MassExtrapolation extrapolate_mass(const MassCurve& curve);

}  // namespace vcap
