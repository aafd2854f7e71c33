#include "vcap/mass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vcap/errors.hpp"
#include "vcap/warped.hpp"

namespace vcap {

AFProfile AFProfile::check(WarpProfile profile, double s_af) {
    if (profile.m() != 3) throw DomainError("AFProfile: mass functionals need a three-dimensional profile");
    if (!profile.unbounded()) throw DomainError("AFProfile: profile must extend to infinity");
    if (!(s_af > 0.0) || !profile.contains(s_af)) throw DomainError("AFProfile: s_af must be a positive radius in the domain");
    AFProfile af{std::move(profile), s_af};
    af.af_check = true;
    double last_dev = 0.0;
    for (int k = 0; k <= 24; ++k) {
        const double s = std::ldexp(s_af, k);
        const double f = af.profile(s);
        if (!(f > 0.0)) af.af_check = false;
        const double dev = std::abs(f / s - 1.0);
        const double slope = std::abs(af.profile.derivative(s) - 1.0);
        if (dev > af.epsilon) {
            af.epsilon = dev;
            af.witness_s = s;
        }
        af.slope_epsilon = std::max(af.slope_epsilon, slope);
        last_dev = std::max(dev, slope);
    }
    if (last_dev > 1e-2) af.af_check = false;
    return af;
}

MassCurve iso_mass_curve(const AFProfile& af, const std::vector<double>& radii) {
    MassCurve curve;
    for (double R : radii) {
        const VolumeArea va = volume_and_boundary(af.profile, R);
        if (!(va.area > 0.0)) throw DomainError("iso_mass_curve: degenerate boundary (zero area)");
        MassPoint p;
        p.R = R;
        p.A = va.area;
        p.V = va.volume;
        p.m_iso = (2.0 / p.A) * (p.V - std::pow(p.A, 1.5) / (6.0 * std::sqrt(std::numbers::pi)));
        curve.points.push_back(p);
    }
    return curve;
}

MassCurve cv_mass_curve(const AFProfile& af, const std::vector<double>& radii, const CapacityFn& capacity) {
    const CapacityFn cap_fn = capacity ? capacity : [](const WarpProfile& p, double R) {
        return radial_capacity({p, R, Ends::One, std::nullopt, 0.0});
    };
    constexpr double pi = std::numbers::pi;
    MassCurve curve;
    for (double R : radii) {
        const VolumeArea va = volume_and_boundary(af.profile, R);
        const double cap = cap_fn(af.profile, R);
        if (!(cap > 0.0)) throw DomainError("cv_mass_curve: zero capacity at R = " + std::to_string(R) + " (non-AF end)");
        MassPoint p;
        p.R = R;
        p.A = va.area;
        p.V = va.volume;
        p.cap = cap;
        p.m_cv = (p.V - (4.0 * pi / 3.0) * cap * cap * cap) / (4.0 * pi * cap * cap);
        p.m_cv_alt = std::cbrt(p.V / (4.0 * pi)) - cap;
        curve.points.push_back(p);
    }
    return curve;
}

MassCurve mass_curve(const AFProfile& af, const std::vector<double>& radii, const CapacityFn& capacity) {
    MassCurve iso = iso_mass_curve(af, radii);
    const MassCurve cv = cv_mass_curve(af, radii, capacity);
    for (std::size_t k = 0; k < iso.points.size(); ++k) {
        iso.points[k].cap = cv.points[k].cap;
        iso.points[k].m_cv = cv.points[k].m_cv;
        iso.points[k].m_cv_alt = cv.points[k].m_cv_alt;
    }
    return iso;
}

namespace {

struct Fit {
    double value = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

Fit fit_inverse(const std::vector<double>& R, const std::vector<double>& y) {
    // y = a + b x with x = 1/R
    const double n = static_cast<double>(R.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < R.size(); ++k) {
        mx += (1.0 / R[k]) / n;
        my += y[k] / n;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < R.size(); ++k) {
        const double dx = 1.0 / R[k] - mx;
        sxx += dx * dx;
        sxy += dx * (y[k] - my);
    }
    Fit f;
    f.slope = sxy / sxx;
    f.value = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t k = 0; k < R.size(); ++k) {
        const double r = y[k] - (f.value + f.slope / R[k]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace

MassExtrapolation extrapolate_mass(const MassCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 4) throw PreconditionError("extrapolate_mass: need at least 4 radii");
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (!(pts[k].R > pts[k - 1].R)) throw PreconditionError("extrapolate_mass: radii must increase");
    }
    if (pts.back().R < 10.0 * pts.front().R) throw PreconditionError("extrapolate_mass: radii must span a decade");

    std::size_t first = 0;
    while (first < pts.size() && pts[first].R < pts.back().R / 10.0) ++first;
    first = std::min(first, pts.size() - 4);

    std::vector<double> R;
    std::vector<double> iso;
    std::vector<double> cv;
    MassExtrapolation out;
    for (std::size_t k = first; k < pts.size(); ++k) {
        if (!std::isfinite(pts[k].m_iso) || !std::isfinite(pts[k].m_cv)) {
            throw InconsistencyError("extrapolate_mass: non-finite mass value at R = " + std::to_string(pts[k].R));
        }
        R.push_back(pts[k].R);
        iso.push_back(pts[k].m_iso);
        cv.push_back(pts[k].m_cv);
    }
    for (const MassPoint& p : pts) out.max_cv_form_gap = std::max(out.max_cv_form_gap, std::abs(p.m_cv - p.m_cv_alt));

    auto judge = [](const Fit& all, const Fit& last4, const std::vector<double>& y, const char* name) {
        double scale = 0.0;
        for (double v : y) scale = std::max(scale, std::abs(v));
        if (all.rms > 0.05 * scale + 1e-9) {
            std::ostringstream os;
            os << "extrapolate_mass: " << name << " tail does not follow value + c/R (rms residual " << all.rms
               << ", value scale " << scale << ")";
            throw InconsistencyError(os.str());
        }
        return all.rms + std::abs(all.value - last4.value);
    };
    const std::vector<double> R4(R.end() - 4, R.end());
    const Fit iso_fit = fit_inverse(R, iso);
    const Fit cv_fit = fit_inverse(R, cv);
    const Fit iso4 = fit_inverse(R4, std::vector<double>(iso.end() - 4, iso.end()));
    const Fit cv4 = fit_inverse(R4, std::vector<double>(cv.end() - 4, cv.end()));
    out.m_iso = iso_fit.value;
    out.m_cv = cv_fit.value;
    out.m_iso_slope = iso_fit.slope;
    out.m_cv_slope = cv_fit.slope;
    out.m_iso_error = judge(iso_fit, iso4, iso, "m_iso");
    out.m_cv_error = judge(cv_fit, cv4, cv, "m_cv");
    return out;
}

}  // namespace vcap
