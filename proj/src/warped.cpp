#include "vcap/warped.hpp"

#include <cmath>
#include <string>

#include "vcap/errors.hpp"

namespace vcap {

void RadialCondenser::validate() const {
    auto check = [](const WarpProfile& p, double s, const char* which) {
        if (!p.contains(s) || s == p.s_max()) {
            throw DomainError(std::string(which) + " inner radius outside the profile domain");
        }
        if (p.pole_at_start() && !(s > p.s_min())) {
            throw DomainError(std::string(which) + " inner radius must lie beyond the pole");
        }
    };
    check(profile, s0, "condenser");
    if (ends == Ends::Two && mirror) {
        if (mirror->m() != profile.m()) throw DomainError("mirror end has a different dimension");
        check(*mirror, mirror_s0, "mirror");
    }
}

EndResistance end_resistance(const WarpProfile& profile, double s0, const EndResistanceOptions& opts) {
    if (!profile.unbounded()) throw DomainError("end_resistance: profile is not defined out to infinity");
    if (!profile.contains(s0)) throw DomainError("end_resistance: s0 outside the profile domain");
    if (profile.pole_at_start() && s0 == profile.s_min()) {
        throw DomainError("end_resistance: s0 sits on the pole");
    }

    const int power = profile.m() - 1;
    const auto integrand = [&profile, power](double s) { return std::pow(profile(s), -power); };
    const auto cuts = profile.breakpoints();
    const double base = (s0 > 0.0) ? s0 : std::max(1.0, std::abs(s0));

    EndResistance out;
    double prev = 0.0;
    double prev_ratio = 0.0;
    int stalled = 0;
    double lo = s0;
    for (int k = 0; k < opts.max_windows; ++k) {
        const double hi = s0 + base * (std::ldexp(1.0, k + 1) - 1.0);
        if (!std::isfinite(hi)) break;
        const QuadResult w = integrate(integrand, lo, hi, cuts, opts.quad);
        lo = hi;
        out.value += w.value;
        out.error += w.error;
        out.windows = k + 1;
        if (w.value == 0.0) return out;
        if (k == 0) {
            prev = w.value;
            continue;
        }
        const double ratio = w.value / prev;
        prev = w.value;
        stalled = (ratio >= opts.stall_ratio) ? stalled + 1 : 0;
        if (stalled >= opts.stall_windows) {
            out.value = kInfinity;
            out.error = 0.0;
            out.divergent = true;
            return out;
        }
        if (ratio < opts.stall_ratio && k >= 2) {
            const double tail = w.value * ratio / (1.0 - ratio);
            const bool steady = std::abs(ratio - prev_ratio) <= 1e-2 * ratio;
            if (steady && tail <= 1e-3 * opts.quad.rel_tol * out.value) {
                out.value += tail;
                out.error += tail;
                return out;
            }
        }
        prev_ratio = ratio;
    }
    // Window budget exhausted: add the geometric tail guess and report it as error.
    if (prev_ratio > 0.0 && prev_ratio < 1.0) {
        const double tail = prev * prev_ratio / (1.0 - prev_ratio);
        out.value += tail;
        out.error += tail;
    }
    return out;
}

CapacityValue radial_capacity_detail(const RadialCondenser& condenser, const EndResistanceOptions& opts) {
    condenser.validate();
    const Dimension& dim = condenser.profile.dimension();
    const double scale = dim.omega / dim.gamma;

    auto per_end = [&](const WarpProfile& p, double s0) {
        const EndResistance c = end_resistance(p, s0, opts);
        if (c.divergent) return CapacityValue{0.0, 0.0};
        const double cap = scale / c.value;
        return CapacityValue{cap, cap * c.error / c.value};
    };

    CapacityValue total = per_end(condenser.profile, condenser.s0);
    if (condenser.ends == Ends::Two) {
        const CapacityValue other = condenser.mirror ? per_end(*condenser.mirror, condenser.mirror_s0) : total;
        total.value += other.value;
        total.error += other.error;
    }
    return total;
}

double radial_capacity(const RadialCondenser& condenser, const EndResistanceOptions& opts) {
    return radial_capacity_detail(condenser, opts).value;
}

RampEnergy truncated_ramp_energy(const WarpProfile& profile, double L, const QuadratureOptions& quad) {
    if (!(L > 0.0) || !profile.contains(L) || !profile.contains(2.0 * L)) {
        throw DomainError("truncated_ramp_energy: [L, 2L] must lie in the profile domain");
    }
    const int power = profile.m() - 1;
    const double omega = profile.dimension().omega;
    const auto integrand = [&](double s) { return std::pow(profile(s), power) / (L * L); };
    const QuadResult q = integrate(integrand, L, 2.0 * L, profile.breakpoints(), quad);

    RampEnergy out;
    out.energy = omega * q.value;
    out.error = omega * q.error;
    const Piece& last = profile.pieces().back();
    out.on_cylinder = std::holds_alternative<ConstantShape>(last.shape) && L >= last.start;
    return out;
}

VolumeArea volume_and_boundary(const WarpProfile& profile, double R, const QuadratureOptions& quad) {
    if (profile.m() != 3) {
        throw DomainError("volume_and_boundary: unsupported dimension " + std::to_string(profile.m()) +
                          " (mass functionals are three-dimensional)");
    }
    if (!profile.contains(R)) throw DomainError("volume_and_boundary: R outside the profile domain");
    const double omega = profile.dimension().omega;
    const auto integrand = [&profile](double s) {
        const double f = profile(s);
        return f * f;
    };
    const QuadResult q = integrate(integrand, profile.s_min(), R, profile.breakpoints(), quad);
    const double f = profile(R);
    return VolumeArea{omega * q.value, omega * f * f, omega * q.error};
}

}  // namespace vcap
