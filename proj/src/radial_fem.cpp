#include "vcap/radial_fem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcap/errors.hpp"

namespace vcap {

RadialGrid RadialGrid::uniform(double a, double b, int elements) {
    if (elements < 2 || !(a < b)) throw DomainError("uniform grid needs a < b and >= 2 elements");
    RadialGrid g;
    g.grading = Grading::Uniform;
    g.nodes.resize(static_cast<std::size_t>(elements) + 1);
    for (int k = 0; k <= elements; ++k) g.nodes[k] = a + (b - a) * k / elements;
    g.nodes.back() = b;
    return g;
}

RadialGrid RadialGrid::geometric(double a, double b, double ratio, double first_step) {
    if (!(ratio > 1.0 && ratio <= 1.5)) throw DomainError("geometric grading ratio must lie in (1, 1.5]");
    if (!(a < b) || !(first_step > 0.0)) throw DomainError("geometric grid needs a < b and a positive first step");
    const double length = b - a;
    int n = static_cast<int>(std::ceil(std::log1p(length * (ratio - 1.0) / first_step) / std::log(ratio)));
    n = std::max(n, 2);
    const double h0 = length * (ratio - 1.0) / (std::pow(ratio, n) - 1.0);
    RadialGrid g;
    g.grading = Grading::Geometric;
    g.ratio = ratio;
    g.nodes.reserve(static_cast<std::size_t>(n) + 1);
    g.nodes.push_back(a);
    double h = h0;
    double t = a;
    for (int k = 0; k < n; ++k) {
        t += h;
        h *= ratio;
        g.nodes.push_back(t);
    }
    g.nodes.back() = b;
    return g;
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 3) throw DomainError("grid needs at least 2 elements");
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        if (!(nodes[k] < nodes[k + 1])) throw DomainError("grid nodes must increase strictly");
    }
    RadialGrid g;
    g.nodes = std::move(nodes);
    return g;
}

RadialGrid RadialGrid::refined() const {
    RadialGrid g = *this;
    g.nodes.clear();
    g.nodes.reserve(2 * nodes.size() - 1);
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        g.nodes.push_back(nodes[k]);
        g.nodes.push_back(0.5 * (nodes[k] + nodes[k + 1]));
    }
    g.nodes.push_back(nodes.back());
    return g;
}

double RadialGrid::max_step() const {
    double h = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) h = std::max(h, nodes[k + 1] - nodes[k]);
    return h;
}

FemSolution solve_interval(const WarpProfile& profile, const RadialGrid& grid, EndCondition left, EndCondition right) {
    const auto& t = grid.nodes;
    const std::size_t n = t.size();
    if (n < 3) throw DomainError("solve_interval: grid needs at least 2 elements");
    if (!profile.contains(t.front()) || !profile.contains(t.back())) {
        throw DomainError("solve_interval: grid leaves the profile domain");
    }
    if (left.kind == BoundaryKind::Free && right.kind == BoundaryKind::Free) {
        throw DomainError("solve_interval: at least one end must be Dirichlet");
    }
    const Dimension& dim = profile.dimension();
    const int power = dim.m - 1;

    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (!(profile(t[k]) > 0.0)) throw DomainError("solve_interval: singular weight, f vanishes at an interior node");
    }
    std::vector<double> a(n - 1);  // element conductances
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double w = std::pow(profile(0.5 * (t[k] + t[k + 1])), power);
        if (!(w > 0.0)) throw DomainError("solve_interval: singular weight on an element");
        a[k] = dim.omega * w / (t[k + 1] - t[k]);
    }

    // Tridiagonal system over every node; Dirichlet rows are identities.
    std::vector<double> lower(n, 0.0);
    std::vector<double> diag(n, 0.0);
    std::vector<double> upper(n, 0.0);
    std::vector<double> rhs(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const bool first = (j == 0);
        const bool last = (j + 1 == n);
        if ((first && left.kind == BoundaryKind::Dirichlet) || (last && right.kind == BoundaryKind::Dirichlet)) {
            diag[j] = 1.0;
            rhs[j] = first ? left.value : right.value;
            continue;
        }
        if (!first) {
            lower[j] = -a[j - 1];
            diag[j] += a[j - 1];
        }
        if (!last) {
            upper[j] = -a[j];
            diag[j] += a[j];
        }
    }
    // Thomas algorithm; diagonally dominant with at least one identity row.
    for (std::size_t j = 1; j < n; ++j) {
        const double factor = lower[j] / diag[j - 1];
        diag[j] -= factor * upper[j - 1];
        rhs[j] -= factor * rhs[j - 1];
    }
    std::vector<double> u(n);
    u[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) u[j] = (rhs[j] - upper[j] * u[j + 1]) / diag[j];

    double energy = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double du = u[k + 1] - u[k];
        energy += a[k] * du * du;
    }
    FemSolution sol;
    sol.grid = grid;
    sol.u = std::move(u);
    sol.energy = energy;
    sol.cap_L = energy / dim.gamma;
    return sol;
}

FemSolution solve_radial(const RadialCondenser& condenser, const RadialGrid& grid) {
    condenser.validate();
    if (grid.start() != condenser.s0) throw DomainError("solve_radial: grid must start at s0");
    const EndCondition one{BoundaryKind::Dirichlet, 1.0};
    const EndCondition zero{BoundaryKind::Dirichlet, 0.0};
    FemSolution sol = solve_interval(condenser.profile, grid, one, zero);
    if (condenser.ends == Ends::Two) {
        if (condenser.mirror) {
            RadialGrid shifted = grid;
            for (double& x : shifted.nodes) x = condenser.mirror_s0 + (x - condenser.s0);
            const FemSolution other = solve_interval(*condenser.mirror, shifted, one, zero);
            sol.energy += other.energy;
            sol.mirror_u = other.u;
        } else {
            sol.energy *= 2.0;
        }
        sol.cap_L = sol.energy / condenser.profile.dimension().gamma;
    }
    return sol;
}

std::vector<ScheduleEntry> make_schedule(const RadialCondenser& condenser, const std::vector<double>& truncation_radii,
                                         int levels, double ratio) {
    if (levels < 2) throw DomainError("make_schedule: at least 2 refinement levels");
    const double scale = (condenser.s0 > 0.0) ? condenser.s0 : std::max(1.0, std::abs(condenser.s0));
    std::vector<ScheduleEntry> out;
    for (double L : truncation_radii) {
        ScheduleEntry e;
        e.L = L;
        RadialGrid g = RadialGrid::geometric(condenser.s0, L, ratio, (ratio - 1.0) * scale);
        for (int k = 0; k < levels; ++k) {
            e.levels.push_back(g);
            g = g.refined();
        }
        out.push_back(std::move(e));
    }
    return out;
}

CapacityEstimate capacity_estimate(const RadialCondenser& condenser, const std::vector<ScheduleEntry>& schedule) {
    if (schedule.size() < 3) throw PreconditionError("capacity_estimate: need at least 3 truncation radii");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (schedule[k].levels.size() < 2) throw PreconditionError("capacity_estimate: need >= 2 refinement levels");
        if (k > 0 && !(schedule[k].L > schedule[k - 1].L)) {
            throw PreconditionError("capacity_estimate: truncation radii must increase");
        }
    }

    CapacityEstimate out;
    double mesh_error = 0.0;
    for (const ScheduleEntry& e : schedule) {
        double coarse = 0.0;
        double fine = 0.0;
        for (const RadialGrid& g : e.levels) {
            const FemSolution sol = solve_radial(condenser, g);
            out.rows.push_back({e.L, g.max_step(), sol.cap_L, sol.energy});
            coarse = fine;
            fine = sol.cap_L;
        }
        // Midpoint weights: resistance error is O(h^2) under bisection.
        if (fine <= 0.0 || coarse <= 0.0) {
            out.cap_by_L.push_back(fine);
            continue;
        }
        const double r_fine = 1.0 / fine;
        const double r_coarse = 1.0 / coarse;
        const double cap = 1.0 / (r_fine + (r_fine - r_coarse) / 3.0);
        mesh_error = std::max(mesh_error, std::abs(cap - fine));
        out.cap_by_L.push_back(cap);
    }

    const auto& c = out.cap_by_L;
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (c[k] > c[k - 1] * (1.0 + 1e-8) + 1e-300) {
            throw InconsistencyError("capacity_estimate: truncated capacity increases from L = " +
                                     std::to_string(schedule[k - 1].L) + " to L = " + std::to_string(schedule[k].L) +
                                     "; refine the grids");
        }
    }

    auto aitken = [](double r1, double r2, double r3, bool& stalled) {
        const double d1 = r2 - r1;
        const double d2 = r3 - r2;
        stalled = false;
        if (d1 <= 0.0 || d2 <= 0.0) return r3;
        const double q = d2 / d1;
        if (q >= 0.99) {
            stalled = true;
            return r3;
        }
        return r3 + d2 * q / (1.0 - q);
    };

    const std::size_t n = c.size();
    if (c[n - 1] <= 0.0) {
        out.cap = 0.0;
        out.error = mesh_error;
        return out;
    }
    bool stalled = false;
    const double r_inf = aitken(1.0 / c[n - 3], 1.0 / c[n - 2], 1.0 / c[n - 1], stalled);
    if (stalled) {
        out.divergent = true;
        out.cap = c[n - 1];
        out.error = c[n - 1] + mesh_error;
        return out;
    }
    out.cap = 1.0 / r_inf;
    double trunc_error = std::abs(c[n - 1] - out.cap);
    if (n >= 4 && c[n - 4] > 0.0) {
        bool prev_stalled = false;
        const double r_prev = aitken(1.0 / c[n - 4], 1.0 / c[n - 3], 1.0 / c[n - 2], prev_stalled);
        if (!prev_stalled) trunc_error = std::abs(out.cap - 1.0 / r_prev);
    }
    out.error = trunc_error + mesh_error;
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "L,h,cap,energy\n";
    for (const auto& r : rows) os << r.L << ',' << r.h << ',' << r.cap << ',' << r.energy << '\n';
    return os.str();
}

}  // namespace vcap
