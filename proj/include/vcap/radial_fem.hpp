#pragma once

#include <string>
#include <vector>

#include "vcap/warped.hpp"

namespace vcap {

enum class Grading { Uniform, Geometric };

/// Strictly increasing nodes t_0 < ... < t_N on [s0, L], N >= 2.
struct RadialGrid {
    std::vector<double> nodes;
    Grading grading = Grading::Uniform;
    double ratio = 1.0;

    static RadialGrid uniform(double a, double b, int elements);
    /// Element lengths grow by `ratio` in (1, 1.5]; the first element is close to `first_step`
    /// and is adjusted so that the last node lands exactly on b.
    static RadialGrid geometric(double a, double b, double ratio, double first_step);
    static RadialGrid from_nodes(std::vector<double> nodes);

    /// Bisects every element; the result is nested in *this.
    RadialGrid refined() const;
    double max_step() const;
    std::size_t elements() const { return nodes.size() - 1; }
    double start() const { return nodes.front(); }
    double end() const { return nodes.back(); }
};

struct FemSolution {
    RadialGrid grid;
    std::vector<double> u;         ///< nodal values on `grid`
    std::vector<double> mirror_u;  ///< nodal values on the shifted grid of an asymmetric second end
    double energy = 0.0;           ///< total over all ends
    double cap_L = 0.0;            ///< energy / gamma
};

enum class BoundaryKind { Dirichlet, Free };

struct EndCondition {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double value = 0.0;
};

/// Minimizes omega * sum_k f(t_{k+1/2})^{m-1} (u_{k+1} - u_k)^2 / (t_{k+1} - t_k) with the
/// given end conditions by a tridiagonal solve. At least one end must be Dirichlet.
FemSolution solve_interval(const WarpProfile& profile, const RadialGrid& grid, EndCondition left, EndCondition right);

/// Truncated condenser: u = 1 at t_0 = s0, u = 0 at t_N = L. Two-ended condensers add the
/// second end as a parallel conductor on the grid translated to start at its own inner radius.
FemSolution solve_radial(const RadialCondenser& condenser, const RadialGrid& grid);

struct ScheduleEntry {
    double L = 0.0;
    std::vector<RadialGrid> levels;  ///< nested, coarse to fine, each from s0 to L
};

/// Geometric grids from s0 to each L with `levels` bisection refinements.
std::vector<ScheduleEntry> make_schedule(const RadialCondenser& condenser, const std::vector<double>& truncation_radii,
                                         int levels = 3, double ratio = 1.05);

struct ConvergenceRow {
    double L = 0.0;
    double h = 0.0;
    double cap = 0.0;
    double energy = 0.0;
};

struct CapacityEstimate {
    double cap = 0.0;
    double error = 0.0;
    /// The truncated resistances did not settle; `cap` is then the smallest truncated
    /// capacity, which bounds the true value from above.
    bool divergent = false;
    std::vector<double> cap_by_L;  ///< mesh-extrapolated truncated capacities
    std::vector<ConvergenceRow> rows;
};

/// Mesh (Richardson, order 2) then truncation (Aitken on resistances 1/cap_L) extrapolation.
/// Throws InconsistencyError when cap_L increases with L beyond round-off.
CapacityEstimate capacity_estimate(const RadialCondenser& condenser, const std::vector<ScheduleEntry>& schedule);

/// Rows as CSV with header `L,h,cap,energy`.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace vcap
