#pragma once

#include <string>
#include <vector>

#include "vcap/dimension.hpp"
#include "vcap/space.hpp"

namespace vcap {

/// Discrete condenser: u = 1 on `inner` (K), u = 0 on `outer` (B). The space is not owned.
struct GraphCondenser {
    const FiniteMetricMeasureSpace* space = nullptr;
    std::vector<std::size_t> inner;
    std::vector<std::size_t> outer;
    int m = 2;  ///< dimension used for the gamma_m normalization
};

struct GraphSolverOptions {
    double rel_residual = 1e-12;
    std::size_t direct_below = 2000;  ///< free-node count under which a sparse Cholesky is used
};

enum class GraphSolver { None, Cholesky, ConjugateGradient };

struct GraphPotential {
    std::vector<double> u;
    double raw_energy = 0.0;
    double capacity = 0.0;  ///< raw_energy / gamma_m
    GraphSolver solver = GraphSolver::None;
    std::size_t free_nodes = 0;
    int iterations = 0;
    double max_harmonic_residual = 0.0;  ///< max over free nodes of |sum_j c_ij (u_i - u_j)|
};

/// Minimizes sum_edges c (u_i - u_j)^2 subject to the condenser constraints.
///
/// Free nodes on components meeting both K and B are solved for; components meeting only K
/// are set to 1, every other free node to 0. Throws DomainError for empty K and
/// PreconditionError when K and B overlap.
GraphPotential graph_capacity(const GraphCondenser& condenser, const GraphSolverOptions& opts = {});

std::string solver_name(GraphSolver s);

}  // namespace vcap
