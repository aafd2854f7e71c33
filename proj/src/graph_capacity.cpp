#include "vcap/graph_capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "vcap/errors.hpp"

namespace vcap {
namespace {

enum class Role : unsigned char { Free, Inner, Outer };

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

std::string solver_name(GraphSolver s) {
    switch (s) {
        case GraphSolver::None: return "none";
        case GraphSolver::Cholesky: return "cholesky";
        case GraphSolver::ConjugateGradient: return "cg-jacobi";
    }
    return "unknown";
}

GraphPotential graph_capacity(const GraphCondenser& condenser, const GraphSolverOptions& opts) {
    if (condenser.space == nullptr) throw PreconditionError("graph_capacity: condenser has no space");
    const FiniteMetricMeasureSpace& space = *condenser.space;
    const std::size_t n = space.size();
    if (condenser.inner.empty()) throw DomainError("graph_capacity: inner set K is empty");
    const Dimension dim = Dimension::of(condenser.m);

    std::vector<Role> role(n, Role::Free);
    for (std::size_t k : condenser.inner) {
        if (k >= n) throw PreconditionError("graph_capacity: inner index out of range");
        role[k] = Role::Inner;
    }
    for (std::size_t k : condenser.outer) {
        if (k >= n) throw PreconditionError("graph_capacity: outer index out of range");
        if (role[k] == Role::Inner) {
            throw PreconditionError("graph_capacity: point '" + space.point(k).label + "' is in both K and B");
        }
        role[k] = Role::Outer;
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (const Edge& e : space.edges()) {
        const std::size_t a = find_root(parent, e.i);
        const std::size_t b = find_root(parent, e.j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<unsigned char> meets_inner(n, 0);
    std::vector<unsigned char> meets_outer(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t r = find_root(parent, k);
        if (role[k] == Role::Inner) meets_inner[r] = 1;
        if (role[k] == Role::Outer) meets_outer[r] = 1;
    }

    GraphPotential out;
    out.u.assign(n, 0.0);
    std::vector<std::ptrdiff_t> unknown(n, -1);
    std::ptrdiff_t n_free = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t r = find_root(parent, k);
        if (role[k] == Role::Inner) {
            out.u[k] = 1.0;
        } else if (role[k] == Role::Free) {
            if (meets_inner[r] && meets_outer[r]) {
                unknown[k] = n_free++;
            } else if (meets_inner[r]) {
                out.u[k] = 1.0;
            }
        }
    }
    out.free_nodes = static_cast<std::size_t>(n_free);

    if (n_free > 0) {
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(4 * space.edges().size());
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_free);
        for (const Edge& e : space.edges()) {
            const std::ptrdiff_t a = unknown[e.i];
            const std::ptrdiff_t b = unknown[e.j];
            const double c = e.conductance;
            if (a >= 0) triplets.emplace_back(a, a, c);
            if (b >= 0) triplets.emplace_back(b, b, c);
            if (a >= 0 && b >= 0) {
                triplets.emplace_back(a, b, -c);
                triplets.emplace_back(b, a, -c);
            } else if (a >= 0) {
                rhs[a] += c * out.u[e.j];
            } else if (b >= 0) {
                rhs[b] += c * out.u[e.i];
            }
        }
        Eigen::SparseMatrix<double> A(n_free, n_free);
        A.setFromTriplets(triplets.begin(), triplets.end());
        Eigen::VectorXd x;
        if (static_cast<std::size_t>(n_free) < opts.direct_below) {
            Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> chol(A);
            if (chol.info() != Eigen::Success) throw InconsistencyError("graph_capacity: Cholesky factorization failed");
            x = chol.solve(rhs);
            out.solver = GraphSolver::Cholesky;
        } else {
            Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                                     Eigen::DiagonalPreconditioner<double>>
                cg;
            cg.setTolerance(opts.rel_residual);
            cg.setMaxIterations(static_cast<Eigen::Index>(std::max<std::ptrdiff_t>(1000, 20 * n_free)));
            cg.compute(A);
            x = cg.solve(rhs);
            if (cg.info() != Eigen::Success) throw InconsistencyError("graph_capacity: conjugate gradient did not converge");
            out.solver = GraphSolver::ConjugateGradient;
            out.iterations = static_cast<int>(cg.iterations());
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (unknown[k] >= 0) out.u[k] = x[unknown[k]];
        }
    }

    std::vector<double> flux(n, 0.0);
    for (const Edge& e : space.edges()) {
        const double du = out.u[e.i] - out.u[e.j];
        out.raw_energy += e.conductance * du * du;
        flux[e.i] += e.conductance * du;
        flux[e.j] -= e.conductance * du;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (unknown[k] >= 0) out.max_harmonic_residual = std::max(out.max_harmonic_residual, std::abs(flux[k]));
    }
    out.capacity = out.raw_energy / dim.gamma;
    return out;
}

}  // namespace vcap
