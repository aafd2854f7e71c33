#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vcap/errors.hpp"
#include "vcap/graph_capacity.hpp"
#include "vcap/lattice.hpp"

using namespace vcap;

namespace {

FiniteMetricMeasureSpace abstract_graph(int n, const std::vector<Edge>& edges) {
    std::vector<MetricPoint> pts;
    for (int k = 0; k < n; ++k) pts.push_back({"v" + std::to_string(k), Point3{double(k), 0.0, 0.0}, 1.0});
    return FiniteMetricMeasureSpace::ambient(pts, edges);
}

struct RandomCondenser {
    int n;
    std::vector<Edge> edges;
    std::vector<std::size_t> K;
    std::vector<std::size_t> B;
};

RandomCondenser random_condenser(std::mt19937_64& rng, int max_nodes, double edge_prob) {
    std::uniform_int_distribution<int> nn(2, max_nodes);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RandomCondenser rc;
    rc.n = nn(rng);
    for (int i = 0; i < rc.n; ++i) {
        for (int j = i + 1; j < rc.n; ++j) {
            if (u(rng) < edge_prob) rc.edges.push_back({std::size_t(i), std::size_t(j), 0.1 + 5.0 * u(rng)});
        }
    }
    // node 0 always in K; the others split at random
    rc.K.push_back(0);
    for (int v = 1; v < rc.n; ++v) {
        const double t = u(rng);
        if (t < 0.2) rc.K.push_back(v);
        else if (t < 0.5) rc.B.push_back(v);
    }
    return rc;
}

oracle::DenseResult oracle_solve(const RandomCondenser& rc) {
    std::vector<oracle::DenseEdge> e;
    for (const Edge& x : rc.edges) e.push_back({int(x.i), int(x.j), x.conductance});
    std::vector<int> fixed;
    std::vector<double> vals;
    for (auto k : rc.K) {
        fixed.push_back(int(k));
        vals.push_back(1.0);
    }
    for (auto b : rc.B) {
        fixed.push_back(int(b));
        vals.push_back(0.0);
    }
    return oracle::dense_minimize(rc.n, e, fixed, vals);
}

}  // namespace

TEST_CASE("three-node path") {
    const auto s = abstract_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    const GraphPotential p = graph_capacity({&s, {0}, {2}, 2});
    CHECK(p.raw_energy == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.u[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.capacity == doctest::Approx(0.5 / (2 * std::numbers::pi)).epsilon(1e-14));
    CHECK(p.solver == GraphSolver::Cholesky);
}

TEST_CASE("disconnected K has zero capacity") {
    const auto s = abstract_graph(5, {{0, 1, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
    const GraphPotential p = graph_capacity({&s, {0}, {4}, 2});
    CHECK(p.capacity == 0.0);
    CHECK(p.u[1] == 1.0);  // component meeting only K
    CHECK(p.u[2] == 0.0);
    CHECK(p.u[3] == 0.0);
}

TEST_CASE("condenser preconditions") {
    const auto s = abstract_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK_THROWS_AS(graph_capacity({&s, {}, {2}, 2}), DomainError);
    CHECK_THROWS_AS(graph_capacity({&s, {0, 2}, {2}, 2}), PreconditionError);
    CHECK_THROWS_AS(graph_capacity({&s, {7}, {2}, 2}), PreconditionError);
}

TEST_CASE("agreement with dense elimination on small random graphs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const RandomCondenser rc = random_condenser(rng, 6, 0.5);
        const auto s = abstract_graph(rc.n, rc.edges);
        const GraphPotential p = graph_capacity({&s, rc.K, rc.B, 2});
        const oracle::DenseResult ref = oracle_solve(rc);
        CHECK(p.raw_energy == doctest::Approx(ref.energy).epsilon(1e-10));
        CHECK(std::abs(p.raw_energy - ref.energy) <= 1e-10 * std::max(1.0, ref.energy));
        for (int v = 0; v < rc.n; ++v) {
            if (ref.determined[v]) CHECK(std::abs(p.u[v] - ref.u[v]) <= 1e-10);
        }
    }
}

TEST_CASE("potential is harmonic and bounded") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const RandomCondenser rc = random_condenser(rng, 30, 0.2);
        const auto s = abstract_graph(rc.n, rc.edges);
        const GraphPotential p = graph_capacity({&s, rc.K, rc.B, 2});
        double cmax = 0.0;
        for (const Edge& e : rc.edges) cmax = std::max(cmax, e.conductance);
        CHECK(p.max_harmonic_residual <= 1e-10 * std::max(cmax, 1.0));
        for (double v : p.u) {
            CHECK(v >= -1e-14);
            CHECK(v <= 1.0 + 1e-14);
        }
        for (auto k : rc.K) CHECK(p.u[k] == 1.0);
        for (auto b : rc.B) CHECK(p.u[b] == 0.0);
    }
}

TEST_CASE("capacity is monotone in K and in the conductances") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        RandomCondenser rc = random_condenser(rng, 12, 0.35);
        const auto s = abstract_graph(rc.n, rc.edges);
        const double base = graph_capacity({&s, rc.K, rc.B, 2}).capacity;

        // enlarge K by one free node
        std::vector<bool> used(rc.n, false);
        for (auto k : rc.K) used[k] = true;
        for (auto b : rc.B) used[b] = true;
        for (int v = 0; v < rc.n; ++v) {
            if (used[v]) continue;
            auto K2 = rc.K;
            K2.push_back(v);
            CHECK(graph_capacity({&s, K2, rc.B, 2}).capacity >= base * (1 - 1e-12));
            break;
        }

        if (rc.edges.empty()) continue;
        auto edges = rc.edges;
        edges[static_cast<std::size_t>(u(rng) * edges.size())].conductance *= 1.0 + 3.0 * u(rng);
        const auto s2 = abstract_graph(rc.n, edges);
        CHECK(graph_capacity({&s2, rc.K, rc.B, 2}).capacity >= base * (1 - 1e-12));
    }
}

TEST_CASE("iterative and direct solvers agree") {
    const auto s = build_planar_sheet(disk_sheet(3.0, 0.1, 0.0, "x"));
    std::vector<std::size_t> K;
    std::vector<std::size_t> B;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double r = std::hypot(s.point(k).xyz->x, s.point(k).xyz->y);
        if (r <= 1.0 + 1e-12) K.push_back(k);
        if (r >= 2.9) B.push_back(k);
    }
    const GraphPotential cg = graph_capacity({&s, K, B, 2});
    const GraphPotential direct = graph_capacity({&s, K, B, 2}, {1e-12, 1000000});
    CHECK(cg.solver == GraphSolver::ConjugateGradient);
    CHECK(direct.solver == GraphSolver::Cholesky);
    CHECK(cg.raw_energy == doctest::Approx(direct.raw_energy).epsilon(1e-9));
}

TEST_CASE("annulus condenser approaches the continuum value") {
    // lattice spacings aligned with the unit circle
    const double exact = 1.0 / std::log(4.0);
    std::vector<double> err;
    for (double h : {0.125, 0.0625, 0.03125}) {
        const auto s = build_planar_sheet(disk_sheet(4.0 + h, h, 0.0, "x"));
        std::vector<std::size_t> K;
        std::vector<std::size_t> B;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const double r2 = s.point(k).xyz->x * s.point(k).xyz->x + s.point(k).xyz->y * s.point(k).xyz->y;
            if (r2 <= 1.0 + 1e-12) K.push_back(k);
            if (r2 >= 16.0 * (1 - 1e-12)) B.push_back(k);
        }
        err.push_back(std::abs(graph_capacity({&s, K, B, 2}).capacity - exact));
    }
    for (std::size_t k = 1; k < err.size(); ++k) CHECK(std::log2(err[k - 1] / err[k]) >= 0.9);
}
