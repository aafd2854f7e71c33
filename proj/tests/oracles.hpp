#pragma once

// Independent reference computations used by the tests. Nothing here calls into the
// solver code under test.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

struct DenseEdge {
    int i;
    int j;
    double c;
};

struct DenseResult {
    std::vector<double> u;
    double energy = 0.0;
    std::vector<bool> determined;  ///< node lies in a component touching a constrained node
};

// Minimizes sum c (u_i - u_j)^2 with u fixed on `fixed` by forming the normal equations of
// the free block and eliminating with full pivoting in long double. Free directions (zero
// pivots) are set to 0, which is a minimizer since they carry no energy.
inline DenseResult dense_minimize(int n, const std::vector<DenseEdge>& edges, const std::vector<int>& fixed,
                                  const std::vector<double>& fixed_values) {
    std::vector<int> state(n, -1);
    for (std::size_t k = 0; k < fixed.size(); ++k) state[fixed[k]] = static_cast<int>(k);
    std::vector<int> free_ids;
    std::vector<int> pos(n, -1);
    for (int v = 0; v < n; ++v) {
        if (state[v] < 0) {
            pos[v] = static_cast<int>(free_ids.size());
            free_ids.push_back(v);
        }
    }
    const int f = static_cast<int>(free_ids.size());
    std::vector<std::vector<long double>> A(f, std::vector<long double>(f + 1, 0.0L));
    for (const auto& e : edges) {
        const int a = e.i;
        const int b = e.j;
        for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
            if (state[p] >= 0) continue;
            A[pos[p]][pos[p]] += e.c;
            if (state[q] >= 0) {
                A[pos[p]][f] += e.c * fixed_values[state[q]];
            } else {
                A[pos[p]][pos[q]] -= e.c;
            }
        }
    }
    std::vector<int> col(f);
    for (int k = 0; k < f; ++k) col[k] = k;
    std::vector<bool> pivoted(f, false);
    int rank = 0;
    for (; rank < f; ++rank) {
        long double best = 0.0L;
        int br = -1;
        int bc = -1;
        for (int r = rank; r < f; ++r) {
            for (int c = rank; c < f; ++c) {
                if (std::fabs(A[r][c]) > best) {
                    best = std::fabs(A[r][c]);
                    br = r;
                    bc = c;
                }
            }
        }
        if (best < 1e-14L) break;
        std::swap(A[rank], A[br]);
        for (auto& row : A) std::swap(row[rank], row[bc]);
        std::swap(col[rank], col[bc]);
        for (int r = 0; r < f; ++r) {
            if (r == rank || A[r][rank] == 0.0L) continue;
            const long double t = A[r][rank] / A[rank][rank];
            for (int c = rank; c <= f; ++c) A[r][c] -= t * A[rank][c];
        }
    }
    std::vector<long double> x(f, 0.0L);
    for (int k = 0; k < rank; ++k) x[col[k]] = A[k][f] / A[k][k];

    DenseResult out;
    out.u.assign(n, 0.0);
    for (int v = 0; v < n; ++v) {
        out.u[v] = state[v] >= 0 ? fixed_values[state[v]] : static_cast<double>(x[pos[v]]);
    }
    long double energy = 0.0L;
    for (const auto& e : edges) {
        const long double d = static_cast<long double>(out.u[e.i]) - out.u[e.j];
        energy += e.c * d * d;
    }
    out.energy = static_cast<double>(energy);

    // Components touching a constrained node have a unique minimizer.
    std::vector<int> comp(n);
    for (int v = 0; v < n; ++v) comp[v] = v;
    auto find = [&](int v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    for (const auto& e : edges) comp[find(e.i)] = find(e.j);
    std::vector<bool> touched(n, false);
    for (int v : fixed) touched[find(v)] = true;
    out.determined.resize(n);
    for (int v = 0; v < n; ++v) out.determined[v] = touched[find(v)];
    return out;
}

// Largest value on a grid of step `step` that is L-Lipschitz-compatible with (values, dists).
inline double grid_search_max_extension(const std::vector<double>& values, const std::vector<double>& dists, double L,
                                        double step) {
    double lo = -1e300;
    double hi = 1e300;
    for (std::size_t k = 0; k < values.size(); ++k) {
        lo = std::max(lo, values[k] - L * dists[k]);
        hi = std::min(hi, values[k] + L * dists[k]);
    }
    double best = std::nan("");
    for (double v = std::floor(lo / step) * step - step; v <= hi + step; v += step) {
        bool ok = v >= lo - 1e-12 && v <= hi + 1e-12;
        if (ok) best = v;
    }
    return best;
}

// Arclength from the horizon of the Schwarzschild slice at areal radius R.
inline double schwarzschild_arclength(double M, double R) {
    return std::sqrt(R * (R - 2 * M)) + 2 * M * std::asinh(std::sqrt((R - 2 * M) / (2 * M)));
}

// Capacity of the region inside areal radius R, from the harmonic function 1 - sqrt(1 - 2M/r).
inline double schwarzschild_capacity(double M, double R) { return M / (1.0 - std::sqrt(1.0 - 2.0 * M / R)); }

// 4 pi int_{2M}^R r^2 / sqrt(1 - 2M/r) dr with r = 2M + t^2 (removes the endpoint singularity),
// composite Simpson on a fine uniform grid in t.
inline double schwarzschild_volume(double M, double R, int panels = 200000) {
    const double T = std::sqrt(R - 2 * M);
    auto g = [M](double t) {
        const double r = 2 * M + t * t;
        return r * r * 2.0 * std::sqrt(r);  // r^2 / sqrt(t^2 / r) * 2t
    };
    const double h = T / panels;
    double s = g(0.0) + g(T);
    for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * g(k * h);
    return 4.0 * std::numbers::pi * s * h / 3.0;
}

// Shortest-path metric of a random complete graph with weights in [1, 3].
inline std::vector<double> random_path_metric(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> w(1.0, 3.0);
    std::vector<double> d(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = w(rng);
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
        }
    }
    return d;
}

}  // namespace oracle
