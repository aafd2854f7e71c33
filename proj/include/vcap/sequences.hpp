#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vcap {

enum class Classification { ConsistentEqual, ConsistentStrictJump, Violated };

std::string classification_name(Classification c);

/// Comparison of limsup_i cap(K_i) with cap(K) in the limit.
struct Verdict {
    double limsup_estimate = 0.0;
    double limit_capacity = 0.0;
    double tolerance = 0.0;
    Classification classification = Classification::ConsistentEqual;
};

/// limsup estimated as the maximum over the final ceil(I/2) entries. Violated iff the
/// estimate exceeds limit + tol; equal iff it lies within tol of the limit.
/// Throws PreconditionError for fewer than 3 values.
Verdict check_semicontinuity(std::span<const double> capacities, double limit_capacity, double tol);

struct SequenceRow {
    int i = 0;
    double capacity = 0.0;
    double capacity_error = 0.0;
    std::optional<double> region_measure;
};

/// Capacities along a converging sequence plus the limit, with the semicontinuity verdict.
struct SequenceExperiment {
    std::string name;
    std::vector<SequenceRow> rows;
    double limit_capacity = 0.0;
    double limit_error = 0.0;
    std::optional<double> limit_region_measure;
    Verdict verdict;
    std::string capacity_provenance;  ///< closed-form | fem | graph
    std::string limit_provenance;
    std::vector<std::pair<std::string, double>> diagnostics;
    std::vector<std::string> notes;

    std::vector<double> capacities() const;
    std::optional<double> diagnostic(const std::string& key) const;
};

struct Example1Config {
    int m = 3;
    double r = 1.0;
    std::vector<int> i_list{2, 4, 8};
    std::vector<double> truncation_radii;  ///< empty: {1e2, 1e3, 1e4} * r
    int refinement_levels = 3;
    double ramp_L = 1e3;
    double tol = 1e-3;
};

struct Example2Config {
    std::vector<int> i_list{1, 2, 4, 8};
    std::vector<double> truncation_radii{1e2, 1e3, 1e4};
    int refinement_levels = 3;
    double tol = 1e-3;
};

struct Example3Config {
    double h = 0.0625;
    std::vector<int> i_list{1, 2, 4, 8, 16};
    double rim_radius = 4.0;
    bool strip = false;
    double strip_width = 0.1;  ///< strip width is strip_width / i^2, its length 1/i
    int strip_segments = 4;
    std::optional<double> alpha_coeff;  ///< alpha_i = c / i; default alpha_i = 0
    std::vector<double> grid_study;     ///< spacings for the limit-condenser refinement study; empty: {h, h/2, h/4}
    double tol = 1e-3;
};

struct Example4Config {
    double h = 0.0625;
    std::vector<int> i_list{1, 2, 4, 8};
    double rim_radius = 4.0;
    double r = 1.0;  ///< ball radius about the origin
    double tol = 1e-3;
};

/// Ball capped by a cylindrical end: capacity 0 for every i, Euclidean limit r^{m-2}.
SequenceExperiment run_example1(const Example1Config& cfg);
/// Formation of a new end: capacity 1/C for every i, two-ended limit 2/C.
SequenceExperiment run_example2(const Example2Config& cfg);
/// Disk below a plane with a hole: disconnected energy, capacity 0 (or O(1/i) with a strip).
SequenceExperiment run_example3(const Example3Config& cfg);
/// Plane with a cancelling annulus: positive capacity along the sequence, 0 in the limit.
SequenceExperiment run_example4(const Example4Config& cfg);

}  // namespace vcap
