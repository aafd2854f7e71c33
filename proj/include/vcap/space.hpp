#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace vcap {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double euclidean_distance(const Point3& a, const Point3& b);

struct MetricPoint {
    std::string label;
    std::optional<Point3> xyz;
    double weight = 0.0;  ///< mass-measure of the cell the point stands for
};

/// Conductance edge of the discrete Dirichlet form E(u) = sum c (u_i - u_j)^2.
struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    double conductance = 1.0;
};

/// Point cloud with a metric, a measure and a conductance graph.
///
/// The metric is either ambient (Euclidean distance between the points' coordinates
/// in R^3, evaluated on demand) or an explicit symmetric matrix checked for the metric
/// axioms to 1e-9. The Dirichlet form lives on the edges only, so two points can be
/// metrically close yet energetically disconnected.
class FiniteMetricMeasureSpace {
public:
    FiniteMetricMeasureSpace() = default;

    /// All points must carry coordinates.
    static FiniteMetricMeasureSpace ambient(std::vector<MetricPoint> points, std::vector<Edge> edges);
    /// `dist` is row-major n x n.
    static FiniteMetricMeasureSpace with_metric(std::vector<MetricPoint> points, std::vector<double> dist,
                                                std::vector<Edge> edges);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    bool is_ambient() const { return ambient_; }

    double dist(std::size_t i, std::size_t j) const;
    const MetricPoint& point(std::size_t i) const { return points_[i]; }
    const std::vector<MetricPoint>& points() const { return points_; }
    const std::vector<Edge>& edges() const { return edges_; }
    double weight(std::size_t i) const { return points_[i].weight; }
    double total_measure() const;

    std::optional<std::size_t> index_of(const std::string& label) const;
    /// Throws PreconditionError for unknown labels.
    std::vector<std::size_t> indices_of(const std::vector<std::string>& labels) const;

private:
    void validate_points_and_edges();

    std::vector<MetricPoint> points_;
    std::vector<Edge> edges_;
    std::vector<double> dist_;
    bool ambient_ = true;
    std::unordered_map<std::string, std::size_t> index_;
};

struct CrossEdge {
    std::size_t i_in_a = 0;
    std::size_t j_in_b = 0;
    double conductance = 1.0;
};

/// Disjoint union with ambient distances; both operands need coordinates unless one is empty.
/// Throws PreconditionError on overlapping labels.
FiniteMetricMeasureSpace union_spaces(const FiniteMetricMeasureSpace& a, const FiniteMetricMeasureSpace& b,
                                      const std::vector<CrossEdge>& cross_edges = {});

nlohmann::json space_to_json(const FiniteMetricMeasureSpace& space);
FiniteMetricMeasureSpace space_from_json(const nlohmann::json& doc);

}  // namespace vcap
