#include "vcap/space.hpp"

#include <cmath>

#include "vcap/errors.hpp"

namespace vcap {

double euclidean_distance(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void FiniteMetricMeasureSpace::validate_points_and_edges() {
    index_.reserve(points_.size());
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const MetricPoint& p = points_[k];
        if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) {
            throw PreconditionError("point '" + p.label + "' has an invalid weight");
        }
        if (!index_.emplace(p.label, k).second) throw PreconditionError("duplicate point label '" + p.label + "'");
    }
    for (const Edge& e : edges_) {
        if (e.i >= points_.size() || e.j >= points_.size() || e.i == e.j) {
            throw PreconditionError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                    ") does not join two distinct points");
        }
        if (!(e.conductance > 0.0) || !std::isfinite(e.conductance)) {
            throw PreconditionError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                    ") needs a finite positive conductance");
        }
    }
}

FiniteMetricMeasureSpace FiniteMetricMeasureSpace::ambient(std::vector<MetricPoint> points, std::vector<Edge> edges) {
    FiniteMetricMeasureSpace s;
    s.points_ = std::move(points);
    s.edges_ = std::move(edges);
    s.ambient_ = true;
    for (const MetricPoint& p : s.points_) {
        if (!p.xyz) throw PreconditionError("ambient space: point '" + p.label + "' lacks coordinates");
    }
    s.validate_points_and_edges();
    return s;
}

FiniteMetricMeasureSpace FiniteMetricMeasureSpace::with_metric(std::vector<MetricPoint> points, std::vector<double> dist,
                                                               std::vector<Edge> edges) {
    const std::size_t n = points.size();
    if (dist.size() != n * n) throw PreconditionError("distance matrix must be n x n");
    constexpr double tol = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(dist[i * n + i]) > tol) throw PreconditionError("distance matrix has a nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist[i * n + j];
            if (!(d >= 0.0) || !std::isfinite(d)) throw PreconditionError("distances must be finite and nonnegative");
            if (std::abs(d - dist[j * n + i]) > tol) throw PreconditionError("distance matrix is not symmetric");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (dist[i * n + j] > dist[i * n + k] + dist[k * n + j] + tol) {
                    throw PreconditionError("triangle inequality fails for points " + points[i].label + ", " +
                                            points[k].label + ", " + points[j].label);
                }
            }
        }
    }
    FiniteMetricMeasureSpace s;
    s.points_ = std::move(points);
    s.edges_ = std::move(edges);
    s.dist_ = std::move(dist);
    s.ambient_ = false;
    s.validate_points_and_edges();
    return s;
}

double FiniteMetricMeasureSpace::dist(std::size_t i, std::size_t j) const {
    if (ambient_) return euclidean_distance(*points_[i].xyz, *points_[j].xyz);
    return dist_[i * points_.size() + j];
}

double FiniteMetricMeasureSpace::total_measure() const {
    double total = 0.0;
    for (const MetricPoint& p : points_) total += p.weight;
    return total;
}

std::optional<std::size_t> FiniteMetricMeasureSpace::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> FiniteMetricMeasureSpace::indices_of(const std::vector<std::string>& labels) const {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const std::string& l : labels) {
        auto k = index_of(l);
        if (!k) throw PreconditionError("unknown point label '" + l + "'");
        out.push_back(*k);
    }
    return out;
}

FiniteMetricMeasureSpace union_spaces(const FiniteMetricMeasureSpace& a, const FiniteMetricMeasureSpace& b,
                                      const std::vector<CrossEdge>& cross_edges) {
    if (b.empty() && cross_edges.empty()) return a;
    if (a.empty() && cross_edges.empty()) return b;
    std::vector<MetricPoint> points = a.points();
    points.insert(points.end(), b.points().begin(), b.points().end());
    for (const MetricPoint& p : b.points()) {
        if (a.index_of(p.label)) throw PreconditionError("union_spaces: label '" + p.label + "' appears in both spaces");
    }
    std::vector<Edge> edges = a.edges();
    const std::size_t offset = a.size();
    for (const Edge& e : b.edges()) edges.push_back({e.i + offset, e.j + offset, e.conductance});
    for (const CrossEdge& c : cross_edges) {
        if (c.i_in_a >= a.size() || c.j_in_b >= b.size()) throw PreconditionError("union_spaces: cross edge out of range");
        edges.push_back({c.i_in_a, c.j_in_b + offset, c.conductance});
    }
    return FiniteMetricMeasureSpace::ambient(std::move(points), std::move(edges));
}

nlohmann::json space_to_json(const FiniteMetricMeasureSpace& space) {
    nlohmann::json doc;
    doc["points"] = nlohmann::json::array();
    for (const MetricPoint& p : space.points()) {
        nlohmann::json j{{"label", p.label}, {"weight", p.weight}};
        if (p.xyz) j["xyz"] = {p.xyz->x, p.xyz->y, p.xyz->z};
        doc["points"].push_back(std::move(j));
    }
    doc["edges"] = nlohmann::json::array();
    for (const Edge& e : space.edges()) doc["edges"].push_back({{"i", e.i}, {"j", e.j}, {"c", e.conductance}});
    if (!space.is_ambient()) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < space.size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < space.size(); ++j) row.push_back(space.dist(i, j));
            rows.push_back(std::move(row));
        }
        doc["dist"] = std::move(rows);
    }
    return doc;
}

FiniteMetricMeasureSpace space_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("space document must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (it.key() != "points" && it.key() != "edges" && it.key() != "dist") {
            throw ConfigError("space: unknown key '" + it.key() + "'");
        }
    }
    if (!doc.contains("points") || !doc.at("points").is_array()) throw ConfigError("space: 'points' must be an array");
    std::vector<MetricPoint> points;
    bool all_xyz = true;
    for (const auto& j : doc.at("points")) {
        if (!j.is_object() || !j.contains("label") || !j.at("label").is_string()) {
            throw ConfigError("space: every point needs a string 'label'");
        }
        MetricPoint p;
        p.label = j.at("label").get<std::string>();
        if (!j.contains("weight") || !j.at("weight").is_number()) {
            throw ConfigError("space: point '" + p.label + "' needs a numeric 'weight'");
        }
        p.weight = j.at("weight").get<double>();
        if (j.contains("xyz")) {
            const auto& c = j.at("xyz");
            if (!c.is_array() || c.size() != 3 || !c[0].is_number() || !c[1].is_number() || !c[2].is_number()) {
                throw ConfigError("space: point '" + p.label + "' has malformed 'xyz'");
            }
            p.xyz = Point3{c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
        } else {
            all_xyz = false;
        }
        points.push_back(std::move(p));
    }
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        if (!doc.at("edges").is_array()) throw ConfigError("space: 'edges' must be an array");
        for (const auto& j : doc.at("edges")) {
            if (!j.is_object() || !j.contains("i") || !j.contains("j") || !j.at("i").is_number_unsigned() ||
                !j.at("j").is_number_unsigned()) {
                throw ConfigError("space: every edge needs nonnegative integer 'i' and 'j'");
            }
            const double c = j.contains("c") ? j.at("c").get<double>() : 1.0;
            edges.push_back({j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>(), c});
        }
    }
    if (doc.contains("dist")) {
        const auto& rows = doc.at("dist");
        std::vector<double> dist;
        if (!rows.is_array() || rows.size() != points.size()) throw ConfigError("space: 'dist' must be n x n");
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != points.size()) throw ConfigError("space: 'dist' must be n x n");
            for (const auto& v : row) {
                if (!v.is_number()) throw ConfigError("space: 'dist' entries must be numbers");
                dist.push_back(v.get<double>());
            }
        }
        return FiniteMetricMeasureSpace::with_metric(std::move(points), std::move(dist), std::move(edges));
    }
    if (!all_xyz) throw ConfigError("space: points need 'xyz' unless an explicit 'dist' matrix is given");
    return FiniteMetricMeasureSpace::ambient(std::move(points), std::move(edges));
}

}  // namespace vcap
