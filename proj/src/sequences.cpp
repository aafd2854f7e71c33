#include "vcap/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vcap/corresponding.hpp"
#include "vcap/errors.hpp"
#include "vcap/graph_capacity.hpp"
#include "vcap/lattice.hpp"
#include "vcap/radial_fem.hpp"
#include "vcap/warped.hpp"

namespace vcap {

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::ConsistentEqual: return "consistent-equal";
        case Classification::ConsistentStrictJump: return "consistent-strict-jump";
        case Classification::Violated: return "violated";
    }
    return "unknown";
}

Verdict check_semicontinuity(std::span<const double> capacities, double limit_capacity, double tol) {
    if (capacities.size() < 3) throw PreconditionError("check_semicontinuity: need at least 3 sequence values");
    const std::size_t tail = (capacities.size() + 1) / 2;
    Verdict v;
    v.limsup_estimate = *std::max_element(capacities.end() - static_cast<std::ptrdiff_t>(tail), capacities.end());
    v.limit_capacity = limit_capacity;
    v.tolerance = tol;
    if (v.limsup_estimate > limit_capacity + tol) {
        v.classification = Classification::Violated;
    } else if (v.limsup_estimate < limit_capacity - tol) {
        v.classification = Classification::ConsistentStrictJump;
    } else {
        v.classification = Classification::ConsistentEqual;
    }
    return v;
}

std::vector<double> SequenceExperiment::capacities() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.capacity);
    return out;
}

std::optional<double> SequenceExperiment::diagnostic(const std::string& key) const {
    for (const auto& [k, v] : diagnostics) {
        if (k == key) return v;
    }
    return std::nullopt;
}

namespace {

std::vector<double> default_radii(double scale) { return {1e2 * scale, 1e3 * scale, 1e4 * scale}; }

bool in_disk(const MetricPoint& p, double radius) {
    const double r2 = p.xyz->x * p.xyz->x + p.xyz->y * p.xyz->y;
    return r2 <= radius * radius * (1.0 + 1e-12);
}

bool beyond_rim(const MetricPoint& p, double rim) {
    const double r2 = p.xyz->x * p.xyz->x + p.xyz->y * p.xyz->y;
    return r2 >= rim * rim * (1.0 - 1e-12);
}

std::vector<std::size_t> select(const FiniteMetricMeasureSpace& s, auto&& pred) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (pred(s.point(k))) out.push_back(k);
    }
    return out;
}

bool has_prefix(const MetricPoint& p, const std::string& prefix) { return p.label.rfind(prefix + ":", 0) == 0; }

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0;
    double my = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += std::log(x[k]) / n;
        my += std::log(y[k]) / n;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = std::log(x[k]) - mx;
        sxy += dx * (std::log(y[k]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

struct PlanarLimit {
    FiniteMetricMeasureSpace space;
    std::vector<std::size_t> K;
    std::vector<std::size_t> B;
    double capacity = 0.0;
};

// Plane z = 0 grounded at the rim, with K the closed unit disk.
PlanarLimit planar_condenser(double h, double rim) {
    PlanarLimit out;
    out.space = build_planar_sheet(disk_sheet(rim + h, h, 0.0, "x"));
    out.K = select(out.space, [](const MetricPoint& p) { return in_disk(p, 1.0); });
    out.B = select(out.space, [rim](const MetricPoint& p) { return beyond_rim(p, rim); });
    out.capacity = graph_capacity({&out.space, out.K, out.B, 2}).capacity;
    return out;
}

}  // namespace

SequenceExperiment run_example1(const Example1Config& cfg) {
    if (cfg.i_list.size() < 3) throw PreconditionError("example 1: need at least 3 indices");
    for (int i : cfg.i_list) {
        if (!(cfg.r < static_cast<double>(i))) {
            throw DomainError("example 1: K = {s <= r} must lie inside the Euclidean region s <= i (r < i)");
        }
    }
    SequenceExperiment ex;
    ex.name = "ex1";
    ex.capacity_provenance = "fem";
    ex.limit_provenance = "closed-form";
    const auto radii = cfg.truncation_radii.empty() ? default_radii(cfg.r) : cfg.truncation_radii;

    const Dimension dim = Dimension::of(cfg.m);
    ex.diagnostics.emplace_back("ramp_L", cfg.ramp_L);
    ex.diagnostics.emplace_back("ramp_bound_unit", dim.omega / cfg.ramp_L);
    for (int i : cfg.i_list) {
        const WarpProfile profile = WarpProfile::cylindrical_end(cfg.m, i);
        const RadialCondenser cond{profile, cfg.r, Ends::One, std::nullopt, 0.0};
        const CapacityEstimate est = capacity_estimate(cond, make_schedule(cond, radii, cfg.refinement_levels));
        SequenceRow row{i, est.cap, est.error, std::nullopt};
        if (cfg.m == 3) row.region_measure = volume_and_boundary(profile, cfg.r).volume;
        ex.rows.push_back(row);
        if (cfg.ramp_L > i + 1.0) {
            // The cross-sections have radius i + 1, so the ramp costs omega (i+1)^{m-1} / L.
            ex.diagnostics.emplace_back("ramp_energy_i" + std::to_string(i), truncated_ramp_energy(profile, cfg.ramp_L).energy);
            ex.diagnostics.emplace_back("ramp_bound_i" + std::to_string(i),
                                        dim.omega * std::pow(i + 1.0, cfg.m - 1) / cfg.ramp_L);
        }
        ex.diagnostics.emplace_back("closed_form_i" + std::to_string(i), radial_capacity(cond));
    }
    const WarpProfile flat = WarpProfile::euclidean(cfg.m);
    const CapacityValue limit = radial_capacity_detail({flat, cfg.r, Ends::One, std::nullopt, 0.0});
    ex.limit_capacity = limit.value;
    ex.limit_error = limit.error;
    if (cfg.m == 3) ex.limit_region_measure = volume_and_boundary(flat, cfg.r).volume;
    ex.verdict = check_semicontinuity(ex.capacities(), ex.limit_capacity, cfg.tol);
    ex.notes.push_back("per-i capacities are truncated-condenser FEM estimates; the exact value is 0 (cylindrical end)");
    return ex;
}

SequenceExperiment run_example2(const Example2Config& cfg) {
    if (cfg.i_list.size() < 3) throw PreconditionError("example 2: need at least 3 indices");
    const WarpProfile neck = WarpProfile::neck_half();
    const EndResistance C = end_resistance(neck, 0.0);
    if (C.divergent) throw DomainError("example 2: degenerate experiment, f^-2 is not integrable");

    SequenceExperiment ex;
    ex.name = "ex2";
    ex.capacity_provenance = "fem";
    ex.limit_provenance = "closed-form";
    ex.diagnostics.emplace_back("end_resistance", C.value);

    const RadialCondenser limit_cond{neck, 0.0, Ends::Two, std::nullopt, 0.0};
    const CapacityValue limit = radial_capacity_detail(limit_cond);
    ex.limit_capacity = limit.value;
    ex.limit_error = limit.error;
    const CapacityEstimate limit_fem = capacity_estimate(limit_cond, make_schedule(limit_cond, cfg.truncation_radii,
                                                                                   cfg.refinement_levels));
    ex.diagnostics.emplace_back("limit_fem", limit_fem.cap);

    double pole_energy = 0.0;
    double ratio_dev = 0.0;
    for (int i : cfg.i_list) {
        const WarpProfile capped = WarpProfile::capped_neck(i);
        const RadialCondenser cond{capped, 0.0, Ends::One, std::nullopt, 0.0};
        const CapacityEstimate est = capacity_estimate(cond, make_schedule(cond, cfg.truncation_radii,
                                                                           cfg.refinement_levels));
        ex.rows.push_back({i, est.cap, est.error, std::nullopt});
        ex.diagnostics.emplace_back("closed_form_i" + std::to_string(i), radial_capacity(cond));

        // On the pole side the minimizer is the constant 1; confirm with a free end at the pole.
        const RadialGrid pole_grid = RadialGrid::uniform(-2.0 * i, 0.0, 64 * i);
        const FemSolution pole = solve_interval(capped, pole_grid, {BoundaryKind::Free, 0.0}, {BoundaryKind::Dirichlet, 1.0});
        pole_energy = std::max(pole_energy, pole.energy);
        ratio_dev = std::max(ratio_dev, std::abs(est.cap / ex.limit_capacity - 0.5));
    }
    ex.diagnostics.emplace_back("pole_side_energy_max", pole_energy);
    ex.diagnostics.emplace_back("ratio_max_deviation", ratio_dev);
    ex.verdict = check_semicontinuity(ex.capacities(), ex.limit_capacity, cfg.tol);
    ex.notes.push_back("per-i capacity of {s <= 0} on the capped profile; the pole side carries no energy");
    return ex;
}

SequenceExperiment run_example3(const Example3Config& cfg) {
    if (!(cfg.h > 0.0 && cfg.h <= 0.1)) throw PreconditionError("example 3: lattice spacing must satisfy 0 < h <= 0.1");
    if (cfg.i_list.size() < 3) throw PreconditionError("example 3: need at least 3 indices");
    SequenceExperiment ex;
    ex.name = cfg.strip ? "ex3-strip" : "ex3";
    ex.capacity_provenance = "graph";
    ex.limit_provenance = "graph";
    ex.diagnostics.emplace_back("rim_radius", cfg.rim_radius);
    if (cfg.rim_radius < 2.0) {
        ex.notes.push_back("warning: rim radius " + std::to_string(cfg.rim_radius) +
                           " is close to the unit disk; the condenser is distorted");
    }

    PlanarLimit limit = planar_condenser(cfg.h, cfg.rim_radius);
    ex.limit_capacity = limit.capacity;
    ex.limit_region_measure = region_measure(limit.space, limit.K);

    const DefiningFunction u = DefiningFunction::distance_to(limit.space, limit.K);
    CorrespondingRegionSpec spec{AmbientExtension(limit.space, u.values), {}, cfg.alpha_coeff};

    const FiniteMetricMeasureSpace disk = build_planar_sheet(disk_sheet(1.0, cfg.h, 0.0, "disk"));
    std::vector<double> measures;
    std::vector<double> strip_i;
    std::vector<double> strip_cap;
    for (int i : cfg.i_list) {
        const double height = 1.0 / i;
        const FiniteMetricMeasureSpace top =
            build_planar_sheet(annulus_sheet(1.0, cfg.rim_radius + cfg.h, cfg.h, height, "top"));
        FiniteMetricMeasureSpace Xi = union_spaces(disk, top);
        if (cfg.strip) {
            // Vertical strip joining the disk edge to the hole edge along y = 0.
            std::optional<std::size_t> foot;
            std::optional<std::size_t> head;
            for (std::size_t k = 0; k < Xi.size(); ++k) {
                const MetricPoint& p = Xi.point(k);
                if (std::abs(p.xyz->y) > 1e-12 || p.xyz->x <= 0.0) continue;
                if (has_prefix(p, "disk") && (!foot || p.xyz->x > Xi.point(*foot).xyz->x)) foot = k;
                if (has_prefix(p, "top") && (!head || p.xyz->x < Xi.point(*head).xyz->x)) head = k;
            }
            if (!foot || !head) throw DomainError("example 3: cannot attach the strip");
            const Point3 a = *Xi.point(*foot).xyz;
            const Point3 b = *Xi.point(*head).xyz;
            const double length = euclidean_distance(a, b);
            const double width = cfg.strip_width / (static_cast<double>(i) * i);
            const int n = std::max(cfg.strip_segments, 1);
            const double c_seg = n * width / length;
            std::vector<MetricPoint> pts;
            std::vector<Edge> edges;
            for (int k = 1; k < n; ++k) {
                const double t = static_cast<double>(k) / n;
                pts.push_back({"strip:" + std::to_string(k),
                               Point3{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)},
                               width * length / std::max(n - 1, 1)});
                if (k > 1) edges.push_back({static_cast<std::size_t>(k - 2), static_cast<std::size_t>(k - 1), c_seg});
            }
            if (n == 1) {
                std::vector<Edge> all = Xi.edges();
                all.push_back({*foot, *head, c_seg});
                Xi = FiniteMetricMeasureSpace::ambient(Xi.points(), std::move(all));
            } else {
                const FiniteMetricMeasureSpace strip = FiniteMetricMeasureSpace::ambient(std::move(pts), std::move(edges));
                Xi = union_spaces(Xi, strip, {{*foot, 0, c_seg}, {*head, strip.size() - 1, c_seg}});
            }
        }
        const Region Ki = corresponding_region(spec, Xi, i);
        if (Ki.empty()) throw DomainError("example 3: corresponding region K_" + std::to_string(i) + " is empty");
        const auto Bi = select(Xi, [&](const MetricPoint& p) { return has_prefix(p, "top") && beyond_rim(p, cfg.rim_radius); });
        const GraphPotential pot = graph_capacity({&Xi, Ki.members, Bi, 2});
        const double meas = region_measure(Xi, Ki.members);
        ex.rows.push_back({i, pot.capacity, 0.0, meas});
        measures.push_back(meas);
        if (pot.capacity > 0.0) {
            strip_i.push_back(i);
            strip_cap.push_back(pot.capacity);
        }
    }
    double defect = 0.0;
    for (double m : measures) defect = std::max(defect, std::abs(m - *ex.limit_region_measure));
    ex.diagnostics.emplace_back("region_measure_defect_max", defect);
    ex.diagnostics.emplace_back("disk_measure_defect", std::abs(*ex.limit_region_measure - std::numbers::pi));
    if (cfg.strip && strip_i.size() >= 2) ex.diagnostics.emplace_back("strip_exponent", -log_log_slope(strip_i, strip_cap));

    // Limit condenser under refinement against the continuum value 1 / ln(rim).
    const std::vector<double> study = cfg.grid_study.empty() ? std::vector<double>{cfg.h, cfg.h / 2, cfg.h / 4} : cfg.grid_study;
    const double exact = 1.0 / std::log(cfg.rim_radius);
    ex.diagnostics.emplace_back("continuum_limit", exact);
    std::vector<double> errs;
    for (std::size_t k = 0; k < study.size(); ++k) {
        const PlanarLimit lim = (study[k] == cfg.h) ? std::move(limit) : planar_condenser(study[k], cfg.rim_radius);
        errs.push_back(std::abs(lim.capacity - exact));
        ex.diagnostics.emplace_back("grid_h" + std::to_string(k), study[k]);
        ex.diagnostics.emplace_back("grid_cap" + std::to_string(k), lim.capacity);
        ex.diagnostics.emplace_back("grid_measure_defect" + std::to_string(k),
                                    std::abs(region_measure(lim.space, lim.K) - std::numbers::pi));
        if (k > 0) {
            ex.diagnostics.emplace_back("grid_order" + std::to_string(k),
                                        std::log(errs[k - 1] / errs[k]) / std::log(study[k - 1] / study[k]));
        }
    }
    ex.verdict = check_semicontinuity(ex.capacities(), ex.limit_capacity, cfg.tol);
    ex.notes.push_back("limit capacity is the disk condenser grounded at rim radius " + std::to_string(cfg.rim_radius));
    ex.notes.push_back("K_i from the standard 1-Lipschitz extension of u = d(., K) on the limit plane");
    return ex;
}

SequenceExperiment run_example4(const Example4Config& cfg) {
    if (!(cfg.h > 0.0 && cfg.h <= 0.1)) throw PreconditionError("example 4: lattice spacing must satisfy 0 < h <= 0.1");
    if (cfg.i_list.size() < 3) throw PreconditionError("example 4: need at least 3 indices");
    SequenceExperiment ex;
    ex.name = "ex4";
    ex.capacity_provenance = "graph";
    ex.limit_provenance = "graph";
    ex.diagnostics.emplace_back("rim_radius", cfg.rim_radius);

    const FiniteMetricMeasureSpace plane = build_planar_sheet(disk_sheet(cfg.rim_radius + cfg.h, cfg.h, 0.0, "plane"));
    const std::size_t origin = *plane.index_of("plane:0,0");
    for (int i : cfg.i_list) {
        const FiniteMetricMeasureSpace annulus = build_planar_sheet(annulus_sheet(1.0, 2.0, cfg.h, 1.0 / i, "ann"));
        const FiniteMetricMeasureSpace Xi = union_spaces(plane, annulus);
        std::vector<std::size_t> K;
        for (std::size_t k = 0; k < Xi.size(); ++k) {
            if (Xi.dist(k, origin) <= cfg.r * (1.0 + 1e-12)) K.push_back(k);
        }
        const auto B = select(Xi, [&](const MetricPoint& p) { return has_prefix(p, "plane") && beyond_rim(p, cfg.rim_radius); });
        const GraphPotential pot = graph_capacity({&Xi, K, B, 2});
        ex.rows.push_back({i, pot.capacity, 0.0, region_measure(Xi, K)});
    }

    // Limit: the annulus 1 < |x| < 2 cancels out of the plane, leaving K as its own component.
    const FiniteMetricMeasureSpace limit = union_spaces(build_planar_sheet(disk_sheet(1.0, cfg.h, 0.0, "plane")),
                                                        build_planar_sheet(annulus_sheet(2.0, cfg.rim_radius + cfg.h, cfg.h, 0.0, "plane")));
    const std::size_t o = *limit.index_of("plane:0,0");
    std::vector<std::size_t> K;
    for (std::size_t k = 0; k < limit.size(); ++k) {
        if (limit.dist(k, o) <= cfg.r * (1.0 + 1e-12)) K.push_back(k);
    }
    const auto B = select(limit, [&](const MetricPoint& p) { return beyond_rim(p, cfg.rim_radius); });
    ex.limit_capacity = graph_capacity({&limit, K, B, 2}).capacity;
    ex.limit_region_measure = region_measure(limit, K);

    double spread = 0.0;
    for (const auto& r : ex.rows) spread = std::max(spread, std::abs(r.capacity - ex.rows.front().capacity));
    ex.diagnostics.emplace_back("capacity_spread", spread);
    ex.verdict = check_semicontinuity(ex.capacities(), ex.limit_capacity, cfg.tol);
    ex.notes.push_back("orientation cancellation is modeled geometrically: the limit space omits the annulus 1 < |x| < 2");
    ex.notes.push_back("the oppositely oriented annulus carries no edges to the plane, so the energy lives on the plane alone");
    return ex;
}

}  // namespace vcap
