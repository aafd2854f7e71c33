#include "vcap/corresponding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vcap/errors.hpp"

namespace vcap {
namespace {

constexpr double kLipSlack = 1e-12;

bool exceeds(double gap, double bound) { return gap > bound + kLipSlack * std::max(1.0, bound); }

std::string describe(const FiniteMetricMeasureSpace& s, const LipschitzWitness& w) {
    return "'" + s.point(w.i).label + "' and '" + s.point(w.j).label + "' (|du| = " + std::to_string(w.gap) +
           " > L d = " + std::to_string(w.bound) + ")";
}

}  // namespace

std::optional<LipschitzWitness> find_lipschitz_violation(const FiniteMetricMeasureSpace& space,
                                                         std::span<const std::size_t> subset,
                                                         std::span<const double> values, double L) {
    for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            const double gap = std::abs(values[a] - values[b]);
            const double bound = L * space.dist(subset[a], subset[b]);
            if (exceeds(gap, bound)) return LipschitzWitness{subset[a], subset[b], gap, bound};
        }
    }
    return std::nullopt;
}

DefiningFunction DefiningFunction::distance_to(const FiniteMetricMeasureSpace& domain, std::vector<std::size_t> K) {
    if (K.empty()) throw DomainError("defining function: K is empty");
    DefiningFunction d;
    d.domain = &domain;
    d.values.assign(domain.size(), 0.0);
    for (std::size_t x = 0; x < domain.size(); ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k : K) best = std::min(best, domain.dist(x, k));
        d.values[x] = best;
    }
    for (std::size_t k : K) d.values[k] = 0.0;
    std::sort(K.begin(), K.end());
    d.K = std::move(K);
    return d;
}

DefiningFunction DefiningFunction::from_values(const FiniteMetricMeasureSpace& domain, std::vector<double> values) {
    if (values.size() != domain.size()) throw PreconditionError("defining function: one value per point required");
    std::vector<std::size_t> all(domain.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (auto w = find_lipschitz_violation(domain, all, values, 1.0)) {
        throw PreconditionError("defining function is not 1-Lipschitz: " + describe(domain, *w));
    }
    DefiningFunction d;
    d.domain = &domain;
    for (std::size_t x = 0; x < domain.size(); ++x) {
        if (values[x] <= 0.0) d.K.push_back(x);
    }
    if (d.K.empty()) throw DomainError("defining function: {u <= 0} is empty");
    for (std::size_t x = 0; x < domain.size(); ++x) {
        if (values[x] <= 0.0) continue;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k : d.K) best = std::min(best, domain.dist(x, k));
        if (std::abs(values[x] - best) > 1e-9 * std::max(1.0, best)) {
            throw PreconditionError("defining function differs from d(., K) at '" + domain.point(x).label + "'");
        }
    }
    d.values = std::move(values);
    return d;
}

std::vector<double> mcshane_extend(std::span<const double> u, std::span<const std::size_t> anchors, double L,
                                   const FiniteMetricMeasureSpace& Y) {
    if (u.size() != anchors.size()) throw PreconditionError("mcshane_extend: one value per anchor required");
    if (anchors.empty()) throw PreconditionError("mcshane_extend: no anchors");
    if (!(L >= 0.0)) throw PreconditionError("mcshane_extend: Lipschitz constant must be nonnegative");
    for (std::size_t a : anchors) {
        if (a >= Y.size()) throw PreconditionError("mcshane_extend: anchor index out of range");
    }
    if (auto w = find_lipschitz_violation(Y, anchors, u, L)) {
        throw PreconditionError("mcshane_extend: input is not L-Lipschitz between " + describe(Y, *w));
    }
    std::vector<double> out(Y.size(), std::numeric_limits<double>::infinity());
    for (std::size_t y = 0; y < Y.size(); ++y) {
        for (std::size_t k = 0; k < anchors.size(); ++k) {
            out[y] = std::min(out[y], u[k] + L * Y.dist(anchors[k], y));
        }
    }
    // The infimum is attained at the anchor itself.
    for (std::size_t k = 0; k < anchors.size(); ++k) out[anchors[k]] = u[k];
    return out;
}

AmbientExtension::AmbientExtension(const FiniteMetricMeasureSpace& domain, std::span<const double> values, double L)
    : L_(L) {
    if (values.size() != domain.size()) throw PreconditionError("AmbientExtension: one value per point required");
    if (domain.empty()) throw PreconditionError("AmbientExtension: empty domain");
    std::vector<std::size_t> order(domain.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    anchors_.reserve(order.size());
    values_.reserve(order.size());
    for (std::size_t k : order) {
        const auto& xyz = domain.point(k).xyz;
        if (!xyz) throw PreconditionError("AmbientExtension: point '" + domain.point(k).label + "' lacks coordinates");
        anchors_.push_back(*xyz);
        values_.push_back(values[k]);
    }
}

double AmbientExtension::operator()(const Point3& y) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < anchors_.size(); ++k) {
        if (values_[k] >= best) break;
        best = std::min(best, values_[k] + L_ * euclidean_distance(anchors_[k], y));
    }
    return best;
}

bool AmbientExtension::at_most(const Point3& y, double alpha) const {
    for (std::size_t k = 0; k < anchors_.size(); ++k) {
        if (values_[k] > alpha) return false;
        if (values_[k] + L_ * euclidean_distance(anchors_[k], y) <= alpha) return true;
    }
    return false;
}

double CorrespondingRegionSpec::alpha(int i) const {
    if (auto it = alphas.find(i); it != alphas.end()) return it->second;
    if (alpha_coeff) return *alpha_coeff / static_cast<double>(i);
    return 0.0;
}

Region corresponding_region(const CorrespondingRegionSpec& spec, const FiniteMetricMeasureSpace& space_i, int i) {
    Region r;
    r.alpha = spec.alpha(i);
    if (!(r.alpha >= 0.0)) throw PreconditionError("corresponding_region: alpha_i must be nonnegative");
    for (std::size_t x = 0; x < space_i.size(); ++x) {
        const auto& xyz = space_i.point(x).xyz;
        if (!xyz) throw PreconditionError("corresponding_region: point '" + space_i.point(x).label + "' lacks coordinates");
        if (spec.U.at_most(*xyz, r.alpha)) r.members.push_back(x);
    }
    return r;
}

double region_measure(const FiniteMetricMeasureSpace& space, std::span<const std::size_t> region) {
    double total = 0.0;
    for (std::size_t k : region) total += space.weight(k);
    return total;
}

}  // namespace vcap
