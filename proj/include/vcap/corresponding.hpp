#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vcap/space.hpp"

namespace vcap {

/// Witness of a failed Lipschitz bound: |u(i) - u(j)| > L d(i, j).
struct LipschitzWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    double gap = 0.0;
    double bound = 0.0;
};

/// First pair (in index order) violating the L-Lipschitz bound on the given points, if any.
std::optional<LipschitzWitness> find_lipschitz_violation(const FiniteMetricMeasureSpace& space,
                                                         std::span<const std::size_t> subset,
                                                         std::span<const double> values, double L);

/// Defining function of K on a limit space S: {u <= 0} = K and u = d(., K) off K, 1-Lipschitz.
struct DefiningFunction {
    const FiniteMetricMeasureSpace* domain = nullptr;
    std::vector<double> values;
    std::vector<std::size_t> K;

    /// Canonical u = d(., K) >= 0.
    static DefiningFunction distance_to(const FiniteMetricMeasureSpace& domain, std::vector<std::size_t> K);
    /// User-supplied values (e.g. a signed distance); K is read off as {u <= 0}. Checks the
    /// Lipschitz bound exhaustively and u = d(., K) off K.
    static DefiningFunction from_values(const FiniteMetricMeasureSpace& domain, std::vector<double> values);
};

/// U(y) = min_{a in A} (u(a) + L d(a, y)) for every y in Y. `anchors` index into Y.
/// Throws PreconditionError, naming the witness pair, if u is not L-Lipschitz on A.
std::vector<double> mcshane_extend(std::span<const double> u, std::span<const std::size_t> anchors, double L,
                                   const FiniteMetricMeasureSpace& Y);

/// Standard Lipschitz extension into ambient R^3 of a function given on points with coordinates.
class AmbientExtension {
public:
    AmbientExtension(const FiniteMetricMeasureSpace& domain, std::span<const double> values, double L = 1.0);

    double operator()(const Point3& y) const;
    /// Equivalent to (*this)(y) <= alpha with early exit.
    bool at_most(const Point3& y, double alpha) const;
    double lipschitz_constant() const { return L_; }

private:
    // anchors sorted by value so minimization can stop once u(a) exceeds the running best
    std::vector<Point3> anchors_;
    std::vector<double> values_;
    double L_ = 1.0;
};

/// The extension U together with the threshold sequence alpha_i -> 0.
struct CorrespondingRegionSpec {
    AmbientExtension U;
    std::map<int, double> alphas;         ///< explicit alpha_i
    std::optional<double> alpha_coeff;    ///< alpha_i = coeff / i when no explicit entry

    double alpha(int i) const;
};

struct Region {
    std::vector<std::size_t> members;
    double alpha = 0.0;
    bool empty() const { return members.empty(); }
};

/// K_i = {x in S_i : U(x) <= alpha_i}; requires coordinates on S_i.
Region corresponding_region(const CorrespondingRegionSpec& spec, const FiniteMetricMeasureSpace& space_i, int i);

double region_measure(const FiniteMetricMeasureSpace& space, std::span<const std::size_t> region);

}  // namespace vcap
