#include "vcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vcap {
namespace {

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const ScalarFn& f, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    // Kronrod abscissae: xk[0] = 0, even indices are the Gauss points.
    const double f0 = f(mid);
    double kron = wk[0] * f0;
    double gauss = wg[0] * f0;
    double l1 = std::abs(wk[0] * f0);
    for (std::size_t j = 1; j < xk.size(); ++j) {
        const double dx = half * xk[j];
        const double fl = f(mid - dx);
        const double fr = f(mid + dx);
        kron += wk[j] * (fl + fr);
        l1 += wk[j] * (std::abs(fl) + std::abs(fr));
        if (j % 2 == 0) gauss += wg[j / 2] * (fl + fr);
    }
    Panel p{a, b, kron * half, 0.0};
    const double rounding = 50.0 * std::numeric_limits<double>::epsilon() * l1 * half;
    p.error = std::max(std::abs((kron - gauss) * half), rounding);
    return p;
}

}  // namespace

QuadResult integrate(const ScalarFn& f, double a, double b, std::span<const double> breakpoints,
                     const QuadratureOptions& opts) {
    if (a == b) return {};
    const double sign = (a < b) ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);

    std::vector<double> cuts{lo};
    for (double p : breakpoints) {
        if (p > lo && p < hi) cuts.push_back(p);
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(hi);

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k + 1] <= cuts[k]) continue;
        Panel p = gk15(f, cuts[k], cuts[k + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    const double floor_eps = 50.0 * std::numeric_limits<double>::epsilon();
    while (!heap.empty() && static_cast<int>(heap.size()) < opts.max_intervals) {
        const double target = std::max(opts.rel_tol * std::abs(total), opts.abs_tol);
        if (total_err <= target) break;
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        // Stop once the worst panel is at the rounding floor.
        if (worst.error <= floor_eps * std::abs(worst.value) && worst.error * heap.size() <= target) break;
        heap.pop();
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed accumulated cancellation in the running totals.
    QuadResult out;
    out.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.error += heap.top().error;
        heap.pop();
    }
    out.value *= sign;
    return out;
}

}  // namespace vcap
