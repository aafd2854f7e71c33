#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vcap/dimension.hpp"

namespace vcap {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// f(s) = coeff * s^exponent, defined for s >= 0.
struct PowerShape {
    double coeff = 1.0;
    double exponent = 1.0;
};

/// f(s) = value.
struct ConstantShape {
    double value = 1.0;
};

/// f(s) = sqrt(c0 + c2 s^2); c0 = c2 = 1 is the catenoidal neck of a two-ended manifold.
struct SqrtQuadraticShape {
    double c0 = 1.0;
    double c2 = 1.0;
};

/// Areal radius of the Schwarzschild spatial slice as a function of proper distance
/// s from the horizon: ds = dR / sqrt(1 - 2 mass / R), R(0) = 2 mass.
struct SchwarzschildShape {
    double mass = 1.0;
};

/// Piecewise cubic Hermite interpolant through tabulated samples. Slopes that are
/// NaN on input are filled with Fritsch-Carlson monotone slopes at construction.
struct HermiteShape {
    std::vector<double> knots;
    std::vector<double> values;
    std::vector<double> slopes;
};

using PieceShape = std::variant<PowerShape, ConstantShape, SqrtQuadraticShape, SchwarzschildShape, HermiteShape>;

struct Piece {
    double start = 0.0;
    double end = kInfinity;
    PieceShape shape;
};

std::string kind_name(const PieceShape& shape);

/// Warp function of the rotationally symmetric metric ds^2 + f(s)^2 dsigma^2 on an
/// interval times the unit (m-1)-sphere.
///
/// Pieces are contiguous and f is continuous across junctions (relative 1e-12).
/// f > 0 on the open domain; f vanishes at the left end exactly when that end is a pole.
class WarpProfile {
public:
    WarpProfile(int m, std::vector<Piece> pieces);

    double operator()(double s) const;
    double derivative(double s) const;

    const Dimension& dimension() const { return dim_; }
    int m() const { return dim_.m; }
    double s_min() const { return pieces_.front().start; }
    double s_max() const { return pieces_.back().end; }
    bool unbounded() const { return s_max() == kInfinity; }
    bool pole_at_start() const { return pole_; }
    bool contains(double s) const { return s >= s_min() && s <= s_max(); }

    const std::vector<Piece>& pieces() const { return pieces_; }
    /// Interior piece boundaries together with Hermite knots, i.e. every point where f may fail to be smooth.
    std::vector<double> breakpoints() const;

    /// The profile lambda * f(s / lambda); a homothety of the metric by lambda.
    WarpProfile rescaled(double lambda) const;

    static WarpProfile euclidean(int m);
    /// f = s on [0, i], cubic bridge on [i, i+1], f = i+1 beyond: a Euclidean ball capped by a cylindrical end.
    static WarpProfile cylindrical_end(int m, double i);
    /// f = sqrt(1 + s^2) on [0, inf); one half of the symmetric two-ended neck.
    static WarpProfile neck_half();
    /// f = sqrt(1 + s^2) on [-i, inf) closed off by a cubic bridge to a smooth pole at s = -2i.
    static WarpProfile capped_neck(double i);
    static WarpProfile schwarzschild(double mass);

private:
    const Piece& piece_at(double s) const;

    Dimension dim_;
    std::vector<Piece> pieces_;
    bool pole_ = false;
};

nlohmann::json profile_to_json(const WarpProfile& profile);
/// Throws ConfigError on schema violations and DomainError on invalid geometry.
WarpProfile profile_from_json(const nlohmann::json& doc);

}  // namespace vcap
