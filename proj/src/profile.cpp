#include "vcap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "vcap/errors.hpp"

namespace vcap {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Proper distance from the horizon as a function of w = sqrt(R - 2M).
double schwarzschild_distance(double mass, double w) {
    const double r = 2.0 * mass + w * w;
    return std::sqrt(r) * w + 2.0 * mass * std::asinh(w / std::sqrt(2.0 * mass));
}

double schwarzschild_areal_radius(double mass, double s) {
    if (s <= 0.0) return 2.0 * mass;
    // ds/dw = 2 sqrt(2M + w^2); s(w) is increasing and convex in w.
    auto fn = [mass, s](double w) {
        return std::make_pair(schwarzschild_distance(mass, w) - s, 2.0 * std::sqrt(2.0 * mass + w * w));
    };
    const double hi = std::sqrt(s);
    const double guess = std::min(hi, s / (2.0 * std::sqrt(2.0 * mass) + std::sqrt(s)));
    boost::uintmax_t iters = 200;
    const double w = boost::math::tools::newton_raphson_iterate(fn, guess, 0.0, hi, 52, iters);
    return 2.0 * mass + w * w;
}

struct HermiteCell {
    std::size_t k;
    double t;
    double h;
};

HermiteCell locate(const HermiteShape& sh, double s) {
    auto it = std::upper_bound(sh.knots.begin(), sh.knots.end(), s);
    std::size_t k = (it == sh.knots.begin()) ? 0 : static_cast<std::size_t>(it - sh.knots.begin()) - 1;
    k = std::min(k, sh.knots.size() - 2);
    const double h = sh.knots[k + 1] - sh.knots[k];
    return {k, (s - sh.knots[k]) / h, h};
}

double hermite_value(const HermiteShape& sh, double s) {
    const auto [k, t, h] = locate(sh, s);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * sh.values[k] + h10 * h * sh.slopes[k] + h01 * sh.values[k + 1] + h11 * h * sh.slopes[k + 1];
}

double hermite_derivative(const HermiteShape& sh, double s) {
    const auto [k, t, h] = locate(sh, s);
    const double t2 = t * t;
    const double d00 = 6 * t2 - 6 * t;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = -6 * t2 + 6 * t;
    const double d11 = 3 * t2 - 2 * t;
    return (d00 * sh.values[k] + d01 * sh.values[k + 1]) / h + d10 * sh.slopes[k] + d11 * sh.slopes[k + 1];
}

// Fritsch-Carlson slopes, applied only where the caller left a NaN.
void fill_monotone_slopes(HermiteShape& sh) {
    const std::size_t n = sh.knots.size();
    if (sh.slopes.empty()) sh.slopes.assign(n, std::nan(""));
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = sh.knots[k + 1] - sh.knots[k];
        delta[k] = (sh.values[k + 1] - sh.values[k]) / h[k];
    }
    std::vector<double> d(n);
    if (n == 2) {
        d[0] = d[1] = delta[0];
    } else {
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (delta[k - 1] * delta[k] <= 0.0) {
                d[k] = 0.0;
            } else {
                const double w1 = 2 * h[k] + h[k - 1];
                const double w2 = h[k] + 2 * h[k - 1];
                d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
            }
        }
        auto end_slope = [](double h0, double h1, double del0, double del1) {
            double dd = ((2 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
            if (dd * del0 <= 0.0) {
                dd = 0.0;
            } else if (del0 * del1 <= 0.0 && std::abs(dd) > std::abs(3 * del0)) {
                dd = 3 * del0;
            }
            return dd;
        };
        d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (std::isnan(sh.slopes[k])) sh.slopes[k] = d[k];
    }
}

double shape_value(const PieceShape& shape, double s) {
    return std::visit(Overloaded{
                          [s](const PowerShape& p) { return p.coeff * std::pow(s, p.exponent); },
                          [](const ConstantShape& c) { return c.value; },
                          [s](const SqrtQuadraticShape& q) { return std::sqrt(q.c0 + q.c2 * s * s); },
                          [s](const SchwarzschildShape& sw) { return schwarzschild_areal_radius(sw.mass, s); },
                          [s](const HermiteShape& hs) { return hermite_value(hs, s); },
                      },
                      shape);
}

double shape_derivative(const PieceShape& shape, double s) {
    return std::visit(Overloaded{
                          [s](const PowerShape& p) {
                              return p.exponent == 0.0 ? 0.0 : p.coeff * p.exponent * std::pow(s, p.exponent - 1.0);
                          },
                          [](const ConstantShape&) { return 0.0; },
                          [s](const SqrtQuadraticShape& q) { return q.c2 * s / std::sqrt(q.c0 + q.c2 * s * s); },
                          [s](const SchwarzschildShape& sw) {
                              const double r = schwarzschild_areal_radius(sw.mass, s);
                              return std::sqrt(std::max(0.0, 1.0 - 2.0 * sw.mass / r));
                          },
                          [s](const HermiteShape& hs) { return hermite_derivative(hs, s); },
                      },
                      shape);
}

std::string fmt_num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void validate_piece(Piece& piece, std::size_t index) {
    const std::string where = "profile piece " + std::to_string(index) + " (" + kind_name(piece.shape) + "): ";
    if (!(piece.start < piece.end) || std::isnan(piece.start) || piece.start == -kInfinity) {
        throw DomainError(where + "range must satisfy finite start < end");
    }
    std::visit(Overloaded{
                   [&](const PowerShape& p) {
                       if (!(p.coeff > 0.0) || !std::isfinite(p.exponent) || piece.start < 0.0) {
                           throw DomainError(where + "needs coeff > 0 and start >= 0");
                       }
                   },
                   [&](const ConstantShape& c) {
                       if (!(c.value > 0.0) || !std::isfinite(c.value)) throw DomainError(where + "needs value > 0");
                   },
                   [&](const SqrtQuadraticShape& q) {
                       if (piece.end == kInfinity && q.c2 < 0.0) throw DomainError(where + "c2 < 0 on an unbounded range");
                       const double nearest = (piece.start <= 0.0 && piece.end >= 0.0)
                                                  ? 0.0
                                                  : std::min(std::abs(piece.start), std::abs(piece.end));
                       const double farthest = std::max(std::abs(piece.start), std::abs(piece.end));
                       const double lo = std::min(q.c0 + q.c2 * nearest * nearest,
                                                  farthest == kInfinity ? kInfinity : q.c0 + q.c2 * farthest * farthest);
                       if (lo < 0.0) throw DomainError(where + "radicand negative on range");
                   },
                   [&](const SchwarzschildShape& sw) {
                       if (!(sw.mass > 0.0) || piece.start < 0.0) throw DomainError(where + "needs mass > 0 and start >= 0");
                   },
                   [&](HermiteShape& hs) {
                       const std::size_t n = hs.knots.size();
                       if (n < 2 || hs.values.size() != n || (!hs.slopes.empty() && hs.slopes.size() != n)) {
                           throw DomainError(where + "needs >= 2 knots with matching values/slopes");
                       }
                       for (std::size_t k = 0; k + 1 < n; ++k) {
                           if (!(hs.knots[k] < hs.knots[k + 1])) throw DomainError(where + "knots must increase strictly");
                       }
                       if (hs.knots.front() != piece.start || hs.knots.back() != piece.end) {
                           throw DomainError(where + "knots must span exactly the piece range");
                       }
                       fill_monotone_slopes(hs);
                   },
               },
               piece.shape);
}

}  // namespace

std::string kind_name(const PieceShape& shape) {
    return std::visit(Overloaded{
                          [](const PowerShape&) { return std::string("power"); },
                          [](const ConstantShape&) { return std::string("constant"); },
                          [](const SqrtQuadraticShape&) { return std::string("sqrt_quadratic"); },
                          [](const SchwarzschildShape&) { return std::string("schwarzschild"); },
                          [](const HermiteShape&) { return std::string("hermite"); },
                      },
                      shape);
}

WarpProfile::WarpProfile(int m, std::vector<Piece> pieces) : dim_(Dimension::of(m)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw DomainError("profile needs at least one piece");
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        validate_piece(pieces_[k], k);
        if (k > 0) {
            const Piece& prev = pieces_[k - 1];
            const Piece& cur = pieces_[k];
            if (prev.end != cur.start) {
                throw DomainError("profile pieces " + std::to_string(k - 1) + " and " + std::to_string(k) +
                                  " are not contiguous");
            }
            const double left = shape_value(prev.shape, prev.end);
            const double right = shape_value(cur.shape, cur.start);
            if (std::abs(left - right) > 1e-12 * std::max(1.0, std::abs(left))) {
                throw DomainError("profile discontinuous at s = " + fmt_num(cur.start) + ": " + fmt_num(left) +
                                  " vs " + fmt_num(right));
            }
        }
    }
    const double f0 = shape_value(pieces_.front().shape, s_min());
    if (f0 < 0.0) throw DomainError("profile negative at s_min");
    pole_ = (f0 == 0.0);

    // Positivity away from the left end, sampled on finite pieces; unbounded shapes were checked analytically.
    for (const Piece& p : pieces_) {
        const double hi = (p.end == kInfinity) ? p.start + 1.0 : p.end;
        const int samples = std::holds_alternative<HermiteShape>(p.shape) ? 256 : 16;
        for (int j = 0; j <= samples; ++j) {
            const double s = p.start + (hi - p.start) * j / samples;
            if (s == s_min()) continue;
            if (!(shape_value(p.shape, s) > 0.0)) {
                throw DomainError("profile not positive at s = " + fmt_num(s));
            }
        }
    }
}

const Piece& WarpProfile::piece_at(double s) const {
    if (!contains(s)) {
        throw DomainError("s = " + fmt_num(s) + " outside profile domain [" + fmt_num(s_min()) + ", " +
                          fmt_num(s_max()) + "]");
    }
    for (const Piece& p : pieces_) {
        if (s < p.end) return p;
    }
    return pieces_.back();
}

double WarpProfile::operator()(double s) const { return shape_value(piece_at(s).shape, s); }

double WarpProfile::derivative(double s) const { return shape_derivative(piece_at(s).shape, s); }

std::vector<double> WarpProfile::breakpoints() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (k > 0) out.push_back(pieces_[k].start);
        if (const auto* hs = std::get_if<HermiteShape>(&pieces_[k].shape)) {
            out.insert(out.end(), hs->knots.begin() + 1, hs->knots.end() - 1);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

WarpProfile WarpProfile::rescaled(double lambda) const {
    if (!(lambda > 0.0)) throw DomainError("rescale factor must be positive");
    std::vector<Piece> out;
    out.reserve(pieces_.size());
    for (const Piece& p : pieces_) {
        Piece q;
        q.start = lambda * p.start;
        q.end = lambda * p.end;
        q.shape = std::visit(Overloaded{
                                 [lambda](const PowerShape& s) -> PieceShape {
                                     return PowerShape{s.coeff * std::pow(lambda, 1.0 - s.exponent), s.exponent};
                                 },
                                 [lambda](const ConstantShape& s) -> PieceShape { return ConstantShape{lambda * s.value}; },
                                 [lambda](const SqrtQuadraticShape& s) -> PieceShape {
                                     return SqrtQuadraticShape{lambda * lambda * s.c0, s.c2};
                                 },
                                 [lambda](const SchwarzschildShape& s) -> PieceShape {
                                     return SchwarzschildShape{lambda * s.mass};
                                 },
                                 [lambda](const HermiteShape& s) -> PieceShape {
                                     HermiteShape h = s;
                                     for (double& x : h.knots) x *= lambda;
                                     for (double& v : h.values) v *= lambda;
                                     return h;
                                 },
                             },
                             p.shape);
        out.push_back(std::move(q));
    }
    return WarpProfile(m(), std::move(out));
}

WarpProfile WarpProfile::euclidean(int m) { return WarpProfile(m, {Piece{0.0, kInfinity, PowerShape{1.0, 1.0}}}); }

WarpProfile WarpProfile::cylindrical_end(int m, double i) {
    if (!(i > 0.0)) throw DomainError("cylindrical_end: transition radius must be positive");
    HermiteShape bridge{{i, i + 1.0}, {i, i + 1.0}, {1.0, 0.0}};
    return WarpProfile(m, {
                              Piece{0.0, i, PowerShape{1.0, 1.0}},
                              Piece{i, i + 1.0, bridge},
                              Piece{i + 1.0, kInfinity, ConstantShape{i + 1.0}},
                          });
}

WarpProfile WarpProfile::neck_half() { return WarpProfile(3, {Piece{0.0, kInfinity, SqrtQuadraticShape{1.0, 1.0}}}); }

WarpProfile WarpProfile::capped_neck(double i) {
    if (!(i > 0.0)) throw DomainError("capped_neck: index must be positive");
    const SqrtQuadraticShape neck{1.0, 1.0};
    const double join = -i;
    // Slope 1 at the pole keeps the metric smooth there; the slope at -i matches the neck.
    HermiteShape bridge{{-2.0 * i, join},
                        {0.0, shape_value(neck, join)},
                        {1.0, shape_derivative(neck, join)}};
    return WarpProfile(3, {
                              Piece{-2.0 * i, join, bridge},
                              Piece{join, kInfinity, neck},
                          });
}

WarpProfile WarpProfile::schwarzschild(double mass) {
    return WarpProfile(3, {Piece{0.0, kInfinity, SchwarzschildShape{mass}}});
}

// ---------------------------------------------------------------------------
// JSON document form

namespace {

nlohmann::json number_or_null(double x) {
    if (std::isinf(x)) return nullptr;
    return x;
}

double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw ConfigError(where + ": missing numeric parameter '" + key + "'");
    }
    return obj.at(key).get<double>();
}

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

std::vector<double> number_list(const nlohmann::json& arr, const std::string& where, bool allow_null) {
    if (!arr.is_array()) throw ConfigError(where + ": expected an array");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (v.is_null() && allow_null) {
            out.push_back(std::nan(""));
        } else if (v.is_number()) {
            out.push_back(v.get<double>());
        } else {
            throw ConfigError(where + ": expected numbers");
        }
    }
    return out;
}

}  // namespace

nlohmann::json profile_to_json(const WarpProfile& profile) {
    nlohmann::json doc;
    doc["dimension"] = profile.m();
    doc["pieces"] = nlohmann::json::array();
    for (const Piece& p : profile.pieces()) {
        nlohmann::json j;
        j["kind"] = kind_name(p.shape);
        j["range"] = {p.start, number_or_null(p.end)};
        j["params"] = std::visit(Overloaded{
                                     [](const PowerShape& s) { return nlohmann::json{{"coeff", s.coeff}, {"exponent", s.exponent}}; },
                                     [](const ConstantShape& s) { return nlohmann::json{{"value", s.value}}; },
                                     [](const SqrtQuadraticShape& s) { return nlohmann::json{{"c0", s.c0}, {"c2", s.c2}}; },
                                     [](const SchwarzschildShape& s) { return nlohmann::json{{"mass", s.mass}}; },
                                     [](const HermiteShape& s) {
                                         return nlohmann::json{{"knots", s.knots}, {"values", s.values}, {"slopes", s.slopes}};
                                     },
                                 },
                                 p.shape);
        doc["pieces"].push_back(std::move(j));
    }
    return doc;
}

WarpProfile profile_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("profile document must be an object");
    reject_unknown(doc, {"dimension", "pieces"}, "profile");
    if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer()) {
        throw ConfigError("profile: 'dimension' must be an integer");
    }
    if (!doc.contains("pieces") || !doc.at("pieces").is_array() || doc.at("pieces").empty()) {
        throw ConfigError("profile: 'pieces' must be a non-empty array");
    }
    std::vector<Piece> pieces;
    std::size_t index = 0;
    for (const auto& j : doc.at("pieces")) {
        const std::string where = "profile.pieces[" + std::to_string(index++) + "]";
        if (!j.is_object()) throw ConfigError(where + ": must be an object");
        reject_unknown(j, {"kind", "range", "params"}, where);
        if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError(where + ": missing 'kind'");
        if (!j.contains("range") || !j.at("range").is_array() || j.at("range").size() != 2) {
            throw ConfigError(where + ": 'range' must be [start, end|null]");
        }
        const auto range = number_list(j.at("range"), where + ".range", true);
        if (std::isnan(range[0])) throw ConfigError(where + ": range start must be a number");
        Piece p;
        p.start = range[0];
        p.end = std::isnan(range[1]) ? kInfinity : range[1];
        const nlohmann::json params = j.value("params", nlohmann::json::object());
        if (!params.is_object()) throw ConfigError(where + ": 'params' must be an object");
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "power") {
            reject_unknown(params, {"coeff", "exponent"}, where);
            p.shape = PowerShape{require_number(params, "coeff", where), require_number(params, "exponent", where)};
        } else if (kind == "constant") {
            reject_unknown(params, {"value"}, where);
            p.shape = ConstantShape{require_number(params, "value", where)};
        } else if (kind == "sqrt_quadratic") {
            reject_unknown(params, {"c0", "c2"}, where);
            p.shape = SqrtQuadraticShape{require_number(params, "c0", where), require_number(params, "c2", where)};
        } else if (kind == "schwarzschild") {
            reject_unknown(params, {"mass"}, where);
            p.shape = SchwarzschildShape{require_number(params, "mass", where)};
        } else if (kind == "hermite") {
            reject_unknown(params, {"knots", "values", "slopes"}, where);
            if (!params.contains("knots") || !params.contains("values")) {
                throw ConfigError(where + ": hermite needs 'knots' and 'values'");
            }
            HermiteShape h;
            h.knots = number_list(params.at("knots"), where + ".knots", false);
            h.values = number_list(params.at("values"), where + ".values", false);
            if (params.contains("slopes")) h.slopes = number_list(params.at("slopes"), where + ".slopes", true);
            p.shape = std::move(h);
        } else {
            throw ConfigError(where + ": unknown kind '" + kind +
                              "' (expected power, constant, sqrt_quadratic, schwarzschild, hermite)");
        }
        pieces.push_back(std::move(p));
    }
    return WarpProfile(doc.at("dimension").get<int>(), std::move(pieces));
}

}  // namespace vcap
