#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace vcap {

/// Validated run description. Every recognised key is listed in `known_keys()`.
struct RunConfig {
    std::string command;  ///< capacity-radial | capacity-graph | experiment | mass
    std::optional<std::filesystem::path> input;
    std::optional<std::filesystem::path> out;
    std::string format = "csv";
    double tol = 1e-3;
    std::uint64_t seed = 0;

    // capacity-radial, mass
    nlohmann::json profile;  ///< profile document (inline or loaded from `input`)
    double s0 = 0.0;
    std::string ends = "one";
    nlohmann::json mirror;  ///< optional second-end profile, null when absent
    double mirror_s0 = 0.0;
    std::vector<double> truncation_radii;
    int levels = 3;
    double grid_ratio = 1.05;

    // capacity-graph
    nlohmann::json space;
    std::vector<std::string> inner;
    std::vector<std::string> outer;
    int m = 2;
    std::optional<double> rim_radius;
    std::string label = "K";

    // experiment
    std::string example;
    nlohmann::json experiment;  ///< example-specific keys as given

    // mass
    std::vector<double> radii;
    std::optional<double> s_af;
    bool extrapolate = true;

    /// Effective document (defaults filled, paths resolved, `out` dropped); hashed for reports.
    nlohmann::json canonical;
    std::string hash() const;
};

const std::vector<std::string>& known_keys();

/// Closest known key by edit distance.
std::string nearest_key(const std::string& key);

/// Validates `doc` strictly. Relative paths resolve against `base_dir`. Throws ConfigError
/// listing every offending key.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Reads and parses a JSON file; ConfigError when it is missing or malformed.
nlohmann::json load_json_file(const std::filesystem::path& path);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace vcap
