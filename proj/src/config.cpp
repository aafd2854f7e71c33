#include "vcap/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "vcap/errors.hpp"

namespace vcap {

namespace {

enum class Kind { String, Number, Positive, Integer, Bool, Numbers, Integers, Strings, Object };

struct KeySpec {
    Kind kind;
    std::set<std::string> commands;  ///< empty: all commands
};

const std::map<std::string, KeySpec>& schema() {
    static const std::map<std::string, KeySpec> s = {
        {"command", {Kind::String, {}}},
        {"input", {Kind::String, {}}},
        {"out", {Kind::String, {}}},
        {"format", {Kind::String, {}}},
        {"tol", {Kind::Positive, {}}},
        {"seed", {Kind::Integer, {}}},
        {"profile", {Kind::Object, {"capacity-radial", "mass"}}},
        {"s0", {Kind::Number, {"capacity-radial"}}},
        {"ends", {Kind::String, {"capacity-radial"}}},
        {"mirror", {Kind::Object, {"capacity-radial"}}},
        {"mirror_s0", {Kind::Number, {"capacity-radial"}}},
        {"truncation_radii", {Kind::Numbers, {"capacity-radial", "experiment"}}},
        {"levels", {Kind::Integer, {"capacity-radial", "experiment"}}},
        {"grid_ratio", {Kind::Positive, {"capacity-radial"}}},
        {"space", {Kind::Object, {"capacity-graph"}}},
        {"inner", {Kind::Strings, {"capacity-graph"}}},
        {"outer", {Kind::Strings, {"capacity-graph"}}},
        {"m", {Kind::Integer, {"capacity-graph", "experiment"}}},
        {"rim_radius", {Kind::Positive, {"capacity-graph", "experiment"}}},
        {"label", {Kind::String, {"capacity-graph"}}},
        {"example", {Kind::String, {"experiment"}}},
        {"i_list", {Kind::Integers, {"experiment"}}},
        {"r", {Kind::Positive, {"experiment"}}},
        {"ramp_L", {Kind::Positive, {"experiment"}}},
        {"h", {Kind::Positive, {"experiment"}}},
        {"strip", {Kind::Bool, {"experiment"}}},
        {"strip_width", {Kind::Positive, {"experiment"}}},
        {"strip_segments", {Kind::Integer, {"experiment"}}},
        {"alpha_coeff", {Kind::Number, {"experiment"}}},
        {"grid_study", {Kind::Numbers, {"experiment"}}},
        {"radii", {Kind::Numbers, {"mass"}}},
        {"s_af", {Kind::Positive, {"mass"}}},
        {"extrapolate", {Kind::Bool, {"mass"}}},
    };
    return s;
}

const std::map<std::string, std::set<std::string>>& example_keys() {
    static const std::map<std::string, std::set<std::string>> k = {
        {"ex1", {"m", "r", "i_list", "truncation_radii", "levels", "ramp_L"}},
        {"ex2", {"i_list", "truncation_radii", "levels"}},
        {"ex3", {"h", "i_list", "rim_radius", "strip", "strip_width", "strip_segments", "alpha_coeff", "grid_study"}},
        {"ex4", {"h", "i_list", "rim_radius", "r"}},
    };
    return k;
}

const std::vector<std::string> kCommands{"capacity-radial", "capacity-graph", "experiment", "mass"};

std::size_t levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

const char* kind_text(Kind k) {
    switch (k) {
        case Kind::String: return "a string";
        case Kind::Number: return "a finite number";
        case Kind::Positive: return "a positive number";
        case Kind::Integer: return "an integer";
        case Kind::Bool: return "true or false";
        case Kind::Numbers: return "an array of finite numbers";
        case Kind::Integers: return "an array of integers";
        case Kind::Strings: return "an array of strings";
        case Kind::Object: return "an object";
    }
    return "";
}

bool finite_number(const nlohmann::json& v) { return v.is_number() && std::isfinite(v.get<double>()); }

bool matches(Kind k, const nlohmann::json& v) {
    auto all = [&](auto pred) { return v.is_array() && std::all_of(v.begin(), v.end(), pred); };
    switch (k) {
        case Kind::String: return v.is_string();
        case Kind::Number: return finite_number(v);
        case Kind::Positive: return finite_number(v) && v.get<double>() > 0.0;
        case Kind::Integer: return v.is_number_integer();
        case Kind::Bool: return v.is_boolean();
        case Kind::Numbers: return all([](const nlohmann::json& x) { return finite_number(x); });
        case Kind::Integers: return all([](const nlohmann::json& x) { return x.is_number_integer(); });
        case Kind::Strings: return all([](const nlohmann::json& x) { return x.is_string(); });
        case Kind::Object: return v.is_object();
    }
    return false;
}

std::string join_errors(const std::vector<std::string>& errors) {
    std::ostringstream os;
    os << "invalid configuration (" << errors.size() << (errors.size() == 1 ? " problem" : " problems") << ")";
    for (const auto& e : errors) os << "\n  - " << e;
    return os.str();
}

}  // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, spec] : schema()) k.push_back(name);
        return k;
    }();
    return keys;
}

std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& k : known_keys()) {
        // a truncated or extended spelling of a key counts as one edit
        const bool prefix = k.size() >= 3 && key.size() >= 3 && (key.starts_with(k) || k.starts_with(key));
        const std::size_t d = prefix && key != k ? 1 : levenshtein(key, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical.dump()); }

nlohmann::json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open `" + path.string() + "`");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("`" + path.string() + "` is not valid JSON: " + e.what());
    }
}

RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    std::vector<std::string> errors;
    RunConfig cfg;

    if (!doc.contains("command")) {
        errors.push_back("missing required key `command`");
    } else if (!doc.at("command").is_string() ||
               std::find(kCommands.begin(), kCommands.end(), doc.at("command").get<std::string>()) == kCommands.end()) {
        errors.push_back("unknown command " + doc.at("command").dump() +
                         " (expected capacity-radial, capacity-graph, experiment or mass)");
    } else {
        cfg.command = doc.at("command").get<std::string>();
    }

    for (const auto& [key, value] : doc.items()) {
        const auto it = schema().find(key);
        if (it == schema().end()) {
            errors.push_back("unknown key `" + key + "` (did you mean `" + nearest_key(key) + "`?)");
            continue;
        }
        if (!matches(it->second.kind, value)) {
            errors.push_back("key `" + key + "`: expected " + kind_text(it->second.kind) + ", got " + value.dump());
            continue;
        }
        if (!cfg.command.empty() && !it->second.commands.empty() && !it->second.commands.count(cfg.command)) {
            errors.push_back("key `" + key + "` does not apply to command `" + cfg.command + "`");
        }
    }
    if (!errors.empty() || cfg.command.empty()) throw ConfigError(join_errors(errors));

    auto get = [&](const char* key) -> const nlohmann::json* { return doc.contains(key) ? &doc.at(key) : nullptr; };
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };

    if (auto v = get("format")) {
        cfg.format = v->get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json") {
            errors.push_back("key `format`: expected \"csv\" or \"json\", got " + v->dump());
        }
    }
    if (auto v = get("tol")) cfg.tol = v->get<double>();
    if (auto v = get("seed")) {
        if (v->get<long long>() < 0) errors.push_back("key `seed`: must be non-negative");
        else cfg.seed = v->get<std::uint64_t>();
    }
    if (auto v = get("out")) cfg.out = resolve(v->get<std::string>());

    nlohmann::json input_doc;
    if (auto v = get("input")) {
        cfg.input = resolve(v->get<std::string>());
        if (!std::filesystem::exists(*cfg.input)) {
            errors.push_back("key `input`: file `" + cfg.input->string() + "` does not exist");
        } else {
            try {
                input_doc = load_json_file(*cfg.input);
            } catch (const ConfigError& e) {
                errors.push_back(std::string("key `input`: ") + e.what());
            }
        }
    }

    // Input documents stand in for the inline `profile` / `space` object.
    auto document = [&](const char* inline_key) -> nlohmann::json {
        const bool has_inline = doc.contains(inline_key);
        if (has_inline && cfg.input) {
            errors.push_back(std::string("keys `input` and `") + inline_key + "` are mutually exclusive");
            return nullptr;
        }
        if (has_inline) return doc.at(inline_key);
        if (cfg.input) return input_doc;
        errors.push_back(std::string("missing required key `") + inline_key + "` (or `input`)");
        return nullptr;
    };
    auto required = [&](const char* key) {
        if (!doc.contains(key)) errors.push_back(std::string("missing required key `") + key + "`");
        return doc.contains(key);
    };

    nlohmann::json canon = nlohmann::json::object();
    canon["command"] = cfg.command;
    canon["format"] = cfg.format;
    canon["tol"] = cfg.tol;
    canon["seed"] = cfg.seed;

    if (cfg.command == "capacity-radial" || cfg.command == "mass") {
        cfg.profile = document("profile");
        canon["profile"] = cfg.profile;
    }

    if (cfg.command == "capacity-radial") {
        if (required("s0")) cfg.s0 = doc.at("s0").get<double>();
        if (auto v = get("ends")) {
            cfg.ends = v->get<std::string>();
            if (cfg.ends != "one" && cfg.ends != "two") errors.push_back("key `ends`: expected \"one\" or \"two\"");
        }
        if (auto v = get("mirror")) {
            cfg.mirror = *v;
            if (cfg.ends != "two") errors.push_back("key `mirror` needs `ends` = \"two\"");
        }
        if (auto v = get("mirror_s0")) {
            cfg.mirror_s0 = v->get<double>();
            if (cfg.mirror.is_null()) errors.push_back("key `mirror_s0` needs `mirror`");
        }
        if (auto v = get("truncation_radii")) {
            cfg.truncation_radii = v->get<std::vector<double>>();
        } else {
            const double scale = std::max(cfg.s0, 1.0);
            cfg.truncation_radii = {1e2 * scale, 1e3 * scale, 1e4 * scale};
        }
        if (cfg.truncation_radii.size() < 3) errors.push_back("key `truncation_radii`: need at least 3 radii");
        if (!std::is_sorted(cfg.truncation_radii.begin(), cfg.truncation_radii.end()) ||
            std::adjacent_find(cfg.truncation_radii.begin(), cfg.truncation_radii.end()) != cfg.truncation_radii.end()) {
            errors.push_back("key `truncation_radii`: must be strictly increasing");
        }
        if (auto v = get("levels")) cfg.levels = v->get<int>();
        if (cfg.levels < 2) errors.push_back("key `levels`: need at least 2 refinement levels");
        if (auto v = get("grid_ratio")) cfg.grid_ratio = v->get<double>();
        if (!(cfg.grid_ratio > 1.0 && cfg.grid_ratio <= 1.5)) errors.push_back("key `grid_ratio`: must lie in (1, 1.5]");
        canon["s0"] = cfg.s0;
        canon["ends"] = cfg.ends;
        canon["mirror"] = cfg.mirror;
        canon["mirror_s0"] = cfg.mirror_s0;
        canon["truncation_radii"] = cfg.truncation_radii;
        canon["levels"] = cfg.levels;
        canon["grid_ratio"] = cfg.grid_ratio;
    } else if (cfg.command == "capacity-graph") {
        cfg.space = document("space");
        if (required("inner")) cfg.inner = doc.at("inner").get<std::vector<std::string>>();
        if (required("outer")) cfg.outer = doc.at("outer").get<std::vector<std::string>>();
        if (auto v = get("m")) cfg.m = v->get<int>();
        if (cfg.m < 2) errors.push_back("key `m`: dimension must be at least 2");
        if (auto v = get("rim_radius")) cfg.rim_radius = v->get<double>();
        if (auto v = get("label")) cfg.label = v->get<std::string>();
        canon["space"] = cfg.space;
        canon["inner"] = cfg.inner;
        canon["outer"] = cfg.outer;
        canon["m"] = cfg.m;
        canon["rim_radius"] = cfg.rim_radius ? nlohmann::json(*cfg.rim_radius) : nlohmann::json(nullptr);
        canon["label"] = cfg.label;
    } else if (cfg.command == "experiment") {
        if (cfg.input) errors.push_back("key `input` does not apply to command `experiment`");
        if (required("example")) {
            cfg.example = doc.at("example").get<std::string>();
            const auto ex = example_keys().find(cfg.example);
            if (ex == example_keys().end()) {
                errors.push_back("key `example`: expected ex1, ex2, ex3 or ex4, got \"" + cfg.example + "\"");
            } else {
                cfg.experiment = nlohmann::json::object();
                for (const auto& [key, value] : doc.items()) {
                    const auto& spec = schema().at(key);
                    if (spec.commands.size() == 0 || key == "example") continue;
                    if (!ex->second.count(key)) {
                        errors.push_back("key `" + key + "` does not apply to experiment " + cfg.example);
                    } else {
                        cfg.experiment[key] = value;
                    }
                }
                if (cfg.experiment.contains("i_list")) {
                    const auto il = cfg.experiment.at("i_list").get<std::vector<long long>>();
                    if (il.size() < 3) errors.push_back("key `i_list`: need at least 3 sequence indices");
                    if (std::any_of(il.begin(), il.end(), [](long long i) { return i < 1 || i > 1000000; })) {
                        errors.push_back("key `i_list`: indices must lie in [1, 1000000]");
                    }
                }
                for (const char* k : {"levels", "strip_segments"}) {
                    if (cfg.experiment.contains(k) && cfg.experiment.at(k).get<long long>() < 1) {
                        errors.push_back(std::string("key `") + k + "`: must be positive");
                    }
                }
                if (cfg.experiment.contains("m") && cfg.experiment.at("m").get<long long>() < 3) {
                    errors.push_back("key `m`: ex1 needs dimension at least 3");
                }
                canon["example"] = cfg.example;
                canon["experiment"] = cfg.experiment;
            }
        }
    } else if (cfg.command == "mass") {
        if (required("radii")) cfg.radii = doc.at("radii").get<std::vector<double>>();
        if (cfg.radii.empty() && doc.contains("radii")) errors.push_back("key `radii`: must not be empty");
        if (std::any_of(cfg.radii.begin(), cfg.radii.end(), [](double r) { return !(r > 0.0); })) {
            errors.push_back("key `radii`: radii must be positive");
        }
        if (!std::is_sorted(cfg.radii.begin(), cfg.radii.end()) ||
            std::adjacent_find(cfg.radii.begin(), cfg.radii.end()) != cfg.radii.end()) {
            errors.push_back("key `radii`: must be strictly increasing");
        }
        if (auto v = get("s_af")) cfg.s_af = v->get<double>();
        if (auto v = get("extrapolate")) cfg.extrapolate = v->get<bool>();
        canon["radii"] = cfg.radii;
        canon["s_af"] = cfg.s_af ? nlohmann::json(*cfg.s_af) : nlohmann::json(nullptr);
        canon["extrapolate"] = cfg.extrapolate;
    }

    if (!errors.empty()) throw ConfigError(join_errors(errors));
    cfg.canonical = std::move(canon);
    return cfg;
}

}  // namespace vcap
