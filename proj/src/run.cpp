#include "vcap/run.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vcap/errors.hpp"
#include "vcap/graph_capacity.hpp"
#include "vcap/mass.hpp"
#include "vcap/radial_fem.hpp"
#include "vcap/sequences.hpp"
#include "vcap/space.hpp"
#include "vcap/warped.hpp"

namespace vcap {

namespace {

std::string num(double x) { return format_number(x); }

Report base_report(const RunConfig& cfg) {
    Report r;
    r.set_meta("tool", "vcap");
    r.set_meta("version", kToolVersion);
    r.set_meta("config_hash", cfg.hash());
    r.set_meta("command", cfg.command);
    r.set_meta("seed", std::to_string(cfg.seed));
    r.set_meta("tol", num(cfg.tol));
    return r;
}

Report radial_report(const RunConfig& cfg) {
    Report r = base_report(cfg);
    RadialCondenser cond{profile_from_json(cfg.profile), cfg.s0, cfg.ends == "two" ? Ends::Two : Ends::One,
                         std::nullopt, cfg.mirror_s0};
    if (!cfg.mirror.is_null()) cond.mirror = profile_from_json(cfg.mirror);
    cond.validate();

    const CapacityEstimate est = capacity_estimate(cond, make_schedule(cond, cfg.truncation_radii, cfg.levels, cfg.grid_ratio));
    const CapacityValue closed = radial_capacity_detail(cond);
    const EndResistance C = end_resistance(cond.profile, cond.s0);

    r.set_meta("dimension", std::to_string(cond.profile.m()));
    r.set_meta("s0", num(cfg.s0));
    r.set_meta("ends", cfg.ends);
    r.set_meta("fem_divergent", est.divergent ? "true" : "false");
    r.set_meta("within_tol", est.error <= cfg.tol * std::max(est.cap, 1e-300) || est.cap == 0.0 ? "true" : "false");

    r.table.columns = {"L", "h", "cap", "energy"};
    for (const auto& row : est.rows) r.table.add_row({row.L, row.h, row.cap, row.energy});

    Table footer;
    footer.columns = {"quantity", "value", "error", "provenance"};
    footer.add_row({std::string("capacity"), est.cap, est.error, std::string("fem")});
    footer.add_row({std::string("capacity"), closed.value, closed.error, std::string("closed-form")});
    footer.add_row({std::string("end_resistance"), C.value, C.error, std::string("closed-form")});
    r.footer = std::move(footer);
    return r;
}

Report graph_report(const RunConfig& cfg) {
    Report r = base_report(cfg);
    const FiniteMetricMeasureSpace space = space_from_json(cfg.space);
    GraphCondenser cond{&space, space.indices_of(cfg.inner), space.indices_of(cfg.outer), cfg.m};
    const GraphPotential pot = graph_capacity(cond);
    r.set_meta("provenance", "graph");
    r.set_meta("dimension", std::to_string(cfg.m));
    r.set_meta("solver", solver_name(pot.solver));
    r.set_meta("free_nodes", std::to_string(pot.free_nodes));
    r.set_meta("iterations", std::to_string(pot.iterations));
    r.set_meta("max_harmonic_residual", num(pot.max_harmonic_residual));
    r.table.columns = {"label", "raw_energy", "capacity", "rim_radius"};
    r.table.add_row({cfg.label, pot.raw_energy, pot.capacity,
                     cfg.rim_radius ? Cell(*cfg.rim_radius) : Cell(std::monostate{})});
    return r;
}

template <class T>
void take(const nlohmann::json& j, const char* key, T& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

SequenceExperiment run_experiment(const RunConfig& cfg) {
    const nlohmann::json& j = cfg.experiment;
    if (cfg.example == "ex1") {
        Example1Config c;
        take(j, "m", c.m);
        take(j, "r", c.r);
        take(j, "i_list", c.i_list);
        take(j, "truncation_radii", c.truncation_radii);
        take(j, "levels", c.refinement_levels);
        take(j, "ramp_L", c.ramp_L);
        c.tol = cfg.tol;
        return run_example1(c);
    }
    if (cfg.example == "ex2") {
        Example2Config c;
        take(j, "i_list", c.i_list);
        take(j, "truncation_radii", c.truncation_radii);
        take(j, "levels", c.refinement_levels);
        c.tol = cfg.tol;
        return run_example2(c);
    }
    if (cfg.example == "ex3") {
        Example3Config c;
        take(j, "h", c.h);
        take(j, "i_list", c.i_list);
        take(j, "rim_radius", c.rim_radius);
        take(j, "strip", c.strip);
        take(j, "strip_width", c.strip_width);
        take(j, "strip_segments", c.strip_segments);
        take(j, "grid_study", c.grid_study);
        if (j.contains("alpha_coeff")) c.alpha_coeff = j.at("alpha_coeff").get<double>();
        c.tol = cfg.tol;
        return run_example3(c);
    }
    Example4Config c;
    take(j, "h", c.h);
    take(j, "i_list", c.i_list);
    take(j, "rim_radius", c.rim_radius);
    take(j, "r", c.r);
    c.tol = cfg.tol;
    return run_example4(c);
}

Report experiment_report(const RunConfig& cfg) {
    Report r = base_report(cfg);
    const SequenceExperiment ex = run_experiment(cfg);
    r.set_meta("experiment", ex.name);
    r.set_meta("capacity_provenance", ex.capacity_provenance);
    r.set_meta("limit_provenance", ex.limit_provenance);
    r.set_meta("limit_error", num(ex.limit_error));
    if (ex.limit_region_measure) r.set_meta("limit_region_measure", num(*ex.limit_region_measure));
    for (const auto& [k, v] : ex.diagnostics) r.set_meta("diag." + k, num(v));
    for (std::size_t k = 0; k < ex.notes.size(); ++k) r.set_meta("note" + std::to_string(k + 1), ex.notes[k]);

    r.table.columns = {"i", "capacity", "region_measure"};
    for (const auto& row : ex.rows) {
        r.table.add_row({static_cast<long long>(row.i), row.capacity,
                         row.region_measure ? Cell(*row.region_measure) : Cell(std::monostate{})});
    }
    Table footer;
    footer.columns = {"limit_capacity", "limsup_estimate", "verdict"};
    footer.add_row({ex.verdict.limit_capacity, ex.verdict.limsup_estimate, classification_name(ex.verdict.classification)});
    r.footer = std::move(footer);
    return r;
}

Report mass_report(const RunConfig& cfg) {
    Report r = base_report(cfg);
    const AFProfile af = AFProfile::check(profile_from_json(cfg.profile), cfg.s_af.value_or(cfg.radii.front()));
    const MassCurve curve = mass_curve(af, cfg.radii);
    r.set_meta("provenance", "closed-form");
    r.set_meta("af_check", af.af_check ? "true" : "false");
    r.set_meta("af_epsilon", num(af.epsilon));
    r.set_meta("af_witness_s", num(af.witness_s));
    r.table.columns = {"R", "A", "V", "cap", "m_iso", "m_cv", "m_cv_alt"};
    for (const auto& p : curve.points) r.table.add_row({p.R, p.A, p.V, p.cap, p.m_iso, p.m_cv, p.m_cv_alt});
    if (cfg.extrapolate) {
        const MassExtrapolation ext = extrapolate_mass(curve);
        Table footer;
        footer.columns = {"quantity", "value", "error", "provenance"};
        footer.add_row({std::string("m_iso"), ext.m_iso, ext.m_iso_error, std::string("closed-form")});
        footer.add_row({std::string("m_cv"), ext.m_cv, ext.m_cv_error, std::string("closed-form")});
        footer.add_row({std::string("m_cv_form_gap"), ext.max_cv_form_gap, 0.0, std::string("closed-form")});
        r.footer = std::move(footer);
    }
    return r;
}

}  // namespace

Report build_report(const RunConfig& cfg) {
    if (cfg.command == "capacity-radial") return radial_report(cfg);
    if (cfg.command == "capacity-graph") return graph_report(cfg);
    if (cfg.command == "experiment") return experiment_report(cfg);
    if (cfg.command == "mass") return mass_report(cfg);
    throw ConfigError("unknown command `" + cfg.command + "`");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string text;
    try {
        text = build_report(cfg).render(cfg.format);
    } catch (const ConfigError& e) {
        err << "vcap: configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "vcap: computation error: " << e.what() << '\n';
        return kExitComputation;
    }
    if (cfg.out) {
        std::ofstream f(*cfg.out);
        if (!f || !(f << text)) {
            err << "vcap: cannot write `" << cfg.out->string() << "`\n";
            return kExitComputation;
        }
    } else {
        out << text;
    }
    return kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variational capacity of warped products and finite metric-measure spaces", "vcap"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::string format;
    double tol = 0.0;
    long long seed = -1;
    app.add_option("--config", config_path, "JSON configuration document");
    app.add_option("--out", out_path, "report path (default: standard output)");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", tol, "tolerance (positive)");
    app.add_option("--seed", seed, "seed for randomized procedures")->check(CLI::NonNegativeNumber);

    app.add_subcommand("capacity-radial", "capacity of a ball in a warped product (FEM and closed form)");
    app.add_subcommand("capacity-graph", "condenser capacity on a finite metric-measure space");
    auto* exp = app.add_subcommand("experiment", "converging-sequence experiment ex1..ex4");
    std::string example;
    exp->add_option("example", example, "ex1 | ex2 | ex3 | ex4")->check(CLI::IsMember({"ex1", "ex2", "ex3", "ex4"}));
    app.add_subcommand("mass", "isoperimetric and capacity-volume mass curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "vcap: " << e.what() << '\n';
        return kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        nlohmann::json doc = nlohmann::json::object();
        std::filesystem::path base;
        if (!config_path.empty()) {
            doc = load_json_file(config_path);
            if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
            base = std::filesystem::path(config_path).parent_path();
        }
        if (doc.contains("command") && doc.at("command") != command) {
            throw ConfigError("configuration is for command " + doc.at("command").dump() + ", not `" + command + "`");
        }
        doc["command"] = command;
        if (!example.empty()) {
            if (doc.contains("example") && doc.at("example") != example) {
                throw ConfigError("configuration is for example " + doc.at("example").dump() + ", not `" + example + "`");
            }
            doc["example"] = example;
        }
        if (!out_path.empty()) doc["out"] = std::filesystem::absolute(out_path).string();
        if (!format.empty()) doc["format"] = format;
        if (app.count("--tol")) doc["tol"] = tol;
        if (seed >= 0) doc["seed"] = seed;
        const RunConfig cfg = parse_config(doc, base);
        return run(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "vcap: configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace vcap
