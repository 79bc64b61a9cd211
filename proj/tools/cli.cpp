#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "sicbell/graph_bounds.hpp"
#include "sicbell/quantum_core.hpp"

namespace sicbell::cli {

namespace fs = std::filesystem;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                    std::vector<std::string>& errors) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            errors.push_back("unknown field '" + where + it.key() + "'");
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& dst, const std::string& where, std::vector<std::string>& errors) {
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return;
    }
    try {
        dst = obj.at(key).get<T>();
    } catch (const json::exception&) {
        errors.push_back("field '" + where + key + "' has the wrong type");
    }
}

template <typename T>
void read_optional(const json& obj, const char* key, std::optional<T>& dst, const std::string& where,
                   std::vector<std::string>& errors) {
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return;
    }
    T value{};
    read(obj, key, value, where, errors);
    dst = value;
}

void validate(const RunConfig& c, std::vector<std::string>& errors) {
    if (!(c.visibility >= 0.0 && c.visibility <= 1.0)) {
        errors.push_back("noise.visibility must lie in [0, 1]");
    }
    if (!(c.crosstalk >= 0.0 && c.crosstalk < 1.0)) {
        errors.push_back("noise.crosstalk must lie in [0, 1)");
    }
    if (c.spectrum) {
        const auto& s = *c.spectrum;
        if (s.width && s.amplitudes) {
            errors.push_back("noise.spectrum: give either width or amplitudes, not both");
        }
        if (!s.width && !s.amplitudes) {
            errors.push_back("noise.spectrum needs width or amplitudes");
        }
        if (s.width && !(*s.width > 0.0)) {
            errors.push_back("noise.spectrum.width must be positive");
        }
        if (s.amplitudes && !s.modes) {
            errors.push_back("noise.spectrum.amplitudes requires noise.spectrum.modes");
        }
    }
    if (!(c.pair_rate > 0.0)) {
        errors.push_back("plan.pair_rate must be positive");
    }
    if (!(c.integration_time > 0.0)) {
        errors.push_back("plan.integration_time must be positive");
    }
    if (c.target_sigma && !(*c.target_sigma > 0.0)) {
        errors.push_back("plan.target_sigma must be positive");
    }
    if (c.format != "json" && c.format != "csv") {
        errors.push_back("output.format must be json or csv");
    }
}

std::string weight_summary(const std::vector<Rational>& weights) {
    std::map<Rational, std::size_t, std::greater<>> groups;
    for (const auto& w : weights) {
        ++groups[w];
    }
    std::string out;
    for (const auto& [w, k] : groups) {
        if (!out.empty()) {
            out += "/";
        }
        out += w.to_string() + "×" + std::to_string(k);
    }
    return out;
}

std::optional<fs::path> output_dir(const std::optional<std::string>& flag, const std::optional<std::string>& config) {
    if (flag) {
        return fs::path(*flag);
    }
    if (config) {
        return fs::path(*config);
    }
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
        return fs::path(env);
    }
    return std::nullopt;
}

void write_file(const fs::path& path, const std::string& contents) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot write '" + path.string() + "'");
    }
    f << contents;
}

std::string lowercase(std::string s) {
    for (auto& ch : s) {
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    return s;
}

RunConfig load_config(const std::optional<std::string>& path) {
    RunConfig cfg;
    if (!path) {
        return cfg;
    }
    std::ifstream in(*path);
    if (!in) {
        throw std::invalid_argument("cannot open config '" + *path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config '" + *path + "': " + e.what());
    }
    std::vector<std::string> errors;
    cfg = parse_run_config(doc, errors);
    if (!errors.empty()) {
        std::string msg = "invalid config '" + *path + "':";
        for (const auto& e : errors) {
            msg += "\n  - " + e;
        }
        throw std::invalid_argument(msg);
    }
    return cfg;
}

}  // namespace

RunConfig parse_run_config(const json& doc, std::vector<std::string>& errors) {
    RunConfig c;
    if (!doc.is_object()) {
        errors.push_back("config must be a JSON object");
        return c;
    }
    reject_unknown(doc, {"set", "noise", "target_beta", "plan", "bootstrap_replicates", "output"}, "", errors);
    read(doc, "set", c.set, "", errors);
    read_optional(doc, "target_beta", c.target_beta, "", errors);
    read(doc, "bootstrap_replicates", c.bootstrap_replicates, "", errors);
    if (doc.contains("noise")) {
        const auto& n = doc.at("noise");
        reject_unknown(n, {"visibility", "crosstalk", "spectrum", "procrustean"}, "noise.", errors);
        read(n, "visibility", c.visibility, "noise.", errors);
        read(n, "crosstalk", c.crosstalk, "noise.", errors);
        read(n, "procrustean", c.procrustean, "noise.", errors);
        if (n.contains("spectrum") && !n.at("spectrum").is_null()) {
            const auto& s = n.at("spectrum");
            reject_unknown(s, {"width", "modes", "amplitudes"}, "noise.spectrum.", errors);
            SpectrumConfig sc;
            read_optional(s, "width", sc.width, "noise.spectrum.", errors);
            read_optional(s, "modes", sc.modes, "noise.spectrum.", errors);
            read_optional(s, "amplitudes", sc.amplitudes, "noise.spectrum.", errors);
            c.spectrum = sc;
        }
    }
    if (doc.contains("plan")) {
        const auto& p = doc.at("plan");
        reject_unknown(p, {"pair_rate", "integration_time", "seed", "target_sigma"}, "plan.", errors);
        read(p, "pair_rate", c.pair_rate, "plan.", errors);
        read(p, "integration_time", c.integration_time, "plan.", errors);
        read(p, "seed", c.seed, "plan.", errors);
        read_optional(p, "target_sigma", c.target_sigma, "plan.", errors);
    }
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        reject_unknown(o, {"dir", "format"}, "output.", errors);
        read_optional(o, "dir", c.output_dir, "output.", errors);
        read(o, "format", c.format, "output.", errors);
    }
    validate(c, errors);
    return c;
}

json run_config_to_json(const RunConfig& c) {
    json noise{{"visibility", c.visibility}, {"crosstalk", c.crosstalk}, {"procrustean", c.procrustean}};
    if (c.spectrum) {
        json s = json::object();
        if (c.spectrum->width) s["width"] = *c.spectrum->width;
        if (c.spectrum->modes) s["modes"] = *c.spectrum->modes;
        if (c.spectrum->amplitudes) s["amplitudes"] = *c.spectrum->amplitudes;
        noise["spectrum"] = s;
    }
    json plan{{"pair_rate", c.pair_rate}, {"integration_time", c.integration_time}, {"seed", c.seed}};
    if (c.target_sigma) plan["target_sigma"] = *c.target_sigma;
    json doc{{"set", c.set}, {"noise", noise}, {"plan", plan}, {"bootstrap_replicates", c.bootstrap_replicates}};
    if (c.target_beta) doc["target_beta"] = *c.target_beta;
    return doc;
}

SicSet resolve_set(const std::string& name_or_path) {
    const auto names = catalog_names();
    if (std::find(names.begin(), names.end(), lowercase(name_or_path)) != names.end()) {
        return catalog_set(name_or_path);
    }
    if (fs::exists(name_or_path) || name_or_path.ends_with(".json")) {
        return load_set_file(name_or_path);
    }
    return catalog_set(name_or_path);
}

ResolvedModel resolve_model(const RunConfig& config) {
    std::vector<std::string> errors;
    validate(config, errors);
    if (!errors.empty()) {
        throw std::invalid_argument(errors.front());
    }
    SicSet set = resolve_set(config.set);
    const auto report = verify_set(set);
    if (!report.passed()) {
        throw std::invalid_argument("set '" + set.name + "' failed validation: " + report.failures().front());
    }
    NoiseConfig noise;
    noise.visibility = config.visibility;
    noise.crosstalk = config.crosstalk;
    double filter_success = 1.0;
    if (config.spectrum) {
        const auto& sc = *config.spectrum;
        const auto modes = sc.modes.value_or(default_modes(set.dimension));
        SchmidtSpectrum spec = sc.width ? spiral_spectrum(*sc.width, modes) : SchmidtSpectrum{modes, *sc.amplitudes};
        if (config.procrustean) {
            auto filtered = procrustean_filter(spec);
            filter_success = filtered.success_probability;
            spec = filtered.spectrum;
        }
        noise.spectrum = spec;
    }
    if (config.target_beta) {
        NoiseConfig hi = noise;
        NoiseConfig lo = noise;
        hi.visibility = 1.0;
        lo.visibility = 0.0;
        const auto nh = apply_noise(set, hi);
        const auto nl = apply_noise(set, lo);
        const double b1 = bell_value(set, nh.state, nh.measurements).beta;
        const double b0 = bell_value(set, nl.state, nl.measurements).beta;
        const double t = *config.target_beta;
        if (!(t >= std::min(b0, b1) - 1e-12 && t <= std::max(b0, b1) + 1e-12) || b1 == b0) {
            throw std::invalid_argument("target_beta " + std::to_string(t) + " is not reachable: the model spans [" +
                                        std::to_string(b0) + ", " + std::to_string(b1) + "]");
        }
        noise.visibility = std::clamp((t - b0) / (b1 - b0), 0.0, 1.0);
    }
    NoisyModel model = apply_noise(set, noise);
    return {std::move(set), std::move(noise), std::move(model), filter_success};
}

SimulationOutcome run_simulation(const RunConfig& config) {
    SimulationOutcome o{resolve_model(config), {}, {}, {}, {}, 0.0, 0.0, {}};
    const SicSet& set = o.resolved.set;
    const WeightedGraph graph = orthogonality_graph(set);
    const auto predicted = probability_table(graph, o.resolved.model.state, o.resolved.model.measurements);
    o.beta_model = bell_functional(graph, predicted);

    const double rate = config.pair_rate * o.resolved.filter_success;
    double time = config.integration_time;
    if (config.target_sigma) {
        time = exposure_for_sigma(graph, predicted, *config.target_sigma) / rate;
    }
    o.plan = make_plan(set, rate, time, config.seed);
    o.record = simulate_counts(o.plan, predicted.values);
    o.measured = estimate_probabilities(o.record);

    const Rational alpha = max_weight_independent_set(graph).weight;
    o.report = estimate_beta(o.measured, graph, alpha);
    if (config.bootstrap_replicates > 0) {
        o.report.bootstrap_p_value =
            bootstrap_p_value(o.record, graph, alpha.to_double(), config.bootstrap_replicates);
        o.report.bootstrap_replicates = config.bootstrap_replicates;
    }
    const auto ideal = bell_value(set, max_entangled_state(set.dimension));
    o.ideal = ideal.table;
    o.beta_ideal = ideal.beta;
    return o;
}

json simulation_to_json(const SimulationOutcome& o) {
    json doc;
    doc["set"] = o.resolved.set.name;
    doc["seed"] = o.plan.seed;
    doc["visibility"] = o.resolved.noise.visibility;
    doc["crosstalk"] = o.resolved.noise.crosstalk;
    if (o.resolved.noise.spectrum) {
        doc["spectrum"] = to_json(*o.resolved.noise.spectrum);
    }
    doc["filter_success"] = o.resolved.filter_success;
    doc["pair_rate"] = o.plan.pair_rate;
    doc["integration_time"] = o.plan.integration_time;
    doc["exposure"] = o.plan.exposure();
    doc["beta_model"] = o.beta_model;
    doc["beta_ideal"] = o.beta_ideal;
    doc["report"] = to_json(o.report);
    doc["counts"] = to_json(o.record);
    return doc;
}

namespace {

struct Common {
    std::optional<std::string> set;
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

RunConfig merged_config(const Common& c) {
    RunConfig cfg = load_config(c.config);
    if (c.set) cfg.set = *c.set;
    if (c.seed) cfg.seed = *c.seed;
    if (c.format) cfg.format = *c.format;
    return cfg;
}

int cmd_catalog(const Common& c, std::ostream& out) {
    const SicSet set = resolve_set(c.set.value_or("yo13"));
    const auto report = verify_set(set);
    std::size_t edges = 0;
    bool graph_ok = true;
    try {
        edges = orthogonality_graph(set).edges().size();
    } catch (const std::invalid_argument&) {
        graph_ok = false;
    }
    if (c.format.value_or("text") == "json") {
        json doc = set_to_json(set);
        doc["edges"] = edges;
        json checks = json::array();
        for (const auto& ch : report.checks) {
            checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
        }
        doc["checks"] = checks;
        doc["valid"] = report.passed();
        out << doc.dump(2) << "\n";
    } else {
        out << set.name << ": " << set.size() << " vectors, d=" << set.dimension;
        if (graph_ok) out << ", " << edges << " edges";
        if (!set.contexts.empty()) out << ", " << set.contexts.size() << " contexts";
        out << ", weights " << weight_summary(set.weights) << "\n";
        for (const auto& ch : report.checks) {
            out << "  [" << (ch.passed ? "ok" : "FAIL") << "] " << ch.name;
            if (!ch.detail.empty()) out << ":" << (ch.detail.front() == ' ' ? "" : " ") << ch.detail;
            out << "\n";
        }
    }
    if (auto dir = output_dir(c.out, std::nullopt)) {
        write_file(*dir / (lowercase(set.name) + ".json"), set_to_json(set).dump(2) + "\n");
    }
    return report.passed() ? kExitOk : kExitValidation;
}

int cmd_bounds(const Common& c, std::ostream& out) {
    const SicSet set = resolve_set(c.set.value_or("yo13"));
    const auto report = bounds_report(set);
    const json doc = to_json(report);
    if (c.format.value_or("text") == "json") {
        out << doc.dump(2) << "\n";
    } else if (c.format == "csv") {
        out << "set,alpha,theta,theta_gap,beta_ideal,theta_margin,quantum_margin\n"
            << set.name << "," << report.alpha << "," << std::setprecision(12) << report.theta << ","
            << report.theta_gap << "," << report.beta_ideal << "," << report.theta_margin() << ","
            << report.quantum_margin() << "\n";
    } else {
        out << std::setprecision(10) << set.name << ": alpha=" << report.alpha << " theta=" << report.theta
            << " (gap " << std::setprecision(3) << report.theta_gap << ") beta_ideal=" << std::setprecision(10)
            << report.beta_ideal << "\n";
    }
    if (auto dir = output_dir(c.out, std::nullopt)) {
        write_file(*dir / (lowercase(set.name) + "_bounds.json"), doc.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_predict(const Common& c, std::ostream& out) {
    const RunConfig cfg = merged_config(c);
    const auto r = resolve_model(cfg);
    const auto model = bell_value(r.set, r.model.state, r.model.measurements);
    const auto ideal = bell_value(r.set, max_entangled_state(r.set.dimension));
    const std::string csv = figure_csv(r.set, ideal.table, &model.table, nullptr);
    json doc{{"set", r.set.name},
             {"visibility", r.noise.visibility},
             {"crosstalk", r.noise.crosstalk},
             {"beta", model.beta},
             {"beta_ideal", ideal.beta},
             {"table", to_json(model.table, r.set)}};
    out << (cfg.format == "csv" ? csv : doc.dump(2) + "\n");
    if (auto dir = output_dir(c.out, cfg.output_dir)) {
        const auto stem = lowercase(r.set.name);
        write_file(*dir / (stem + "_prediction.json"), doc.dump(2) + "\n");
        write_file(*dir / (stem + "_prediction.csv"), csv);
    }
    return kExitOk;
}

int cmd_simulate(const Common& c, std::ostream& out) {
    const RunConfig cfg = merged_config(c);
    const auto o = run_simulation(cfg);
    const std::string csv = figure_csv(o.resolved.set, o.ideal, &o.measured, &o.record);
    const json doc = simulation_to_json(o);
    out << (cfg.format == "csv" ? csv : doc.dump(2) + "\n");
    if (auto dir = output_dir(c.out, cfg.output_dir)) {
        const auto stem = lowercase(o.resolved.set.name);
        write_file(*dir / (stem + "_report.json"), doc.dump(2) + "\n");
        write_file(*dir / (stem + "_figure.csv"), csv);
    }
    return kExitOk;
}

int cmd_fit(const Common& c, double target, std::ostream& out) {
    const SicSet set = resolve_set(c.set.value_or("yo13"));
    const auto line = visibility_line(set);
    const double v = fit_visibility(target, set);
    json doc{{"set", set.name},
             {"target_beta", target},
             {"visibility", v},
             {"beta_ideal", line.beta_ideal},
             {"beta_mixed", line.beta_mixed}};
    if (c.format.value_or("json") == "csv") {
        out << "set,target_beta,visibility,beta_ideal,beta_mixed\n"
            << set.name << "," << std::setprecision(12) << target << "," << v << "," << line.beta_ideal << ","
            << line.beta_mixed << "\n";
    } else {
        out << doc.dump(2) << "\n";
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bell inequalities from state-independent contextuality sets", "sicbell"};
    app.require_subcommand(1);

    Common common;
    double target = 0.0;
    auto add_common = [&common](CLI::App* sub, bool with_config) {
        sub->add_option("set,--set", common.set, "catalog name (yo13, ks18, ks21) or set-definition JSON");
        sub->add_option("--out", common.out, "output directory");
        sub->add_option("--format", common.format, "stdout format")->check(CLI::IsMember({"json", "csv"}));
        if (with_config) {
            sub->add_option("--config", common.config, "run configuration JSON");
            sub->add_option("--seed", common.seed, "override the configured seed");
        }
    };
    auto* catalog = app.add_subcommand("catalog", "summarize and validate a set");
    add_common(catalog, false);
    auto* bounds = app.add_subcommand("bounds", "classical bound and Lovasz number");
    add_common(bounds, false);
    auto* predict = app.add_subcommand("predict", "quantum prediction of every probability and of beta");
    add_common(predict, true);
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo photon-counting run");
    add_common(simulate, true);
    auto* fit = app.add_subcommand("fit", "visibility reproducing a target beta");
    add_common(fit, false);
    fit->add_option("--target", target, "target Bell value")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (*catalog) return cmd_catalog(common, out);
        if (*bounds) return cmd_bounds(common, out);
        if (*predict) return cmd_predict(common, out);
        if (*simulate) return cmd_simulate(common, out);
        if (*fit) return cmd_fit(common, target, out);
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace sicbell::cli
