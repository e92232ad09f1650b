// rmf: batch command-line surface for the random multiplicative function lab.
//
// Subcommands: classify, simulate, splitting, steer, bounds, tau-fixture.
// Structured one-shot results are JSON on stdout, grids are CSV; every file
// written via --out gets a JSON manifest alongside that reproduces it.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmf/experiments.hpp"
#include "rmf/tau.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Locale-independent shortest round-trip rendering.
std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
    std::vector<std::uint64_t> grid;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        // scientific-notation integers are accepted and floored
        const double value = std::stod(item);
        if (!(value >= 1.0)) throw std::invalid_argument("grid entries must be >= 1");
        grid.push_back(static_cast<std::uint64_t>(value));
    }
    if (grid.empty()) throw std::invalid_argument("empty x grid");
    return grid;
}

std::vector<std::uint64_t> parse_set(const std::string& text) {
    std::vector<std::uint64_t> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stoull(item));
    }
    if (values.empty()) throw std::invalid_argument("empty residue set");
    return values;
}

struct RunManifest {
    std::string command;
    json parameters;
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;

    json to_json() const {
        return json{{"command", command},       {"parameters", parameters},
                    {"seed", seed},             {"artifact_version", kVersion},
                    {"started_at", started_at}, {"finished_at", finished_at},
                    {"outputs", outputs}};
    }
};

void emit_manifest(const RunManifest& manifest, const std::string& out_path, bool to_stderr) {
    if (!out_path.empty()) {
        const std::string manifest_path = out_path + ".manifest.json";
        std::ofstream file(manifest_path);
        if (!file) throw std::runtime_error("cannot write manifest " + manifest_path);
        file << manifest.to_json().dump(2) << "\n";
    } else if (to_stderr) {
        std::cerr << manifest.to_json().dump(2) << "\n";
    }
}

void write_text(const std::string& out_path, const std::string& body) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    file << body;
}

std::string model_token(const rmf::TrialConfig& config) {
    std::string token = rmf::to_string(config.model);
    switch (config.model) {
        case rmf::ModelKind::Residue: {
            token += ":m=" + std::to_string(config.modulus) + ":S=";
            for (std::size_t i = 0; i < config.residue_set.size(); ++i) {
                if (i > 0) token += "|";
                token += std::to_string(config.residue_set[i]);
            }
            break;
        }
        case rmf::ModelKind::Cyclotomic:
            token += ":n=" + std::to_string(config.field_index);
            break;
        case rmf::ModelKind::Tau:
            token += ":weight=" + std::to_string(config.weight);
            break;
    }
    return token;
}

json config_to_json(const rmf::TrialConfig& config) {
    json parameters{{"model", rmf::to_string(config.model)},
                    {"x_grid", config.x_grid},
                    {"trials", config.trials},
                    {"seed", config.seed},
                    {"z", config.z_score}};
    switch (config.model) {
        case rmf::ModelKind::Residue:
            parameters["m"] = config.modulus;
            parameters["set"] = config.residue_set;
            break;
        case rmf::ModelKind::Cyclotomic:
            parameters["n"] = config.field_index;
            break;
        case rmf::ModelKind::Tau:
            parameters["weight"] = config.weight;
            break;
    }
    if (config.steering) {
        parameters["steer"] = {{"z", config.steering->target},
                               {"a", config.steering->residue},
                               {"m", config.steering->modulus}};
    }
    return parameters;
}

rmf::TrialConfig config_from_json(const json& parameters) {
    rmf::TrialConfig config;
    const std::string model = parameters.at("model");
    if (model == "residue") {
        config.model = rmf::ModelKind::Residue;
        config.modulus = parameters.at("m");
        config.residue_set = parameters.at("set").get<std::vector<std::uint64_t>>();
    } else if (model == "cyclotomic") {
        config.model = rmf::ModelKind::Cyclotomic;
        config.field_index = parameters.at("n");
    } else if (model == "tau") {
        config.model = rmf::ModelKind::Tau;
        config.weight = parameters.at("weight");
    } else {
        throw std::invalid_argument("unknown model " + model);
    }
    config.x_grid = parameters.at("x_grid").get<std::vector<std::uint64_t>>();
    config.trials = parameters.at("trials");
    config.seed = parameters.at("seed");
    config.z_score = parameters.at("z");
    if (parameters.contains("steer")) {
        rmf::SteerDirective directive;
        directive.target = parameters["steer"].at("z");
        directive.residue = parameters["steer"].at("a");
        directive.modulus = parameters["steer"].at("m");
        config.steering = directive;
    }
    return config;
}

std::string simulate_csv(const rmf::TrialConfig& config, std::vector<std::string>* warnings) {
    const auto result = rmf::run_probability_experiment(config);
    if (warnings) *warnings = result.warnings;
    const std::string token = model_token(config);
    std::string csv = "x,count,trials,p_hat,wilson_lo,wilson_hi,model,seed\n";
    for (const auto& estimate : result.estimates) {
        csv += std::to_string(estimate.x) + "," + std::to_string(estimate.negatives) + "," +
               std::to_string(estimate.trials) + "," + format_double(estimate.p_hat) + "," +
               format_double(estimate.wilson_lo) + "," + format_double(estimate.wilson_hi) + "," +
               token + "," + std::to_string(config.seed) + "\n";
    }
    return csv;
}

int run_classify(std::uint64_t m, const std::string& set_text) {
    const rmf::ResidueSet set(m, parse_set(set_text));
    const rmf::CharacterTable table(m);
    const auto report = rmf::decompose_indicator(table, set);

    json coefficients = json::array();
    for (const auto& coeff : report.coefficients) {
        json entry{{"character", coeff.character},
                   {"kind", rmf::to_string(coeff.kind)},
                   {"re", coeff.approx.real()},
                   {"im", coeff.approx.imag()}};
        if (coeff.kind != rmf::CharacterKind::Complex) {
            entry["exact"] = coeff.rational_value.to_string();
        }
        coefficients.push_back(entry);
    }
    json output{{"modulus", report.modulus},
                {"set", report.members},
                {"coefficients", coefficients},
                {"verdict", rmf::to_string(report.verdict)}};
    if (report.witness) {
        output["witness"] = {{"character", *report.witness},
                             {"kind", rmf::to_string(table.kind(*report.witness))}};
    } else {
        output["witness"] = nullptr;
    }
    std::cout << output.dump(2) << "\n";
    return 0;
}

int run_simulate(rmf::TrialConfig config, const std::string& out_path, bool manifest_requested) {
    RunManifest manifest;
    manifest.command = "simulate";
    manifest.parameters = config_to_json(config);
    manifest.seed = config.seed;
    manifest.started_at = timestamp_utc();

    std::vector<std::string> warnings;
    const std::string csv = simulate_csv(config, &warnings);
    for (const auto& warning : warnings) {
        std::cerr << json{{"warning", warning}}.dump() << "\n";
    }
    write_text(out_path, csv);

    manifest.finished_at = timestamp_utc();
    if (!out_path.empty()) manifest.outputs.push_back(out_path);
    emit_manifest(manifest, out_path, manifest_requested);
    return 0;
}

int run_splitting(std::uint64_t n, std::uint64_t pmax) {
    std::string csv = "p,v,e,f,r,norm\n";
    std::vector<bool> composite(pmax + 1, false);
    for (std::uint64_t p = 2; p <= pmax; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= pmax; q += p) composite[q] = true;
        const auto datum = rmf::splitting_type(n, p);
        csv += std::to_string(datum.p) + "," + std::to_string(datum.valuation) + "," +
               std::to_string(datum.ramification) + "," + std::to_string(datum.inertia) + "," +
               std::to_string(datum.ideal_count) + "," +
               (datum.norm_overflow ? std::string("overflow") : std::to_string(datum.norm)) + "\n";
    }
    std::cout << csv;
    return 0;
}

int run_steer(double z, std::uint64_t a, std::uint64_t m, std::uint64_t x) {
    const rmf::PrimeSieve sieve(std::max<std::uint64_t>(x, 2));
    const auto steered = rmf::steer_signs(z, a, m, sieve);

    json signs = json::array();
    for (std::size_t i = 0; i < steered.class_primes.size(); ++i) {
        signs.push_back({{"p", steered.class_primes[i]}, {"sign", steered.signs[i]}});
    }
    json turning_points = json::array();
    for (const auto& tp : steered.turning_points) {
        turning_points.push_back({{"prime", tp.prime},
                                  {"class_index", tp.class_index},
                                  {"class_sum", tp.class_sum},
                                  {"residual", tp.residual},
                                  {"residual_bound", 1.0 / static_cast<double>(tp.prime)}});
    }
    json output{{"target", z},
                {"a", a},
                {"m", m},
                {"x", x},
                {"final_sum", steered.final_sum},
                {"signs", signs},
                {"turning_points", turning_points}};
    std::cout << output.dump(2) << "\n";
    return 0;
}

int run_bounds(const std::string& grid_text, double C, const std::string& out_path,
               bool manifest_requested) {
    RunManifest manifest;
    manifest.command = "bounds";
    manifest.parameters = {{"x_grid", grid_text}, {"C", C}};
    manifest.started_at = timestamp_utc();

    const auto grid = parse_grid(grid_text);
    std::string csv = "x,value,C\n";
    for (const std::uint64_t x : grid) {
        csv += std::to_string(x) + "," +
               format_double(rmf::decay_reference(static_cast<double>(x), C)) + "," +
               format_double(C) + "\n";
    }
    write_text(out_path, csv);

    manifest.finished_at = timestamp_utc();
    if (!out_path.empty()) manifest.outputs.push_back(out_path);
    emit_manifest(manifest, out_path, manifest_requested);
    return 0;
}

int run_tau_fixture(std::uint64_t n, const std::string& out_path) {
    const auto fixture = rmf::tau_series(n);
    write_text(out_path, fixture.to_text());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random multiplicative function laboratory"};
    app.require_subcommand(1);

    // classify
    auto* classify = app.add_subcommand("classify", "branch classification of a residue set");
    std::uint64_t classify_m = 1;
    std::string classify_set = "1";
    classify->add_option("--m", classify_m, "modulus")->required();
    classify->add_option("--set", classify_set, "comma-separated residues")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo negativity probabilities");
    std::string sim_model = "residue";
    std::uint64_t sim_m = 1;
    std::string sim_set = "1";
    std::uint64_t sim_n = 1;
    unsigned sim_weight = 11;
    std::string sim_grid;
    std::uint64_t sim_trials = 1000;
    std::uint64_t sim_seed = 0;
    double sim_z = 1.96;
    unsigned sim_threads = 0;
    std::string sim_out;
    std::string sim_from_manifest;
    bool sim_manifest = false;
    double steer_z = 0.0;
    std::uint64_t steer_a = 1, steer_m = 1;
    simulate->add_option("--model", sim_model, "residue|cyclotomic|tau");
    simulate->add_option("--m", sim_m, "modulus (residue model)");
    simulate->add_option("--set", sim_set, "residues (residue model)");
    simulate->add_option("--n", sim_n, "field index (cyclotomic model)");
    simulate->add_option("--weight", sim_weight, "Hecke weight label (tau model)");
    simulate->add_option("--x-grid", sim_grid, "ascending x values, scientific notation ok");
    simulate->add_option("--trials", sim_trials, "trials per grid point");
    simulate->add_option("--seed", sim_seed, "master seed");
    simulate->add_option("--z", sim_z, "Wilson z-score");
    simulate->add_option("--threads", sim_threads, "worker cap (or RMF_THREADS)");
    simulate->add_option("--out", sim_out, "CSV destination (stdout if omitted)");
    simulate->add_option("--from-manifest", sim_from_manifest, "replay a recorded manifest");
    simulate->add_flag("--manifest", sim_manifest, "emit manifest to stderr when no --out");
    auto* steer_z_opt = simulate->add_option("--steer-z", steer_z, "steering target");
    simulate->add_option("--steer-a", steer_a, "steering class residue");
    simulate->add_option("--steer-m", steer_m, "steering class modulus");

    // splitting
    auto* splitting = app.add_subcommand("splitting", "prime splitting in Q(zeta_n)");
    std::uint64_t split_n = 1, split_pmax = 100;
    splitting->add_option("--n", split_n, "field index")->required();
    splitting->add_option("--pmax", split_pmax, "largest prime to tabulate")->required();

    // steer
    auto* steer = app.add_subcommand("steer", "deterministic sign steering on a prime class");
    double steer_target = 0.0;
    std::uint64_t steer_res = 1, steer_mod = 1, steer_x = 100;
    steer->add_option("--z", steer_target, "target value")->required();
    steer->add_option("--a", steer_res, "class residue")->required();
    steer->add_option("--m", steer_mod, "class modulus")->required();
    steer->add_option("--x", steer_x, "prime bound")->required();

    // bounds
    auto* bounds = app.add_subcommand("bounds", "double-exponential reference curve");
    std::string bounds_grid;
    double bounds_C = 1.0;
    std::string bounds_out;
    bool bounds_manifest = false;
    bounds->add_option("--x-grid", bounds_grid, "x values")->required();
    bounds->add_option("--C", bounds_C, "curve constant");
    bounds->add_option("--out", bounds_out, "CSV destination");
    bounds->add_flag("--manifest", bounds_manifest, "emit manifest to stderr when no --out");

    // tau-fixture
    auto* tau_fixture = app.add_subcommand("tau-fixture", "exact Ramanujan tau coefficients");
    std::uint64_t tau_n = 100;
    std::string tau_out;
    tau_fixture->add_option("--n", tau_n, "number of coefficients")->required();
    tau_fixture->add_option("--out", tau_out, "destination (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (classify->parsed()) return run_classify(classify_m, classify_set);
        if (simulate->parsed()) {
            rmf::TrialConfig config;
            std::string out_path = sim_out;
            if (!sim_from_manifest.empty()) {
                std::ifstream file(sim_from_manifest);
                if (!file) throw std::runtime_error("cannot read " + sim_from_manifest);
                json manifest = json::parse(file);
                config = config_from_json(manifest.at("parameters"));
                if (out_path.empty() && !manifest.at("outputs").empty()) {
                    out_path = manifest.at("outputs").front().get<std::string>();
                }
            } else {
                if (sim_model == "residue") {
                    config.model = rmf::ModelKind::Residue;
                    config.modulus = sim_m;
                    config.residue_set = parse_set(sim_set);
                } else if (sim_model == "cyclotomic") {
                    config.model = rmf::ModelKind::Cyclotomic;
                    config.field_index = sim_n;
                } else if (sim_model == "tau") {
                    config.model = rmf::ModelKind::Tau;
                    config.weight = sim_weight;
                } else {
                    throw std::invalid_argument("unknown model " + sim_model);
                }
                if (sim_grid.empty()) throw std::invalid_argument("--x-grid is required");
                config.x_grid = parse_grid(sim_grid);
                config.trials = sim_trials;
                config.seed = sim_seed;
                config.z_score = sim_z;
                config.threads = sim_threads;
                if (steer_z_opt->count() > 0) {
                    config.steering = rmf::SteerDirective{steer_z, steer_a, steer_m};
                }
            }
            return run_simulate(config, out_path, sim_manifest);
        }
        if (splitting->parsed()) return run_splitting(split_n, split_pmax);
        if (steer->parsed()) return run_steer(steer_target, steer_res, steer_mod, steer_x);
        if (bounds->parsed()) return run_bounds(bounds_grid, bounds_C, bounds_out, bounds_manifest);
        if (tau_fixture->parsed()) return run_tau_fixture(tau_n, tau_out);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
