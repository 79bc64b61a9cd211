#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sicbell/montecarlo.hpp"
#include "sicbell/noise_models.hpp"
#include "sicbell/serialization.hpp"
#include "sicbell/sic_catalog.hpp"

namespace sicbell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolver = 2;

inline constexpr const char* kOutputDirEnv = "SICBELL_OUTPUT_DIR";

// Spectrum request: either a Gaussian width (modes default to the OAM basis
// of the set's dimension) or explicit amplitudes.
struct SpectrumConfig {
    std::optional<double> width;
    std::optional<std::vector<int>> modes;
    std::optional<std::vector<double>> amplitudes;
};

/// Every field defaults to the ideal experiment.
struct RunConfig {
    std::string set = "yo13";
    double visibility = 1.0;
    double crosstalk = 0.0;
    std::optional<SpectrumConfig> spectrum;
    bool procrustean = false;
    std::optional<double> target_beta;  // refit visibility to hit this β
    double pair_rate = 1.0e5;
    double integration_time = 10.0;
    std::optional<double> target_sigma;  // retune integration time to this σ(β̂)
    std::uint64_t seed = 1;
    std::size_t bootstrap_replicates = 10000;
    std::optional<std::string> output_dir;
    std::string format = "json";
};

/// Reads a config document; all problems are collected into `errors`.
RunConfig parse_run_config(const json& doc, std::vector<std::string>& errors);
json run_config_to_json(const RunConfig& config);

/// Catalog name or path to a set-definition file.
SicSet resolve_set(const std::string& name_or_path);

struct ResolvedModel {
    SicSet set;
    NoiseConfig noise;
    NoisyModel model;
    double filter_success = 1.0;
};

/// Applies target_beta and the Procrustean option to produce the model that
/// is simulated. β is affine in the visibility for a fixed spectrum and
/// crosstalk, so the refit is a closed-form inversion on that line.
ResolvedModel resolve_model(const RunConfig& config);

struct SimulationOutcome {
    ResolvedModel resolved;
    RunPlan plan;
    CountRecord record;
    ProbabilityTable measured;
    ProbabilityTable ideal;
    double beta_model = 0.0;
    double beta_ideal = 0.0;
    ViolationReport report;
};

SimulationOutcome run_simulation(const RunConfig& config);
json simulation_to_json(const SimulationOutcome& outcome);

/// Entry point shared by the executable and the tests; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sicbell::cli
