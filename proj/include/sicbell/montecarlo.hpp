#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sicbell/graph.hpp"
#include "sicbell/noise_models.hpp"
#include "sicbell/quantum_core.hpp"
#include "sicbell/rational.hpp"
#include "sicbell/sic_catalog.hpp"

namespace sicbell {

struct RunPlan {
    std::string set_name;
    std::vector<Setting> settings;
    double pair_rate = 0.0;         // detected coincidences per second at P = 1
    double integration_time = 0.0;  // seconds per setting
    std::uint64_t seed = 0;

    double exposure() const { return pair_rate * integration_time; }
    void validate() const;
};

/// Plan covering every diagonal and both orientations of every edge, in the
/// order of bell_settings().
RunPlan make_plan(const SicSet& set, double pair_rate, double integration_time, std::uint64_t seed);

struct CountRecord {
    std::string set_name;
    std::vector<Setting> settings;
    std::vector<std::uint64_t> counts;
    double normalization = 0.0;  // N, calibrated pairs per setting exposure
    std::uint64_t seed = 0;
};

/// Independent generator for one setting. Streams depend only on
/// (seed, index, purpose), never on evaluation order.
std::mt19937_64 setting_stream(std::uint64_t seed, std::size_t index, std::uint32_t purpose);

/// C_k ~ Poisson(N·P_k) for P aligned with plan.settings.
CountRecord simulate_counts(const RunPlan& plan, const std::vector<double>& probabilities);
CountRecord simulate_counts(const RunPlan& plan, const SicSet& set, const NoisyModel& model);

/// P̂ = C/N, σ = √C/N (σ = 1/N when C = 0).
ProbabilityTable estimate_probabilities(const CountRecord& record);

struct ViolationReport {
    double beta_hat = 0.0;
    double sigma = 0.0;
    Rational alpha;
    double sigmas_of_violation = 0.0;
    double p_value = 0.0;  // one-sided Gaussian tail
    std::optional<double> bootstrap_p_value;
    std::size_t bootstrap_replicates = 0;
};

struct BootstrapOptions {
    std::size_t replicates = 10000;
};

ViolationReport estimate_beta(const ProbabilityTable& table, const WeightedGraph& graph, const Rational& alpha);
ViolationReport estimate_beta(const ProbabilityTable& table, const SicSet& set);

/// Table estimate plus a parametric bootstrap: each replicate redraws every
/// count from Poisson(C) and the p-value is the fraction with β* ≤ α.
ViolationReport estimate_beta(const CountRecord& record, const SicSet& set, const BootstrapOptions& bootstrap);

double bootstrap_p_value(const CountRecord& record, const WeightedGraph& graph, double alpha,
                         std::size_t replicates);

/// One-sided standard normal tail P(Z > z).
double gaussian_tail(double z);

/// β at visibility 1 and 0 for the isotropic model without crosstalk.
struct VisibilityLine {
    double beta_ideal = 0.0;
    double beta_mixed = 0.0;
};
VisibilityLine visibility_line(const SicSet& set);

/// v = (target − β_mixed)/(β_ideal − β_mixed). Throws std::invalid_argument
/// when the target lies outside [β_mixed, β_ideal].
double fit_visibility(double target_beta, const SicSet& set);

/// Exposure N whose Poisson σ(β̂) equals target_sigma for the given
/// predicted probabilities: N = Σ c_k² P_k / σ².
double exposure_for_sigma(const WeightedGraph& graph, const ProbabilityTable& predicted, double target_sigma);

}  // namespace sicbell
