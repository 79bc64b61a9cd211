#include "sicbell/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sicbell/graph_bounds.hpp"

namespace sicbell {

namespace {

constexpr std::uint32_t kCountStream = 0;
constexpr std::uint32_t kBootstrapStream = 1;

std::uint64_t draw_poisson(std::mt19937_64& gen, double mean) {
    if (mean <= 0.0) {
        return 0;
    }
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(gen);
}

void check_settings(const std::vector<Setting>& settings, const WeightedGraph& graph) {
    if (settings != bell_settings(graph)) {
        throw std::invalid_argument("settings do not match the diagonal and ordered-edge terms of the set");
    }
}

}  // namespace

void RunPlan::validate() const {
    if (!(pair_rate > 0.0) || !(integration_time > 0.0) || !std::isfinite(exposure())) {
        throw std::invalid_argument("RunPlan: pair_rate and integration_time must be positive and finite");
    }
    if (settings.empty()) {
        throw std::invalid_argument("RunPlan: no settings");
    }
}

RunPlan make_plan(const SicSet& set, double pair_rate, double integration_time, std::uint64_t seed) {
    RunPlan plan;
    plan.set_name = set.name;
    plan.settings = bell_settings(orthogonality_graph(set));
    plan.pair_rate = pair_rate;
    plan.integration_time = integration_time;
    plan.seed = seed;
    plan.validate();
    return plan;
}

std::mt19937_64 setting_stream(std::uint64_t seed, std::size_t index, std::uint32_t purpose) {
    const auto idx = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32), purpose};
    return std::mt19937_64(seq);
}

CountRecord simulate_counts(const RunPlan& plan, const std::vector<double>& probabilities) {
    plan.validate();
    if (probabilities.size() != plan.settings.size()) {
        throw std::invalid_argument("simulate_counts: one probability per setting required");
    }
    const double n = plan.exposure();
    CountRecord rec;
    rec.set_name = plan.set_name;
    rec.settings = plan.settings;
    rec.normalization = n;
    rec.seed = plan.seed;
    rec.counts.resize(plan.settings.size());
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        const double p = probabilities[k];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("simulate_counts: probability outside [0, 1]");
        }
        const double mean = n * p;
        if (mean > 9.2233720368547758e18) {
            throw std::overflow_error("simulate_counts: expected count N·P exceeds 2^63");
        }
        auto gen = setting_stream(plan.seed, k, kCountStream);
        rec.counts[k] = draw_poisson(gen, mean);
    }
    return rec;
}

CountRecord simulate_counts(const RunPlan& plan, const SicSet& set, const NoisyModel& model) {
    const WeightedGraph graph = orthogonality_graph(set);
    check_settings(plan.settings, graph);
    const auto table = probability_table(graph, model.state, model.measurements);
    return simulate_counts(plan, table.values);
}

ProbabilityTable estimate_probabilities(const CountRecord& record) {
    if (!(record.normalization > 0.0)) {
        throw std::invalid_argument("estimate_probabilities: normalization must be positive");
    }
    if (record.counts.size() != record.settings.size()) {
        throw std::invalid_argument("estimate_probabilities: one count per setting required");
    }
    const double n = record.normalization;
    ProbabilityTable table;
    table.settings = record.settings;
    for (std::uint64_t c : record.counts) {
        const auto cd = static_cast<double>(c);
        table.values.push_back(cd / n);
        table.sigmas.push_back(c == 0 ? 1.0 / n : std::sqrt(cd) / n);
    }
    return table;
}

double gaussian_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

ViolationReport estimate_beta(const ProbabilityTable& table, const WeightedGraph& graph, const Rational& alpha) {
    const auto expected = bell_settings(graph);
    if (table.settings != expected || table.values.size() != expected.size()) {
        throw std::invalid_argument("estimate_beta: the table is missing settings required by the inequality");
    }
    const auto coeff = bell_coefficients(graph);
    ViolationReport rep;
    double var = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        rep.beta_hat += coeff[k] * table.values[k];
        if (!table.sigmas.empty()) {
            var += coeff[k] * coeff[k] * table.sigmas.at(k) * table.sigmas.at(k);
        }
    }
    rep.sigma = std::sqrt(var);
    rep.alpha = alpha;
    const double excess = rep.beta_hat - alpha.to_double();
    if (rep.sigma > 0.0) {
        rep.sigmas_of_violation = excess / rep.sigma;
        rep.p_value = gaussian_tail(rep.sigmas_of_violation);
    } else {
        rep.sigmas_of_violation = excess > 0.0 ? std::numeric_limits<double>::infinity()
                                               : -std::numeric_limits<double>::infinity();
        rep.p_value = excess > 0.0 ? 0.0 : 1.0;
    }
    return rep;
}

ViolationReport estimate_beta(const ProbabilityTable& table, const SicSet& set) {
    const WeightedGraph graph = orthogonality_graph(set);
    return estimate_beta(table, graph, max_weight_independent_set(graph).weight);
}

double bootstrap_p_value(const CountRecord& record, const WeightedGraph& graph, double alpha,
                         std::size_t replicates) {
    check_settings(record.settings, graph);
    if (replicates == 0) {
        throw std::invalid_argument("bootstrap_p_value: zero replicates");
    }
    const auto coeff = bell_coefficients(graph);
    std::vector<double> beta_star(replicates, 0.0);
    for (std::size_t k = 0; k < record.counts.size(); ++k) {
        auto gen = setting_stream(record.seed, k, kBootstrapStream);
        const auto mean = static_cast<double>(record.counts[k]);
        const double scale = coeff[k] / record.normalization;
        for (std::size_t r = 0; r < replicates; ++r) {
            beta_star[r] += scale * static_cast<double>(draw_poisson(gen, mean));
        }
    }
    std::size_t below = 0;
    for (double b : beta_star) {
        below += b <= alpha ? 1 : 0;
    }
    return static_cast<double>(below) / static_cast<double>(replicates);
}

ViolationReport estimate_beta(const CountRecord& record, const SicSet& set, const BootstrapOptions& bootstrap) {
    const WeightedGraph graph = orthogonality_graph(set);
    const Rational alpha = max_weight_independent_set(graph).weight;
    ViolationReport rep = estimate_beta(estimate_probabilities(record), graph, alpha);
    if (bootstrap.replicates > 0) {
        rep.bootstrap_p_value = bootstrap_p_value(record, graph, alpha.to_double(), bootstrap.replicates);
        rep.bootstrap_replicates = bootstrap.replicates;
    }
    return rep;
}

VisibilityLine visibility_line(const SicSet& set) {
    const auto measurements = ideal_measurements(set);
    return {bell_value(set, max_entangled_state(set.dimension), measurements).beta,
            bell_value(set, maximally_mixed_state(set.dimension), measurements).beta};
}

double fit_visibility(double target_beta, const SicSet& set) {
    const VisibilityLine line = visibility_line(set);
    constexpr double slack = 1e-12;
    if (!(target_beta >= line.beta_mixed - slack && target_beta <= line.beta_ideal + slack)) {
        throw std::invalid_argument("fit_visibility: target " + std::to_string(target_beta) + " outside [" +
                                    std::to_string(line.beta_mixed) + ", " + std::to_string(line.beta_ideal) + "]");
    }
    const double v = (target_beta - line.beta_mixed) / (line.beta_ideal - line.beta_mixed);
    return std::clamp(v, 0.0, 1.0);
}

double exposure_for_sigma(const WeightedGraph& graph, const ProbabilityTable& predicted, double target_sigma) {
    if (!(target_sigma > 0.0)) {
        throw std::invalid_argument("exposure_for_sigma: target sigma must be positive");
    }
    check_settings(predicted.settings, graph);
    const auto coeff = bell_coefficients(graph);
    double s = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        s += coeff[k] * coeff[k] * predicted.values[k];
    }
    return s / (target_sigma * target_sigma);
}

}  // namespace sicbell
