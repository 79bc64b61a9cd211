#include <cmath>

#include "doctest.h"
#include "sicbell/graph_bounds.hpp"
#include "sicbell/montecarlo.hpp"
#include "sicbell/noise_models.hpp"
#include "sicbell/sic_catalog.hpp"

using namespace sicbell;

namespace {

RunPlan plan_for(const SicSet& set, double exposure, std::uint64_t seed) {
    return make_plan(set, exposure, 1.0, seed);
}

NoisyModel model_at(const SicSet& set, double visibility) {
    NoiseConfig cfg;
    cfg.visibility = visibility;
    return apply_noise(set, cfg);
}

}  // namespace

TEST_CASE("plans cover every setting") {
    const SicSet set = build_yo13();
    const RunPlan plan = make_plan(set, 1e5, 10.0, 4);
    CHECK(plan.settings.size() == 61);
    CHECK(plan.exposure() == doctest::Approx(1e6));
    CHECK_THROWS(make_plan(set, 0.0, 1.0, 1));
    CHECK_THROWS(make_plan(set, 1.0, -1.0, 1));
}

TEST_CASE("zero probability gives zero counts") {
    const SicSet set = build_yo13();
    const RunPlan plan = plan_for(set, 1e6, 9);
    const std::vector<double> probs(plan.settings.size(), 0.0);
    for (auto c : simulate_counts(plan, probs).counts) CHECK(c == 0);
}

TEST_CASE("fixed seed is reproducible and seeds differ") {
    const SicSet set = build_ks18();
    const NoisyModel m = model_at(set, 0.95);
    const auto a = simulate_counts(plan_for(set, 1e5, 77), set, m);
    const auto b = simulate_counts(plan_for(set, 1e5, 77), set, m);
    const auto c = simulate_counts(plan_for(set, 1e5, 78), set, m);
    CHECK(a.counts == b.counts);
    CHECK(a.counts != c.counts);
    CHECK(a.seed == 77);
}

TEST_CASE("streams are independent of the other settings") {
    RunPlan plan = plan_for(build_yo13(), 1e6, 5);
    std::vector<double> probs(plan.settings.size(), 1.0 / 3.0);
    const auto full = simulate_counts(plan, probs);
    probs[10] = 0.0;
    const auto changed = simulate_counts(plan, probs);
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (k != 10) CHECK(full.counts[k] == changed.counts[k]);
    }
}

TEST_CASE("Poisson mean over seeds") {
    const SicSet set = build_yo13();
    const double n = 1e6;
    const double p = 1.0 / 3.0;
    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RunPlan plan = plan_for(set, n, seed);
        const std::vector<double> probs(plan.settings.size(), p);
        mean += static_cast<double>(simulate_counts(plan, probs).counts[0]) / n;
    }
    mean /= 100.0;
    CHECK(std::abs(mean - p) < 3.0 * std::sqrt(p / n / 100.0));
}

TEST_CASE("input guards") {
    RunPlan plan = plan_for(build_yo13(), 1e6, 1);
    CHECK_THROWS(simulate_counts(plan, std::vector<double>(3, 0.1)));
    CHECK_THROWS(simulate_counts(plan, std::vector<double>(plan.settings.size(), 1.5)));
    RunPlan huge = plan_for(build_yo13(), 1e19, 1);
    CHECK_THROWS_AS(simulate_counts(huge, std::vector<double>(huge.settings.size(), 1.0)), std::overflow_error);
    CHECK_THROWS(simulate_counts(plan_for(build_ks18(), 1e3, 1), build_yo13(), model_at(build_yo13(), 1.0)));
}

TEST_CASE("probability estimates") {
    CountRecord rec;
    rec.settings = {{0, 0}, {0, 1}, {1, 1}};
    rec.counts = {0, 333333, 1000000};
    rec.normalization = 1e6;
    const auto t = estimate_probabilities(rec);
    CHECK(t.values[0] == 0.0);
    CHECK(t.sigmas[0] == doctest::Approx(1e-6));
    CHECK(t.values[1] == doctest::Approx(0.333333));
    CHECK(t.sigmas[1] == doctest::Approx(5.7735e-4).epsilon(1e-4));
    CHECK(t.values[2] == 1.0);
    rec.normalization = 0.0;
    CHECK_THROWS(estimate_probabilities(rec));
}

TEST_CASE("violation significance arithmetic") {
    // A two-vertex edgeless graph: β = P00 + P11, α = 2.
    const WeightedGraph g({Rational(1), Rational(1)}, {});
    ProbabilityTable t;
    t.settings = bell_settings(g);
    auto report = [&](double beta, double sigma, double alpha) {
        t.values = {beta / 2.0, beta / 2.0};
        t.sigmas = {sigma / std::sqrt(2.0), sigma / std::sqrt(2.0)};
        return estimate_beta(t, g, Rational(static_cast<std::int64_t>(alpha)));
    };
    CHECK(report(11.573, 0.012, 11).sigmas_of_violation == doctest::Approx(47.75).epsilon(1e-9));
    CHECK(report(4.399, 0.027, 4).sigmas_of_violation == doctest::Approx(14.777777).epsilon(1e-6));
    CHECK(report(3.259, 0.038, 3).sigmas_of_violation == doctest::Approx(6.815789).epsilon(1e-6));
    const auto r = report(3.259, 0.038, 3);
    CHECK(r.p_value == doctest::Approx(gaussian_tail(r.sigmas_of_violation)));
    CHECK(gaussian_tail(0.0) == doctest::Approx(0.5));
    CHECK(gaussian_tail(1.6448536269514722) == doctest::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("exact tables give the exact Bell value") {
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const NoisyModel m = model_at(set, 0.97);
        const WeightedGraph g = orthogonality_graph(set);
        auto table = probability_table(g, m.state, m.measurements);
        const double beta = bell_functional(g, table);
        CHECK(std::abs(estimate_beta(table, set).beta_hat - beta) < 1e-12);
        CHECK(estimate_beta(table, set).sigma == 0.0);
        table.sigmas.assign(table.values.size(), 0.01);
        const auto coeff = bell_coefficients(g);
        double var = 0.0;
        for (double c : coeff) var += c * c * 1e-4;
        CHECK(estimate_beta(table, set).sigma == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
        table.settings.pop_back();
        table.values.pop_back();
        CHECK_THROWS(estimate_beta(table, set));
    }
}

TEST_CASE("estimator is unbiased over seeds") {
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const NoisyModel m = model_at(set, 0.98);
        const double truth = bell_value(set, m.state, m.measurements).beta;
        double mean = 0.0;
        double sigma = 0.0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const auto rep = estimate_beta(simulate_counts(plan_for(set, 1e5, seed), set, m), set, {0});
            mean += rep.beta_hat;
            sigma += rep.sigma;
        }
        mean /= 100.0;
        sigma /= 100.0;
        CHECK_MESSAGE(std::abs(mean - truth) < 3.0 * sigma / 10.0, name);
    }
}

TEST_CASE("sigma halves when the exposure quadruples") {
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const NoisyModel m = model_at(set, 1.0);
        const auto small = estimate_beta(simulate_counts(plan_for(set, 1e5, 3), set, m), set, {0});
        const auto large = estimate_beta(simulate_counts(plan_for(set, 4e5, 3), set, m), set, {0});
        CHECK(large.sigma / small.sigma == doctest::Approx(0.5).epsilon(0.1));
    }
}

TEST_CASE("ideal runs violate strongly") {
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const NoisyModel m = model_at(set, 1.0);
        int strong = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const auto rep = estimate_beta(simulate_counts(plan_for(set, 1e6, seed), set, m), set, {0});
            strong += rep.sigmas_of_violation > 5.0 ? 1 : 0;
        }
        CHECK(strong >= 99);
    }
}

TEST_CASE("bootstrap and Gaussian p-values agree at moderate significance") {
    const SicSet set = build_ks21();
    const WeightedGraph g = orthogonality_graph(set);
    const NoisyModel m = model_at(set, fit_visibility(3.259, set));
    const auto predicted = probability_table(g, m.state, m.measurements);
    const double n = exposure_for_sigma(g, predicted, 0.259 / 2.5);
    int compared = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto rec = simulate_counts(plan_for(set, n, seed), set, m);
        const auto rep = estimate_beta(rec, set, {5000});
        if (rep.sigmas_of_violation < 2.0 || rep.sigmas_of_violation > 3.0) continue;
        REQUIRE(rep.bootstrap_p_value.has_value());
        const double ratio = *rep.bootstrap_p_value / rep.p_value;
        CHECK(ratio > 0.1);
        CHECK(ratio < 10.0);
        ++compared;
    }
    CHECK(compared >= 10);
}

TEST_CASE("bootstrap is seeded") {
    const SicSet set = build_ks18();
    const auto rec = simulate_counts(plan_for(set, 2e3, 12), set, model_at(set, 0.97));
    const WeightedGraph g = orthogonality_graph(set);
    CHECK(bootstrap_p_value(rec, g, 4.0, 500) == bootstrap_p_value(rec, g, 4.0, 500));
    CHECK_THROWS(bootstrap_p_value(rec, g, 4.0, 0));
}

TEST_CASE("visibility fitting") {
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const VisibilityLine line = visibility_line(set);
        CHECK(fit_visibility(line.beta_ideal, set) == doctest::Approx(1.0));
        CHECK(fit_visibility(line.beta_mixed, set) == doctest::Approx(0.0));
        CHECK_THROWS(fit_visibility(line.beta_ideal + 0.1, set));
        CHECK_THROWS(fit_visibility(line.beta_mixed - 0.1, set));
    }
    const SicSet yo = build_yo13();
    const double v = fit_visibility(11.573, yo);
    CHECK(v > 0.9);
    CHECK(v < 1.0);
    const NoisyModel m = model_at(yo, v);
    const WeightedGraph g = orthogonality_graph(yo);
    const double n = exposure_for_sigma(g, probability_table(g, m.state, m.measurements), 0.012);
    const auto rep = estimate_beta(simulate_counts(plan_for(yo, n, 2024), yo, m), yo, {0});
    CHECK(rep.sigma == doctest::Approx(0.012).epsilon(0.05));
    CHECK(std::abs(rep.beta_hat - 11.573) < 3.0 * rep.sigma);
}
