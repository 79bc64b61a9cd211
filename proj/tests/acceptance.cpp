// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sicbell/graph_bounds.hpp"
#include "sicbell/montecarlo.hpp"
#include "sicbell/noise_models.hpp"
#include "sicbell/quantum_core.hpp"
#include "sicbell/sic_catalog.hpp"

using namespace sicbell;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) passed = false;
        notes.push_back((ok ? "ok: " : "MISS: ") + what);
    }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Rational enumerate_alpha(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& e : g.edges()) {
        adj[e.u] |= std::uint64_t{1} << e.v;
        adj[e.v] |= std::uint64_t{1} << e.u;
    }
    Rational best(0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool independent = true;
        Rational w(0);
        for (std::size_t i = 0; i < n && independent; ++i) {
            if (mask >> i & 1) {
                independent = (adj[i] & mask) == 0;
                w += g.weight(i);
            }
        }
        if (independent && w > best) best = w;
    }
    return best;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix projector_of(const ExactVector& v) { return projector(to_eigen(normalized(v))); }

Outcome bounds_reproduction() {
    Outcome o;
    struct Target {
        SicSet set;
        Rational alpha;
        double theta;
    };
    const std::vector<Target> targets{
        {build_yo13(), Rational(11), 11.0 + 2.0 / 3.0},
        {build_ks18(), Rational(4), 4.5},
        {build_ks21(), Rational(3), 3.5},
    };
    for (const auto& t : targets) {
        const BoundsReport r = bounds_report(t.set);
        o.expect(r.alpha == t.alpha, t.set.name + " alpha=" + r.alpha.to_string() + " (want " + t.alpha.to_string() + ")");
        o.expect(std::abs(r.theta - t.theta) < 1e-4,
                 t.set.name + fmt(" theta=%.6f (want %.6f, gap %.2g)", r.theta, t.theta, r.theta_gap));
    }
    return o;
}

Outcome ideal_quantum_values() {
    Outcome o;
    const std::vector<std::pair<SicSet, double>> targets{
        {build_yo13(), 35.0 / 3.0}, {build_ks18(), 4.5}, {build_ks21(), 3.5}};
    for (const auto& [set, want] : targets) {
        const double traced = bell_value(set, max_entangled_state(set.dimension)).beta;
        const double closed = ideal_beta_closed_form(set);
        o.expect(std::abs(traced - want) < 1e-10 && std::abs(traced - closed) < 1e-10,
                 set.name + fmt(" beta=%.12f closed form %.12f", traced, closed));
    }
    return o;
}

Outcome ks_uncolorability() {
    Outcome o;
    for (const auto& set : {build_ks18(), build_ks21()}) {
        const bool colorable = ks_colorable(orthogonality_graph(set), set.contexts).colorable;
        o.expect(!colorable, set.name + (colorable ? " admits an assignment" : " has no {0,1} assignment"));
    }
    SicSet basis;
    basis.dimension = 4;
    for (std::size_t i = 0; i < 4; ++i) {
        ExactVector v(4, ExactScalar(0));
        v[i] = ExactScalar(1);
        basis.vectors.push_back(v);
        basis.weights.push_back(Rational(1));
    }
    const bool control = ks_colorable(orthogonality_graph(basis), {{0, 1, 2, 3}}).colorable;
    o.expect(control, std::string("single-basis control ") + (control ? "colorable" : "not colorable"));
    return o;
}

Outcome statistics_round_trip() {
    Outcome o;
    struct Target {
        const char* set;
        double beta;
        double sigma;
        double count;
    };
    const Target targets[] = {{"yo13", 11.573, 0.012, 48}, {"ks18", 4.399, 0.027, 15}, {"ks21", 3.259, 0.038, 7}};
    constexpr int kSeeds = 51;
    for (const auto& t : targets) {
        cli::RunConfig cfg;
        cfg.set = t.set;
        cfg.target_beta = t.beta;
        cfg.target_sigma = t.sigma;
        cfg.bootstrap_replicates = 0;
        std::vector<double> counts;
        std::vector<double> sigmas;
        for (int s = 1; s <= kSeeds; ++s) {
            cfg.seed = static_cast<std::uint64_t>(s);
            const auto out = cli::run_simulation(cfg);
            counts.push_back(out.report.sigmas_of_violation);
            sigmas.push_back(out.report.sigma);
        }
        std::sort(counts.begin(), counts.end());
        std::sort(sigmas.begin(), sigmas.end());
        const double count = counts[kSeeds / 2];
        const double sigma = sigmas[kSeeds / 2];
        o.expect(std::abs(sigma - t.sigma) <= 0.25 * t.sigma,
                 std::string(t.set) + fmt(" median sigma=%.4f (target %.3f)", sigma, t.sigma));
        o.expect(std::abs(count - t.count) <= 2.0,
                 std::string(t.set) + fmt(" median sigmas_of_violation=%.2f (target %.0f)", count, t.count));
    }
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const WeightedGraph g = orthogonality_graph(set);
        const Rational bb = max_weight_independent_set(g).weight;
        const Rational brute = enumerate_alpha(g);
        o.expect(bb == brute, set.name + " branch-and-bound " + bb.to_string() + " vs enumeration " + brute.to_string());
        const double theta = lovasz_theta(g).value;
        const double beta = ideal_beta_closed_form(set);
        o.expect(theta >= bb.to_double() && theta >= beta - 1e-5,
                 set.name + fmt(" theta=%.6f alpha=%.0f beta_ideal=%.6f", theta, bb.to_double(), beta));
    }
    return o;
}

Outcome structural_invariants() {
    Outcome o;
    const SicSet yo = build_yo13();
    CMatrix sum = CMatrix::Zero(3, 3);
    for (const auto& v : yo.vectors) sum += projector_of(v);
    const double dev = max_abs(sum - (13.0 / 3.0) * CMatrix::Identity(3, 3));
    o.expect(dev < 1e-12, fmt("YO13 projector sum deviation %.2g", dev));

    for (const auto& set : {build_ks18(), build_ks21()}) {
        const auto d = static_cast<Eigen::Index>(set.dimension);
        double worst = 0.0;
        for (const auto& ctx : set.contexts) {
            CMatrix c = CMatrix::Zero(d, d);
            for (std::size_t i : ctx) c += projector_of(set.vectors[i]);
            worst = std::max(worst, max_abs(c - CMatrix::Identity(d, d)));
        }
        o.expect(worst < 1e-12, set.name + fmt(" worst context deviation %.2g", worst));
    }

    for (std::size_t d : {3u, 4u, 6u}) {
        const SchmidtSpectrum in = spiral_spectrum(2.0, default_modes(d));
        const FilterResult f = procrustean_filter(in);
        const double c_min = *std::min_element(in.amplitudes.begin(), in.amplitudes.end());
        const double entropy = entanglement_entropy(schmidt_state(f.spectrum));
        const double want = static_cast<double>(d) * c_min * c_min;
        o.expect(std::abs(entropy - std::log(static_cast<double>(d))) < 1e-10 &&
                     std::abs(f.success_probability - want) < 1e-12,
                 fmt("d=%.0f filtered entropy %.12f, success %.6f", static_cast<double>(d), entropy,
                     f.success_probability));
    }
    return o;
}

Outcome statistical_soundness() {
    Outcome o;
    constexpr int kReplicates = 100;
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        NoiseConfig noise;
        noise.visibility = 0.97;
        const NoisyModel m = apply_noise(set, noise);
        const double truth = bell_value(set, m.state, m.measurements).beta;
        double mean = 0.0;
        double sigma = 0.0;
        for (int s = 1; s <= kReplicates; ++s) {
            const auto plan = make_plan(set, 1e5, 1.0, static_cast<std::uint64_t>(s));
            const auto rep = estimate_beta(simulate_counts(plan, set, m), set, BootstrapOptions{0});
            mean += rep.beta_hat / kReplicates;
            sigma += rep.sigma / kReplicates;
        }
        const double bound = 3.0 * sigma / std::sqrt(static_cast<double>(kReplicates));
        o.expect(std::abs(mean - truth) < bound, set.name + fmt(" bias %.2g (bound %.2g)", mean - truth, bound));

        const auto small = estimate_beta(simulate_counts(make_plan(set, 1e5, 1.0, 9), set, m), set, BootstrapOptions{0});
        const auto large = estimate_beta(simulate_counts(make_plan(set, 4e5, 1.0, 9), set, m), set, BootstrapOptions{0});
        const double ratio = large.sigma / small.sigma;
        o.expect(std::abs(ratio - 0.5) <= 0.05, set.name + fmt(" sigma ratio under 4x exposure %.4f", ratio));
    }

    auto run_cli = [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        cli::run(args, out, err);
        return out.str();
    };
    for (const char* format : {"json", "csv"}) {
        const std::vector<std::string> args{"simulate", "ks21", "--seed", "17", "--format", format};
        const std::string a = run_cli(args);
        const std::string b = run_cli(args);
        o.expect(!a.empty() && a == b, std::string("simulate ") + format + " output byte-identical across runs");
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        std::function<Outcome()> run;
        double budget_s;
    };
    const std::vector<Criterion> criteria{
        {"1 bounds reproduction", bounds_reproduction, 10.0},
        {"2 ideal quantum values", ideal_quantum_values, 1.0},
        {"3 KS-uncolorability", ks_uncolorability, 10.0},
        {"4 reported statistics round-trip", statistics_round_trip, 0.0},
        {"5 oracle equivalence", oracle_equivalence, 0.0},
        {"6 structural invariants", structural_invariants, 0.0},
        {"7 statistical soundness", statistical_soundness, 0.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0.0) {
            o.expect(secs < c.budget_s, fmt("runtime %.3f s (budget %.0f s)", secs, c.budget_s));
        }
        std::printf("%s  criterion %s  [%.3f s]\n", o.passed ? "PASS" : "FAIL", c.title, secs);
        for (const auto& n : o.notes) std::printf("      %s\n", n.c_str());
        failures += o.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
