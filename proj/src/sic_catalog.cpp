#include "sicbell/sic_catalog.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace sicbell {

namespace {

std::vector<ExactVector> integer_vectors(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<ExactVector> out;
    for (const auto& row : rows) {
        ExactVector v;
        for (int x : row) {
            v.emplace_back(x);
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::size_t> default_labels(std::size_t n) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i + 1;
    }
    return labels;
}

}  // namespace

SicSet build_yo13() {
    SicSet set;
    set.name = "YO13";
    set.dimension = 3;
    // Ordered so the four h-type vectors (the degree-3 vertices) sit at
    // display labels 3, 7, 12 and 13.
    set.vectors = integer_vectors({
        {1, 0, 0},    // z1
        {0, 1, 0},    // z2
        {1, 1, 1},    // h0
        {0, 0, 1},    // z3
        {0, 1, -1},   // y1-
        {0, 1, 1},    // y1+
        {-1, 1, 1},   // h1
        {1, 0, -1},   // y2-
        {1, 0, 1},    // y2+
        {1, -1, 0},   // y3-
        {1, 1, 0},    // y3+
        {1, -1, 1},   // h2
        {1, 1, -1},   // h3
    });
    set.labels = default_labels(set.size());
    set.expected_edge_count = 24;

    // Weight 2 on the degree-3 class, 3 elsewhere.
    set.weights.assign(set.size(), Rational(1));
    const WeightedGraph unweighted = orthogonality_graph(set);
    for (std::size_t i = 0; i < set.size(); ++i) {
        set.weights[i] = unweighted.degree(i) == 3 ? Rational(2) : Rational(3);
    }
    return set;
}

SicSet build_ks18() {
    SicSet set;
    set.name = "KS18";
    set.dimension = 4;
    set.vectors = integer_vectors({
        {0, 0, 0, 1},
        {0, 0, 1, 0},
        {1, 1, 0, 0},
        {1, -1, 0, 0},
        {0, 1, 0, 0},
        {1, 0, 1, 0},
        {1, 0, -1, 0},
        {1, -1, 1, -1},
        {1, -1, -1, 1},
        {0, 0, 1, 1},
        {1, 1, 1, 1},
        {0, 1, 0, -1},
        {1, 0, 0, 1},
        {1, 0, 0, -1},
        {0, 1, -1, 0},
        {1, 1, -1, 1},
        {1, 1, 1, -1},
        {-1, 1, 1, 1},
    });
    set.contexts = {
        {0, 1, 2, 3},
        {0, 4, 5, 6},
        {7, 8, 2, 9},
        {7, 10, 6, 11},
        {1, 4, 12, 13},
        {8, 10, 13, 14},
        {15, 16, 3, 9},
        {15, 17, 5, 11},
        {16, 17, 12, 14},
    };
    set.weights.assign(set.size(), Rational(1));
    set.labels = default_labels(set.size());
    set.expected_edge_count = 63;
    return set;
}

SicSet build_ks21() {
    // Entries are 0 or cube roots of unity: ω² = e^{2πi/3} and −ω = e^{4πi/3}.
    constexpr ExactScalar o{0, 0};
    constexpr ExactScalar l{1, 0};
    constexpr ExactScalar c{-1, 1};
    constexpr ExactScalar c2{0, -1};

    SicSet set;
    set.name = "KS21";
    set.dimension = 6;
    set.vectors = {
        {l, o, o, o, o, o},
        {o, l, o, o, o, o},
        {o, o, l, o, o, o},
        {o, o, o, l, o, o},
        {o, o, o, o, l, o},
        {o, o, o, o, o, l},
        {o, o, l, l, l, l},
        {o, l, o, l, c, c2},
        {o, l, l, o, c2, c},
        {o, l, c, c2, o, l},
        {o, l, c2, c, l, o},
        {l, o, o, l, c2, c},
        {l, o, l, o, c, c2},
        {l, o, c2, c, o, l},
        {l, o, c, c2, l, o},
        {l, l, o, o, l, l},
        {l, c, o, c2, o, c2},
        {l, c2, o, c, c, o},
        {l, c2, c, o, o, c},
        {l, c, c2, o, c2, o},
        {l, l, l, l, o, o},
    };
    // Any two contexts share exactly one vector.
    set.contexts = {
        {0, 1, 2, 3, 4, 5},
        {0, 6, 7, 8, 9, 10},
        {1, 6, 11, 12, 13, 14},
        {2, 7, 11, 15, 16, 17},
        {3, 8, 12, 15, 18, 19},
        {4, 9, 13, 16, 18, 20},
        {5, 10, 14, 17, 19, 20},
    };
    set.weights.assign(set.size(), Rational(1));
    set.labels = default_labels(set.size());
    set.expected_edge_count = 105;
    return set;
}

std::vector<std::string> catalog_names() { return {"yo13", "ks18", "ks21"}; }

SicSet catalog_set(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (key == "yo13") {
        return build_yo13();
    }
    if (key == "ks18") {
        return build_ks18();
    }
    if (key == "ks21") {
        return build_ks21();
    }
    throw std::invalid_argument("unknown SI-C set '" + std::string(name) + "' (expected yo13, ks18 or ks21)");
}

WeightedGraph orthogonality_graph(const SicSet& set) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            if (inner_product(set.vectors[i], set.vectors[j]).is_zero()) {
                edges.emplace_back(i, j);
            }
        }
    }
    std::vector<Rational> weights = set.weights;
    if (weights.size() != set.size()) {
        weights.assign(set.size(), Rational(1));
    }
    return WeightedGraph(std::move(weights), std::move(edges));
}

namespace {

class ColoringSearch {
public:
    ColoringSearch(const WeightedGraph& g, const std::vector<std::vector<std::size_t>>& contexts)
        : graph_(g), contexts_(contexts), value_(g.size(), -1) {}

    bool run() { return extend(); }

    std::vector<int> assignment() const {
        std::vector<int> out(value_.size());
        for (std::size_t i = 0; i < value_.size(); ++i) {
            out[i] = value_[i] == 1 ? 1 : 0;
        }
        return out;
    }

private:
    bool has_one(const std::vector<std::size_t>& ctx) const {
        return std::any_of(ctx.begin(), ctx.end(), [this](std::size_t v) { return value_[v] == 1; });
    }

    bool has_open(const std::vector<std::size_t>& ctx) const {
        return std::any_of(ctx.begin(), ctx.end(), [this](std::size_t v) { return value_[v] == -1; });
    }

    bool extend() {
        const std::vector<std::size_t>* next = nullptr;
        for (const auto& ctx : contexts_) {
            if (!has_one(ctx)) {
                if (!has_open(ctx)) {
                    return false;
                }
                if (next == nullptr) {
                    next = &ctx;
                }
            }
        }
        if (next == nullptr) {
            return true;
        }
        std::vector<std::size_t> candidates;
        for (std::size_t v : *next) {
            if (value_[v] == -1) {
                candidates.push_back(v);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        for (std::size_t v : candidates) {
            const std::size_t mark = trail_.size();
            assign(v, 1);
            for (std::size_t u = 0; u < graph_.size(); ++u) {
                if (graph_.adjacent(v, u) && value_[u] == -1) {
                    assign(u, 0);
                }
            }
            // Context partners must be 0 even if the context is not a clique.
            for (const auto& ctx : contexts_) {
                if (std::find(ctx.begin(), ctx.end(), v) == ctx.end()) {
                    continue;
                }
                for (std::size_t u : ctx) {
                    if (u != v && value_[u] == -1) {
                        assign(u, 0);
                    }
                }
            }
            if (extend()) {
                return true;
            }
            undo(mark);
        }
        return false;
    }

    void assign(std::size_t v, int x) {
        value_[v] = x;
        trail_.push_back(v);
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[trail_.back()] = -1;
            trail_.pop_back();
        }
    }

    const WeightedGraph& graph_;
    const std::vector<std::vector<std::size_t>>& contexts_;
    std::vector<int> value_;
    std::vector<std::size_t> trail_;
};

}  // namespace

KsColoring ks_colorable(const WeightedGraph& graph, const std::vector<std::vector<std::size_t>>& contexts) {
    for (const auto& ctx : contexts) {
        for (std::size_t v : ctx) {
            if (v >= graph.size()) {
                throw std::out_of_range("ks_colorable: context references vertex " + std::to_string(v) +
                                        " of a " + std::to_string(graph.size()) + "-vertex graph");
            }
        }
    }
    ColoringSearch search(graph, contexts);
    KsColoring result;
    result.colorable = search.run();
    if (result.colorable) {
        result.assignment = search.assignment();
    }
    return result;
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::vector<std::string> ValidationReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (!c.passed) {
            out.push_back(c.name + ": " + c.detail);
        }
    }
    return out;
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

ValidationReport verify_set(const SicSet& set) {
    ValidationReport report;
    auto add = [&report](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    const std::size_t n = set.size();
    const std::size_t d = set.dimension;

    bool shape_ok = d > 0 && n > 0;
    for (const auto& v : set.vectors) {
        shape_ok = shape_ok && v.size() == d;
    }
    add("dimension", shape_ok, shape_ok ? "" : "every vector must have exactly d components");
    if (!shape_ok) {
        return report;
    }

    std::ostringstream zero_list;
    bool nonzero = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(set.vectors[i])) {
            nonzero = false;
            zero_list << " v" << set.label(i);
        }
    }
    add("nonzero-vectors", nonzero, zero_list.str());

    bool weights_ok = set.weights.size() == n &&
                      std::all_of(set.weights.begin(), set.weights.end(),
                                  [](const Rational& w) { return w > Rational(0); });
    add("weights", weights_ok, weights_ok ? "" : "need one positive weight per vector");

    bool labels_ok = set.labels.empty() || set.labels.size() == n;
    add("labels", labels_ok, labels_ok ? "" : "label count differs from vector count");

    bool ranges_ok = true;
    std::ostringstream range_detail;
    for (std::size_t c = 0; c < set.contexts.size(); ++c) {
        auto ctx = set.contexts[c];
        std::sort(ctx.begin(), ctx.end());
        const bool dup = std::adjacent_find(ctx.begin(), ctx.end()) != ctx.end();
        const bool range = ctx.empty() || ctx.back() < n;
        if (ctx.size() != d || dup || !range) {
            ranges_ok = false;
            range_detail << " context " << c + 1 << " must list " << d << " distinct in-range vectors;";
        }
    }
    add("context-shape", ranges_ok, range_detail.str());
    if (!nonzero || !ranges_ok) {
        return report;
    }

    if (!set.contexts.empty()) {
        bool orth_ok = true;
        bool identity_ok = true;
        std::ostringstream orth_detail;
        std::ostringstream id_detail;
        for (std::size_t c = 0; c < set.contexts.size(); ++c) {
            const auto& ctx = set.contexts[c];
            Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
            for (std::size_t a = 0; a < ctx.size(); ++a) {
                for (std::size_t b = a + 1; b < ctx.size(); ++b) {
                    if (!inner_product(set.vectors[ctx[a]], set.vectors[ctx[b]]).is_zero()) {
                        orth_ok = false;
                        orth_detail << " context " << c + 1 << ": v" << set.label(ctx[a]) << " not orthogonal to v"
                                    << set.label(ctx[b]) << ";";
                    }
                }
                const auto u = normalized(set.vectors[ctx[a]]);
                Eigen::Map<const Eigen::VectorXcd> uv(u.data(), static_cast<Eigen::Index>(d));
                sum += uv * uv.adjoint();
            }
            const double err = (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
            if (err > 1e-12) {
                identity_ok = false;
                id_detail << " context " << c + 1 << " deviates from I by " << err << ";";
            }
        }
        add("context-orthogonality", orth_ok, orth_detail.str());
        add("context-identity", identity_ok, id_detail.str());
    }

    const WeightedGraph graph = orthogonality_graph(set);

    // Exact and floating classification of orthogonality must agree.
    bool agree = true;
    for (std::size_t i = 0; i < n && agree; ++i) {
        const auto ui = normalized(set.vectors[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto uj = normalized(set.vectors[j]);
            std::complex<double> ip = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                ip += std::conj(ui[k]) * uj[k];
            }
            if ((std::abs(ip) < 1e-9) != graph.adjacent(i, j)) {
                agree = false;
                break;
            }
        }
    }
    add("exact-float-agreement", agree, agree ? "" : "floating inner products disagree with exact ones");

    if (set.expected_edge_count) {
        const bool ok = graph.edges().size() == *set.expected_edge_count;
        add("edge-count", ok,
            ok ? "" : "expected " + std::to_string(*set.expected_edge_count) + " edges, found " +
                          std::to_string(graph.edges().size()));
    }

    if (!set.contexts.empty() && report.passed()) {
        const auto coloring = ks_colorable(graph, set.contexts);
        add("ks-uncolorable", !coloring.colorable,
            coloring.colorable ? "a noncontextual {0,1} assignment exists" : "");
    }
    return report;
}

}  // namespace sicbell
