#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "sicbell/graph_bounds.hpp"

namespace sicbell {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

// Set whose smallest element of the symmetric difference is present sorts first.
bool lex_smaller(Mask a, Mask b) {
    const Mask diff = a ^ b;
    return diff != 0 && (a & (diff & -diff)) != 0;
}

class BranchAndBound {
public:
    explicit BranchAndBound(const WeightedGraph& g) : g_(g), adj_(g.size(), 0) {
        for (const auto& e : g.edges()) {
            adj_[e.u] |= bit(e.v);
            adj_[e.v] |= bit(e.u);
        }
    }

    IndependentSet solve() {
        greedy_start();
        const Mask all = g_.size() == 64 ? ~Mask{0} : bit(g_.size()) - 1;
        search(all, 0, Rational(0));
        IndependentSet out;
        out.weight = best_weight_;
        for (std::size_t i = 0; i < g_.size(); ++i) {
            if (best_ & bit(i)) {
                out.vertices.push_back(i);
            }
        }
        return out;
    }

private:
    void greedy_start() {
        std::vector<std::size_t> order(g_.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [this](std::size_t a, std::size_t b) { return g_.weight(a) > g_.weight(b); });
        Mask chosen = 0;
        Rational w;
        for (std::size_t v : order) {
            if ((adj_[v] & chosen) == 0) {
                chosen |= bit(v);
                w += g_.weight(v);
            }
        }
        best_ = chosen;
        best_weight_ = w;
    }

    // Greedy clique partition of the candidates; an independent set takes at
    // most one vertex, hence at most the heaviest weight, from each clique.
    Rational clique_cover_bound(Mask candidates) const {
        Rational bound;
        while (candidates != 0) {
            Mask clique = 0;
            Rational heaviest;
            Mask scan = candidates;
            while (scan != 0) {
                const auto v = static_cast<std::size_t>(std::countr_zero(scan));
                scan &= scan - 1;
                if ((clique & ~adj_[v]) == 0) {
                    clique |= bit(v);
                    heaviest = std::max(heaviest, g_.weight(v));
                }
            }
            candidates &= ~clique;
            bound += heaviest;
        }
        return bound;
    }

    Rational weight_sum(Mask m) const {
        Rational acc;
        while (m != 0) {
            acc += g_.weight(static_cast<std::size_t>(std::countr_zero(m)));
            m &= m - 1;
        }
        return acc;
    }

    void search(Mask candidates, Mask current, const Rational& weight) {
        if (candidates == 0) {
            if (weight > best_weight_ || (weight == best_weight_ && lex_smaller(current, best_))) {
                best_weight_ = weight;
                best_ = current;
            }
            return;
        }
        if (weight + weight_sum(candidates) < best_weight_) {
            return;
        }
        if (weight + clique_cover_bound(candidates) < best_weight_) {
            return;
        }
        const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
        search(candidates & ~adj_[v] & ~bit(v), current | bit(v), weight + g_.weight(v));
        search(candidates & ~bit(v), current, weight);
    }

    const WeightedGraph& g_;
    std::vector<Mask> adj_;
    Mask best_ = 0;
    Rational best_weight_;
};

}  // namespace

IndependentSet max_weight_independent_set(const WeightedGraph& graph) {
    if (graph.size() > kMaxBoundsVertices) {
        throw CapacityError("max_weight_independent_set: " + std::to_string(graph.size()) +
                            " vertices exceeds the limit of " + std::to_string(kMaxBoundsVertices));
    }
    if (graph.size() == 0) {
        return {};
    }
    return BranchAndBound(graph).solve();
}

}  // namespace sicbell
