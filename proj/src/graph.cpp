#include "sicbell/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sicbell {

WeightedGraph::WeightedGraph(std::vector<Rational> weights,
                             std::vector<std::pair<std::size_t, std::size_t>> edges)
    : weights_(std::move(weights)) {
    const std::size_t n = weights_.size();
    for (const auto& w : weights_) {
        if (w <= Rational(0)) {
            throw std::invalid_argument("WeightedGraph: weights must be positive, got " + w.to_string());
        }
    }
    adjacency_.assign(n * n, 0);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) {
            throw std::invalid_argument("WeightedGraph: edge endpoint out of range");
        }
        if (a == b) {
            throw std::invalid_argument("WeightedGraph: self-loop at vertex " + std::to_string(a));
        }
        if (a > b) {
            std::swap(a, b);
        }
        if (adjacency_[a * n + b] == 0) {
            adjacency_[a * n + b] = adjacency_[b * n + a] = 1;
            edges_.push_back({a, b});
        }
    }
    std::sort(edges_.begin(), edges_.end());
}

std::size_t WeightedGraph::degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < size(); ++j) {
        d += adjacent(i, j) ? 1 : 0;
    }
    return d;
}

Rational WeightedGraph::edge_weight(const Edge& e) const {
    return std::max(weights_.at(e.u), weights_.at(e.v));
}

Rational WeightedGraph::total_weight() const {
    Rational acc;
    for (const auto& w : weights_) {
        acc += w;
    }
    return acc;
}

}  // namespace sicbell
