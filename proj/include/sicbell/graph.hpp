#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sicbell/rational.hpp"

namespace sicbell {

struct Edge {
    std::size_t u;  // u < v
    std::size_t v;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected vertex-weighted graph. Edges are stored once, normalized to
// u < v and sorted by (u, v); self-loops and non-positive weights are rejected.
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(std::vector<Rational> weights, std::vector<std::pair<std::size_t, std::size_t>> edges);

    std::size_t size() const { return weights_.size(); }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& weight(std::size_t i) const { return weights_.at(i); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * size() + j] != 0; }
    std::size_t degree(std::size_t i) const;

    // max(w_i, w_j) for the edge weight in the Bell functional
    Rational edge_weight(const Edge& e) const;

    Rational total_weight() const;

private:
    std::vector<Rational> weights_;
    std::vector<Edge> edges_;
    std::vector<char> adjacency_;
};

}  // namespace sicbell
