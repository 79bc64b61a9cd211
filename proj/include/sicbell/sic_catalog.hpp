#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sicbell/exact.hpp"
#include "sicbell/graph.hpp"
#include "sicbell/rational.hpp"

namespace sicbell {

/// A state-independent contextuality set: unnormalized vectors over Z[ω],
/// one weight per vector, and (for Kochen–Specker sets) its contexts.
///
/// Vectors are kept exact so orthogonality is decided without rounding;
/// normalization happens only on conversion to floating point.
struct SicSet {
    std::string name;
    std::size_t dimension = 0;
    std::vector<ExactVector> vectors;
    std::vector<Rational> weights;
    std::vector<std::vector<std::size_t>> contexts;  // 0-based vertex indices
    std::vector<std::size_t> labels;                 // display labels, 1..n
    std::optional<std::size_t> expected_edge_count;

    std::size_t size() const { return vectors.size(); }
    std::size_t label(std::size_t i) const { return labels.empty() ? i + 1 : labels.at(i); }
};

SicSet build_yo13();
SicSet build_ks18();
SicSet build_ks21();

/// Catalog lookup by (case-insensitive) name: yo13, ks18, ks21.
/// Throws std::invalid_argument for anything else.
SicSet catalog_set(std::string_view name);
std::vector<std::string> catalog_names();

/// Edge (i, j) iff ⟨v_i|v_j⟩ = 0 exactly; vertex i carries weight w_i.
WeightedGraph orthogonality_graph(const SicSet& set);

struct KsColoring {
    bool colorable = false;
    std::vector<int> assignment;  // 0/1 per vertex when colorable
};

/// Exhaustive backtracking for a {0,1} assignment with exactly one 1 per
/// context and no two adjacent 1s. Contexts are tried in order and vertices
/// in ascending index, so the witness is deterministic.
/// Throws std::out_of_range if a context references a missing vertex.
KsColoring ks_colorable(const WeightedGraph& graph, const std::vector<std::vector<std::size_t>>& contexts);

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool passed() const;
    std::vector<std::string> failures() const;
    const ValidationCheck* find(std::string_view name) const;
};

ValidationReport verify_set(const SicSet& set);

}  // namespace sicbell
