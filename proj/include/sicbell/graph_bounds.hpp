#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sicbell/graph.hpp"
#include "sicbell/rational.hpp"
#include "sicbell/sic_catalog.hpp"

namespace sicbell {

inline constexpr std::size_t kMaxBoundsVertices = 64;

class CapacityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when the interior-point iteration cap is hit before the gap closes.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double primal, double dual, int iterations)
        : std::runtime_error(what), primal_(primal), dual_(dual), iterations_(iterations) {}

    double primal() const { return primal_; }
    double dual() const { return dual_; }
    int iterations() const { return iterations_; }

private:
    double primal_;
    double dual_;
    int iterations_;
};

struct IndependentSet {
    Rational weight;
    std::vector<std::size_t> vertices;  // ascending
};

/// Exact maximum-weight independent set (weighted independence number).
/// Ties resolve to the lexicographically smallest vertex list.
IndependentSet max_weight_independent_set(const WeightedGraph& graph);

struct ThetaOptions {
    double tolerance = 1e-9;  // relative duality gap
    int max_iterations = 200;
};

struct ThetaResult {
    double value = 0.0;  // primal objective ⟨W, X⟩
    double dual = 0.0;
    double gap = 0.0;
    int iterations = 0;
    Eigen::MatrixXd X;
};

/// Weighted Lovász number
///
///     max ⟨W, X⟩  s.t.  Tr X = 1,  X_ij = 0 for ij ∈ E,  X ⪰ 0,
///
/// with W_ij = √(w_i w_j), solved by a primal-dual interior-point method
/// (XZ search direction). Deterministic for a given graph.
ThetaResult lovasz_theta(const WeightedGraph& graph, const ThetaOptions& options = {});

struct BoundsReport {
    std::string set_name;
    Rational alpha;
    std::vector<std::size_t> alpha_witness;
    double theta = 0.0;
    double theta_gap = 0.0;
    double beta_ideal = 0.0;

    double theta_margin() const { return theta - alpha.to_double(); }
    double quantum_margin() const { return beta_ideal - alpha.to_double(); }
};

BoundsReport bounds_report(const SicSet& set);

}  // namespace sicbell
