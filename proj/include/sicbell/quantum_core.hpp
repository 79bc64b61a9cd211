#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "sicbell/graph.hpp"
#include "sicbell/sic_catalog.hpp"

namespace sicbell {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Density operator on C^d ⊗ C^d (Alice ⊗ Bob), index a·d + b.
/// Construction checks Hermiticity (1e-12), unit trace (1e-12) and
/// positivity (min eigenvalue ≥ −1e-10).
class BipartiteState {
public:
    BipartiteState(std::size_t local_dimension, CMatrix rho);

    static BipartiteState pure(std::size_t local_dimension, const CVector& psi);

    std::size_t dimension() const { return d_; }
    const CMatrix& density() const { return rho_; }

    CMatrix reduced_alice() const;
    CMatrix reduced_bob() const;
    double purity() const;

    /// λ·this + (1 − λ)·other
    BipartiteState mix(double lambda, const BipartiteState& other) const;

private:
    std::size_t d_;
    CMatrix rho_;
};

/// (1/√d) Σ_j |j⟩|j⟩ as a rank-1 density operator. Rejects d < 2.
BipartiteState max_entangled_state(std::size_t d);
BipartiteState maximally_mixed_state(std::size_t d);

CVector to_eigen(const std::vector<std::complex<double>>& v);

/// |v⟩⟨v| / ⟨v|v⟩
CMatrix projector(const CVector& v);
/// |v*⟩⟨v*| / ⟨v|v⟩ with v* the entrywise conjugate.
CMatrix conjugate_projector(const CVector& v);

/// Local effects for one side. Bob always measures the entrywise complex
/// conjugates of Alice's effects; there is no way to supply an independent
/// Bob family.
class MeasurementModel {
public:
    explicit MeasurementModel(std::vector<CMatrix> alice_effects);

    std::size_t size() const { return alice_.size(); }
    const CMatrix& alice(std::size_t i) const { return alice_.at(i); }
    const CMatrix& bob(std::size_t i) const { return bob_.at(i); }

private:
    std::vector<CMatrix> alice_;
    std::vector<CMatrix> bob_;
};

/// Projectors onto the normalized set vectors.
MeasurementModel ideal_measurements(const SicSet& set);

/// Tr[ρ (E_A ⊗ E_B)], clamped to [0, 1] after a 1e-14 tolerance check.
double joint_probability(const BipartiteState& state, const CMatrix& alice_effect, const CMatrix& bob_effect);

/// Tr[ρ (Π_a ⊗ Π_b*)] for Alice's vector a and Bob's conjugated vector b.
double joint_probability(const BipartiteState& state, const CVector& alice, const CVector& bob);

struct Setting {
    std::size_t alice;
    std::size_t bob;
    friend bool operator==(const Setting&, const Setting&) = default;
};

/// All (i, i) in vertex order, then (i, j), (j, i) for every edge i < j in
/// edge order. This fixes the row layout of tables, count records and CSVs.
std::vector<Setting> bell_settings(const WeightedGraph& graph);

/// Coefficient of each setting in β: w_i on (i, i), −max(w_i, w_j)/2 on
/// each ordered edge term.
std::vector<double> bell_coefficients(const WeightedGraph& graph);

struct ProbabilityTable {
    std::vector<Setting> settings;
    std::vector<double> values;
    std::vector<double> sigmas;  // empty for exact predictions

    double at(std::size_t alice, std::size_t bob) const;
};

ProbabilityTable probability_table(const WeightedGraph& graph, const BipartiteState& state,
                                   const MeasurementModel& measurements);

/// Σ_i w_i P_ii − Σ_{ij∈E} (w_ij/2)(P_ij + P_ji)
double bell_functional(const WeightedGraph& graph, const ProbabilityTable& table);

struct BellValue {
    double beta = 0.0;
    ProbabilityTable table;
};

BellValue bell_value(const SicSet& set, const BipartiteState& state);
BellValue bell_value(const SicSet& set, const BipartiteState& state, const MeasurementModel& measurements);

/// Σ w_i / d, the value under |ψ_d⟩ with ideal measurements.
double ideal_beta_closed_form(const SicSet& set);

}  // namespace sicbell
