#include "sicbell/quantum_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sicbell {

namespace {

void check_state(std::size_t d, const CMatrix& rho) {
    const auto dim = static_cast<Eigen::Index>(d * d);
    if (d < 1 || rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("BipartiteState: density matrix must be d²×d²");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("BipartiteState: density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - std::complex<double>(1.0)) > 1e-12) {
        throw std::invalid_argument("BipartiteState: trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("BipartiteState: density matrix is not positive semidefinite");
    }
}

}  // namespace

BipartiteState::BipartiteState(std::size_t local_dimension, CMatrix rho) : d_(local_dimension), rho_(std::move(rho)) {
    check_state(d_, rho_);
}

BipartiteState BipartiteState::pure(std::size_t local_dimension, const CVector& psi) {
    const double n = psi.norm();
    if (n == 0.0) {
        throw std::invalid_argument("BipartiteState::pure: zero vector");
    }
    const CVector u = psi / n;
    CMatrix rho = u * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return BipartiteState(local_dimension, std::move(rho));
}

CMatrix BipartiteState::reduced_alice() const {
    const auto d = static_cast<Eigen::Index>(d_);
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index a2 = 0; a2 < d; ++a2) {
            for (Eigen::Index b = 0; b < d; ++b) {
                out(a, a2) += rho_(a * d + b, a2 * d + b);
            }
        }
    }
    return out;
}

CMatrix BipartiteState::reduced_bob() const {
    const auto d = static_cast<Eigen::Index>(d_);
    CMatrix out = CMatrix::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
        for (Eigen::Index b2 = 0; b2 < d; ++b2) {
            for (Eigen::Index a = 0; a < d; ++a) {
                out(b, b2) += rho_(a * d + b, a * d + b2);
            }
        }
    }
    return out;
}

double BipartiteState::purity() const { return (rho_ * rho_).trace().real(); }

BipartiteState BipartiteState::mix(double lambda, const BipartiteState& other) const {
    if (other.d_ != d_) {
        throw std::invalid_argument("BipartiteState::mix: dimension mismatch");
    }
    if (lambda < 0.0 || lambda > 1.0) {
        throw std::invalid_argument("BipartiteState::mix: weight outside [0, 1]");
    }
    return BipartiteState(d_, lambda * rho_ + (1.0 - lambda) * other.rho_);
}

BipartiteState max_entangled_state(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("max_entangled_state: d must be at least 2, got " + std::to_string(d));
    }
    const auto dd = static_cast<Eigen::Index>(d);
    CVector psi = CVector::Zero(dd * dd);
    for (Eigen::Index j = 0; j < dd; ++j) {
        psi(j * dd + j) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return BipartiteState::pure(d, psi);
}

BipartiteState maximally_mixed_state(std::size_t d) {
    const auto dim = static_cast<Eigen::Index>(d * d);
    return BipartiteState(d, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

CVector to_eigen(const std::vector<std::complex<double>>& v) {
    CVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
        out(static_cast<Eigen::Index>(k)) = v[k];
    }
    return out;
}

CMatrix projector(const CVector& v) {
    const double n2 = v.squaredNorm();
    if (n2 == 0.0) {
        throw std::invalid_argument("projector: zero vector");
    }
    return v * v.adjoint() / n2;
}

CMatrix conjugate_projector(const CVector& v) { return projector(v.conjugate()); }

MeasurementModel::MeasurementModel(std::vector<CMatrix> alice_effects) : alice_(std::move(alice_effects)) {
    bob_.reserve(alice_.size());
    for (const auto& e : alice_) {
        if (e.rows() != e.cols()) {
            throw std::invalid_argument("MeasurementModel: effects must be square");
        }
        bob_.push_back(e.conjugate());
    }
}

MeasurementModel ideal_measurements(const SicSet& set) {
    std::vector<CMatrix> effects;
    effects.reserve(set.size());
    for (const auto& v : set.vectors) {
        effects.push_back(projector(to_eigen(normalized(v))));
    }
    return MeasurementModel(std::move(effects));
}

double joint_probability(const BipartiteState& state, const CMatrix& alice_effect, const CMatrix& bob_effect) {
    const auto d = static_cast<Eigen::Index>(state.dimension());
    if (alice_effect.rows() != d || alice_effect.cols() != d || bob_effect.rows() != d || bob_effect.cols() != d) {
        throw std::invalid_argument("joint_probability: effect dimension differs from state dimension");
    }
    CMatrix joint(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index a2 = 0; a2 < d; ++a2) {
            joint.block(a * d, a2 * d, d, d) = alice_effect(a, a2) * bob_effect;
        }
    }
    // Tr[ρ K] = Σ_{xy} ρ_xy K_yx
    const double p = (state.density().array() * joint.transpose().array()).sum().real();
    // Roundoff beyond the clamp slack means the inputs were not valid effects.
    if (p < -1e-12 || p > 1.0 + 1e-12) {
        throw std::domain_error("joint_probability: result " + std::to_string(p) + " outside [0, 1]");
    }
    // Roundoff residue on exactly orthogonal pairs is snapped to 0.
    if (std::abs(p) <= 1e-14) {
        return 0.0;
    }
    return std::clamp(p, 0.0, 1.0);
}

double joint_probability(const BipartiteState& state, const CVector& alice, const CVector& bob) {
    const auto d = static_cast<Eigen::Index>(state.dimension());
    if (alice.size() != d || bob.size() != d) {
        throw std::invalid_argument("joint_probability: vector dimension differs from state dimension");
    }
    return joint_probability(state, projector(alice), conjugate_projector(bob));
}

std::vector<Setting> bell_settings(const WeightedGraph& graph) {
    std::vector<Setting> out;
    out.reserve(graph.size() + 2 * graph.edges().size());
    for (std::size_t i = 0; i < graph.size(); ++i) {
        out.push_back({i, i});
    }
    for (const auto& e : graph.edges()) {
        out.push_back({e.u, e.v});
        out.push_back({e.v, e.u});
    }
    return out;
}

std::vector<double> bell_coefficients(const WeightedGraph& graph) {
    std::vector<double> out;
    out.reserve(graph.size() + 2 * graph.edges().size());
    for (std::size_t i = 0; i < graph.size(); ++i) {
        out.push_back(graph.weight(i).to_double());
    }
    for (const auto& e : graph.edges()) {
        const double c = -0.5 * graph.edge_weight(e).to_double();
        out.push_back(c);
        out.push_back(c);
    }
    return out;
}

double ProbabilityTable::at(std::size_t alice, std::size_t bob) const {
    for (std::size_t k = 0; k < settings.size(); ++k) {
        if (settings[k].alice == alice && settings[k].bob == bob) {
            return values[k];
        }
    }
    throw std::out_of_range("ProbabilityTable: setting not present");
}

ProbabilityTable probability_table(const WeightedGraph& graph, const BipartiteState& state,
                                   const MeasurementModel& measurements) {
    if (measurements.size() != graph.size()) {
        throw std::invalid_argument("probability_table: one effect per vertex required");
    }
    ProbabilityTable table;
    table.settings = bell_settings(graph);
    table.values.reserve(table.settings.size());
    for (const auto& s : table.settings) {
        table.values.push_back(joint_probability(state, measurements.alice(s.alice), measurements.bob(s.bob)));
    }
    return table;
}

double bell_functional(const WeightedGraph& graph, const ProbabilityTable& table) {
    const auto expected = bell_settings(graph);
    if (table.settings != expected || table.values.size() != expected.size()) {
        throw std::invalid_argument("bell_functional: table does not cover the settings of this graph");
    }
    const auto coeff = bell_coefficients(graph);
    double beta = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        beta += coeff[k] * table.values[k];
    }
    return beta;
}

BellValue bell_value(const SicSet& set, const BipartiteState& state) {
    return bell_value(set, state, ideal_measurements(set));
}

BellValue bell_value(const SicSet& set, const BipartiteState& state, const MeasurementModel& measurements) {
    if (set.dimension != state.dimension()) {
        throw std::invalid_argument("bell_value: set dimension " + std::to_string(set.dimension) +
                                    " differs from state dimension " + std::to_string(state.dimension()));
    }
    const WeightedGraph graph = orthogonality_graph(set);
    BellValue out;
    out.table = probability_table(graph, state, measurements);
    out.beta = bell_functional(graph, out.table);
    return out;
}

double ideal_beta_closed_form(const SicSet& set) {
    Rational total;
    for (const auto& w : set.weights) {
        total += w;
    }
    return total.to_double() / static_cast<double>(set.dimension);
}

}  // namespace sicbell
