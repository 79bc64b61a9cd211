#include <algorithm>
#include <cmath>
#include <sstream>

#include "sicbell/graph_bounds.hpp"

namespace sicbell {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Largest step in (0, 1] keeping base + step·dir positive definite, kept a
// fixed fraction away from the boundary.
double step_length(const MatrixXd& base, const MatrixXd& dir) {
    Eigen::LLT<MatrixXd> llt(base);
    if (llt.info() != Eigen::Success) {
        return 0.0;
    }
    const MatrixXd L = llt.matrixL();
    const MatrixXd half = L.triangularView<Eigen::Lower>().solve(dir);
    const MatrixXd full = L.triangularView<Eigen::Lower>().solve(half.transpose());
    const MatrixXd scaled = 0.5 * (full + full.transpose());
    const double lambda_min = Eigen::SelfAdjointEigenSolver<MatrixXd>(scaled, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (lambda_min >= 0.0) {
        return 1.0;
    }
    return std::min(1.0, 0.95 / -lambda_min);
}

}  // namespace

ThetaResult lovasz_theta(const WeightedGraph& graph, const ThetaOptions& options) {
    const std::size_t nv = graph.size();
    if (nv > kMaxBoundsVertices) {
        throw CapacityError("lovasz_theta: " + std::to_string(nv) + " vertices exceeds the limit of " +
                            std::to_string(kMaxBoundsVertices));
    }
    ThetaResult result;
    if (nv == 0) {
        return result;
    }
    const auto n = static_cast<Eigen::Index>(nv);
    const auto& edges = graph.edges();
    const auto me = static_cast<Eigen::Index>(edges.size());
    const Eigen::Index m = me + 1;  // edge constraints, then the trace constraint

    VectorXd sqrt_w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sqrt_w(i) = std::sqrt(graph.weight(static_cast<std::size_t>(i)).to_double());
    }
    const MatrixXd W = sqrt_w * sqrt_w.transpose();

    // Primal X = I/n is feasible; the dual Z = tI − W is positive definite
    // once t exceeds λ_max(W) = Σ w_i.
    MatrixXd X = MatrixXd::Identity(n, n) / static_cast<double>(n);
    VectorXd y = VectorXd::Zero(m);
    y(me) = sqrt_w.squaredNorm() + 1.0;
    MatrixXd Z = y(me) * MatrixXd::Identity(n, n) - W;

    double primal = (W.array() * X.array()).sum();
    double dual = y(me);

    // Solves A(dX) = 0 with dZ = Aᵀ(dy) and Z dX + dZ X = R, returning (dy, dZ, dX).
    struct Direction {
        VectorXd dy;
        MatrixXd dZ;
        MatrixXd dX;
    };
    auto solve_direction = [&](const Eigen::PartialPivLU<MatrixXd>& lu, const MatrixXd& Zi, const MatrixXd& R) {
        const MatrixXd G = Zi * R;
        VectorXd rhs(m);
        for (Eigen::Index a = 0; a < me; ++a) {
            rhs(a) = G(edges[a].u, edges[a].v) + G(edges[a].v, edges[a].u);
        }
        rhs(me) = G.trace();
        Direction dir;
        dir.dy = lu.solve(rhs);
        dir.dZ = dir.dy(me) * MatrixXd::Identity(n, n);
        for (Eigen::Index a = 0; a < me; ++a) {
            dir.dZ(edges[a].u, edges[a].v) += dir.dy(a);
            dir.dZ(edges[a].v, edges[a].u) += dir.dy(a);
        }
        dir.dX = G - Zi * dir.dZ * X;
        dir.dX = 0.5 * (dir.dX + dir.dX.transpose()).eval();
        return dir;
    };

    int iter = 0;
    while (dual - primal > options.tolerance * std::max(1.0, std::abs(dual))) {
        if (iter >= options.max_iterations) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "lovasz_theta: no convergence after " << iter << " iterations (primal " << primal
                << ", dual " << dual << ")";
            throw SolverError(msg.str(), primal, dual, iter);
        }
        MatrixXd Zi = Z.llt().solve(MatrixXd::Identity(n, n));
        Zi = 0.5 * (Zi + Zi.transpose()).eval();
        const MatrixXd ZiX = Zi * X;
        const MatrixXd XZi = X * Zi;

        // M_kl = ⟨A_k, Z⁻¹ A_l X⟩ with A_e = e_i e_jᵀ + e_j e_iᵀ and A_trace = I.
        MatrixXd M(m, m);
        for (Eigen::Index a = 0; a < me; ++a) {
            const auto i = static_cast<Eigen::Index>(edges[a].u);
            const auto j = static_cast<Eigen::Index>(edges[a].v);
            for (Eigen::Index b = 0; b < me; ++b) {
                const auto k = static_cast<Eigen::Index>(edges[b].u);
                const auto l = static_cast<Eigen::Index>(edges[b].v);
                M(a, b) = Zi(i, k) * X(l, j) + Zi(i, l) * X(k, j) + Zi(j, k) * X(l, i) + Zi(j, l) * X(k, i);
            }
            M(a, me) = ZiX(i, j) + ZiX(j, i);
            M(me, a) = XZi(j, i) + XZi(i, j);
        }
        M(me, me) = ZiX.trace();
        const Eigen::PartialPivLU<MatrixXd> lu(M);

        const double gap = (Z.array() * X.array()).sum();
        const MatrixXd ZX = Z * X;

        // Predictor aims straight at the optimum; the corrector recenters
        // with μ chosen from how far the predictor could travel.
        const Direction pred = solve_direction(lu, Zi, -ZX);
        const double ap_pred = step_length(X, pred.dX);
        const double ad_pred = step_length(Z, pred.dZ);
        const double gap_pred = ((Z + ad_pred * pred.dZ).array() * (X + ap_pred * pred.dX).array()).sum();
        const double sigma = std::pow(std::clamp(gap_pred / gap, 0.0, 1.0), 3);
        const double mu = sigma * gap / static_cast<double>(n);

        const MatrixXd R = mu * MatrixXd::Identity(n, n) - ZX - pred.dZ * pred.dX;
        const Direction corr = solve_direction(lu, Zi, R);

        const double alpha_p = step_length(X, corr.dX);
        const double alpha_d = step_length(Z, corr.dZ);
        if (alpha_p == 0.0 && alpha_d == 0.0) {
            throw SolverError("lovasz_theta: step length collapsed", primal, dual, iter);
        }
        X += alpha_p * corr.dX;
        y += alpha_d * corr.dy;
        Z += alpha_d * corr.dZ;

        primal = (W.array() * X.array()).sum();
        dual = y(me);
        ++iter;
    }

    result.value = primal;
    result.dual = dual;
    result.gap = dual - primal;
    result.iterations = iter;
    result.X = std::move(X);
    return result;
}

}  // namespace sicbell
