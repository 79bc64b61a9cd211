#include "sicbell/graph_bounds.hpp"
#include "sicbell/quantum_core.hpp"

namespace sicbell {

BoundsReport bounds_report(const SicSet& set) {
    const WeightedGraph graph = orthogonality_graph(set);
    const IndependentSet mwis = max_weight_independent_set(graph);
    const ThetaResult theta = lovasz_theta(graph);

    BoundsReport report;
    report.set_name = set.name;
    report.alpha = mwis.weight;
    report.alpha_witness = mwis.vertices;
    report.theta = theta.value;
    report.theta_gap = theta.gap;
    report.beta_ideal = bell_value(set, max_entangled_state(set.dimension)).beta;
    return report;
}

}  // namespace sicbell
