#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sicbell/graph_bounds.hpp"
#include "sicbell/montecarlo.hpp"
#include "sicbell/noise_models.hpp"
#include "sicbell/quantum_core.hpp"
#include "sicbell/sic_catalog.hpp"

namespace sicbell {

using json = nlohmann::json;

// Set-definition files:
//
//   {
//     "name": "YO13",
//     "dimension": 3,
//     "vectors": [[[1,0],[0,0],[0,0]], ...],   // entry [a,b] = a + b·ω; a bare integer is also accepted
//     "weights": [3, 3, 2, ...],               // integers or "p/q" strings
//     "contexts": [[0,1,2], ...],              // optional, 0-based
//     "labels": [1, 2, ...],                   // optional display labels
//     "edge_count": 24                         // optional structural check
//   }
//
// Parsing throws std::invalid_argument with the offending field named.
SicSet set_from_json(const json& doc);
json set_to_json(const SicSet& set);
SicSet load_set_file(const std::filesystem::path& path);

json to_json(const BoundsReport& report);
json to_json(const ProbabilityTable& table, const SicSet& set);
json to_json(const CountRecord& record);
json to_json(const ViolationReport& report);
json to_json(const SchmidtSpectrum& spectrum);

CountRecord count_record_from_json(const json& doc);

/// Figure rows: 1..n for the diagonal terms, then n+1..n+2|E| for the ordered
/// edge terms. Columns: index,label,alice,bob,counts,normalization,p_hat,sigma,ideal.
/// Without a measured table the count/estimate columns are left empty.
std::string figure_csv(const SicSet& set, const ProbabilityTable& ideal, const ProbabilityTable* measured,
                       const CountRecord* record);

}  // namespace sicbell
