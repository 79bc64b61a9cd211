#include "sicbell/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sicbell {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("set definition: " + what); }

const json& field(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        bad(std::string("missing field '") + key + "'");
    }
    return doc.at(key);
}

ExactScalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) {
        return ExactScalar(j.get<std::int64_t>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        return ExactScalar(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
    }
    bad("vector entries must be integers or [a, b] integer pairs");
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        return Rational::parse(j.get<std::string>());
    }
    bad("weights must be integers or \"p/q\" strings");
}

json rational_to_json(const Rational& r) {
    if (r.den() == 1) {
        return r.num();
    }
    return r.to_string();
}

json number(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return x;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

SicSet set_from_json(const json& doc) {
    if (!doc.is_object()) {
        bad("document must be a JSON object");
    }
    SicSet set;
    set.name = field(doc, "name").get<std::string>();
    const auto& dim = field(doc, "dimension");
    if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1) {
        bad("'dimension' must be a positive integer");
    }
    set.dimension = dim.get<std::size_t>();
    for (const auto& row : field(doc, "vectors")) {
        if (!row.is_array()) {
            bad("each vector must be an array");
        }
        ExactVector v;
        for (const auto& entry : row) {
            v.push_back(scalar_from_json(entry));
        }
        set.vectors.push_back(std::move(v));
    }
    for (const auto& w : field(doc, "weights")) {
        set.weights.push_back(rational_from_json(w));
    }
    if (doc.contains("contexts")) {
        for (const auto& ctx : doc.at("contexts")) {
            set.contexts.push_back(ctx.get<std::vector<std::size_t>>());
        }
    }
    if (doc.contains("labels")) {
        set.labels = doc.at("labels").get<std::vector<std::size_t>>();
    } else {
        for (std::size_t i = 0; i < set.vectors.size(); ++i) {
            set.labels.push_back(i + 1);
        }
    }
    if (doc.contains("edge_count")) {
        set.expected_edge_count = doc.at("edge_count").get<std::size_t>();
    }
    return set;
}

json set_to_json(const SicSet& set) {
    json doc;
    doc["name"] = set.name;
    doc["dimension"] = set.dimension;
    json vectors = json::array();
    for (const auto& v : set.vectors) {
        json row = json::array();
        for (const auto& z : v) {
            row.push_back({z.real_part(), z.omega_part()});
        }
        vectors.push_back(std::move(row));
    }
    doc["vectors"] = std::move(vectors);
    json weights = json::array();
    for (const auto& w : set.weights) {
        weights.push_back(rational_to_json(w));
    }
    doc["weights"] = std::move(weights);
    doc["contexts"] = set.contexts;
    doc["labels"] = set.labels;
    if (set.expected_edge_count) {
        doc["edge_count"] = *set.expected_edge_count;
    }
    return doc;
}

SicSet load_set_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open set file '" + path.string() + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("set file '" + path.string() + "': " + e.what());
    }
    try {
        return set_from_json(doc);
    } catch (const json::exception& e) {
        throw std::invalid_argument("set file '" + path.string() + "': " + e.what());
    }
}

json to_json(const BoundsReport& report) {
    json doc;
    doc["set"] = report.set_name;
    doc["alpha"] = rational_to_json(report.alpha);
    doc["alpha_witness"] = report.alpha_witness;
    doc["theta"] = report.theta;
    doc["theta_gap"] = report.theta_gap;
    doc["beta_ideal"] = report.beta_ideal;
    doc["theta_margin"] = report.theta_margin();
    doc["quantum_margin"] = report.quantum_margin();
    return doc;
}

json to_json(const ProbabilityTable& table, const SicSet& set) {
    json rows = json::array();
    for (std::size_t k = 0; k < table.settings.size(); ++k) {
        json row;
        row["index"] = k + 1;
        row["alice"] = set.label(table.settings[k].alice);
        row["bob"] = set.label(table.settings[k].bob);
        row["p"] = table.values[k];
        if (!table.sigmas.empty()) {
            row["sigma"] = table.sigmas[k];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const CountRecord& record) {
    json doc;
    doc["set"] = record.set_name;
    doc["normalization"] = record.normalization;
    doc["seed"] = record.seed;
    json rows = json::array();
    for (std::size_t k = 0; k < record.settings.size(); ++k) {
        rows.push_back({{"alice", record.settings[k].alice},
                        {"bob", record.settings[k].bob},
                        {"counts", record.counts[k]}});
    }
    doc["settings"] = std::move(rows);
    return doc;
}

CountRecord count_record_from_json(const json& doc) {
    CountRecord rec;
    rec.set_name = doc.at("set").get<std::string>();
    rec.normalization = doc.at("normalization").get<double>();
    rec.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& row : doc.at("settings")) {
        rec.settings.push_back({row.at("alice").get<std::size_t>(), row.at("bob").get<std::size_t>()});
        rec.counts.push_back(row.at("counts").get<std::uint64_t>());
    }
    return rec;
}

json to_json(const ViolationReport& report) {
    json doc;
    doc["beta_hat"] = report.beta_hat;
    doc["sigma"] = report.sigma;
    doc["alpha"] = rational_to_json(report.alpha);
    doc["sigmas_of_violation"] = number(report.sigmas_of_violation);
    doc["sigmas_of_violation_rounded"] = number(std::round(report.sigmas_of_violation * 100.0) / 100.0);
    doc["p_value"] = report.p_value;
    if (report.bootstrap_p_value) {
        doc["bootstrap_p_value"] = *report.bootstrap_p_value;
        doc["bootstrap_replicates"] = report.bootstrap_replicates;
    }
    return doc;
}

json to_json(const SchmidtSpectrum& spectrum) {
    return {{"modes", spectrum.modes}, {"amplitudes", spectrum.amplitudes}};
}

std::string figure_csv(const SicSet& set, const ProbabilityTable& ideal, const ProbabilityTable* measured,
                       const CountRecord* record) {
    if (measured && measured->settings != ideal.settings) {
        throw std::invalid_argument("figure_csv: measured and ideal tables differ in layout");
    }
    if (record && record->settings != ideal.settings) {
        throw std::invalid_argument("figure_csv: count record and ideal table differ in layout");
    }
    std::ostringstream out;
    out << "index,label,alice,bob,counts,normalization,p_hat,sigma,ideal\n";
    for (std::size_t k = 0; k < ideal.settings.size(); ++k) {
        const auto a = set.label(ideal.settings[k].alice);
        const auto b = set.label(ideal.settings[k].bob);
        out << k + 1 << ",P" << a << "_" << b << "," << a << "," << b << ",";
        if (record) {
            out << record->counts[k] << "," << format_double(record->normalization);
        } else {
            out << ",";
        }
        out << ",";
        if (measured) {
            out << format_double(measured->values[k]) << ","
                << (measured->sigmas.empty() ? "" : format_double(measured->sigmas[k]));
        } else {
            out << ",";
        }
        out << "," << format_double(ideal.values[k]) << "\n";
    }
    return out.str();
}

}  // namespace sicbell
