#include <limits>
#include <sstream>

#include "doctest.h"
#include "sicbell/montecarlo.hpp"
#include "sicbell/serialization.hpp"
#include "sicbell/sic_catalog.hpp"

using namespace sicbell;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> cells(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TEST_CASE("set documents round trip") {
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const SicSet back = set_from_json(set_to_json(set));
        CHECK(back.name == set.name);
        CHECK(back.dimension == set.dimension);
        CHECK(back.vectors == set.vectors);
        CHECK(back.weights == set.weights);
        CHECK(back.contexts == set.contexts);
        CHECK(back.labels == set.labels);
        CHECK(back.expected_edge_count == set.expected_edge_count);
        CHECK(set_to_json(back) == set_to_json(set));
    }
}

TEST_CASE("shipped set files match the catalog") {
    for (const auto& name : catalog_names()) {
        const SicSet file = load_set_file(std::string(SICBELL_DATA_DIR) + "/sets/" + name + ".json");
        CHECK(set_to_json(file) == set_to_json(catalog_set(name)));
        CHECK(verify_set(file).passed());
    }
}

TEST_CASE("minimal set documents") {
    const json doc = json::parse(R"({
        "name": "pair",
        "dimension": 2,
        "vectors": [[1, 0], [[0, 0], [1, 1]]],
        "weights": [1, "3/2"]
    })");
    const SicSet set = set_from_json(doc);
    CHECK(set.vectors[1][1] == ExactScalar(1, 1));
    CHECK(set.weights[1] == Rational(3, 2));
    CHECK(set.labels == std::vector<std::size_t>{1, 2});
    CHECK(set.contexts.empty());
    CHECK_FALSE(set.expected_edge_count.has_value());
    CHECK(orthogonality_graph(set).edges().size() == 1);
}

TEST_CASE("malformed set documents") {
    CHECK_THROWS(set_from_json(json::array()));
    CHECK_THROWS(set_from_json(json::parse(R"({"dimension": 2, "vectors": [], "weights": []})")));
    CHECK_THROWS(set_from_json(json::parse(R"({"name": "x", "dimension": 0, "vectors": [], "weights": []})")));
    CHECK_THROWS(set_from_json(json::parse(R"({"name": "x", "dimension": 2, "vectors": [[1.5, 0]], "weights": [1]})")));
    CHECK_THROWS(set_from_json(json::parse(R"({"name": "x", "dimension": 2, "vectors": [[1, 0]], "weights": [0.5]})")));
    CHECK_THROWS_AS(load_set_file("/nonexistent/set.json"), std::invalid_argument);
}

TEST_CASE("count records round trip") {
    const SicSet set = build_ks18();
    const RunPlan plan = make_plan(set, 1e4, 2.0, 99);
    const auto rec = simulate_counts(plan, set, apply_noise(set, {}));
    const auto back = count_record_from_json(to_json(rec));
    CHECK(back.counts == rec.counts);
    CHECK(back.settings == rec.settings);
    CHECK(back.normalization == rec.normalization);
    CHECK(back.seed == 99);
}

TEST_CASE("violation reports") {
    ViolationReport r;
    r.beta_hat = 11.573;
    r.sigma = 0.012;
    r.alpha = Rational(11);
    r.sigmas_of_violation = 47.7499999;
    const json doc = to_json(r);
    CHECK(doc["sigmas_of_violation_rounded"].get<double>() == doctest::Approx(47.75));
    CHECK(doc["alpha"] == 11);
    CHECK_FALSE(doc.contains("bootstrap_p_value"));
    r.sigmas_of_violation = std::numeric_limits<double>::infinity();
    CHECK(to_json(r)["sigmas_of_violation"].is_null());
}

TEST_CASE("figure CSV layout for YO13") {
    const SicSet set = build_yo13();
    const auto ideal = bell_value(set, max_entangled_state(3));
    const auto rows = lines(figure_csv(set, ideal.table, nullptr, nullptr));
    REQUIRE(rows.size() == 62);
    CHECK(rows[0] == "index,label,alice,bob,counts,normalization,p_hat,sigma,ideal");
    for (std::size_t k = 1; k <= 61; ++k) {
        const auto c = cells(rows[k]);
        REQUIRE(c.size() == 9);
        CHECK(c[0] == std::to_string(k));
        const double p = std::stod(c[8]);
        if (k <= 13) {
            CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
            CHECK(c[2] == c[3]);
            CHECK(c[2] == std::to_string(k));
        } else {
            CHECK(std::abs(p) < 1e-14);
            CHECK(c[2] != c[3]);
        }
    }
    CHECK(cells(rows[3])[1] == "P3_3");
}

TEST_CASE("figure CSV row counts follow the graphs") {
    for (const auto& name : catalog_names()) {
        const SicSet set = catalog_set(name);
        const auto edges = orthogonality_graph(set).edges().size();
        const auto ideal = bell_value(set, max_entangled_state(set.dimension));
        const RunPlan plan = make_plan(set, 1e3, 1.0, 1);
        const auto rec = simulate_counts(plan, ideal.table.values);
        const auto measured = estimate_probabilities(rec);
        const auto rows = lines(figure_csv(set, ideal.table, &measured, &rec));
        CHECK(rows.size() == 1 + set.size() + 2 * edges);
        const auto first = cells(rows[1]);
        CHECK(first[4] == std::to_string(rec.counts[0]));
        CHECK(first[5] == "1000");
    }
}
