#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dirshift/report_io.hpp"

using namespace dirshift;

TEST_CASE("config JSON round trip preserves every field") {
    RunConfig c;
    c.truncation = 321;
    c.tensor_truncation = 77;
    c.grid = {11, 13, 0.07, 0.83};
    c.quad = {128, 96, 0.03, 0.991};
    c.step = {2.5e-4, false};
    c.tol = {1e-7, 2e-6, 3e-5, 4e-8, 0.11};
    c.format = "csv";
    c.output = "scan.csv";
    c.seed = 987654321;

    const RunConfig back = config_from_json(config_to_json(c));
    CHECK(back.truncation == c.truncation);
    CHECK(back.tensor_truncation == c.tensor_truncation);
    CHECK(back.grid.radii == c.grid.radii);
    CHECK(back.grid.r_min == c.grid.r_min);
    CHECK(back.quad.angular_nodes == c.quad.angular_nodes);
    CHECK(back.quad.r_cutoff == c.quad.r_cutoff);
    CHECK(back.step.base_step == c.step.base_step);
    CHECK(back.step.boundary_scaling == c.step.boundary_scaling);
    CHECK(back.tol.margin == c.tol.margin);
    CHECK(back.tol.identity_rel == c.tol.identity_rel);
    CHECK(back.tol.growth_slope == c.tol.growth_slope);
    CHECK(back.format == c.format);
    CHECK(back.output == c.output);
    CHECK(back.seed == c.seed);
}

TEST_CASE("config validation names the offending field") {
    Json j;
    j["truncation"] = 1;
    try {
        config_from_json(j);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.field == "truncation");
    }

    Json bad_type;
    bad_type["seed"] = "not-a-number";
    try {
        config_from_json(bad_type);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.field == "seed");
    }
}

TEST_CASE("format_double round-trips at 17 significant digits") {
    for (double v : {1.0 / 3.0, 0.1, 123456.789012345678, 2.2250738585072014e-308, -0.0}) {
        const double back = std::stod(format_double(v));
        CHECK(back == v);
    }
}

TEST_CASE("json serialization of doubles round-trips exactly") {
    const double v = 0.36521008705241925;
    Json j{{"x", v}};
    const Json back = Json::parse(j.dump());
    CHECK(back.at("x").get<double>() == v);
}

TEST_CASE("csv writer: metadata lines, stable column order, width checks") {
    CsvWriter csv({"a", "b"});
    csv.add_meta("version", "0.1.0");
    csv.add_row({"1", "2"});
    csv.add_row({format_double(0.5), format_double(-1.25)});
    const std::string text = csv.str();
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# version = 0.1.0");
    std::getline(in, line);
    CHECK(line == "a,b");
    std::getline(in, line);
    CHECK(line == "1,2");
    CHECK_THROWS_AS(csv.add_row({"only-one"}), std::invalid_argument);
}

TEST_CASE("report JSON carries the verdict names") {
    SimilarityReport r;
    r.verdict = CriterionVerdict::HoldsOnScan;
    r.potential_verdict = BoundedVerdict::BoundedOnScan;
    const Json j = to_json(r);
    CHECK(j.at("verdict").get<std::string>() == "criterion-holds-on-scan");
    CHECK(j.at("potential_verdict").get<std::string>() == "bounded-on-scan");
    CHECK(!j.contains("witness"));

    SimilarityReport v;
    v.verdict = CriterionVerdict::Violated;
    v.witness_lambda = DiskPoint(0.5, 0.25);
    v.witness_margin = -0.5;
    const Json jv = to_json(v);
    CHECK(jv.at("witness").at("lambda_re").get<double>() == 0.5);
}
