#include "dirshift/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dirshift {

namespace {

// Pulls a typed field, throwing config_error with the field name on mismatch.
template <typename T>
T field_or(const Json& j, const std::string& name, T fallback) {
    if (!j.contains(name)) return fallback;
    try {
        return j.at(name).get<T>();
    } catch (const Json::exception& e) {
        throw config_error(name, e.what());
    }
}

}  // namespace

void RunConfig::validate() const {
    if (truncation < 2 || truncation > 5000)
        throw config_error("truncation", "must be in [2, 5000]");
    if (tensor_truncation < 2 || tensor_truncation > 1000)
        throw config_error("tensor_truncation", "must be in [2, 1000]");
    if (grid.radii < 1 || grid.angles < 1) throw config_error("grid", "node counts must be >= 1");
    if (!(grid.r_min > 0.0 && grid.r_min <= grid.r_max && grid.r_max < 1.0))
        throw config_error("grid", "need 0 < r_min <= r_max < 1");
    try {
        quad.validate();
    } catch (const std::exception& e) {
        throw config_error("quadrature", e.what());
    }
    if (!(step.base_step > 0.0 && step.base_step < 0.5))
        throw config_error("step.base_step", "must be in (0, 0.5)");
    if (!format.empty() && format != "csv" && format != "json")
        throw config_error("format", "must be 'csv' or 'json'");
}

RunConfig config_from_json(const Json& j) {
    RunConfig c;
    c.truncation = field_or(j, "truncation", c.truncation);
    c.tensor_truncation = field_or(j, "tensor_truncation", c.tensor_truncation);
    if (j.contains("grid")) {
        const Json& g = j.at("grid");
        c.grid.radii = field_or(g, "radii", c.grid.radii);
        c.grid.angles = field_or(g, "angles", c.grid.angles);
        c.grid.r_min = field_or(g, "r_min", c.grid.r_min);
        c.grid.r_max = field_or(g, "r_max", c.grid.r_max);
    }
    if (j.contains("quadrature")) {
        const Json& q = j.at("quadrature");
        c.quad.radial_nodes = field_or(q, "radial_nodes", c.quad.radial_nodes);
        c.quad.angular_nodes = field_or(q, "angular_nodes", c.quad.angular_nodes);
        c.quad.singularity_radius = field_or(q, "singularity_radius", c.quad.singularity_radius);
        c.quad.r_cutoff = field_or(q, "r_cutoff", c.quad.r_cutoff);
    }
    if (j.contains("step")) {
        const Json& s = j.at("step");
        c.step.base_step = field_or(s, "base_step", c.step.base_step);
        c.step.boundary_scaling = field_or(s, "boundary_scaling", c.step.boundary_scaling);
    }
    if (j.contains("tolerances")) {
        const Json& t = j.at("tolerances");
        c.tol.margin = field_or(t, "margin", c.tol.margin);
        c.tol.identity_rel = field_or(t, "identity_rel", c.tol.identity_rel);
        c.tol.laplace_rel = field_or(t, "laplace_rel", c.tol.laplace_rel);
        c.tol.orthogonality = field_or(t, "orthogonality", c.tol.orthogonality);
        c.tol.growth_slope = field_or(t, "growth_slope", c.tol.growth_slope);
    }
    c.format = field_or<std::string>(j, "format", c.format);
    c.output = field_or<std::string>(j, "output", c.output);
    c.seed = field_or<std::uint64_t>(j, "seed", c.seed);
    c.validate();
    return c;
}

Json config_to_json(const RunConfig& c) {
    Json j;
    j["truncation"] = c.truncation;
    j["tensor_truncation"] = c.tensor_truncation;
    j["grid"] = {{"radii", c.grid.radii},
                 {"angles", c.grid.angles},
                 {"r_min", c.grid.r_min},
                 {"r_max", c.grid.r_max}};
    j["quadrature"] = {{"radial_nodes", c.quad.radial_nodes},
                       {"angular_nodes", c.quad.angular_nodes},
                       {"singularity_radius", c.quad.singularity_radius},
                       {"r_cutoff", c.quad.r_cutoff}};
    j["step"] = {{"base_step", c.step.base_step},
                 {"boundary_scaling", c.step.boundary_scaling}};
    j["tolerances"] = {{"margin", c.tol.margin},
                       {"identity_rel", c.tol.identity_rel},
                       {"laplace_rel", c.tol.laplace_rel},
                       {"orthogonality", c.tol.orthogonality},
                       {"growth_slope", c.tol.growth_slope}};
    j["format"] = c.format;
    j["output"] = c.output;
    j["seed"] = c.seed;
    return j;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config", "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw config_error("config", std::string("parse failure: ") + e.what());
    }
    return config_from_json(j);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json to_json(const SubharmonicityReport& r) {
    Json viol = Json::array();
    for (const auto& v : r.violations)
        viol.push_back({{"lambda_re", v.lambda.re()},
                        {"lambda_im", v.lambda.im()},
                        {"margin", v.margin}});
    return {{"min_margin", r.min_margin},
            {"mean_margin", r.mean_margin},
            {"sup_abs_phi", r.sup_abs_phi},
            {"points", r.points},
            {"violations", std::move(viol)}};
}

Json to_json(const PotentialReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"lambda_re", s.lambda.re()},
                           {"lambda_im", s.lambda.im()},
                           {"value", s.potential.value},
                           {"error_estimate", s.potential.error_estimate},
                           {"cutoff_delta", s.potential.cutoff_delta}});
    return {{"verdict", verdict_name(r.verdict)},
            {"sup_abs", r.sup_abs},
            {"growth_fit", r.growth_fit},
            {"scan_slope", r.scan_slope},
            {"growth_threshold", r.growth_threshold},
            {"samples", std::move(samples)}};
}

Json to_json(const BundleDerivativeReport& r) {
    return {{"lambda_re", r.lambda.re()},
            {"lambda_im", r.lambda.im()},
            {"rank", r.rank},
            {"hs_dpi1_sq", r.hs_dpi1_sq},
            {"hs_dpi2_sq", r.hs_dpi2_sq},
            {"hs_dpi_sq", r.hs_dpi_sq},
            {"additivity_residual", r.additivity_residual},
            {"additivity_residual_unweighted", r.additivity_residual_unweighted},
            {"pi2_orthogonality_residual", r.pi2_orthogonality_residual},
            {"pi2_reconstruction_residual", r.pi2_reconstruction_residual},
            {"opnorm_dpi2", r.opnorm_dpi2},
            {"opnorm_fprime", r.opnorm_fprime}};
}

Json to_json(const ModelCheckReport& r) {
    return {{"terms", r.terms},
            {"partial_sums", r.partial_sums},
            {"limit_estimate", r.limit_estimate},
            {"tail_estimate", r.tail_estimate},
            {"satisfied", verdict_name(r.satisfied)},
            {"terms_used", r.terms_used},
            {"flat_terms", r.flat_terms}};
}

Json to_json(const LaplaceIdentityReport& r) {
    return {{"max_abs_residual", r.max_abs_residual},
            {"max_rel_residual", r.max_rel_residual},
            {"scale", r.scale}};
}

Json to_json(const SimilarityReport& r) {
    Json j{{"verdict", verdict_name(r.verdict)},
           {"verdict_cause", r.verdict_cause},
           {"phi", r.phi_label},
           {"density", r.density_label},
           {"rank", r.rank},
           {"density_min", r.density_min},
           {"density_mean", r.density_mean},
           {"density_max", r.density_max},
           {"margin_min", r.margin_min},
           {"margin_mean", r.margin_mean},
           {"sup_abs_phi", r.sup_abs_phi},
           {"potential_verdict", verdict_name(r.potential_verdict)},
           {"potential_sup_abs", r.potential_sup_abs},
           {"potential_growth_fit", r.potential_growth_fit},
           {"laplace", to_json(r.laplace)},
           {"dpi2_bound_best", r.dpi2_bound_best},
           {"dpi2_bound_frame", r.dpi2_bound_frame},
           {"pi2_orthogonality_max", r.pi2_orthogonality_max},
           {"pi2_projection_defect_max", r.pi2_projection_defect_max}};
    if (r.witness_lambda) {
        j["witness"] = {{"lambda_re", r.witness_lambda->re()},
                        {"lambda_im", r.witness_lambda->im()},
                        {"margin", r.witness_margin}};
    }
    return j;
}

void CsvWriter::add_meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("CsvWriter: row width " + std::to_string(cells.size()) +
                                    " != " + std::to_string(columns_.size()));
    rows_.push_back(cells);
}

std::string CsvWriter::str() const {
    std::ostringstream out;
    for (const auto& [k, v] : meta_) out << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < columns_.size(); ++i)
        out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    for (const auto& row : rows_)
        for (size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    return out.str();
}

}  // namespace dirshift
