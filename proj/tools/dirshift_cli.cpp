// Command-line surface: scans and verification suites over the library,
// with machine-readable CSV/JSON artifacts for plotting and CI.
//
// Exit codes: 0 success, 1 verified violation (an identity residual above
// tolerance or a violated criterion), 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>

#include "dirshift/coeff_space.hpp"
#include "dirshift/dirichlet_kernel.hpp"
#include "dirshift/report_io.hpp"
#include "dirshift/version.hpp"

namespace ds = dirshift;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

std::string default_output(const std::string& command, const std::string& format) {
    return command + (format == "csv" ? ".csv" : ".json");
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ds::config_error("output", "cannot open '" + path + "' for writing");
    out << contents;
}

ds::Json make_envelope(const ds::RunConfig& cfg) {
    ds::Json j;
    j["version"] = ds::kVersion;
    j["seed"] = cfg.seed;
    j["config"] = ds::config_to_json(cfg);
    return j;
}

void add_meta(ds::CsvWriter& csv, const ds::RunConfig& cfg, const std::string& command) {
    csv.add_meta("command", command);
    csv.add_meta("version", ds::kVersion);
    csv.add_meta("seed", std::to_string(cfg.seed));
    csv.add_meta("config", ds::config_to_json(cfg).dump());
}

// Frames used by thm32-verify and similarity-scan.  Shapes cycle
// deterministically; coefficients come from the seeded generator.
ds::PolynomialFrame seeded_frame(std::mt19937_64& rng, int index) {
    const int n = 1 + index % 3;
    const int dim_e = n + 1 + index % (7 - n - 1);
    const int degree = 1 + index % 3;
    return ds::random_frame(rng, n, std::min(dim_e, 6), degree);
}

int run_kernel_table(const ds::RunConfig& cfg, const std::string& output) {
    const auto grid = ds::make_disk_grid(cfg.grid);
    const ds::SeriesSpec oracle{20000, 1e-16};
    ds::CsvWriter csv({"lambda_re", "lambda_im", "abs_lambda_sq", "kernel_norm_sq",
                       "derivative_kernel_norm_sq", "kernel_deriv_inner_re",
                       "kernel_deriv_inner_im", "combination_norm_sq",
                       "resid_kernel_norm", "resid_derivative_norm", "resid_inner",
                       "resid_combination"});
    add_meta(csv, cfg, "kernel-table");
    ds::Json rows = ds::Json::array();
    for (const auto& lam : grid) {
        const double kn = ds::kernel_norm_sq(lam);
        const double dn = ds::derivative_kernel_norm_sq(lam);
        const ds::Complex in = ds::kernel_deriv_inner(lam);
        const double cb = ds::combination_norm_sq(lam);
        const double rk = std::abs(kn - ds::kernel_norm_sq_series(lam, oracle));
        const double rd = std::abs(dn - ds::derivative_kernel_norm_sq_series(lam, oracle));
        const double ri = std::abs(in - ds::kernel_deriv_inner_series(lam, oracle));
        const double rc = std::abs(cb - ds::combination_norm_sq_bilinear(lam));
        if (cfg.format == "csv") {
            csv.add_row({ds::format_double(lam.re()), ds::format_double(lam.im()),
                         ds::format_double(lam.abs_sq()), ds::format_double(kn),
                         ds::format_double(dn), ds::format_double(in.real()),
                         ds::format_double(in.imag()), ds::format_double(cb),
                         ds::format_double(rk), ds::format_double(rd), ds::format_double(ri),
                         ds::format_double(rc)});
        } else {
            rows.push_back({{"lambda_re", lam.re()},
                            {"lambda_im", lam.im()},
                            {"abs_lambda_sq", lam.abs_sq()},
                            {"kernel_norm_sq", kn},
                            {"derivative_kernel_norm_sq", dn},
                            {"kernel_deriv_inner_re", in.real()},
                            {"kernel_deriv_inner_im", in.imag()},
                            {"combination_norm_sq", cb},
                            {"resid_kernel_norm", rk},
                            {"resid_derivative_norm", rd},
                            {"resid_inner", ri},
                            {"resid_combination", rc}});
        }
    }
    if (cfg.format == "csv") {
        write_file(output, csv.str());
    } else {
        ds::Json j = make_envelope(cfg);
        j["reports"] = std::move(rows);
        j["summary"] = {{"points", grid.size()}};
        write_file(output, j.dump(2) + "\n");
    }
    return kExitOk;
}

int run_curvature_scan(const ds::RunConfig& cfg, const std::string& output) {
    const auto grid = ds::make_disk_grid(cfg.grid);
    ds::CsvWriter csv({"lambda_re", "lambda_im", "abs_lambda_sq", "curvature_closed",
                       "hs_dpi1_fd", "laplace_log_norm", "resid_fd", "resid_laplace"});
    add_meta(csv, cfg, "curvature-scan");
    ds::Json rows = ds::Json::array();
    double max_resid = 0.0;
    const ds::ScalarField log_norm{
        [](ds::DiskPoint mu) -> ds::Complex { return std::log(ds::kernel_norm_sq(mu)); },
        true, "log ||k||^2"};
    for (const auto& lam : grid) {
        const double closed = ds::curvature_pi1_closed(lam);
        ds::MatrixField pi1 = [&cfg](ds::DiskPoint mu) {
            return ds::project_rank1(mu, cfg.truncation).entries;
        };
        const double fd = ds::hs_norm_sq(ds::d_dlambda(pi1, lam, cfg.step));
        const double lap = ds::laplacian(log_norm, lam, cfg.step);
        const double r1 = std::abs(fd - closed) / closed;
        const double r2 = std::abs(lap - closed) / closed;
        max_resid = std::max(max_resid, std::max(r1, r2));
        if (cfg.format == "csv") {
            csv.add_row({ds::format_double(lam.re()), ds::format_double(lam.im()),
                         ds::format_double(lam.abs_sq()), ds::format_double(closed),
                         ds::format_double(fd), ds::format_double(lap),
                         ds::format_double(r1), ds::format_double(r2)});
        } else {
            rows.push_back({{"lambda_re", lam.re()},
                            {"lambda_im", lam.im()},
                            {"abs_lambda_sq", lam.abs_sq()},
                            {"curvature_closed", closed},
                            {"hs_dpi1_fd", fd},
                            {"laplace_log_norm", lap},
                            {"resid_fd", r1},
                            {"resid_laplace", r2}});
        }
    }
    if (cfg.format == "csv") {
        write_file(output, csv.str());
    } else {
        ds::Json j = make_envelope(cfg);
        j["reports"] = std::move(rows);
        j["summary"] = {{"max_relative_residual", max_resid}};
        write_file(output, j.dump(2) + "\n");
    }
    return kExitOk;
}

int run_thm32_verify(const ds::RunConfig& cfg, int frames, int points,
                     const std::string& output) {
    std::mt19937_64 rng(cfg.seed);
    ds::GridSpec pts_spec{points, 1, 0.1, 0.7};
    ds::Json all = ds::Json::array();
    double max_resid = 0.0;
    for (int fidx = 0; fidx < frames; ++fidx) {
        const auto frame = seeded_frame(rng, fidx);
        ds::Json frame_reports = ds::Json::array();
        // Spread the sample points over radii and angles, one angle per radius.
        for (int p = 0; p < points; ++p) {
            const double r = 0.1 + 0.6 * p / std::max(1, points - 1);
            const double th = 2.0 * M_PI * p / points + 0.37;
            const ds::DiskPoint lam(ds::Complex(r * std::cos(th), r * std::sin(th)));
            const auto rep = ds::thm32_report(frame, lam, cfg.tensor_truncation, cfg.step);
            max_resid = std::max(max_resid,
                                 rep.additivity_residual / std::max(rep.hs_dpi_sq, 1e-30));
            frame_reports.push_back(ds::to_json(rep));
        }
        all.push_back({{"frame_index", fidx},
                       {"rank", frame.rank()},
                       {"ambient_dim", frame.ambient_dim()},
                       {"degree", frame.degree()},
                       {"reports", std::move(frame_reports)}});
    }
    ds::Json j = make_envelope(cfg);
    j["reports"] = std::move(all);
    j["summary"] = {{"max_relative_additivity_residual", max_resid}};
    write_file(output, j.dump(2) + "\n");
    return max_resid > cfg.tol.identity_rel ? kExitViolation : kExitOk;
}

int run_green_potential(const ds::RunConfig& cfg, const std::string& density_label,
                        int directions, const std::string& output) {
    const ds::DensityField rho = ds::make_density(density_label);
    std::vector<double> radii;
    const double cap = 1.0 - 2.0 * (1.0 - cfg.quad.r_cutoff) - 2.0 * cfg.quad.singularity_radius;
    for (int i = 0; i < cfg.grid.radii; ++i) {
        const double r = cfg.grid.r_min +
                         (std::min(cfg.grid.r_max, cap) - cfg.grid.r_min) * i /
                             std::max(1, cfg.grid.radii - 1);
        if (radii.empty() || r > radii.back() + 1e-12) radii.push_back(r);
    }
    const auto rep = ds::boundedness_probe(rho, radii, cfg.quad, directions,
                                           cfg.tol.growth_slope);
    ds::Json j = make_envelope(cfg);
    j["density"] = density_label;
    j["reports"] = ds::to_json(rep);
    j["summary"] = {{"verdict", ds::verdict_name(rep.verdict)},
                    {"sup_abs", rep.sup_abs},
                    {"growth_fit", rep.growth_fit}};
    write_file(output, j.dump(2) + "\n");
    return kExitOk;
}

int run_mueller_check(const ds::RunConfig& cfg, const std::string& op_label, int op_size,
                      double scale, int max_terms, bool literal, const std::string& output) {
    if (op_label != "dirichlet-truncated")
        throw ds::config_error("operator", "unknown label '" + op_label + "'");
    const auto weights = ds::dirichlet_weights(std::max(max_terms, op_size) + 1);
    const Eigen::MatrixXcd t = ds::truncated_backward_shift(op_size, scale);
    const auto rep = ds::mueller_sum(t, weights, max_terms, literal);

    if (cfg.format == "csv") {
        ds::CsvWriter csv({"n", "term", "partial_sum"});
        add_meta(csv, cfg, "mueller-check");
        csv.add_meta("operator", op_label + " N=" + std::to_string(op_size) +
                                     " scale=" + ds::format_double(scale));
        csv.add_meta("satisfied", ds::verdict_name(rep.satisfied));
        csv.add_meta("flat_terms", rep.flat_terms ? "true" : "false");
        for (size_t i = 0; i < rep.terms.size(); ++i)
            csv.add_row({std::to_string(i + 1), ds::format_double(rep.terms[i]),
                         ds::format_double(rep.partial_sums[i])});
        write_file(output, csv.str());
    } else {
        ds::Json j = make_envelope(cfg);
        j["operator"] = {{"label", op_label}, {"size", op_size}, {"scale", scale}};
        j["reports"] = ds::to_json(rep);
        j["summary"] = {{"satisfied", ds::verdict_name(rep.satisfied)},
                        {"limit_estimate", rep.limit_estimate},
                        {"flat_terms", rep.flat_terms}};
        write_file(output, j.dump(2) + "\n");
    }
    return kExitOk;
}

int run_similarity_scan(const ds::RunConfig& cfg, const std::string& frame_label,
                        const std::string& density_override, const std::string& output) {
    std::mt19937_64 rng(cfg.seed);
    std::optional<ds::PolynomialFrame> frame;
    if (frame_label == "random") {
        frame.emplace(seeded_frame(rng, 0));
    } else if (frame_label == "identity-perturbation") {
        std::vector<Eigen::MatrixXcd> coeffs(2, Eigen::MatrixXcd::Zero(2, 2));
        coeffs[0] = Eigen::MatrixXcd::Identity(2, 2);
        coeffs[1](0, 1) = 0.1;
        frame.emplace(std::move(coeffs));
    } else {
        throw ds::config_error("frame", "unknown label '" + frame_label + "'");
    }
    std::optional<ds::DensityField> override_field;
    if (!density_override.empty()) override_field = ds::make_density(density_override);

    const auto grid = ds::make_disk_grid(cfg.grid);
    const auto rep = ds::check_criterion(*frame, grid, cfg.quad, cfg.step,
                                         cfg.tol, std::nullopt, override_field);
    ds::Json j = make_envelope(cfg);
    j["frame"] = {{"label", frame_label},
                  {"rank", frame->rank()},
                  {"ambient_dim", frame->ambient_dim()},
                  {"degree", frame->degree()}};
    j["reports"] = ds::to_json(rep);
    j["summary"] = {{"verdict", ds::verdict_name(rep.verdict)},
                    {"cause", rep.verdict_cause}};
    write_file(output, j.dump(2) + "\n");
    return rep.verdict == ds::CriterionVerdict::Violated ? kExitViolation : kExitOk;
}

int run_identity_suite(const ds::RunConfig& cfg, const std::string& output) {
    std::mt19937_64 rng(cfg.seed);
    ds::Json checks = ds::Json::array();
    bool violated = false;

    // Kernel closed forms against their series routes.
    const ds::SeriesSpec oracle{20000, 1e-16};
    double max_kernel_resid = 0.0;
    for (const auto& lam : ds::make_disk_grid({10, 5, 0.05, 0.9})) {
        max_kernel_resid = std::max({max_kernel_resid,
            std::abs(ds::kernel_norm_sq(lam) - ds::kernel_norm_sq_series(lam, oracle)) /
                ds::kernel_norm_sq(lam),
            std::abs(ds::derivative_kernel_norm_sq(lam) -
                     ds::derivative_kernel_norm_sq_series(lam, oracle)) /
                ds::derivative_kernel_norm_sq(lam),
            std::abs(ds::kernel_deriv_inner(lam) - ds::kernel_deriv_inner_series(lam, oracle)) /
                std::abs(ds::kernel_deriv_inner(lam)),
            std::abs(ds::combination_norm_sq(lam) - ds::combination_norm_sq_bilinear(lam)) /
                std::max(ds::combination_norm_sq(lam), 1e-30)});
    }
    violated |= max_kernel_resid > 1e-9;
    checks.push_back({{"check", "kernel-closed-vs-series"},
                      {"max_relative_residual", max_kernel_resid},
                      {"tolerance", 1e-9},
                      {"pass", max_kernel_resid <= 1e-9}});

    // Frame identities on a small seeded ensemble.
    double max_additivity = 0.0, max_dpi2 = 0.0, max_laplace = 0.0;
    const auto id_grid = ds::make_disk_grid({4, 4, 0.15, 0.6});
    for (int fidx = 0; fidx < 5; ++fidx) {
        const auto frame = seeded_frame(rng, fidx);
        max_laplace = std::max(
            max_laplace, ds::verify_laplace_identity(frame, id_grid, cfg.step).max_rel_residual);
        for (const auto& lam : id_grid) {
            const auto rep = ds::thm32_report(frame, lam, cfg.tensor_truncation, cfg.step);
            max_additivity = std::max(max_additivity,
                                      rep.additivity_residual / std::max(rep.hs_dpi_sq, 1e-30));
            ds::MatrixField pi2_field = [&frame](ds::DiskPoint mu) {
                return ds::frame_projection(frame, mu).entries;
            };
            const Eigen::MatrixXcd fd = ds::d_dlambda(pi2_field, lam, cfg.step);
            const Eigen::MatrixXcd an = ds::dpi2_analytic(frame, lam);
            max_dpi2 = std::max(max_dpi2, std::sqrt(ds::hs_norm_sq(fd - an) /
                                                    std::max(ds::hs_norm_sq(an), 1e-30)));
        }
    }
    violated |= max_additivity > 1e-6 || max_dpi2 > 1e-6 || max_laplace > 1e-5;
    checks.push_back({{"check", "thm32-additivity"},
                      {"max_relative_residual", max_additivity},
                      {"tolerance", 1e-6},
                      {"pass", max_additivity <= 1e-6}});
    checks.push_back({{"check", "dpi2-analytic-vs-fd"},
                      {"max_relative_residual", max_dpi2},
                      {"tolerance", 1e-6},
                      {"pass", max_dpi2 <= 1e-6}});
    checks.push_back({{"check", "laplace-identity"},
                      {"max_relative_residual", max_laplace},
                      {"tolerance", 1e-5},
                      {"pass", max_laplace <= 1e-5}});

    ds::Json j = make_envelope(cfg);
    j["reports"] = std::move(checks);
    j["summary"] = {{"violations", violated}};
    write_file(output, j.dump(2) + "\n");
    return violated ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for the Dirichlet backward-shift similarity criterion"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    std::string config_path, output, format, density = "one", frame_label = "random";
    std::string op_label = "dirichlet-truncated", density_override;
    int frames = 20, points = 10, directions = 8, op_size = 50, max_terms = 200;
    double scale = 0.9;
    bool literal = false;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--output", output, "output artifact path");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt = app.add_option("--seed", "random seed");
    auto* trunc_opt = app.add_option("--truncation", "basis truncation");
    auto* step_opt = app.add_option("--base-step", "finite-difference base step");
    auto* radii_opt = app.add_option("--radii", "grid radii count");
    auto* angles_opt = app.add_option("--angles", "grid angle count");
    auto* rmax_opt = app.add_option("--grid-r-max", "largest grid radius");

    auto* kernel_cmd = app.add_subcommand("kernel-table", "kernel scalar identities over a grid");
    auto* curv_cmd = app.add_subcommand("curvature-scan", "rank-one curvature routes over a grid");
    auto* thm32_cmd = app.add_subcommand("thm32-verify", "tensor derivative additivity on random frames");
    thm32_cmd->add_option("--frames", frames, "number of random frames");
    thm32_cmd->add_option("--points", points, "sample points per frame");
    auto* green_cmd = app.add_subcommand("green-potential", "boundedness probe of a density");
    green_cmd->add_option("--density", density, "density label");
    green_cmd->add_option("--directions", directions, "scan directions");
    auto* mueller_cmd = app.add_subcommand("mueller-check", "model-condition partial sums");
    mueller_cmd->add_option("--operator", op_label, "operator label");
    mueller_cmd->add_option("--op-size", op_size, "operator truncation");
    mueller_cmd->add_option("--scale", scale, "operator scale factor");
    mueller_cmd->add_option("--max-terms", max_terms, "maximum series terms");
    mueller_cmd->add_flag("--literal-first-power", literal,
                          "use ||T||^2 in every term instead of ||T^n||^2");
    auto* sim_cmd = app.add_subcommand("similarity-scan", "full criterion pipeline on a frame");
    sim_cmd->add_option("--frame", frame_label, "frame label (random, identity-perturbation)");
    sim_cmd->add_option("--density-override", density_override,
                        "test a synthetic density instead of the frame density");
    auto* id_cmd = app.add_subcommand("identity-suite", "identity battery with violation exit code");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        ds::RunConfig cfg;
        if (!config_path.empty()) cfg = ds::load_config_file(config_path);
        // Flags win over the config file.
        if (!format.empty()) cfg.format = format;
        if (!output.empty()) cfg.output = output;
        if (seed_opt->count()) cfg.seed = seed_opt->as<std::uint64_t>();
        if (trunc_opt->count()) cfg.truncation = trunc_opt->as<int>();
        if (step_opt->count()) cfg.step.base_step = step_opt->as<double>();
        if (radii_opt->count()) cfg.grid.radii = radii_opt->as<int>();
        if (angles_opt->count()) cfg.grid.angles = angles_opt->as<int>();
        if (rmax_opt->count()) cfg.grid.r_max = rmax_opt->as<double>();
        cfg.validate();

        const std::string cmd = app.get_subcommands().front()->get_name();
        // Tabular scans default to CSV; structured reports are JSON-only.
        const bool tabular =
            cmd == "kernel-table" || cmd == "curvature-scan" || cmd == "mueller-check";
        if (cfg.format.empty()) cfg.format = tabular ? "csv" : "json";
        if (!tabular && cfg.format == "csv")
            throw ds::config_error("format", "'" + cmd + "' reports are json-only");
        const std::string out_path =
            cfg.output.empty() ? default_output(cmd, cfg.format) : cfg.output;

        if (kernel_cmd->parsed()) return run_kernel_table(cfg, out_path);
        if (curv_cmd->parsed()) return run_curvature_scan(cfg, out_path);
        if (thm32_cmd->parsed()) return run_thm32_verify(cfg, frames, points, out_path);
        if (green_cmd->parsed()) return run_green_potential(cfg, density, directions, out_path);
        if (mueller_cmd->parsed())
            return run_mueller_check(cfg, op_label, op_size, scale, max_terms, literal, out_path);
        if (sim_cmd->parsed())
            return run_similarity_scan(cfg, frame_label, density_override, out_path);
        if (id_cmd->parsed()) return run_identity_suite(cfg, out_path);
        std::cerr << "unknown command\n";
        return kExitInputError;
    } catch (const ds::config_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
}
