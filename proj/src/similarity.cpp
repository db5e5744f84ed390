#include "dirshift/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dirshift {

DensityField density_from_frame(const PolynomialFrame& frame) {
    return {[frame](DiskPoint lambda) { return hs_norm_sq(dpi2_analytic(frame, lambda)); },
            "hs(dpi2)^2"};
}

ScalarField phi_from_frame(const PolynomialFrame& frame) {
    return {[frame](DiskPoint lambda) -> Complex { return hs_norm_sq(frame.eval(lambda)); },
            true, "hs(F)^2"};
}

LaplaceIdentityReport verify_laplace_identity(const PolynomialFrame& frame,
                                              const std::vector<DiskPoint>& grid,
                                              const StepSpec& step) {
    const ScalarField phi = phi_from_frame(frame);
    LaplaceIdentityReport rep;
    for (const auto& lambda : grid) {
        const double lhs = laplacian(phi, lambda, step);
        const double rhs = hs_norm_sq(frame.eval_derivative(lambda));
        rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(lhs - rhs));
        rep.scale = std::max(rep.scale, rhs);
    }
    rep.max_rel_residual = rep.max_abs_residual / std::max(rep.scale, 1e-30);
    return rep;
}

namespace {

std::vector<double> probe_radii(const std::vector<DiskPoint>& grid, const QuadratureSpec& q) {
    // Distinct scan radii, kept clear of the quadrature's inner cutoff.
    const double cap = 1.0 - 2.0 * (1.0 - q.r_cutoff) - 2.0 * q.singularity_radius;
    std::set<double> rs;
    for (const auto& p : grid) {
        const double r = p.abs();
        if (r > 1e-12 && r < cap) rs.insert(r);
    }
    if (rs.empty()) rs.insert(0.5);
    std::vector<double> out(rs.begin(), rs.end());
    // A handful of radii suffices for the scan; thin out dense grids.
    while (out.size() > 8) {
        std::vector<double> thin;
        for (size_t i = 0; i < out.size(); i += 2) thin.push_back(out[i]);
        if (thin.back() != out.back()) thin.push_back(out.back());
        out = std::move(thin);
    }
    return out;
}

}  // namespace

SimilarityReport check_criterion(const PolynomialFrame& frame,
                                 const std::vector<DiskPoint>& grid,
                                 const QuadratureSpec& quad, const StepSpec& step,
                                 const CriterionTolerances& tol,
                                 std::optional<ScalarField> phi,
                                 std::optional<DensityField> density_override) {
    SimilarityReport rep;
    rep.rank = frame.rank();
    const ScalarField candidate = phi ? *phi : phi_from_frame(frame);
    const DensityField density =
        density_override ? *density_override : density_from_frame(frame);
    rep.phi_label = candidate.label;
    rep.density_label = density.label;

    try {
        // Density summary over the grid.
        double dsum = 0.0;
        rep.density_min = 1e300;
        for (const auto& lambda : grid) {
            const double d = density(lambda);
            dsum += d;
            rep.density_min = std::min(rep.density_min, d);
            rep.density_max = std::max(rep.density_max, d);
        }
        rep.density_mean = grid.empty() ? 0.0 : dsum / static_cast<double>(grid.size());

        const SubharmonicityReport sub =
            subharmonicity_scan(candidate, density, grid, step, tol.margin);
        rep.margin_min = sub.min_margin;
        rep.margin_mean = sub.mean_margin;
        rep.sup_abs_phi = sub.sup_abs_phi;

        // Frame densities are only validated up to the frame's radius; pull
        // the quadrature cutoff inside it.  Synthetic overrides are global.
        QuadratureSpec pq = quad;
        if (!density_override) pq.r_cutoff = std::min(quad.r_cutoff, frame.r_max() - 1e-9);
        const PotentialReport pot = boundedness_probe(density, probe_radii(grid, pq), pq,
                                                      8, tol.growth_slope);
        rep.potential_verdict = pot.verdict;
        rep.potential_sup_abs = pot.sup_abs;
        rep.potential_growth_fit = pot.growth_fit;

        rep.laplace = verify_laplace_identity(frame, grid, step);

        // Derivative bound and the projection hypotheses, pointwise.
        auto opnorm = [](const Eigen::MatrixXcd& m) {
            return m.size() ? m.jacobiSvd().singularValues()(0) : 0.0;
        };
        rep.dpi2_bound_frame = std::sqrt(frame.upper_bound()) / frame.lower_bound();
        for (const auto& lambda : grid) {
            const Eigen::MatrixXcd dpi2 = dpi2_analytic(frame, lambda);
            const double nfp = opnorm(frame.eval_derivative(lambda));
            if (nfp > 1e-14)
                rep.dpi2_bound_best = std::max(rep.dpi2_bound_best, opnorm(dpi2) / nfp);
            ProjectionMatrix pi2 = frame_projection(frame, lambda);
            rep.pi2_projection_defect_max = std::max(
                rep.pi2_projection_defect_max,
                std::max((pi2.entries - pi2.entries.adjoint()).norm(),
                         (pi2.entries * pi2.entries - pi2.entries).norm()));
            rep.pi2_orthogonality_max =
                std::max(rep.pi2_orthogonality_max, (pi2.entries * dpi2).norm());
        }

        // Verdict.  "Violated" demands a concrete witness well out of the
        // stencil-noise band; small negatives stay inconclusive so that grid
        // refinement cannot flip a clean verdict on noise alone.
        const double scale = std::max({std::abs(rep.margin_mean), rep.density_max, 1.0});
        const double noise_band = tol.margin * scale;
        DiskPoint worst;
        double worst_margin = 0.0;
        for (const auto& v : sub.violations)
            if (v.margin < worst_margin) {
                worst_margin = v.margin;
                worst = v.lambda;
            }
        const bool growth = rep.potential_verdict == BoundedVerdict::GrowthDetected;
        if (worst_margin < -10.0 * noise_band) {
            rep.verdict = CriterionVerdict::Violated;
            rep.verdict_cause = "subharmonicity margin violated";
            rep.witness_lambda = worst;
            rep.witness_margin = worst_margin;
        } else if (growth) {
            rep.verdict = CriterionVerdict::Violated;
            rep.verdict_cause = "green potential growth detected";
            if (!pot.samples.empty()) {
                const auto it = std::max_element(
                    pot.samples.begin(), pot.samples.end(), [](const auto& a, const auto& b) {
                        return std::abs(a.potential.cutoff_delta) <
                               std::abs(b.potential.cutoff_delta);
                    });
                rep.witness_lambda = it->lambda;
                rep.witness_margin = it->potential.cutoff_delta;
            }
        } else if (rep.margin_min >= -noise_band) {
            rep.verdict = CriterionVerdict::HoldsOnScan;
            rep.verdict_cause = "all margins within tolerance, potential bounded on scan";
        } else {
            rep.verdict = CriterionVerdict::Inconclusive;
            rep.verdict_cause = "margins in the stencil-noise band";
        }
    } catch (const std::exception& e) {
        rep.verdict = CriterionVerdict::Inconclusive;
        rep.verdict_cause = std::string("sub-check failed: ") + e.what();
    }
    return rep;
}

}  // namespace dirshift
