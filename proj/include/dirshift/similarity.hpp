#ifndef DIRSHIFT_SIMILARITY_HPP
#define DIRSHIFT_SIMILARITY_HPP

#include <optional>
#include <string>

#include "dirshift/bundle_geometry.hpp"
#include "dirshift/green_potential.hpp"

namespace dirshift {

/// The Laplacian lower bound induced by the frame: |dPi_2/dlambda|^2_HS.
DensityField density_from_frame(const PolynomialFrame& frame);

/// The canonical subharmonic candidate phi(lambda) = |F(lambda)|^2_HS.
ScalarField phi_from_frame(const PolynomialFrame& frame);

struct LaplaceIdentityReport {
    double max_abs_residual = 0.0;  // |laplacian(phi) - |F'|^2_HS| over the grid
    double max_rel_residual = 0.0;
    double scale = 0.0;             // sup over the grid of |F'|^2_HS
};

/// Checks laplacian(|F|^2_HS) = |F'|^2_HS on the grid by finite differences.
LaplaceIdentityReport verify_laplace_identity(const PolynomialFrame& frame,
                                              const std::vector<DiskPoint>& grid,
                                              const StepSpec& step);

enum class CriterionVerdict { HoldsOnScan, Violated, Inconclusive };

struct SimilarityReport {
    std::string phi_label;
    std::string density_label;
    int rank = 0;

    double density_min = 0.0, density_mean = 0.0, density_max = 0.0;
    double margin_min = 0.0, margin_mean = 0.0;
    double sup_abs_phi = 0.0;

    BoundedVerdict potential_verdict = BoundedVerdict::BoundedOnScan;
    double potential_sup_abs = 0.0;
    double potential_growth_fit = 0.0;

    LaplaceIdentityReport laplace;
    double dpi2_bound_best = 0.0;   // smallest valid C on the grid
    double dpi2_bound_frame = 0.0;  // sqrt(upper)/lower from the frame bounds
    double pi2_orthogonality_max = 0.0;
    double pi2_projection_defect_max = 0.0;  // Hermitian/idempotent residuals

    CriterionVerdict verdict = CriterionVerdict::Inconclusive;
    std::string verdict_cause;
    std::optional<DiskPoint> witness_lambda;
    double witness_margin = 0.0;
};

struct CriterionTolerances {
    double margin = 1e-8;        // subharmonicity tolerance
    double identity_rel = 1e-6;  // algebraic identity residuals, relative
    double laplace_rel = 1e-5;
    double orthogonality = 1e-8;
    double growth_slope = 0.05;
};

/// Full criterion pipeline on one frame: subharmonicity of phi against the
/// frame density, boundedness probe of the density, the Laplace identity,
/// the derivative bound and the projection hypotheses; aggregated verdict.
SimilarityReport check_criterion(const PolynomialFrame& frame,
                                 const std::vector<DiskPoint>& grid,
                                 const QuadratureSpec& quad,
                                 const StepSpec& step = StepSpec{},
                                 const CriterionTolerances& tol = CriterionTolerances{},
                                 std::optional<ScalarField> phi = std::nullopt,
                                 std::optional<DensityField> density_override = std::nullopt);

}  // namespace dirshift

#endif
