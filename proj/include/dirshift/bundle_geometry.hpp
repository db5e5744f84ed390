#ifndef DIRSHIFT_BUNDLE_GEOMETRY_HPP
#define DIRSHIFT_BUNDLE_GEOMETRY_HPP

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "dirshift/disk.hpp"
#include "dirshift/wirtinger.hpp"

namespace dirshift {

/// Hermitian idempotent with its intended rank.
struct ProjectionMatrix {
    Eigen::MatrixXcd entries;
    int rank = 0;

    /// Enforces Hermitian / idempotent / trace-rank invariants; throws on failure.
    void validate(double hermitian_tol = 1e-12, double idempotent_tol = 1e-10,
                  double trace_tol = 1e-8) const;
};

/// Matrix-valued polynomial F(lambda) = sum_j C_j lambda^j whose columns frame
/// the bundle fibers.  Construction validates the uniform frame bounds
/// c_lower I <= F*F <= c_upper I on a disk grid and stores the observed
/// spectral extremes with a safety margin.
class PolynomialFrame {
public:
    struct ValidationSpec {
        GridSpec grid{24, 64, 0.04, kDefaultRMax};
        double eigenvalue_floor = 1e-10;
        double safety_margin = 0.05;
    };

    PolynomialFrame(std::vector<Eigen::MatrixXcd> coefficients, const ValidationSpec& spec);
    explicit PolynomialFrame(std::vector<Eigen::MatrixXcd> coefficients)
        : PolynomialFrame(std::move(coefficients), ValidationSpec{}) {}

    Eigen::MatrixXcd eval(DiskPoint lambda) const;
    Eigen::MatrixXcd eval_derivative(DiskPoint lambda) const;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    int rank() const { return static_cast<int>(coeffs_[0].cols()); }
    int ambient_dim() const { return static_cast<int>(coeffs_[0].rows()); }
    double lower_bound() const { return lower_; }   // observed min eig(F*F), with margin
    double upper_bound() const { return upper_; }   // observed max eig(F*F), with margin
    double r_max() const { return r_max_; }
    const std::vector<Eigen::MatrixXcd>& coefficients() const { return coeffs_; }

private:
    std::vector<Eigen::MatrixXcd> coeffs_;
    double lower_ = 0.0, upper_ = 0.0, r_max_ = kDefaultRMax;
};

/// Seeded random frame with guaranteed bounds: identity-block constant term
/// plus higher-order coefficients of operator norm <= 0.3/degree in total.
PolynomialFrame random_frame(std::mt19937_64& rng, int rank, int ambient_dim, int degree);

/// Hilbert-Schmidt (Frobenius) norm squared.
double hs_norm_sq(const Eigen::MatrixXcd& m);

/// Rank-one projection onto the kernel line at lambda, truncation N.
ProjectionMatrix project_rank1(DiskPoint lambda, int truncation);

/// Pi_2(lambda) = F (F*F)^-1 F*, switching to QR orthogonalization when
/// F*F is ill-conditioned.  Throws frame_error below the eigenvalue floor.
ProjectionMatrix frame_projection(const PolynomialFrame& frame, DiskPoint lambda);

/// Exact Wirtinger derivative (I - Pi_2) F' (F*F)^-1 F*; no finite differences.
Eigen::MatrixXcd dpi2_analytic(const PolynomialFrame& frame, DiskPoint lambda);

/// Kronecker product of two projections; rank multiplies.
ProjectionMatrix tensor_projection(const ProjectionMatrix& p1, const ProjectionMatrix& p2);

/// Closed form for |d Pi_1 / d lambda|^2_HS:
///   -(log(1-x)+x) / (log(1-x)(1-x))^2,  x = |lambda|^2, limit 1/2 at 0.
double curvature_pi1_closed(DiskPoint lambda);

/// All derivative quantities of the tensor bundle at one point, plus the
/// additivity residuals and the projection-orthogonality residuals.
struct BundleDerivativeReport {
    DiskPoint lambda;
    int rank = 0;               // n = rank of Pi_2
    double hs_dpi1_sq = 0.0;    // finite differences of project_rank1
    double hs_dpi2_sq = 0.0;    // from dpi2_analytic
    double hs_dpi_sq = 0.0;     // finite differences of the tensor projection
    double additivity_residual = 0.0;             // vs n*hs_dpi1_sq + hs_dpi2_sq
    double additivity_residual_unweighted = 0.0;  // vs hs_dpi1_sq + hs_dpi2_sq
    double pi2_orthogonality_residual = 0.0;      // ||Pi_2 dPi_2||
    double pi2_reconstruction_residual = 0.0;     // ||(I-Pi_2) dPi_2 Pi_2 - dPi_2||
    double opnorm_dpi2 = 0.0;
    double opnorm_fprime = 0.0;
};

/// Evaluates the tensor-derivative identity at lambda.  `truncation` is the
/// Dirichlet-side dimension; tensor ambient dimension is truncation * dimE.
BundleDerivativeReport thm32_report(const PolynomialFrame& frame, DiskPoint lambda,
                                    int truncation, const StepSpec& step = StepSpec{});

}  // namespace dirshift

#endif
