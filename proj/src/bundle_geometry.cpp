#include "dirshift/bundle_geometry.hpp"

#include <cmath>

#include "dirshift/coeff_space.hpp"
#include "dirshift/dirichlet_kernel.hpp"

namespace dirshift {

namespace {

double operator_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

// Spectrum of the Hermitian form F*F at lambda; ascending.
Eigen::VectorXd gram_spectrum(const Eigen::MatrixXcd& f) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f.adjoint() * f,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

void ProjectionMatrix::validate(double hermitian_tol, double idempotent_tol,
                                double trace_tol) const {
    const double scale = entries.norm();
    if ((entries - entries.adjoint()).norm() > hermitian_tol * std::max(scale, 1.0))
        throw std::logic_error("ProjectionMatrix: not Hermitian");
    if ((entries * entries - entries).norm() > idempotent_tol * std::max(scale, 1.0))
        throw std::logic_error("ProjectionMatrix: not idempotent");
    if (std::abs(entries.trace().real() - rank) > trace_tol)
        throw std::logic_error("ProjectionMatrix: trace does not match rank " +
                               std::to_string(rank));
}

PolynomialFrame::PolynomialFrame(std::vector<Eigen::MatrixXcd> coefficients,
                                 const ValidationSpec& spec)
    : coeffs_(std::move(coefficients)), r_max_(spec.grid.r_max) {
    if (coeffs_.empty()) throw std::invalid_argument("PolynomialFrame: no coefficients");
    const auto rows = coeffs_[0].rows(), cols = coeffs_[0].cols();
    if (cols > rows)
        throw std::invalid_argument("PolynomialFrame: rank exceeds ambient dimension");
    for (const auto& c : coeffs_)
        if (c.rows() != rows || c.cols() != cols)
            throw std::invalid_argument("PolynomialFrame: inconsistent coefficient shapes");

    auto grid = make_disk_grid(spec.grid);
    grid.emplace_back(Complex(0.0, 0.0));
    double lo = 1e300, hi = 0.0;
    for (const auto& lambda : grid) {
        const Eigen::VectorXd eig = gram_spectrum(eval(lambda));
        if (eig(0) < spec.eigenvalue_floor) throw frame_error(lambda.value(), eig(0));
        lo = std::min(lo, eig(0));
        hi = std::max(hi, eig(eig.size() - 1));
    }
    lower_ = lo * (1.0 - spec.safety_margin);
    upper_ = hi * (1.0 + spec.safety_margin);
}

Eigen::MatrixXcd PolynomialFrame::eval(DiskPoint lambda) const {
    Eigen::MatrixXcd f = coeffs_.back();
    for (int j = static_cast<int>(coeffs_.size()) - 2; j >= 0; --j)
        f = f * lambda.value() + coeffs_[j];
    return f;
}

Eigen::MatrixXcd PolynomialFrame::eval_derivative(DiskPoint lambda) const {
    const int d = degree();
    if (d == 0) return Eigen::MatrixXcd::Zero(ambient_dim(), rank());
    Eigen::MatrixXcd f = coeffs_[d] * static_cast<double>(d);
    for (int j = d - 1; j >= 1; --j)
        f = f * lambda.value() + coeffs_[j] * static_cast<double>(j);
    return f;
}

PolynomialFrame random_frame(std::mt19937_64& rng, int rank, int ambient_dim, int degree) {
    if (rank < 1 || ambient_dim < rank || degree < 0)
        throw std::invalid_argument("random_frame: bad shape");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::MatrixXcd> coeffs;
    Eigen::MatrixXcd c0 = Eigen::MatrixXcd::Zero(ambient_dim, rank);
    c0.topRows(rank) = Eigen::MatrixXcd::Identity(rank, rank);
    coeffs.push_back(c0);
    const double budget = degree > 0 ? 0.3 / degree : 0.0;
    for (int j = 1; j <= degree; ++j) {
        Eigen::MatrixXcd c(ambient_dim, rank);
        for (int r = 0; r < ambient_dim; ++r)
            for (int s = 0; s < rank; ++s) c(r, s) = Complex(gauss(rng), gauss(rng));
        coeffs.push_back(c * (budget / operator_norm(c)));
    }
    return PolynomialFrame(std::move(coeffs));
}

double hs_norm_sq(const Eigen::MatrixXcd& m) { return m.squaredNorm(); }

ProjectionMatrix project_rank1(DiskPoint lambda, int truncation) {
    const auto v = embed_kernel(lambda, truncation).vec.coords;
    ProjectionMatrix p{(v * v.adjoint()) / v.squaredNorm(), 1};
    return p;
}

ProjectionMatrix frame_projection(const PolynomialFrame& frame, DiskPoint lambda) {
    lambda.require_interior(frame.r_max(), "frame_projection");
    const Eigen::MatrixXcd f = frame.eval(lambda);
    const Eigen::VectorXd eig = gram_spectrum(f);
    const double lo = eig(0), hi = eig(eig.size() - 1);
    if (lo < 1e-10) throw frame_error(lambda.value(), lo);

    Eigen::MatrixXcd p;
    if (hi / lo > 1e6) {
        // Orthogonalize the columns instead of inverting the Gram matrix.
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(f);
        Eigen::MatrixXcd q = qr.householderQ() *
                             Eigen::MatrixXcd::Identity(f.rows(), f.cols());
        p = q * q.adjoint();
    } else {
        const Eigen::MatrixXcd gram = f.adjoint() * f;
        p = f * gram.llt().solve(f.adjoint());
    }
    // Symmetrize away the last rounding asymmetry.
    p = 0.5 * (p + p.adjoint().eval());
    return {std::move(p), frame.rank()};
}

Eigen::MatrixXcd dpi2_analytic(const PolynomialFrame& frame, DiskPoint lambda) {
    lambda.require_interior(frame.r_max(), "dpi2_analytic");
    const Eigen::MatrixXcd f = frame.eval(lambda);
    const Eigen::MatrixXcd fp = frame.eval_derivative(lambda);
    const Eigen::MatrixXcd gram = f.adjoint() * f;
    const Eigen::VectorXd eig = gram_spectrum(f);
    if (eig(0) < 1e-10) throw frame_error(lambda.value(), eig(0));
    const Eigen::MatrixXcd solve_fstar = gram.llt().solve(f.adjoint());  // (F*F)^-1 F*
    const Eigen::MatrixXcd pi2 = f * solve_fstar;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(f.rows(), f.rows());
    return (id - pi2) * fp * solve_fstar;
}

ProjectionMatrix tensor_projection(const ProjectionMatrix& p1, const ProjectionMatrix& p2) {
    const auto& a = p1.entries;
    const auto& b = p2.entries;
    Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return {std::move(k), p1.rank * p2.rank};
}

double curvature_pi1_closed(DiskPoint lambda) {
    const double x = lambda.abs_sq();
    if (x < 1e-7) return 0.5 * (1.0 + 5.0 / 3.0 * x + 9.0 / 4.0 * x * x);
    const double l = std::log1p(-x);
    return -(l + x) / ((l * (1.0 - x)) * (l * (1.0 - x)));
}

BundleDerivativeReport thm32_report(const PolynomialFrame& frame, DiskPoint lambda,
                                    int truncation, const StepSpec& step) {
    BundleDerivativeReport rep;
    rep.lambda = lambda;
    rep.rank = frame.rank();

    MatrixField pi1_field = [truncation](DiskPoint mu) {
        return project_rank1(mu, truncation).entries;
    };
    const Eigen::MatrixXcd dpi1 = d_dlambda(pi1_field, lambda, step);
    rep.hs_dpi1_sq = hs_norm_sq(dpi1);

    const Eigen::MatrixXcd dpi2 = dpi2_analytic(frame, lambda);
    rep.hs_dpi2_sq = hs_norm_sq(dpi2);

    MatrixField pi_field = [&frame, truncation](DiskPoint mu) {
        return tensor_projection(project_rank1(mu, truncation),
                                 frame_projection(frame, mu)).entries;
    };
    const Eigen::MatrixXcd dpi = d_dlambda(pi_field, lambda, step);
    rep.hs_dpi_sq = hs_norm_sq(dpi);

    rep.additivity_residual =
        std::abs(rep.hs_dpi_sq - (rep.rank * rep.hs_dpi1_sq + rep.hs_dpi2_sq));
    rep.additivity_residual_unweighted =
        std::abs(rep.hs_dpi_sq - (rep.hs_dpi1_sq + rep.hs_dpi2_sq));

    const Eigen::MatrixXcd pi2 = frame_projection(frame, lambda).entries;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(pi2.rows(), pi2.cols());
    rep.pi2_orthogonality_residual = operator_norm(pi2 * dpi2);
    rep.pi2_reconstruction_residual = operator_norm((id - pi2) * dpi2 * pi2 - dpi2);
    rep.opnorm_dpi2 = operator_norm(dpi2);
    rep.opnorm_fprime = operator_norm(frame.eval_derivative(lambda));
    return rep;
}

}  // namespace dirshift
