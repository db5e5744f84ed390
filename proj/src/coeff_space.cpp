#include "dirshift/coeff_space.hpp"

#include <cmath>

namespace dirshift {

CoefficientVector embed_polynomial(const Eigen::VectorXcd& monomial_coeffs, int truncation) {
    int degree = -1;
    for (int n = 0; n < monomial_coeffs.size(); ++n)
        if (monomial_coeffs[n] != Complex(0.0)) degree = n;
    if (degree >= truncation)
        throw truncation_error("embed_polynomial: degree " + std::to_string(degree) +
                               " does not fit truncation " + std::to_string(truncation));
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(truncation);
    for (int n = 0; n <= degree; ++n)
        c[n] = monomial_coeffs[n] * std::sqrt(static_cast<double>(n + 1));
    return {std::move(c)};
}

KernelEmbedding embed_kernel(DiskPoint lambda, int truncation, double r_max) {
    lambda.require_interior(r_max, "embed_kernel");
    if (truncation < 1) throw truncation_error("embed_kernel: truncation must be >= 1");
    Eigen::VectorXcd c(truncation);
    Complex p = 1.0;
    for (int n = 0; n < truncation; ++n) {
        c[n] = p / std::sqrt(static_cast<double>(n + 1));
        p *= lambda.value();
    }
    const double x = lambda.abs_sq();
    // sum_{n>=N} x^n/(n+1) <= x^N / (N (1-x))
    const double tail = std::pow(x, truncation) / (truncation * (1.0 - x));
    return {{std::move(c)}, tail};
}

KernelEmbedding embed_derivative_kernel(DiskPoint lambda, int truncation, double r_max) {
    lambda.require_interior(r_max, "embed_derivative_kernel");
    if (truncation < 1) throw truncation_error("embed_derivative_kernel: truncation must be >= 1");
    Eigen::VectorXcd c(truncation);
    c[0] = 0.0;
    Complex p = 1.0;  // lambda^(n-1)
    for (int n = 1; n < truncation; ++n) {
        c[n] = p * static_cast<double>(n) / std::sqrt(static_cast<double>(n + 1));
        p *= lambda.value();
    }
    // discarded norm^2 = sum_{n>=N} n^2 x^(n-1)/(n+1) <= x^(N-1) (N+1) / (1-x)^2
    const double x = lambda.abs_sq();
    const double tail = std::pow(x, truncation - 1) * (truncation + 1) /
                        ((1.0 - x) * (1.0 - x));
    return {{std::move(c)}, tail};
}

ShiftMatrices build_shift_matrices(int truncation) {
    if (truncation < 2)
        throw std::invalid_argument("build_shift_matrices: truncation must be >= 2");
    Eigen::MatrixXcd fwd = Eigen::MatrixXcd::Zero(truncation, truncation);
    for (int k = 0; k + 1 < truncation; ++k)
        fwd(k + 1, k) = std::sqrt(static_cast<double>(k + 2) / (k + 1));
    return {fwd, fwd.adjoint(), truncation};
}

}  // namespace dirshift
