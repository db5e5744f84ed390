#ifndef DIRSHIFT_COEFF_SPACE_HPP
#define DIRSHIFT_COEFF_SPACE_HPP

#include <Eigen/Dense>

#include "dirshift/disk.hpp"

namespace dirshift {

// Finite-truncation model of the Dirichlet space in the orthonormal basis
// { z^n / sqrt(n+1) }.  All coordinates are orthonormal, so the ambient inner
// product is the plain Euclidean one and the space weights appear only in the
// basis-change operations below.

/// Coordinates of a space element in the orthonormal basis, length = truncation.
struct CoefficientVector {
    Eigen::VectorXcd coords;

    int truncation() const { return static_cast<int>(coords.size()); }
    double norm_sq() const { return coords.squaredNorm(); }
};

/// Kernel embedding together with the bound on the norm^2 discarded by truncation.
struct KernelEmbedding {
    CoefficientVector vec;
    double tail_norm_sq_bound = 0.0;
};

/// Multiplication by z (forward) and its adjoint (backward) at truncation N.
/// forward has (k+1,k) entry sqrt((k+2)/(k+1)); backward realizes the weighted
/// backward shift with weights alpha_n = sqrt((n+1)/n).
struct ShiftMatrices {
    Eigen::MatrixXcd forward;
    Eigen::MatrixXcd backward;
    int truncation = 0;
};

/// Monomial coefficients -> orthonormal coordinates: coord_n = a_n sqrt(n+1).
/// Refuses silent truncation: degree must be < N.
CoefficientVector embed_polynomial(const Eigen::VectorXcd& monomial_coeffs, int truncation);

/// Embedding of k_{bar lambda} (the lambda-eigenvector of the backward shift):
/// coord_n = lambda^n / sqrt(n+1).  For a polynomial f embedded above,
/// <f, embed_kernel(mu)> = f(conj(mu)).
KernelEmbedding embed_kernel(DiskPoint lambda, int truncation, double r_max = kDefaultRMax);

/// Embedding of the lambda-derivative of the kernel family:
/// coord_n = n lambda^(n-1) / sqrt(n+1); <f, .> = f'(conj(lambda)).
KernelEmbedding embed_derivative_kernel(DiskPoint lambda, int truncation,
                                        double r_max = kDefaultRMax);

ShiftMatrices build_shift_matrices(int truncation);

}  // namespace dirshift

#endif
