#ifndef DIRSHIFT_DIRICHLET_KERNEL_HPP
#define DIRSHIFT_DIRICHLET_KERNEL_HPP

#include "dirshift/disk.hpp"

namespace dirshift {

/// Kernel evaluation result with an absolute truncation-error bound
/// (0 for closed-form evaluations).
struct KernelValue {
    Complex value;
    double tail_bound = 0.0;
};

/// Truncated-series control: summation stops when the geometric tail bound
/// drops below tail_tolerance or max_terms is reached.
struct SeriesSpec {
    int max_terms = 20000;
    double tail_tolerance = 1e-15;

    void validate() const {
        if (max_terms < 1) throw std::invalid_argument("SeriesSpec: max_terms must be >= 1");
        if (!(tail_tolerance > 0.0))
            throw std::invalid_argument("SeriesSpec: tail_tolerance must be positive");
    }
};

// Reproducing kernel k_lambda(z) = -log(1 - conj(lambda) z)/(conj(lambda) z),
// evaluated by the power series for small |conj(lambda) z| (the closed form
// divides by a quantity near 0 there) and by the principal-branch closed form
// otherwise.  1 - conj(lambda) z has positive real part on the bidisk, so the
// branch is unambiguous.
KernelValue eval_kernel(DiskPoint lambda, DiskPoint z);

// Derivative kernel, the lambda-derivative of the kernel family.  Pairs
// lambda (not its conjugate) with z:
//   (lambda z^2 + z (1 - lambda z) log(1 - lambda z)) / ((1 - lambda z)(lambda z)^2).
KernelValue eval_derivative_kernel(DiskPoint lambda, DiskPoint z);

/// Series evaluations at a caller-chosen truncation, for self-check columns.
KernelValue eval_kernel_series(DiskPoint lambda, DiskPoint z, const SeriesSpec& s);
KernelValue eval_derivative_kernel_series(DiskPoint lambda, DiskPoint z, const SeriesSpec& s);

/// ||k_lambda||^2 = -log(1-|lambda|^2)/|lambda|^2, limit 1 at lambda = 0.
double kernel_norm_sq(DiskPoint lambda);

/// ||ktilde_lambda||^2; limit 1/2 at lambda = 0.
double derivative_kernel_norm_sq(DiskPoint lambda);

/// <ktilde_{bar lambda}, k_{bar lambda}>; 0 at lambda = 0, real for real lambda.
Complex kernel_deriv_inner(DiskPoint lambda);

/// || A k_{bar lambda} + B ktilde_{bar lambda} ||^2 with
/// A = log(1-x) + x/(1-x), B = lambda log(1-x), x = |lambda|^2:
/// closed form (log(1-x)^2 + x log(1-x)) / (1-x)^2, limit 0 at lambda = 0.
double combination_norm_sq(DiskPoint lambda);

/// The same quantity assembled from the three norms above by bilinear
/// expansion |A|^2 ||k||^2 + |B|^2 ||kt||^2 + 2 Re(conj(A) B <kt,k>),
/// kept as an independent route for cross-validation.
double combination_norm_sq_bilinear(DiskPoint lambda);

/// Series routes for the scalar identities (self-check columns in the CLI).
double kernel_norm_sq_series(DiskPoint lambda, const SeriesSpec& s);
double derivative_kernel_norm_sq_series(DiskPoint lambda, const SeriesSpec& s);
Complex kernel_deriv_inner_series(DiskPoint lambda, const SeriesSpec& s);

}  // namespace dirshift

#endif
