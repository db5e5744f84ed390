#ifndef DIRSHIFT_WIRTINGER_HPP
#define DIRSHIFT_WIRTINGER_HPP

#include <Eigen/Dense>

#include "dirshift/disk.hpp"

namespace dirshift {

using MatrixField = std::function<Eigen::MatrixXcd(DiskPoint)>;

/// Finite-difference step control.  With boundary scaling on, the effective
/// step at lambda is base_step*(1-|lambda|), which keeps all stencil points
/// inside the disk and tracks the (1-|lambda|^2)^-k growth of the fields.
struct StepSpec {
    double base_step = 1e-3;
    bool boundary_scaling = true;

    double step_at(DiskPoint lambda) const {
        if (base_step <= 0.0)
            throw std::invalid_argument("StepSpec: base_step must be positive");
        return boundary_scaling ? base_step * (1.0 - lambda.abs()) : base_step;
    }
};

/// d/d(lambda) = (d/dx - i d/dy)/2 by central differences, O(h^2).
Complex d_dlambda(const ScalarField& f, DiskPoint lambda, const StepSpec& s);

/// d/d(conj lambda) = (d/dx + i d/dy)/2 by central differences, O(h^2).
Complex d_dlambdabar(const ScalarField& f, DiskPoint lambda, const StepSpec& s);

/// Normalized Laplacian (1/4)(d_xx + d_yy) via the 5-point stencil, O(h^2).
/// Requires a real-valued field; equals d_dlambdabar(d_dlambda f) for smooth f.
double laplacian(const ScalarField& f, DiskPoint lambda, const StepSpec& s);

/// Entrywise Wirtinger d/d(lambda) of a matrix-valued field.
Eigen::MatrixXcd d_dlambda(const MatrixField& f, DiskPoint lambda, const StepSpec& s);

}  // namespace dirshift

#endif
