#include "dirshift/wirtinger.hpp"

#include <cmath>

namespace dirshift {

namespace {

// The four axis-aligned stencil points lambda +/- h, lambda +/- ih.
// Throws rather than evaluating the field outside the disk.
void check_stencil(DiskPoint lambda, double h) {
    const Complex z = lambda.value();
    const double worst = std::max(std::abs(z + h), std::max(std::abs(z - h),
                         std::max(std::abs(z + Complex(0, h)), std::abs(z - Complex(0, h)))));
    if (worst >= 1.0) throw stencil_error(lambda, h);
}

template <typename Value, typename Eval>
Value wirtinger_core(const Eval& at, DiskPoint lambda, double h, double bar_sign) {
    const Complex z = lambda.value();
    const Value dx = (at(z + h) - at(z - h)) / (2.0 * h);
    const Value dy = (at(z + Complex(0, h)) - at(z - Complex(0, h))) / (2.0 * h);
    // (dx -+ i dy)/2 : minus gives d/dlambda, plus gives d/dlambdabar.
    return (dx + Complex(0, bar_sign) * dy) * 0.5;
}

}  // namespace

Complex d_dlambda(const ScalarField& f, DiskPoint lambda, const StepSpec& s) {
    const double h = s.step_at(lambda);
    check_stencil(lambda, h);
    auto at = [&](Complex z) { return f.eval(DiskPoint(z)); };
    return wirtinger_core<Complex>(at, lambda, h, -1.0);
}

Complex d_dlambdabar(const ScalarField& f, DiskPoint lambda, const StepSpec& s) {
    const double h = s.step_at(lambda);
    check_stencil(lambda, h);
    auto at = [&](Complex z) { return f.eval(DiskPoint(z)); };
    return wirtinger_core<Complex>(at, lambda, h, +1.0);
}

double laplacian(const ScalarField& f, DiskPoint lambda, const StepSpec& s) {
    if (!f.real_valued)
        throw std::invalid_argument("laplacian: field '" + f.label + "' is not real-valued");
    const double h = s.step_at(lambda);
    check_stencil(lambda, h);
    const Complex z = lambda.value();
    auto at = [&](Complex w) { return f.eval(DiskPoint(w)).real(); };
    const double sum = at(z + h) + at(z - h) + at(z + Complex(0, h)) + at(z - Complex(0, h))
                     - 4.0 * at(z);
    return sum / (h * h) * 0.25;
}

Eigen::MatrixXcd d_dlambda(const MatrixField& f, DiskPoint lambda, const StepSpec& s) {
    const double h = s.step_at(lambda);
    check_stencil(lambda, h);
    auto at = [&](Complex z) { return f(DiskPoint(z)); };
    return wirtinger_core<Eigen::MatrixXcd>(at, lambda, h, -1.0);
}

}  // namespace dirshift
