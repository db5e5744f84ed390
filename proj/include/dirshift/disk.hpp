#ifndef DIRSHIFT_DISK_HPP
#define DIRSHIFT_DISK_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirshift {

using Complex = std::complex<double>;

/// Radius beyond which near-boundary operations refuse to evaluate.
inline constexpr double kDefaultRMax = 0.95;

/// A point of the open unit disk; the spectral parameter.
class DiskPoint {
public:
    DiskPoint() : z_(0.0, 0.0) {}
    explicit DiskPoint(Complex z) : z_(z) {
        if (std::norm(z) >= 1.0)
            throw std::domain_error("DiskPoint: |z| = " + std::to_string(std::abs(z)) +
                                    " is not inside the open unit disk");
    }
    DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

    Complex value() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }
    double abs() const { return std::abs(z_); }
    double abs_sq() const { return std::norm(z_); }

    /// Enforces the interior margin required by near-boundary-sensitive operations.
    void require_interior(double r_max, const char* who) const {
        if (abs() > r_max)
            throw std::domain_error(std::string(who) + ": |lambda| = " +
                                    std::to_string(abs()) + " exceeds r_max = " +
                                    std::to_string(r_max));
    }

private:
    Complex z_;
};

/// Scalar-valued function on the disk.  `real_valued` marks fields whose
/// imaginary part is structurally zero (Laplacians are only defined for those).
struct ScalarField {
    std::function<Complex(DiskPoint)> eval;
    bool real_valued = false;
    std::string label;
};

/// Nonnegative function on the disk (Laplacian lower bound / potential integrand).
struct DensityField {
    std::function<double(DiskPoint)> eval;
    std::string label;

    double operator()(DiskPoint z) const {
        double v = eval(z);
        if (v < -1e-12)
            throw std::domain_error("DensityField '" + label + "' negative at |z|=" +
                                    std::to_string(z.abs()) + ": " + std::to_string(v));
        return v < 0.0 ? 0.0 : v;
    }
};

struct GridSpec {
    int radii = 20;
    int angles = 32;
    double r_min = 0.1;
    double r_max = 0.9;
};

/// Polar grid with radii spaced geometrically toward the boundary:
/// 1 - r_i shrinks by a constant factor from 1 - r_min down to 1 - r_max.
std::vector<DiskPoint> make_disk_grid(const GridSpec& g);

// Error types carrying the diagnostic payloads the callers test for.

/// Finite-difference stencil would leave the disk.
class stencil_error : public std::runtime_error {
public:
    stencil_error(DiskPoint lambda, double step)
        : std::runtime_error("stencil leaves the unit disk at |lambda| = " +
                             std::to_string(lambda.abs()) + " with step h = " +
                             std::to_string(step)),
          lambda(lambda), step(step) {}
    DiskPoint lambda;
    double step;
};

/// Frame bound violated (smallest eigenvalue of F*F under the floor).
class frame_error : public std::runtime_error {
public:
    frame_error(Complex lambda, double min_eigenvalue)
        : std::runtime_error("degenerate frame: min eig(F*F) = " +
                             std::to_string(min_eigenvalue) + " at lambda = (" +
                             std::to_string(lambda.real()) + ", " +
                             std::to_string(lambda.imag()) + ")"),
          lambda(lambda), min_eigenvalue(min_eigenvalue) {}
    Complex lambda;
    double min_eigenvalue;
};

/// Singular-value gap too small to decide the numerical rank.
class rank_error : public std::runtime_error {
public:
    rank_error(std::string what, std::vector<double> spectrum)
        : std::runtime_error(std::move(what)), spectrum(std::move(spectrum)) {}
    std::vector<double> spectrum;
};

/// Span generators too close to linear dependence.
class span_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature failed to converge within its budget.
class quadrature_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Green kernel evaluated on its diagonal.
class singularity_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncation too small for the requested embedding.
class truncation_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range configuration; `field` names the offender.
class config_error : public std::runtime_error {
public:
    config_error(std::string field, const std::string& detail)
        : std::runtime_error("config field '" + field + "': " + detail),
          field(std::move(field)) {}
    std::string field;
};

}  // namespace dirshift

#endif
