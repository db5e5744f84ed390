#ifndef DIRSHIFT_GREEN_POTENTIAL_HPP
#define DIRSHIFT_GREEN_POTENTIAL_HPP

#include <optional>
#include <vector>

#include "dirshift/disk.hpp"
#include "dirshift/wirtinger.hpp"

namespace dirshift {

/// Polar quadrature controls for disk integrals with a Green-kernel singularity.
struct QuadratureSpec {
    int radial_nodes = 400;
    int angular_nodes = 256;
    double singularity_radius = 0.05;
    double r_cutoff = 0.995;

    void validate() const {
        if (radial_nodes < 4 || angular_nodes < 4)
            throw std::invalid_argument("QuadratureSpec: node counts too small");
        if (!(singularity_radius > 0.0 && singularity_radius < 0.1))
            throw std::invalid_argument("QuadratureSpec: need 0 < singularity_radius < 0.1");
        if (!(r_cutoff > 0.5 && r_cutoff <= 0.999))
            throw std::invalid_argument("QuadratureSpec: need 0.5 < r_cutoff <= 0.999");
    }
};

/// One potential evaluation: cutoff-extrapolated value, an a-posteriori error
/// estimate, and the sensitivity of the value to pushing the cutoff outward
/// (the raw divergence signal for non-integrable densities).
struct PotentialValue {
    double value = 0.0;
    double error_estimate = 0.0;
    double cutoff_delta = 0.0;  // V(r_cutoff) - V(closer-in cutoff)
};

enum class BoundedVerdict { BoundedOnScan, GrowthDetected };

struct PotentialSample {
    DiskPoint lambda;
    PotentialValue potential;
};

struct PotentialReport {
    std::vector<PotentialSample> samples;
    double sup_abs = 0.0;
    BoundedVerdict verdict = BoundedVerdict::BoundedOnScan;
    /// Slope of |value| against -log(1 - r) over the cutoff refinement; the
    /// scan slope over the lambda radii is recorded alongside.
    double growth_fit = 0.0;
    double scan_slope = 0.0;
    double growth_threshold = 0.0;
};

struct SubharmonicityViolation {
    DiskPoint lambda;
    double margin;
};

struct SubharmonicityReport {
    double min_margin = 0.0;
    double mean_margin = 0.0;
    double sup_abs_phi = 0.0;
    std::size_t points = 0;
    std::vector<SubharmonicityViolation> violations;
};

/// log |(z - lambda) / (1 - conj(lambda) z)|; <= 0 on the disk, 0 on the circle.
/// Throws singularity_error at z = lambda.
double green_kernel(DiskPoint z, DiskPoint lambda);

/// (2/pi) * integral over |z| <= r_cutoff of green_kernel(z, lambda) rho(z) dA(z),
/// in polar coordinates centered at lambda.  The radial segment inside the
/// singularity radius uses a rule exact for r^k and r^k log r; the value is
/// Richardson-extrapolated over two cutoffs to estimate the missing annulus.
PotentialValue green_potential(DiskPoint lambda, const DensityField& rho,
                               const QuadratureSpec& q);

/// For each grid point: laplacian(phi) - rho; collects margins and violations.
SubharmonicityReport subharmonicity_scan(const ScalarField& phi, const DensityField& rho,
                                         const std::vector<DiskPoint>& grid,
                                         const StepSpec& step, double tolerance = 1e-8);

/// Potential scan over lambda = r * direction for r in radii; growth verdict
/// from the cutoff-sensitivity slope against the threshold.
PotentialReport boundedness_probe(const DensityField& rho, const std::vector<double>& radii,
                                  const QuadratureSpec& q, int directions = 8,
                                  double growth_threshold = 0.05);

/// Built-in densities by label: "zero", "one", "absz-squared", "boundary-blowup".
DensityField make_density(const std::string& label);

}  // namespace dirshift

#endif
