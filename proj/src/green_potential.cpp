#include "dirshift/green_potential.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

namespace dirshift {

namespace {

struct Rule1D {
    std::vector<double> nodes;    // on [0,1]
    std::vector<double> weights;
};

// Gauss-Legendre on [0,1] via the Golub-Welsch tridiagonal eigenproblem.
Rule1D gauss_legendre01(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        j(k, k - 1) = b;
        j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;  // total weight 2 on [-1,1] -> 1 on [0,1]
    }
    return rule;
}

const Rule1D& cached_gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, Rule1D> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre01(n)).first;
    return it->second;
}

// Shifted-Legendre coefficient table: row k holds monomial coefficients of
// P_k(2x-1), built from the three-term recurrence.
std::vector<std::vector<double>> shifted_legendre_coeffs(int kmax) {
    std::vector<std::vector<double>> p(kmax + 1);
    p[0] = {1.0};
    if (kmax >= 1) p[1] = {-1.0, 2.0};
    for (int k = 1; k < kmax; ++k) {
        std::vector<double> next(k + 2, 0.0);
        for (int j = 0; j <= k; ++j) {
            next[j] += -(2.0 * k + 1.0) * p[k][j];
            next[j + 1] += 2.0 * (2.0 * k + 1.0) * p[k][j];
        }
        for (int j = 0; j < k; ++j) next[j] -= k * p[k - 1][j];
        for (double& c : next) c /= (k + 1.0);
        p[k + 1] = std::move(next);
    }
    return p;
}

// Quadrature on [0,1] exact for x^k and x^k log(x), k < pairs.  Weights are
// solved against shifted-Legendre moments (monomial moments 1/(k+1) and
// -1/(k+1)^2) for conditioning.
Rule1D log_rule01(int pairs) {
    const int n = 2 * pairs;
    const Rule1D& gl = cached_gauss_legendre(n);
    const auto leg = shifted_legendre_coeffs(pairs - 1);
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd moments(n);
    for (int k = 0; k < pairs; ++k) {
        double mom_plain = 0.0, mom_log = 0.0;
        for (size_t j = 0; j < leg[k].size(); ++j) {
            mom_plain += leg[k][j] / (j + 1.0);
            mom_log -= leg[k][j] / ((j + 1.0) * (j + 1.0));
        }
        for (int i = 0; i < n; ++i) {
            double px = 0.0;
            for (int j = static_cast<int>(leg[k].size()) - 1; j >= 0; --j)
                px = px * gl.nodes[i] + leg[k][j];
            a(2 * k, i) = px;
            a(2 * k + 1, i) = px * std::log(gl.nodes[i]);
        }
        moments(2 * k) = mom_plain;
        moments(2 * k + 1) = mom_log;
    }
    Eigen::VectorXd w = a.partialPivLu().solve(moments);
    Rule1D rule;
    rule.nodes = gl.nodes;
    rule.weights.assign(w.data(), w.data() + n);
    return rule;
}

const Rule1D& cached_log_rule(int pairs) {
    static std::mutex mtx;
    static std::map<int, Rule1D> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(pairs);
    if (it == cache.end()) it = cache.emplace(pairs, log_rule01(pairs)).first;
    return it->second;
}

constexpr int kLogRulePairs = 12;

// Distance from lambda along direction e^{i theta} to the circle |z| = r0.
double ray_exit(Complex lambda, double cos_t, double sin_t, double r0) {
    const double beta = lambda.real() * cos_t + lambda.imag() * sin_t;
    return -beta + std::sqrt(beta * beta + r0 * r0 - std::norm(lambda));
}

// Integral over |z| <= r0 in polar coordinates centered at lambda, with the
// radial segment [0, s] under the log-exact rule and [s, exit] under plain
// Gauss-Legendre.  The integrand log|z - lambda| splits as log(t) + smooth,
// so both radial pieces are in the classes the rules handle.
double potential_at_cutoff(DiskPoint lambda, const DensityField& rho, double r0,
                           double s, int radial_nodes, int angular_nodes) {
    const Complex lam = lambda.value();
    const Rule1D& outer = cached_gauss_legendre(radial_nodes);
    const Rule1D& inner = cached_log_rule(kLogRulePairs);

    double total = 0.0;
    for (int jt = 0; jt < angular_nodes; ++jt) {
        const double theta = 2.0 * M_PI * jt / angular_nodes;
        const double ct = std::cos(theta), st = std::sin(theta);
        const double exit = ray_exit(lam, ct, st, r0);
        double ray = 0.0;
        auto integrand = [&](double t) {
            const Complex z = lam + t * Complex(ct, st);
            const double kern = std::log(t) - std::log(std::abs(1.0 - std::conj(lam) * z));
            return kern * rho(DiskPoint(z)) * t;
        };
        for (size_t i = 0; i < inner.nodes.size(); ++i)
            ray += s * inner.weights[i] * integrand(s * inner.nodes[i]);
        const double len = exit - s;
        for (size_t i = 0; i < outer.nodes.size(); ++i)
            ray += len * outer.weights[i] * integrand(s + len * outer.nodes[i]);
        total += ray;
    }
    total *= 2.0 * M_PI / angular_nodes;  // periodic trapezoid in theta
    return total * 2.0 / M_PI;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

}  // namespace

double green_kernel(DiskPoint z, DiskPoint lambda) {
    if (z.value() == lambda.value())
        throw singularity_error("green_kernel: z coincides with lambda");
    return std::log(std::abs(z.value() - lambda.value())) -
           std::log(std::abs(1.0 - std::conj(lambda.value()) * z.value()));
}

PotentialValue green_potential(DiskPoint lambda, const DensityField& rho,
                               const QuadratureSpec& q) {
    q.validate();
    const double r2 = q.r_cutoff;
    const double r1 = 1.0 - 2.0 * (1.0 - q.r_cutoff);
    if (lambda.abs() >= r1 - 1e-6)
        throw quadrature_error("green_potential: |lambda| = " + std::to_string(lambda.abs()) +
                               " too close to the inner cutoff " + std::to_string(r1));
    const double s = std::min(q.singularity_radius, 0.49 * (r1 - lambda.abs()));

    const double v1 = potential_at_cutoff(lambda, rho, r1, s, q.radial_nodes, q.angular_nodes);
    const double v2 = potential_at_cutoff(lambda, rho, r2, s, q.radial_nodes, q.angular_nodes);
    const double v2_coarse = potential_at_cutoff(lambda, rho, r2, s,
                                                 std::max(4, q.radial_nodes / 2),
                                                 std::max(4, q.angular_nodes / 2));
    // The discarded annulus shrinks ~ (1-r)^2 for Green-integrable densities,
    // so one Richardson step over the cutoff pair removes the leading term.
    const double correction = (v2 - v1) / 3.0;
    PotentialValue out;
    out.value = v2 + correction;
    out.cutoff_delta = v2 - v1;
    out.error_estimate = std::abs(v2 - v2_coarse) + 0.25 * std::abs(correction);
    return out;
}

SubharmonicityReport subharmonicity_scan(const ScalarField& phi, const DensityField& rho,
                                         const std::vector<DiskPoint>& grid,
                                         const StepSpec& step, double tolerance) {
    SubharmonicityReport rep;
    rep.points = grid.size();
    if (grid.empty()) return rep;
    double sum = 0.0;
    rep.min_margin = 1e300;
    for (const auto& lambda : grid) {
        const double margin = laplacian(phi, lambda, step) - rho(lambda);
        sum += margin;
        rep.min_margin = std::min(rep.min_margin, margin);
        rep.sup_abs_phi = std::max(rep.sup_abs_phi, std::abs(phi.eval(lambda)));
        if (margin < -tolerance) rep.violations.push_back({lambda, margin});
    }
    rep.mean_margin = sum / static_cast<double>(grid.size());
    return rep;
}

PotentialReport boundedness_probe(const DensityField& rho, const std::vector<double>& radii,
                                  const QuadratureSpec& q, int directions,
                                  double growth_threshold) {
    q.validate();
    if (radii.empty()) throw std::invalid_argument("boundedness_probe: no radii");
    for (size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1]))
            throw std::invalid_argument("boundedness_probe: radii must be strictly increasing");
    if (!(radii.back() < q.r_cutoff))
        throw std::invalid_argument("boundedness_probe: radii must stay below r_cutoff");
    if (directions < 1) throw std::invalid_argument("boundedness_probe: directions < 1");

    PotentialReport rep;
    rep.growth_threshold = growth_threshold;
    const double dlog_cutoff = std::log(2.0);  // spacing of the two cutoffs in -log(1-r)
    std::vector<double> scan_x, scan_y;
    double max_cutoff_slope = 0.0, max_err = 0.0;
    for (double r : radii) {
        for (int d = 0; d < directions; ++d) {
            const double theta = 2.0 * M_PI * d / directions;
            const DiskPoint lambda(Complex(r * std::cos(theta), r * std::sin(theta)));
            PotentialSample sample{lambda, green_potential(lambda, rho, q)};
            rep.sup_abs = std::max(rep.sup_abs, std::abs(sample.potential.value));
            max_err = std::max(max_err, sample.potential.error_estimate);
            // |value| grows with the cutoff exactly when the density fails to
            // be Green-integrable near the boundary.
            max_cutoff_slope = std::max(max_cutoff_slope,
                                        std::abs(sample.potential.cutoff_delta) / dlog_cutoff);
            scan_x.push_back(-std::log(1.0 - r));
            scan_y.push_back(std::abs(sample.potential.value));
            rep.samples.push_back(std::move(sample));
        }
    }
    rep.growth_fit = max_cutoff_slope;
    rep.scan_slope = fit_slope(scan_x, scan_y);
    const double noise = max_err / dlog_cutoff;
    rep.verdict = (rep.growth_fit > growth_threshold && rep.growth_fit > 3.0 * noise)
                      ? BoundedVerdict::GrowthDetected
                      : BoundedVerdict::BoundedOnScan;
    return rep;
}

DensityField make_density(const std::string& label) {
    if (label == "zero") return {[](DiskPoint) { return 0.0; }, label};
    if (label == "one") return {[](DiskPoint) { return 1.0; }, label};
    if (label == "absz-squared") return {[](DiskPoint z) { return z.abs_sq(); }, label};
    if (label == "boundary-blowup")
        return {[](DiskPoint z) {
                    const double d = 1.0 - z.abs_sq();
                    return 1.0 / (d * d);
                },
                label};
    throw config_error("density", "unknown label '" + label + "'");
}

}  // namespace dirshift
