#include "dirshift/dirichlet_kernel.hpp"

#include <cmath>

namespace dirshift {

namespace {

// Switch radius below which closed forms lose digits to cancellation and the
// series is used instead.  The series converge geometrically there, so a few
// dozen terms reach full double precision.
constexpr double kKernelSeriesSwitch = 1e-3;      // for w = conj(lambda) z
constexpr double kDerivativeSeriesSwitch = 1e-2;  // for u = lambda z
constexpr double kNormSeriesSwitch = 0.05;        // for x = |lambda|^2
constexpr int kAutoTerms = 200;

double log1m(double x) { return std::log1p(-x); }

// log(1-x) + x = -sum_{n>=2} x^n/n, evaluated without cancellation.
double log1m_plus_x(double x) {
    if (x > kNormSeriesSwitch) return log1m(x) + x;
    double sum = 0.0, p = x;
    for (int n = 2; n <= kAutoTerms; ++n) {
        p *= x;
        const double term = p / n;
        sum -= term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

// log(1-x) + x/(1-x) = sum_{n>=2} ((n-1)/n) x^n, the coefficient A above.
double coefficient_a(double x) {
    if (x > kNormSeriesSwitch) return log1m(x) + x / (1.0 - x);
    double sum = 0.0, p = x;
    for (int n = 2; n <= kAutoTerms; ++n) {
        p *= x;
        const double term = p * (n - 1) / static_cast<double>(n);
        sum += term;
        if (term < 1e-18 * (sum + 1e-300)) break;
    }
    return sum;
}

}  // namespace

KernelValue eval_kernel_series(DiskPoint lambda, DiskPoint z, const SeriesSpec& s) {
    s.validate();
    const Complex w = std::conj(lambda.value()) * z.value();
    const double aw = std::abs(w);
    Complex sum = 0.0;
    Complex p = 1.0;  // w^n
    double tail = aw < 1.0 ? 1.0 / (1.0 - aw) : 1e300;
    for (int n = 0; n < s.max_terms; ++n) {
        sum += p / static_cast<double>(n + 1);
        p *= w;
        tail = std::abs(p) / ((n + 2) * (1.0 - aw));
        if (tail < s.tail_tolerance) break;
    }
    return {sum, tail};
}

KernelValue eval_kernel(DiskPoint lambda, DiskPoint z) {
    const Complex w = std::conj(lambda.value()) * z.value();
    if (std::abs(w) < kKernelSeriesSwitch)
        return eval_kernel_series(lambda, z, SeriesSpec{40, 1e-30});
    return {-std::log(1.0 - w) / w, 0.0};
}

KernelValue eval_derivative_kernel_series(DiskPoint lambda, DiskPoint z, const SeriesSpec& s) {
    s.validate();
    const Complex u = lambda.value() * z.value();
    const double au = std::abs(u);
    // term_n = (n/(n+1)) u^(n-1) z, n >= 1
    Complex sum = 0.0;
    Complex p = 1.0;  // u^(n-1)
    double tail = 1e300;
    for (int n = 1; n <= s.max_terms; ++n) {
        sum += p * (static_cast<double>(n) / (n + 1));
        p *= u;
        tail = (au < 1.0) ? std::abs(z.value()) * std::abs(p) / (1.0 - au) : 1e300;
        if (tail < s.tail_tolerance) break;
    }
    return {sum * z.value(), tail};
}

KernelValue eval_derivative_kernel(DiskPoint lambda, DiskPoint z) {
    const Complex u = lambda.value() * z.value();
    if (std::abs(u) < kDerivativeSeriesSwitch)
        return eval_derivative_kernel_series(lambda, z, SeriesSpec{60, 1e-30});
    const Complex lam = lambda.value(), zz = z.value();
    const Complex num = lam * zz * zz + zz * (1.0 - u) * std::log(1.0 - u);
    return {num / ((1.0 - u) * u * u), 0.0};
}

double kernel_norm_sq_series(DiskPoint lambda, const SeriesSpec& s) {
    s.validate();
    const double x = lambda.abs_sq();
    double sum = 0.0, p = 1.0;
    for (int n = 0; n < s.max_terms; ++n) {
        sum += p / (n + 1);
        p *= x;
        if (x < 1.0 && p / ((n + 2) * (1.0 - x)) < s.tail_tolerance) break;
    }
    return sum;
}

double kernel_norm_sq(DiskPoint lambda) {
    const double x = lambda.abs_sq();
    if (x < kNormSeriesSwitch) return kernel_norm_sq_series(lambda, SeriesSpec{kAutoTerms, 1e-18});
    return -log1m(x) / x;
}

double derivative_kernel_norm_sq_series(DiskPoint lambda, const SeriesSpec& s) {
    s.validate();
    const double x = lambda.abs_sq();
    double sum = 0.0, p = 1.0;  // x^(n-1)
    for (int n = 1; n <= s.max_terms; ++n) {
        sum += p * n * n / static_cast<double>(n + 1);
        p *= x;
        // n^2/(n+1) <= n+1, and sum_{m>n} (m+1) x^(m-1) < x^n (n+2)/(1-x)^2
        if (x < 1.0 && p * (n + 2) / ((1.0 - x) * (1.0 - x)) < s.tail_tolerance) break;
    }
    return sum;
}

double derivative_kernel_norm_sq(DiskPoint lambda) {
    const double x = lambda.abs_sq();
    if (x < kNormSeriesSwitch)
        return derivative_kernel_norm_sq_series(lambda, SeriesSpec{kAutoTerms, 1e-18});
    const double om = 1.0 - x;
    return -(om * om * log1m(x) + x - 2.0 * x * x) / (om * om * x * x);
}

Complex kernel_deriv_inner_series(DiskPoint lambda, const SeriesSpec& s) {
    s.validate();
    const double x = lambda.abs_sq();
    double sum = 0.0, p = 1.0;
    for (int n = 1; n <= s.max_terms; ++n) {
        sum += p * n / static_cast<double>(n + 1);
        p *= x;
        // terms are below x^(m-1), so the tail is below x^n/(1-x)
        if (x < 1.0 && p / (1.0 - x) < s.tail_tolerance) break;
    }
    return std::conj(lambda.value()) * sum;
}

Complex kernel_deriv_inner(DiskPoint lambda) {
    const double x = lambda.abs_sq();
    if (x < kNormSeriesSwitch)
        return kernel_deriv_inner_series(lambda, SeriesSpec{kAutoTerms, 1e-18});
    const double om = 1.0 - x;
    // conj(lambda) (x + (1-x) log(1-x)) / ((1-x) x^2); the bracket cancels to
    // O(x^2), so assemble it from the cancellation-free log1m_plus_x.
    const double bracket = log1m_plus_x(x) - x * log1m(x);  // = x + (1-x)log(1-x)
    return std::conj(lambda.value()) * bracket / (om * x * x);
}

double combination_norm_sq(DiskPoint lambda) {
    const double x = lambda.abs_sq();
    if (x == 0.0) return 0.0;
    const double om = 1.0 - x;
    const double L = log1m(x);
    // L^2 + x L = L (L + x); the second factor cancels to O(x^2).
    return L * log1m_plus_x(x) / (om * om);
}

double combination_norm_sq_bilinear(DiskPoint lambda) {
    const double x = lambda.abs_sq();
    if (x == 0.0) return 0.0;
    const double A = coefficient_a(x);
    const Complex B = lambda.value() * log1m(x);
    const Complex inner = kernel_deriv_inner(lambda);
    return A * A * kernel_norm_sq(lambda) + std::norm(B) * derivative_kernel_norm_sq(lambda) +
           2.0 * std::real(A * B * inner);
}

}  // namespace dirshift
