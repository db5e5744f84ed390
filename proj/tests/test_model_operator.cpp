#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "dirshift/coeff_space.hpp"
#include "dirshift/model_operator.hpp"

using namespace dirshift;

namespace {

// Exact rational b_n for the Dirichlet weights: alpha_j^2 = (j+1)/j, so the
// product of inverses telescopes.  Kept in reduced int64 fractions.
struct Rational {
    long long num = 1, den = 1;
    void mul(long long n, long long d) {
        num *= n;
        den *= d;
        const long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
};

}  // namespace

TEST_CASE("mueller_b telescopes to 1/(n+1) for Dirichlet weights") {
    const auto w = dirichlet_weights(64);
    for (int n = 1; n <= 30; ++n) {
        Rational b;
        for (int j = 1; j <= n; ++j) b.mul(j, j + 1);  // alpha_j^-2 = j/(j+1)
        CHECK(b.num == 1);
        CHECK(b.den == n + 1);
        CHECK(mueller_b(w, n) ==
              doctest::Approx(1.0 / (n + 1)).epsilon(1e-13));
    }
    CHECK(mueller_b(w, 3) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("mueller_b for constant and spiked weights") {
    const auto ones = WeightSequence::checked([](int) { return 1.0; }, "ones", 16);
    for (int n = 1; n <= 10; ++n) CHECK(mueller_b(ones, n) == doctest::Approx(1.0));
    const auto spiked = WeightSequence::checked(
        [](int n) { return n == 1 ? 2.0 : 1.0; }, "spiked", 16);
    CHECK(mueller_b(spiked, 1) == doctest::Approx(0.25));
    CHECK(mueller_b(spiked, 5) == doctest::Approx(0.25));
}

TEST_CASE("weight monotonicity enforced at construction") {
    CHECK_THROWS_AS(WeightSequence::checked([](int n) { return static_cast<double>(n); },
                                            "increasing", 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightSequence::checked([](int n) { return n == 3 ? 0.0 : 1.0; },
                                            "zero", 8),
                    std::invalid_argument);
}

TEST_CASE("mueller_sum: zero and nilpotent operators") {
    const auto w = dirichlet_weights(64);
    const auto zero_rep = mueller_sum(Eigen::MatrixXcd::Zero(4, 4), w, 32);
    CHECK(zero_rep.satisfied == ModelVerdict::Yes);
    CHECK(zero_rep.limit_estimate == 0.0);

    Eigen::MatrixXcd nil = Eigen::MatrixXcd::Zero(2, 2);
    nil(0, 1) = 1.0;
    const auto nil_rep = mueller_sum(nil, w, 32);
    CHECK(nil_rep.satisfied == ModelVerdict::Yes);
    CHECK(nil_rep.partial_sums.back() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mueller_sum for the scaled truncated backward shift") {
    const int n = 50;
    const double r = 0.9;
    const auto w = dirichlet_weights(256);
    const Eigen::MatrixXcd t = truncated_backward_shift(n, r);
    const auto rep = mueller_sum(t, w, 200);

    // direct power-sum oracle: accumulate T^k independently and take SVD norms
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
    for (size_t k = 0; k < rep.terms.size(); ++k) {
        power = power * t;
        const double nrm = power.jacobiSvd().singularValues()(0);
        const double oracle = nrm * nrm / (k + 2.0);  // b_{k+1} = 1/(k+2)
        CHECK(std::abs(rep.terms[k] - oracle) <= 1e-10 * std::max(oracle, 1e-30));
        // the norms themselves telescope: ||D*^k||^2 = k+1 for k < n
        if (k + 1 < static_cast<size_t>(n)) {
            const double expect = std::pow(r, 2.0 * (k + 1)) * (k + 2.0);
            CHECK(nrm * nrm == doctest::Approx(expect).epsilon(1e-10));
        }
    }
    CHECK(rep.satisfied == ModelVerdict::No);  // partial sums pass 1 at the second term
    CHECK(rep.partial_sums[1] > 1.0);
    CHECK(rep.flat_terms == false);

    // unscaled: every term is exactly 1 until the nilpotent cutoff
    const auto flat = mueller_sum(truncated_backward_shift(n, 1.0), w, 200);
    CHECK(flat.flat_terms == true);
    CHECK(flat.satisfied == ModelVerdict::No);
    for (int k = 0; k < n - 1; ++k)
        CHECK(flat.terms[k] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("assumption-(1) scaling monotonicity") {
    const auto w = dirichlet_weights(128);
    const Eigen::MatrixXcd t = truncated_backward_shift(30, 0.6);
    const auto full = mueller_sum(t, w, 100);
    const auto shrunk = mueller_sum(0.5 * t, w, 100);
    CHECK(shrunk.limit_estimate < full.limit_estimate);
    CHECK(full.satisfied == ModelVerdict::Yes);    // geometric sum 0.36/0.64 stays under 1
    CHECK(shrunk.satisfied == ModelVerdict::Yes);
}

TEST_CASE("power-norm submultiplicativity sanity") {
    const Eigen::MatrixXcd t = truncated_backward_shift(20, 0.8);
    std::vector<double> norms{1.0};
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(20, 20);
    for (int k = 1; k <= 8; ++k) {
        p = p * t;
        norms.push_back(operator_norm(p));
    }
    for (int a = 1; a + 1 <= 8; ++a)
        for (int b = 1; a + b <= 8; ++b)
            CHECK(norms[a + b] <= norms[a] * norms[b] + 1e-12);
}

TEST_CASE("literal-first-power flag uses a constant norm factor") {
    const auto w = dirichlet_weights(64);
    const Eigen::MatrixXcd t = truncated_backward_shift(10, 0.5);
    const auto literal = mueller_sum(t, w, 32, true);
    const double nt = operator_norm(t);
    CHECK(literal.terms[0] == doctest::Approx(nt * nt * 0.5).epsilon(1e-12));
    CHECK(literal.terms[3] == doctest::Approx(nt * nt * 0.2).epsilon(1e-12));
}

TEST_CASE("vector-wise variant compares against ||x||^2") {
    const auto w = dirichlet_weights(64);
    const Eigen::MatrixXcd t = truncated_backward_shift(10, 0.5);
    const Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(10, 1);
    const auto rep = mueller_sum_vectorwise(t, w, e1, 32);
    // T e1 = 0.5 sqrt(2) e0, T^2 e1 = 0: single term b_1 * 0.5 = 0.25
    CHECK(rep.partial_sums.back() == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(rep.satisfied == ModelVerdict::Yes);
}

TEST_CASE("eigen_space of the truncated backward shift") {
    const Eigen::MatrixXcd t = truncated_backward_shift(50);

    const auto at_zero = eigen_space(t, Complex(0.0));
    CHECK(at_zero.dimension == 1);
    CHECK(std::abs(std::abs(at_zero.basis(0, 0)) - 1.0) < 1e-12);
    CHECK(at_zero.residual < 1e-12);
    CHECK(at_zero.gap > 1e6);

    const auto at_half = eigen_space(t, Complex(0.5));
    CHECK(at_half.dimension == 1);
    const auto k = embed_kernel(DiskPoint(0.5, 0.0), 50).vec.coords.normalized();
    const Complex phase = k.dot(at_half.basis.col(0));
    const double misalignment = (at_half.basis.col(0) - phase * k).norm();
    const double tail = std::pow(0.5, 50) / std::sqrt(50.0);
    CHECK(misalignment <= tail + 1e-12);
}

TEST_CASE("eigen_space residual non-increase over refinement, toward the fp floor") {
    double prev = 1e300;
    for (int n : {50, 100, 200}) {
        const auto r = eigen_space(truncated_backward_shift(n), Complex(0.5));
        const double tail = std::pow(0.5, n) / std::sqrt(static_cast<double>(n));
        const double fp_floor = 1e-13;
        CHECK(r.residual <= std::max(tail, fp_floor));
        CHECK(r.residual <= prev + fp_floor);
        prev = r.residual;
    }
}

TEST_CASE("similarity transports eigenspaces") {
    const int n = 24;
    const Eigen::MatrixXcd t = truncated_backward_shift(n);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n);
    a(0, 1) = 0.3;  // well-conditioned shear
    a(3, 2) = Complex(0.0, -0.2);
    const Eigen::MatrixXcd conj_t = a * t * a.inverse();
    const Complex lam(0.4, 0.0);
    const auto orig = eigen_space(t, lam);
    const auto moved = eigen_space(conj_t, lam);
    REQUIRE(orig.dimension == 1);
    REQUIRE(moved.dimension == 1);
    const Eigen::VectorXcd expected = (a * orig.basis.col(0)).normalized();
    const Complex phase = expected.dot(moved.basis.col(0));
    CHECK((moved.basis.col(0) - phase * expected).norm() < 1e-8);
}

TEST_CASE("eigen_space rank ambiguity raises with the spectrum attached") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 8e-9;  // just under the threshold 1e-8 * sigma_max
    m(2, 2) = 3e-8;  // just above it: gap 3.75 < 10
    try {
        eigen_space(m, Complex(0.0), 1e-8);
        FAIL("expected rank_error");
    } catch (const rank_error& e) {
        CHECK(e.spectrum.size() == 3);
    }
}

TEST_CASE("restrict_to_kernel_span: single generator acts as multiplication") {
    const Eigen::VectorXcd e0 = Eigen::VectorXcd::Unit(2, 0);
    const DiskPoint mu(0.4, 0.25);
    const auto r = restrict_to_kernel_span({mu}, {e0}, 200);
    REQUIRE(r.compressed.rows() == 1);
    CHECK(std::abs(r.compressed(0, 0) - mu.value()) < 1e-12);
    CHECK(r.invariance_residual < 1e-10);
}

TEST_CASE("restrict_to_kernel_span: two samples give the sampled eigenvalues") {
    const Eigen::VectorXcd e0 = Eigen::VectorXcd::Unit(2, 0);
    const Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(2, 1);
    const DiskPoint mu1(0.5, 0.0), mu2(-0.2, 0.3);
    const auto r = restrict_to_kernel_span({mu1, mu2}, {e0, e1}, 200);
    REQUIRE(r.compressed.rows() == 2);
    const Eigen::VectorXcd eig =
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(r.compressed).eigenvalues();
    const double d1 = std::min(std::abs(eig(0) - mu1.value()), std::abs(eig(1) - mu1.value()));
    const double d2 = std::min(std::abs(eig(0) - mu2.value()), std::abs(eig(1) - mu2.value()));
    CHECK(d1 < 1e-10);
    CHECK(d2 < 1e-10);

    // eigen_space of the restriction at mu1 is one-dimensional
    const auto es = eigen_space(r.compressed, mu1.value(), 1e-6);
    CHECK(es.dimension == 1);
}

TEST_CASE("restrict_to_kernel_span rejects near-dependent generators") {
    const Eigen::VectorXcd e0 = Eigen::VectorXcd::Unit(2, 0);
    const DiskPoint mu1(0.3, 0.0), mu2(0.3 + 1e-13, 0.0);
    CHECK_THROWS_AS(restrict_to_kernel_span({mu1, mu2}, {e0, e0}, 100), span_error);
    CHECK_THROWS_AS(restrict_to_kernel_span({mu1, mu1}, {e0, e0}, 100),
                    std::invalid_argument);
}
