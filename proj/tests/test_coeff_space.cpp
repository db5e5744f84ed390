#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirshift/coeff_space.hpp"
#include "dirshift/dirichlet_kernel.hpp"
#include "oracles.hpp"

using namespace dirshift;

TEST_CASE("embed_polynomial basis change") {
    Eigen::VectorXcd one(1);
    one << Complex(1.0);
    CHECK(embed_polynomial(one, 4).coords(0) == Complex(1.0));

    Eigen::VectorXcd z(2);
    z << Complex(0.0), Complex(1.0);
    const auto ez = embed_polynomial(z, 4);
    CHECK(std::abs(ez.coords(1) - Complex(std::sqrt(2.0))) < 1e-15);

    Eigen::VectorXcd p(3);
    p << Complex(1.0), Complex(0.0), Complex(1.0);
    const auto ep = embed_polynomial(p, 4);
    CHECK(std::abs(ep.coords(0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(ep.coords(1)) == 0.0);
    CHECK(std::abs(ep.coords(2) - Complex(std::sqrt(3.0))) < 1e-15);

    CHECK_THROWS_AS(embed_polynomial(p, 2), truncation_error);
}

TEST_CASE("embed_kernel coordinates and norm convergence") {
    const auto e0 = embed_kernel(DiskPoint(0.0, 0.0), 8);
    CHECK(e0.vec.coords(0) == Complex(1.0));
    CHECK(e0.vec.coords.tail(7).norm() == 0.0);
    CHECK(e0.tail_norm_sq_bound == 0.0);

    // norm^2 increases with N toward kernel_norm_sq, within the tail bound
    const DiskPoint lam(0.5, 0.0);
    const double target = oracles::frozen::kKernelNormSqQuarter;  // x = 0.25
    double prev = 0.0;
    for (int n : {8, 16, 32, 64}) {
        const auto e = embed_kernel(lam, n);
        const double nsq = e.vec.norm_sq();
        CHECK(nsq >= prev);  // nondecreasing; saturates at double precision by n = 32
        CHECK(nsq <= target + 1e-15);
        CHECK(target - nsq <= e.tail_norm_sq_bound + 1e-15);
        prev = nsq;
    }
    CHECK(embed_kernel(lam, 16).vec.norm_sq() > embed_kernel(lam, 8).vec.norm_sq());
    CHECK(prev == doctest::Approx(target).epsilon(1e-9));
}

TEST_CASE("embedded lambda-derivative matches embed_derivative_kernel") {
    const auto d0 = embed_derivative_kernel(DiskPoint(0.0, 0.0), 6);
    CHECK(std::abs(d0.vec.coords(1) - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(d0.vec.coords.tail(4).norm() == 0.0);

    // finite difference of embed_kernel in lambda
    const DiskPoint lam(0.3, 0.2);
    const double h = 1e-5;
    const auto plus = embed_kernel(DiskPoint(lam.value() + h), 32).vec.coords;
    const auto minus = embed_kernel(DiskPoint(lam.value() - h), 32).vec.coords;
    const Eigen::VectorXcd fd = (plus - minus) / (2.0 * h);
    const auto an = embed_derivative_kernel(lam, 32).vec.coords;
    CHECK((fd - an).norm() < 1e-8);
}

TEST_CASE("shift matrices: weights, adjointness, expansivity") {
    const auto sm = build_shift_matrices(6);
    CHECK(std::abs(sm.backward(0, 1) - Complex(std::sqrt(2.0))) < 1e-15);
    CHECK((sm.backward * Eigen::VectorXcd::Unit(6, 0)).norm() == 0.0);
    CHECK((sm.backward - sm.forward.adjoint()).norm() == 0.0);

    // adjointness under the Euclidean pairing
    Eigen::VectorXcd f = Eigen::VectorXcd::Random(6), g = Eigen::VectorXcd::Random(6);
    const Complex lhs = (sm.forward * f).dot(g);
    const Complex rhs = f.dot(sm.backward * g);
    CHECK(std::abs(lhs - rhs) < 1e-13);

    // singular values of forward are the weights sqrt((k+2)/(k+1)) in (1, sqrt 2],
    // plus one zero from the top row
    const Eigen::VectorXd sv = sm.forward.jacobiSvd().singularValues();
    for (int k = 0; k < 5; ++k) {
        const double expect = std::sqrt((k + 2.0) / (k + 1.0));
        CHECK(sv(k) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(sv(k) > 1.0);
        CHECK(sv(k) <= std::sqrt(2.0) + 1e-12);
    }
    CHECK(sv(5) < 1e-14);
}

TEST_CASE("eigen-relation residual is within the analytic tail plus rounding") {
    const DiskPoint lam(0.5, 0.0);
    double prev_allowance = 1e300;
    for (int n : {50, 100, 200}) {
        const auto e = embed_kernel(lam, n);
        const auto sm = build_shift_matrices(n);
        const Eigen::VectorXcd resid =
            sm.backward * e.vec.coords - lam.value() * e.vec.coords;
        // analytic defect |lambda|^N / sqrt(N) plus a rounding allowance; the
        // truncation part saturates under double rounding by N = 50 already
        const double analytic = std::pow(lam.abs(), n) / std::sqrt(static_cast<double>(n));
        const double allowance = analytic + 64.0 * 1e-16;
        CHECK(resid.norm() <= allowance);
        CHECK(allowance <= prev_allowance);
        prev_allowance = allowance;
    }
}

TEST_CASE("backward shift fixes kernel vectors up to truncation tails") {
    for (const DiskPoint lam : {DiskPoint(0.5, 0.0), DiskPoint(0.3, -0.4)}) {
        const int n = 64;
        const auto e = embed_kernel(lam, n);
        const auto sm = build_shift_matrices(n);
        const double resid = (sm.backward * e.vec.coords - lam.value() * e.vec.coords).norm();
        const double tail = std::pow(lam.abs(), n) / std::sqrt(static_cast<double>(n));
        CHECK(resid <= tail + 1e-13);
    }
}

TEST_CASE("interior margin is enforced") {
    CHECK_THROWS_AS(embed_kernel(DiskPoint(0.97, 0.0), 16), std::domain_error);
    CHECK_NOTHROW(embed_kernel(DiskPoint(0.97, 0.0), 16, 0.99));
}
