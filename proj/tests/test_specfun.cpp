// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#include "specfun.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace jacobiheat;
using namespace jacobiheat::specfun;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Degree <= 3 Jacobi polynomials expanded by hand from the Rodrigues
// definition, written in s = a+b, d = a-b.
double rodrigues_p1(double a, double b, double x) {
    return 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
}
double rodrigues_p2(double a, double b, double x) {
    const double s = a + b, d = a - b;
    return ((s + 3.0) * (s + 4.0) * x * x + 2.0 * d * (s + 3.0) * x + d * d - s - 4.0) / 8.0;
}
double rodrigues_p3(double a, double b, double x) {
    const double s = a + b, d = a - b;
    return ((s + 4.0) * (s + 5.0) * (s + 6.0) * x * x * x +
            3.0 * d * (s + 4.0) * (s + 5.0) * x * x +
            3.0 * (s + 4.0) * (d * d - s - 6.0) * x + d * (d * d - 3.0 * s - 16.0)) /
           48.0;
}

}  // namespace

TEST_CASE("log_gamma matches known values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    // golden value frozen from a high-precision evaluation
    CHECK(log_gamma(7.3) == doctest::Approx(7.147892523022249033).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    // recursion Gamma(x+1) = x Gamma(x); tolerance scales with the magnitude
    // of ln Gamma since the identity subtracts two large values
    for (double x : {0.17, 1.9, 23.0, 481.5, 9731.25}) {
        const double lhs = log_gamma(x + 1.0) - log_gamma(x);
        CHECK(std::abs(lhs - std::log(x)) <= 1e-13 * (1.0 + std::abs(log_gamma(x + 1.0))));
    }
    CHECK_THROWS_AS(log_gamma(0.0), Error);
    CHECK_THROWS_AS(log_gamma(-3.2), Error);
}

TEST_CASE("bessel_i trivial and half-integer closed forms") {
    CHECK(bessel_i(0.0, 0.0) == 1.0);
    CHECK(bessel_i(1.0, 0.0) == 0.0);
    // I_{1/2}(z) = sqrt(2/(pi z)) sinh z
    for (double z : {0.25, 2.0, 9.5, 19.0, 21.5, 60.0, 300.0}) {
        const double exact = std::sqrt(2.0 / (kPi * z)) * std::sinh(z);
        CHECK(bessel_i(0.5, z) == doctest::Approx(exact).epsilon(1e-10));
    }
    // I_{-1/2}(z) = sqrt(2/(pi z)) cosh z
    for (double z : {0.5, 7.0, 30.0}) {
        const double exact = std::sqrt(2.0 / (kPi * z)) * std::cosh(z);
        CHECK(bessel_i(-0.5, z) == doctest::Approx(exact).epsilon(1e-10));
    }
    // I_{3/2}(z) = sqrt(2/(pi z)) (cosh z - sinh z / z)
    for (double z : {1.0, 18.0, 45.0}) {
        const double exact = std::sqrt(2.0 / (kPi * z)) * (std::cosh(z) - std::sinh(z) / z);
        CHECK(bessel_i(1.5, z) == doctest::Approx(exact).epsilon(1e-10));
    }
    CHECK(bessel_i(0.5, 2.0) == doctest::Approx(2.046236863089055).epsilon(1e-12));
}

TEST_CASE("bessel_i golden values across the series/asymptotic switch") {
    CHECK(bessel_i(0.7, 25.0) == doctest::Approx(5717077800.685541517).epsilon(1e-10));
    CHECK(bessel_i(2.3, 7.0) == doctest::Approx(112.4634962453720083).epsilon(1e-10));
    CHECK(bessel_i(0.0, 30.0) == doctest::Approx(781672297823.9774897).epsilon(1e-10));
    CHECK(bessel_i(1.5, 40.0) == doctest::Approx(14476512910296415.3).epsilon(1e-10));
}

TEST_CASE("bessel_i limiting behavior and overflow signalling") {
    // I_nu(z) ~ (z/2)^nu / Gamma(nu+1) as z -> 0+
    for (double nu : {0.0, 0.5, 1.7}) {
        const double z = 1e-6;
        const double lead = std::exp(nu * std::log(0.5 * z) - log_gamma(nu + 1.0));
        CHECK(bessel_i(nu, z) == doctest::Approx(lead).epsilon(1e-9));
    }
    // I_nu(z) ~ e^z / sqrt(2 pi z) as z -> infinity
    for (double nu : {0.0, 0.7, 2.3}) {
        const double z = 650.0;
        const double lead = z - 0.5 * std::log(2.0 * kPi * z);
        CHECK(log_bessel_i(nu, z) == doctest::Approx(lead).epsilon(1e-2));
    }
    CHECK_THROWS_AS(bessel_i(0.0, 800.0), Error);
    CHECK(log_bessel_i(0.0, 800.0) > 700.0);  // log form stays usable
    CHECK_THROWS_AS(bessel_i(-1.5, 1.0), Error);
    CHECK_THROWS_AS(bessel_i(0.0, -1.0), Error);
}

TEST_CASE("jacobi_poly_seq basics") {
    const JacobiParams legendre(0.0, 0.0);
    auto seq = jacobi_poly_seq(legendre, 0.5, 1);
    REQUIRE(seq.values.size() == 2);
    CHECK(seq.values[0] == 1.0);
    CHECK(seq.values[1] == doctest::Approx(0.5).epsilon(1e-15));

    auto deg0 = jacobi_poly_seq(JacobiParams(1.3, -0.4), -0.77, 0);
    REQUIRE(deg0.values.size() == 1);
    CHECK(deg0.values[0] == 1.0);

    // endpoint identity P_n^{a,b}(1) = binom(n+a, n)
    const JacobiParams p(2.0, 3.0);
    auto at1 = jacobi_poly_seq(p, 1.0, 4);
    for (int n = 0; n <= 4; ++n) {
        const double expected =
            std::exp(log_gamma(n + 3.0) - log_gamma(n + 1.0) - log_gamma(3.0));
        CHECK(at1.values[n] == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK_THROWS_AS(jacobi_poly_seq(legendre, 1.5, 3), Error);
}

TEST_CASE("recurrence agrees with hand-expanded Rodrigues forms") {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    const double pairs[][2] = {{-0.5, -0.5}, {0.0, 0.0}, {0.5, 1.5}, {2.3, 0.7}, {-0.9, 0.4}};
    for (const auto& ab : pairs) {
        const JacobiParams p(ab[0], ab[1]);
        for (int i = 0; i < 100; ++i) {
            const double x = ux(rng);
            auto seq = jacobi_poly_seq(p, x, 3);
            CHECK(seq.values[1] ==
                  doctest::Approx(rodrigues_p1(ab[0], ab[1], x)).epsilon(1e-12));
            CHECK(seq.values[2] ==
                  doctest::Approx(rodrigues_p2(ab[0], ab[1], x)).epsilon(1e-12));
            CHECK(seq.values[3] ==
                  doctest::Approx(rodrigues_p3(ab[0], ab[1], x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("jacobi_norm oracle values") {
    CHECK(jacobi_norm(JacobiParams(0.0, 0.0), 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(jacobi_norm(JacobiParams(-0.5, -0.5), 0) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(jacobi_norm(JacobiParams(0.0, 0.0), 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // Legendre: h_n = 2/(2n+1)
    for (long long n : {2LL, 5LL, 40LL}) {
        CHECK(jacobi_norm(JacobiParams(0.0, 0.0), n) ==
              doctest::Approx(2.0 / (2.0 * n + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("jacobi_norm_ratio consistent with direct values") {
    const double pairs[][2] = {{-0.5, -0.5}, {0.0, 0.0}, {0.5, 1.5}, {2.3, 0.7}};
    for (const auto& ab : pairs) {
        const JacobiParams p(ab[0], ab[1]);
        for (long long n : {1LL, 2LL, 7LL, 100LL}) {
            const double ratio = jacobi_norm(p, n + 1) / jacobi_norm(p, n);
            CHECK(jacobi_norm_ratio(p, n) == doctest::Approx(ratio).epsilon(1e-12));
        }
    }
}

TEST_CASE("1/h_n grows linearly in n") {
    const double pairs[][2] = {{-0.5, -0.5}, {0.0, 0.0}, {0.5, 1.5}, {2.3, 0.7}};
    for (const auto& ab : pairs) {
        const JacobiParams p(ab[0], ab[1]);
        double h = jacobi_norm(p, 1);
        for (long long n = 1; n <= 10000; ++n) {
            const double v = 1.0 / (n * h);
            CHECK(v > 0.05);
            CHECK(v < 20.0);
            if (n < 10000) h *= jacobi_norm_ratio(p, n);
        }
    }
}

TEST_CASE("jacobi_sup_bound values and domination") {
    CHECK(jacobi_sup_bound(JacobiParams(0.0, 0.0), 5) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(jacobi_sup_bound(JacobiParams(2.0, 0.0), 3) == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(jacobi_sup_bound(JacobiParams(1.2, -0.3), 0) == 1.0);
    CHECK_THROWS_AS(jacobi_sup_bound(JacobiParams(-0.9, 0.0), 2), Error);

    // dense-grid max of |P_3^{2,0}| realizes the bound
    const JacobiParams p(2.0, 0.0);
    double mx = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
        const double x = -1.0 + 2e-6 * i;
        mx = std::max(mx, std::abs(jacobi_poly_seq(p, x, 3).values[3]));
    }
    CHECK(mx == doctest::Approx(10.0).epsilon(1e-10));

    // sup over a grid never exceeds the bound, n <= 50
    const double pairs[][2] = {{-0.5, -0.5}, {0.0, 0.0}, {0.5, 1.5}, {2.3, 0.7}};
    for (const auto& ab : pairs) {
        const JacobiParams q(ab[0], ab[1]);
        std::vector<double> bounds(51);
        for (int n = 0; n <= 50; ++n) bounds[n] = jacobi_sup_bound(q, n);
        for (int i = 0; i <= 1000; ++i) {
            const double x = -1.0 + 2e-3 * i;
            auto seq = jacobi_poly_seq(q, x, 50);
            for (int n = 0; n <= 50; ++n)
                CHECK(std::abs(seq.values[n]) <= bounds[n] * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("wrapped Gaussians: the two representations coincide") {
    // direct sums, independent of the production switch logic
    auto theta_direct = [](double t, double u) {
        double s = 1.0;
        for (int k = 1; k <= 200; ++k) s += 2.0 * std::exp(-t * k * k) * std::cos(k * u);
        return s;
    };
    auto theta_image = [](double t, double u) {
        double s = 0.0;
        for (int k = -40; k <= 40; ++k) s += std::exp(-(u - 2 * kPi * k) * (u - 2 * kPi * k) / (4 * t));
        return std::sqrt(kPi / t) * s;
    };
    auto half_direct = [](double t, double u) {
        double s = 0.0;
        for (int n = 0; n <= 200; ++n)
            s += std::exp(-t * (n + 0.5) * (n + 0.5)) * std::cos((n + 0.5) * u);
        return s;
    };
    auto half_image = [](double t, double u) {
        double s = 0.0;
        for (int k = -40; k <= 40; ++k)
            s += (k % 2 ? -1.0 : 1.0) * std::exp(-(u - 2 * kPi * k) * (u - 2 * kPi * k) / (4 * t));
        return 0.5 * std::sqrt(kPi / t) * s;
    };
    for (double u : {0.0, 0.4, 1.7, 3.1, 5.9}) {
        CHECK(theta_direct(1.0, u) == doctest::Approx(theta_image(1.0, u)).epsilon(1e-12));
        CHECK(half_direct(1.0, u) == doctest::Approx(half_image(1.0, u)).epsilon(1e-12));
        // the production function switches representation at t = 1
        for (double t : {0.03, 0.4, 1.0, 2.5}) {
            CHECK(theta_wrapped(t, u) == doctest::Approx(theta_direct(t, u)).epsilon(1e-12));
            CHECK(theta_half_wrapped(t, u) == doctest::Approx(half_direct(t, u)).epsilon(1e-12));
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), Error);
    CHECK_THROWS_AS(JacobiParams(0.0, -1.3), Error);
    CHECK(JacobiParams(-0.5, -0.5).in_theorem_range());
    CHECK_FALSE(JacobiParams(-0.51, 0.0).in_theorem_range());
}
