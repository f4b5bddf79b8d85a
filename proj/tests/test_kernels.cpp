// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#include "kernels.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace jacobiheat;
using namespace jacobiheat::kernels;
using jacobiheat::specfun::JacobiParams;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Direct trig-setting series using the normalized polynomials; an
// independent composition path used to validate closed forms and relations.
double direct_trig_series(const JacobiParams& p, double th, double ph, double t, int nmax) {
    const double c = 0.5 * (p.sum() + 1.0);
    auto px = specfun::jacobi_poly_seq(p, std::cos(th), nmax);
    auto py = specfun::jacobi_poly_seq(p, std::cos(ph), nmax);
    double acc = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        const double norm = std::exp((p.sum() + 1.0) * std::log(2.0) -
                                     specfun::log_jacobi_norm(p, n));
        acc += std::exp(-t * (n + c) * (n + c)) * norm * px.values[n] * py.values[n];
    }
    return acc;
}

double direct_poisson_series(const JacobiParams& p, double th, double ph, double t, int nmax) {
    const double c = 0.5 * (p.sum() + 1.0);
    auto px = specfun::jacobi_poly_seq(p, std::cos(th), nmax);
    auto py = specfun::jacobi_poly_seq(p, std::cos(ph), nmax);
    double acc = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        const double norm = std::exp((p.sum() + 1.0) * std::log(2.0) -
                                     specfun::log_jacobi_norm(p, n));
        acc += std::exp(-t * std::abs(n + c)) * norm * px.values[n] * py.values[n];
    }
    return acc;
}

// trig value from the pure-setting kernel
double trig_from_pure(const JacobiParams& p, double g_pure, double t) {
    const double c = 0.5 * (p.sum() + 1.0);
    return std::exp((p.sum() + 1.0) * std::log(2.0) - t * c * c) * g_pure;
}

const JacobiParams kPairs[4] = {{-0.5, -0.5}, {0.0, 0.0}, {0.5, 1.5}, {2.3, 0.7}};

}  // namespace

TEST_CASE("heat_series basics") {
    const JacobiParams leg(0.0, 0.0);
    // symmetry is term-by-term
    auto a = heat_series(leg, 0.3, -0.7, 0.2);
    auto b = heat_series(leg, -0.7, 0.3, 0.2);
    CHECK(a.value == b.value);
    CHECK(a.certified);
    CHECK(a.tail_bound <= 1e-12);

    // large-time limit is 1/h_0
    auto lim = heat_series(leg, 1.0, 1.0, 1e6);
    CHECK(std::abs(lim.value - 0.5) < 1e-12);

    // t floor enforcement
    CHECK_THROWS_AS(heat_series(leg, 0.0, 0.0, 1e-9), Error);
    try {
        heat_series(leg, 0.0, 0.0, 1e-9);
    } catch (const Error& e) {
        CHECK(e.status() == Status::precision_floor);
    }

    // out-of-range parameters evaluate but are flagged uncertified
    auto oc = heat_series(JacobiParams(-0.9, 0.4), 0.2, 0.5, 0.3);
    CHECK_FALSE(oc.certified);
    CHECK(std::isfinite(oc.value));
}

TEST_CASE("heat_series matches the closed-form oracle at +-1/2") {
    for (auto ab : {std::pair{-0.5, -0.5}, std::pair{0.5, 0.5}, std::pair{-0.5, 0.5},
                    std::pair{0.5, -0.5}}) {
        const JacobiParams p(ab.first, ab.second);
        for (double t : {0.05, 0.3, 2.0}) {
            for (double th : {0.4, 1.2, 2.3}) {
                for (double ph : {0.7, 1.9}) {
                    const HeatPoint pt(th, ph, t);
                    const double oracle = dirichlet_neumann_oracle(p, pt);
                    const double via_series = trig_from_pure(
                        p, heat_series(p, pt.x(), pt.y(), t, {2000000, 1e-13}).value, t);
                    CHECK(via_series == doctest::Approx(oracle).epsilon(1e-10));
                }
            }
        }
    }
    // spec'd spot value: (-1/2,-1/2) at theta=phi=0, t=1
    double expect = 1.0;
    for (int n = 1; n < 40; ++n) expect += 2.0 * std::exp(-1.0 * n * n);
    expect /= kPi;
    CHECK(dirichlet_neumann_oracle(JacobiParams(-0.5, -0.5), HeatPoint(0.0, 0.0, 1.0)) ==
          doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("oracle closed forms reproduce direct 50-term summation at t = 0.5") {
    for (auto ab : {std::pair{-0.5, -0.5}, std::pair{0.5, 0.5}, std::pair{-0.5, 0.5},
                    std::pair{0.5, -0.5}}) {
        const JacobiParams p(ab.first, ab.second);
        for (double th : {0.35, 1.45, 2.75}) {
            for (double ph : {0.6, 2.1}) {
                const double direct = direct_trig_series(p, th, ph, 0.5, 50);
                const double oracle = dirichlet_neumann_oracle(p, HeatPoint(th, ph, 0.5));
                CHECK(oracle == doctest::Approx(direct).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("trig and function setting relations") {
    // consistency at theta=phi=pi/2, alpha=beta=0, t=1: calG = 2 e^{-1/4} G(0,0)
    const JacobiParams leg(0.0, 0.0);
    const HeatPoint mid(0.5 * kPi, 0.5 * kPi, 1.0);
    const double g = heat_series(leg, 0.0, 0.0, 1.0).value;
    CHECK(trig_heat(leg, mid).value ==
          doctest::Approx(2.0 * std::exp(-0.25) * g).epsilon(1e-14));

    // calG is a positive multiple of G, so it inherits positivity
    CHECK(trig_heat(leg, HeatPoint(0.3, 2.9, 0.4)).value > 0.0);

    // direct summation cross-check of the trig kernel at (-1/2,-1/2)
    const JacobiParams ch(-0.5, -0.5);
    const double direct = direct_trig_series(ch, 1.0, 1.0, 0.1, 60);
    CHECK(trig_heat(ch, HeatPoint(1.0, 1.0, 0.1)).value ==
          doctest::Approx(direct).epsilon(1e-11));

    // function setting: prefactor zero limit at the boundary for alpha > -1/2
    const JacobiParams p(0.5, 1.5);
    CHECK(func_heat(p, HeatPoint(0.0, 1.0, 0.5)).value == 0.0);
    // exponent-zero case: function and trig settings coincide at (-1/2,-1/2)
    CHECK(func_heat(ch, HeatPoint(0.9, 1.7, 0.3)).value ==
          doctest::Approx(trig_heat(ch, HeatPoint(0.9, 1.7, 0.3)).value).epsilon(1e-14));
    // mid-domain value equals the direct phi_n series
    const double pref = std::pow(std::sin(0.45) * std::sin(0.85), 1.0) *
                        std::pow(std::cos(0.45) * std::cos(0.85), 2.0);
    const double gfun = pref * direct_trig_series(p, 0.9, 1.7, 0.3, 80);
    CHECK(func_heat(p, HeatPoint(0.9, 1.7, 0.3)).value == doctest::Approx(gfun).epsilon(1e-11));
}

TEST_CASE("poisson series against direct summation and symmetry") {
    const JacobiParams p(0.5, 1.5);
    const HeatPoint pt(0.8, 1.9, 0.7);
    const double direct = direct_poisson_series(p, 0.8, 1.9, 0.7, 120);
    CHECK(poisson_series(p, pt).value == doctest::Approx(direct).epsilon(1e-11));
    CHECK(poisson_series(p, HeatPoint(1.9, 0.8, 0.7)).value ==
          doctest::Approx(poisson_series(p, pt).value).epsilon(1e-15));
    CHECK_THROWS_AS(poisson_series(p, HeatPoint(0.8, 1.9, -0.2)), Error);

    // dominant large-t behavior: H ~ e^{-t(a+b+1)/2} P0(th) P0(ph)
    for (auto& pp : kPairs) {
        const double c = 0.5 * (pp.sum() + 1.0);
        const double t = 30.0;
        const double p0sq = std::exp((pp.sum() + 1.0) * std::log(2.0) -
                                     specfun::log_jacobi_norm(pp, 0));
        const double lead = std::exp(-t * c) * p0sq;
        const double v = poisson_series(pp, HeatPoint(1.1, 2.0, t)).value;
        CHECK(v == doctest::Approx(lead).epsilon(1e-8));
    }
}

TEST_CASE("poisson integral representation agrees with the series") {
    for (auto& p : kPairs) {
        for (double t : {0.05, 0.3, 1.5}) {
            for (double th : {0.5, 1.6, 2.7}) {
                for (double ph : {0.9, 2.2}) {
                    const HeatPoint pt(th, ph, t);
                    const double s = poisson_series(p, pt, {2000000, 1e-12}).value;
                    const double i = poisson_integral(p, pt);
                    CHECK(i == doctest::Approx(s).epsilon(1e-7));
                }
            }
        }
    }
    // four-atom closed arithmetic at (-1/2,-1/2)
    const JacobiParams ch(-0.5, -0.5);
    const HeatPoint pt(0.7, 1.8, 0.4);
    const double base = std::cosh(0.2) - 1.0;
    const double ss = std::sin(0.35) * std::sin(0.9), cc = std::cos(0.35) * std::cos(0.9);
    double atoms = 0.0;
    for (double u : {-1.0, 1.0})
        for (double v : {-1.0, 1.0}) atoms += 0.25 / (base + 1.0 - u * ss - v * cc);
    const double expect = std::sinh(0.2) * atoms / kPi;
    CHECK(poisson_integral(ch, pt) == doctest::Approx(expect).epsilon(1e-12));

    // monotone decay in t at an on-diagonal point (diagnostic, not a theorem)
    const JacobiParams leg(0.0, 0.0);
    double prev = poisson_integral(leg, HeatPoint(1.2, 1.2, 0.1));
    for (double t : {0.3, 0.8, 2.0}) {
        const double cur = poisson_integral(leg, HeatPoint(1.2, 1.2, t));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("reduction identity reproduces the series path") {
    std::mt19937_64 rng(811);
    std::uniform_real_distribution<double> uang(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    for (auto& p : kPairs) {
        for (int i = 0; i < 6; ++i) {
            const double th = uang(rng), ph = uang(rng);
            const double t = std::pow(10.0, -1.7 * ut(rng));  // [0.02, 1]
            const HeatPoint pt(th, ph, t);
            const double series = heat_series(p, pt.x(), pt.y(), t, {2000000, 1e-13}).value;
            const double red = reduction_heat(p, pt, {2000000, 1e-13}).value;
            const double floor = 50.0 * series_noise_floor(p, pt.x(), pt.y(), t);
            CHECK(std::abs(red - series) <=
                  1e-6 * std::max(std::abs(series), std::abs(red)) + floor);
        }
    }
    // theta=phi=0 kills the u-slot: only the cosine integral remains
    const JacobiParams p(0.5, 1.5);
    const double at0 = reduction_heat(p, HeatPoint(0.0, 0.0, 0.3)).value;
    CHECK(at0 == doctest::Approx(heat_series(p, 1.0, 1.0, 0.3).value).epsilon(1e-7));
    CHECK_THROWS_AS(reduction_heat(JacobiParams(-0.7, 0.0), HeatPoint(1, 1, 0.5)), Error);
}

TEST_CASE("sphere transference at N = 1") {
    // G_t^{-1/2}(x, 1) equals twice the circle heat kernel
    const JacobiParams ch(-0.5, -0.5);
    for (double t : {0.01, 0.1, 1.0}) {
        for (int k = 0; k <= 24; ++k) {
            const double x = -1.0 + 2.0 * k / 24.0;
            const double lhs = heat_series(ch, x, 1.0, t, {2000000, 1e-13}).value;
            CHECK(std::abs(lhs - sphere_s1_kernel(x, t)) <= 1e-10);
        }
    }
    // x = 1, large t: limit 1/pi = 1/h_0
    CHECK(sphere_s1_kernel(1.0, 50.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
}

TEST_CASE("laguerre kernel closed form") {
    // symmetry
    CHECK(laguerre_kernel(0.7, 0.4, 1.3, 0.2) ==
          doctest::Approx(laguerre_kernel(0.7, 1.3, 0.4, 0.2)).epsilon(1e-14));
    // small-argument regime of the Bessel factor
    for (double alpha : {0.0, 0.7, 2.3}) {
        const double t = 1.0, x = 1e-3, y = 5e-4;
        const double z = x * y / (2.0 * std::sinh(t));
        REQUIRE(z < 1e-3);
        const double lead = (1.0 / (2.0 * std::sinh(t))) *
                            std::exp(-0.25 * (1.0 / std::tanh(t)) * (x * x + y * y)) *
                            std::exp(-alpha * std::log(2.0 * std::sinh(t)) -
                                     alpha * std::log(2.0) - specfun::log_gamma(alpha + 1.0));
        CHECK(laguerre_kernel(alpha, x, y, t) == doctest::Approx(lead).epsilon(1e-6));
    }
    // comparability window: K / [(t+xy)^{-a-1/2} t^{-1/2} e^{-c(x-y)^2/t}]
    // bounded above and below for a fitted c
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> ux(0.05, 3.0 * kPi / 4.0);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    for (double alpha : {0.0, 0.7, 2.3}) {
        double lo = 1e300, hi = 0.0;
        const double c = 0.25;  // the Gaussian heart of the Bessel asymptotics
        for (int i = 0; i < 400; ++i) {
            const double x = ux(rng), y = ux(rng);
            const double t = 0.003 + 0.997 * ut(rng);
            const double envelope = std::pow(t + x * y, -alpha - 0.5) / std::sqrt(t) *
                                    std::exp(-c * (x - y) * (x - y) / t);
            const double r = laguerre_kernel(alpha, x, y, t) / envelope;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        CHECK(lo > 1e-3);
        CHECK(hi < 1e3);
    }
    CHECK_THROWS_AS(laguerre_kernel(-1.5, 1, 1, 1), Error);
    CHECK_THROWS_AS(laguerre_kernel(0.0, -1.0, 1, 1), Error);
}

TEST_CASE("mass conservation under the orthogonality measure") {
    for (auto& p : std::vector<JacobiParams>{{-0.5, -0.5}, {0.0, 0.0}, {0.5, 1.5},
                                             {2.3, 0.7}, {-0.9, 0.4}}) {
        auto rule = quadrature::rho_rule(p.alpha, p.beta, 128);
        for (double t : {0.01, 0.1, 1.0}) {
            for (double x : {-0.9, 0.0, 0.9}) {
                SeriesTable table(plan_heat_series(p, t, {2000000, 1e-12}),
                                  [&] {
                                      std::vector<double> xs{x};
                                      xs.insert(xs.end(), rule.nodes.begin(), rule.nodes.end());
                                      return xs;
                                  }());
                double mass = 0.0;
                for (std::size_t j = 0; j < rule.nodes.size(); ++j)
                    mass += rule.weights[j] * table.at(0, j + 1).value;
                CHECK(std::abs(mass - 1.0) <= 1e-8);
            }
        }
    }
}

TEST_CASE("Chapman-Kolmogorov composition") {
    auto compose = [](const JacobiParams& p, double x, double y, double t) {
        auto rule = quadrature::rho_rule(p.alpha, p.beta, 256);
        std::vector<double> xs{x, y};
        xs.insert(xs.end(), rule.nodes.begin(), rule.nodes.end());
        SeriesTable table(plan_heat_series(p, t, {2000000, 1e-12}), xs);
        double acc = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            acc += rule.weights[j] * table.at(0, j + 2).value * table.at(1, j + 2).value;
        return acc;
    };
    for (auto& p : kPairs) {
        for (double t : {0.05, 0.2}) {
            for (auto xy : {std::pair{0.2, -0.5}, std::pair{-0.9, 0.9}}) {
                const double lhs = compose(p, xy.first, xy.second, t);
                const double rhs = heat_series(p, xy.first, xy.second, 2.0 * t).value;
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
            }
        }
    }
    // oracle-composed cross-check at (-1/2,-1/2)
    const JacobiParams ch(-0.5, -0.5);
    const double lhs = compose(ch, std::cos(0.6), std::cos(2.0), 0.1);
    const double oracle =
        dirichlet_neumann_oracle(ch, HeatPoint(0.6, 2.0, 0.2));  // calG = G here
    CHECK(lhs == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("certified positivity where the series is resolvable") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    for (auto& p : kPairs) {
        for (int i = 0; i < 60; ++i) {
            const double x = ux(rng), y = ux(rng);
            const double t = std::pow(10.0, -2.0 * ut(rng));
            auto v = heat_series(p, x, y, t);
            const double floor = 100.0 * series_noise_floor(p, x, y, t);
            if (v.value > floor) {
                CHECK(v.certified);
                CHECK(v.value - v.tail_bound > 0.0);
            }
        }
    }
}

TEST_CASE("table evaluation is bit-identical to pointwise evaluation") {
    const JacobiParams p(0.5, 1.5);
    std::vector<double> xs{-0.8, -0.1, 0.33, 0.97};
    SeriesTable table = heat_table(p, xs, 0.07, {});
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            CHECK(table.at(i, j).value == heat_series(p, xs[i], xs[j], 0.07).value);
}
