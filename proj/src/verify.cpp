// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace jacobiheat::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

using envelopes::EnvelopeFamily;
using envelopes::FitOptions;
using envelopes::FitResult;
using kernels::KernelValue;
using kernels::SeriesTable;
using kernels::SeriesTruncation;

// engine-bit uniform; uniform_real_distribution is implementation-defined
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::vector<double> angle_grid(int steps) {
    std::vector<double> th(steps + 1);
    for (int k = 0; k <= steps; ++k) th[k] = kPi * k / steps;
    return th;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k)
        out[k] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
    return out;
}

std::vector<double> cosines(const std::vector<double>& thetas) {
    std::vector<double> xs(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) xs[i] = std::cos(thetas[i]);
    return xs;
}

// rounding-noise scale of a table entry: ulp * sqrt of the diagonal values,
// which sum without cancellation
double table_noise(const SeriesTable& tb, std::size_t i, std::size_t j) {
    const double gi = std::max(tb.at(i, i).value, 1e-300);
    const double gj = std::max(tb.at(j, j).value, 1e-300);
    return 1.1e-15 * std::sqrt(gi * gj);
}

double pref_trig(const JacobiParams& p, double t) {
    const double c = 0.5 * (p.sum() + 1.0);
    return std::exp((p.sum() + 1.0) * kLog2 - t * c * c);
}

// function-setting weight (sin sin)^(a+1/2) (cos cos)^(b+1/2) at a point
double func_weight(const JacobiParams& p, double th, double ph) {
    auto pw = [](double base, double e) {
        if (base > 0.0) return std::pow(base, e);
        return e > 0.0 ? 0.0 : 1.0;
    };
    return pw(std::sin(0.5 * th) * std::sin(0.5 * ph), p.alpha + 0.5) *
           pw(std::cos(0.5 * th) * std::cos(0.5 * ph), p.beta + 0.5);
}

CheckResult make_result(const std::string& name, const std::string& claim,
                        std::optional<JacobiParams> params, double worst, double threshold) {
    CheckResult r;
    r.check_name = name;
    r.claim = claim;
    r.params = params;
    r.worst_metric = worst;
    r.threshold = threshold;
    r.pass = worst <= threshold;
    return r;
}

struct Claims {
    static constexpr const char* mass = "the heat semigroup preserves total mass";
    static constexpr const char* semigroup =
        "two half-time kernels compose to the full-time kernel";
    static constexpr const char* reduction =
        "the kernel equals the endpoint-reduction integral of the equal-parameter kernel";
    static constexpr const char* sphere =
        "the equal-parameter kernel at -1/2 is twice the circle heat kernel";
    static constexpr const char* comparison =
        "raising type parameters never increases the weighted kernel beyond the stated factor";
    static constexpr const char* envelope =
        "the kernel admits a two-sided Gaussian envelope with a moderate constant";
    static constexpr const char* endpoint =
        "the endpoint kernel is t^-(lambda+1) exp(-c theta^2/t) two-sidedly";
    static constexpr const char* bessel_laplace =
        "the exponential integral against the symmetric beta measure has the closed-form scale";
    static constexpr const char* iteration =
        "the fitted endpoint envelope reproduces itself through one reduction step";
    static constexpr const char* pi_integral =
        "the reciprocal-power integral against the symmetric beta measure has the closed-form "
        "scale";
    static constexpr const char* poisson =
        "the Poisson kernel matches its printed envelope and large-time decay";
    static constexpr const char* poisson_consistency =
        "the Poisson series and its exact integral representation agree";
    static constexpr const char* kernel_relation =
        "the three kernel normalizations are related by the stated prefactors";
    static constexpr const char* rough = "the kernel is bounded by a pure power of 1/t";
    static constexpr const char* large_time =
        "the kernel converges to the reciprocal zero-mode norm as t grows";
};

}  // namespace

std::vector<JacobiParams> default_params() {
    return {JacobiParams(-0.5, -0.5), JacobiParams(0.0, 0.0), JacobiParams(0.5, 1.5),
            JacobiParams(2.3, 0.7)};
}

CheckResult check_mass(const JacobiParams& p, const VerifyOptions& opts) {
    const int degree = opts.fast ? 64 : 128;
    const auto rule = quadrature::rho_rule(p.alpha, p.beta, degree);
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    for (double t : {0.01, 0.1, 1.0}) {
        for (double x : {-0.9, 0.0, 0.9}) {
            std::vector<double> xs{x};
            xs.insert(xs.end(), rule.nodes.begin(), rule.nodes.end());
            SeriesTable table(kernels::plan_heat_series(p, t, {2000000, 1e-12}), xs);
            double mass = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j)
                mass += rule.weights[j] * table.at(0, j + 1).value;
            const double dev = std::abs(mass - 1.0);
            if (dev > worst) {
                worst = dev;
                worst_pt = HeatPoint(std::acos(x), 0.0, t);
            }
        }
    }
    auto r = make_result("mass", Claims::mass, p, worst, 1e-8);
    r.worst_point = worst_pt;
    r.details.emplace_back("quadrature_degree", degree);
    return r;
}

CheckResult check_semigroup(const JacobiParams& p, const VerifyOptions& opts) {
    const int degree = opts.fast ? 128 : 256;
    const auto rule = quadrature::rho_rule(p.alpha, p.beta, degree);
    const double xy[3][2] = {{0.2, -0.5}, {-0.9, 0.9}, {0.0, 0.7}};
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    double oracle_residual = 0.0;
    for (double t : {0.05, 0.1, 0.5}) {
        // one table serves all pairs at this t
        std::vector<double> xs;
        for (auto& q : xy) {
            xs.push_back(q[0]);
            xs.push_back(q[1]);
        }
        xs.insert(xs.end(), rule.nodes.begin(), rule.nodes.end());
        SeriesTable half(kernels::plan_heat_series(p, t, {2000000, 1e-12}), xs);
        SeriesTable full(kernels::plan_heat_series(p, 2.0 * t, {2000000, 1e-12}), xs);
        for (int k = 0; k < 3; ++k) {
            double acc = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j)
                acc += rule.weights[j] * half.at(2 * k, j + 6).value *
                       half.at(2 * k + 1, j + 6).value;
            const double ref = full.at(2 * k, 2 * k + 1).value;
            const double res = std::abs(acc - ref) / std::abs(ref);
            if (res > worst) {
                worst = res;
                worst_pt = HeatPoint(std::acos(xy[k][0]), std::acos(xy[k][1]), 2.0 * t);
            }
            if (p.alpha == -0.5 && p.beta == -0.5) {
                const double ora = kernels::dirichlet_neumann_oracle(
                    p, HeatPoint(std::acos(xy[k][0]), std::acos(xy[k][1]), 2.0 * t));
                oracle_residual = std::max(oracle_residual, std::abs(acc - ora) / std::abs(ora));
            }
        }
    }
    auto r = make_result("semigroup", Claims::semigroup, p, worst, 1e-6);
    r.worst_point = worst_pt;
    if (p.alpha == -0.5 && p.beta == -0.5)
        r.details.emplace_back("oracle_composition_residual", oracle_residual);
    return r;
}

CheckResult check_reduction(const JacobiParams& p, std::uint64_t seed,
                            const VerifyOptions& opts) {
    std::mt19937_64 rng(seed ^ 0xabcd1234u);
    const int draws = opts.fast ? 4 : 10;
    double worst = 0.0;
    double worst_rel = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    for (int i = 0; i < draws; ++i) {
        const double th = uniform(rng, 0.0, kPi);
        const double ph = uniform(rng, 0.0, kPi);
        const double t = std::pow(10.0, uniform(rng, -2.0, 0.0));
        const HeatPoint pt(th, ph, t);
        const double ser = kernels::heat_series(p, pt.x(), pt.y(), t, {2000000, 1e-13}).value;
        const double red = kernels::reduction_heat(p, pt, {2000000, 1e-13}).value;
        const double floor = 50.0 * kernels::series_noise_floor(p, pt.x(), pt.y(), t);
        const double allowance = 1e-6 * std::max(std::abs(ser), std::abs(red)) + floor;
        const double metric = std::abs(red - ser) / allowance;
        if (metric > worst) {
            worst = metric;
            worst_pt = pt;
            worst_rel = std::abs(red - ser) / std::max(std::abs(ser), 1e-300);
        }
    }
    auto r = make_result("reduction", Claims::reduction, p, worst, 1.0);
    r.worst_point = worst_pt;
    r.details.emplace_back("worst_raw_relative", worst_rel);
    r.details.emplace_back("draws", draws);
    return r;
}

CheckResult check_sphere_transfer(const VerifyOptions& opts) {
    const JacobiParams ch(-0.5, -0.5);
    const int npts = opts.fast ? 9 : 25;
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    for (double t : {0.01, 0.1, 1.0}) {
        std::vector<double> xs(npts);
        for (int k = 0; k < npts; ++k) xs[k] = -1.0 + 2.0 * k / (npts - 1);
        xs.push_back(1.0);
        SeriesTable table(kernels::plan_heat_series(ch, t, {2000000, 1e-13}), xs);
        for (int k = 0; k < npts; ++k) {
            const double dev =
                std::abs(table.at(k, npts).value - kernels::sphere_s1_kernel(xs[k], t));
            if (dev > worst) {
                worst = dev;
                worst_pt = HeatPoint(std::acos(xs[k]), 0.0, t);
            }
        }
    }
    auto r = make_result("sphere_transfer", Claims::sphere, ch, worst, 1e-10);
    r.worst_point = worst_pt;
    return r;
}

CheckResult check_comparison(const JacobiParams& p, const VerifyOptions& opts) {
    const int steps = opts.fast ? 12 : 48;
    const auto thetas = angle_grid(steps);
    const auto xs = cosines(thetas);
    const auto ts = opts.fast ? std::vector<double>{0.01, 0.1, 1.0}
                              : log_spaced(1e-3, 1.0, 25);
    const double shifts[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    int combos_run = 0;

    for (auto& sh : shifts) {
        const double eps = sh[0], del = sh[1];
        const bool admissible = (eps == 0.0 || p.alpha >= -0.5 * eps) &&
                                (del == 0.0 || p.beta >= -0.5 * del);
        if (!admissible) continue;
        ++combos_run;
        const JacobiParams ps(p.alpha + eps, p.beta + del);
        const double rate = 0.5 * (eps + del) * (p.sum() + 1.0 + 0.5 * (eps + del));
        for (double t : ts) {
            SeriesTable base(kernels::plan_heat_series(p, t, {2000000, 1e-12}), xs);
            SeriesTable shifted(kernels::plan_heat_series(ps, t, {2000000, 1e-12}), xs);
            const double factor = std::exp(rate * t);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double fi = envelopes::comparison_factor(eps, del, xs[i]);
                for (std::size_t j = i; j < xs.size(); ++j) {
                    const double lhs =
                        fi * envelopes::comparison_factor(eps, del, xs[j]) *
                        shifted.at(i, j).value;
                    const double rhs = factor * base.at(i, j).value;
                    const double slack = 1e-9 * std::max({lhs, rhs, 0.0}) +
                                         4.0 * (table_noise(base, i, j) +
                                                table_noise(shifted, i, j));
                    const double metric = (lhs - rhs) / slack;
                    if (metric > worst) {
                        worst = metric;
                        worst_pt = HeatPoint(thetas[i], thetas[j], t);
                    }
                }
            }
        }
    }

    // function-setting monotonicity in each type parameter (nonnegative range)
    double worst_mono = -1e300;
    if (p.alpha >= 0.0 && p.beta >= 0.0) {
        for (double eps : {0.5, 1.0}) {
            for (int dir = 0; dir < 2; ++dir) {
                const JacobiParams ps(p.alpha + (dir == 0 ? eps : 0.0),
                                      p.beta + (dir == 1 ? eps : 0.0));
                for (double t : ts) {
                    SeriesTable base(kernels::plan_heat_series(p, t, {2000000, 1e-12}), xs);
                    SeriesTable shifted(kernels::plan_heat_series(ps, t, {2000000, 1e-12}), xs);
                    const double pb = pref_trig(p, t), pss = pref_trig(ps, t);
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                        for (std::size_t j = i; j < xs.size(); ++j) {
                            const double lhs = func_weight(ps, thetas[i], thetas[j]) * pss *
                                               shifted.at(i, j).value;
                            const double rhs = func_weight(p, thetas[i], thetas[j]) * pb *
                                               base.at(i, j).value;
                            const double slack =
                                1e-9 * std::max({lhs, rhs, 0.0}) +
                                4.0 * (table_noise(base, i, j) + table_noise(shifted, i, j));
                            worst_mono = std::max(worst_mono, (lhs - rhs) / slack);
                        }
                    }
                }
            }
        }
        worst = std::max(worst, worst_mono);
    }

    auto r = make_result("comparison", Claims::comparison, p, worst, 1.0);
    r.worst_point = worst_pt;
    r.details.emplace_back("shift_combinations_run", combos_run);
    if (p.alpha >= 0.0 && p.beta >= 0.0)
        r.details.emplace_back("monotonicity_worst", worst_mono);
    return r;
}

namespace {

// heat-kernel fit on an angle x angle x t grid backed by per-t tables
FitResult envelope_fit_on_grid(const JacobiParams& p, const std::vector<double>& thetas,
                               const std::vector<double>& ts, const EnvelopeFamily& family,
                               double cap) {
    const auto xs = cosines(thetas);
    std::vector<HeatPoint> points;
    std::vector<KernelValue> values;
    std::vector<double> noises;
    const std::size_t na = thetas.size();
    points.reserve(na * na * ts.size());
    for (double t : ts) {
        SeriesTable table(kernels::plan_heat_series(p, t, {2000000, 1e-12}), xs);
        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t j = 0; j < na; ++j) {
                points.emplace_back(thetas[i], thetas[j], t);
                values.push_back(table.at(i, j));
                noises.push_back(table_noise(table, i, j));
            }
        }
    }
    FitOptions fo;
    fo.feasibility_cap = cap;
    return envelopes::fit_precomputed(p, points, values, noises, family, fo);
}

}  // namespace

CheckResult check_envelope(const JacobiParams& p, const VerifyOptions& opts) {
    const auto thetas = angle_grid(opts.fast ? 12 : 48);
    const auto ts = log_spaced(1e-3, 1.0, opts.fast ? 7 : 25);
    CheckResult r;
    try {
        const FitResult fit = envelope_fit_on_grid(p, thetas, ts,
                                                   envelopes::theorem_envelope_family(p), 1e6);
        double worst = fit.constants.C;
        bool sharp_ok = true;
        if (p.alpha == -0.5 && p.beta == -0.5) {
            sharp_ok = fit.constants.c2 <= 0.25 && fit.constants.c1 >= 0.25;
        }
        r = make_result("envelope", Claims::envelope, p, worst, 1e3);
        r.pass = r.pass && sharp_ok;
        r.worst_point = fit.worst_upper;
        r.details.emplace_back("C", fit.constants.C);
        r.details.emplace_back("c1", fit.constants.c1);
        r.details.emplace_back("c2", fit.constants.c2);
        r.details.emplace_back("points_used", static_cast<double>(fit.points_used));
        r.details.emplace_back("points_skipped", static_cast<double>(fit.points_skipped));
    } catch (const Error& e) {
        r = make_result("envelope", Claims::envelope, p, 1e300, 1e3);
        r.worst_note = e.what();
    }
    return r;
}

CheckResult check_endpoint(const VerifyOptions& opts) {
    const double lambdas[4] = {-0.5, 0.0, 0.5, 1.0};
    const int nth = opts.fast ? 9 : 33;
    const auto ts = log_spaced(1e-3, 1.0, opts.fast ? 5 : 13);
    double worst = 0.0;
    CheckResult r;
    r.details.reserve(4);
    for (double lam : lambdas) {
        const JacobiParams pl(lam, lam);
        std::vector<double> thetas(nth);
        for (int k = 0; k < nth; ++k) thetas[k] = kPi * k / (nth - 1);
        auto xs = cosines(thetas);
        xs.push_back(1.0);
        std::vector<HeatPoint> points;
        std::vector<KernelValue> values;
        std::vector<double> noises;
        for (double t : ts) {
            SeriesTable table(kernels::plan_heat_series(pl, t, {2000000, 1e-12}), xs);
            for (int k = 0; k < nth; ++k) {
                points.emplace_back(thetas[k], 0.0, t);
                values.push_back(table.at(k, nth));
                noises.push_back(table_noise(table, k, nth));
            }
        }
        const FitResult fit = envelopes::fit_precomputed(
            pl, points, values, noises, envelopes::endpoint_envelope_family(lam), {});
        worst = std::max(worst, fit.constants.C);
        std::ostringstream key;
        key << "C_lambda_" << lam;
        r.details.emplace_back(key.str(), fit.constants.C);
    }
    auto base = make_result("endpoint", Claims::endpoint, std::nullopt, worst, 1e3);
    base.details = std::move(r.details);
    return base;
}

CheckResult check_bessel_laplace(const VerifyOptions& opts) {
    (void)opts;
    double lo = 1e300, hi = 0.0;
    for (double nu : {-0.5, 0.0, 0.7, 2.3}) {
        for (double z : {0.0, 1.0, 10.0, 1e2, 1e3, 1e4}) {
            double integral;  // of e^{z(s-1)} against Pi_nu
            if (nu == -0.5) {
                integral = 0.5 * (1.0 + std::exp(-2.0 * z));
            } else {
                auto eval = [&](int m) {
                    auto rule = quadrature::cached_gauss_jacobi_rule(nu, m);
                    return quadrature::integrate(*rule, [&](double s) {
                        return std::exp(z * (s - 1.0));
                    });
                };
                integral = quadrature::adaptive_doubling(eval, 1e-9, 64, 4096).value;
            }
            const double ratio = integral * std::exp((nu + 0.5) * std::log1p(z));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    // frozen bracket [0.2, 12]; observed range is well inside it
    const double metric = std::max(hi / 12.0, 0.2 / lo);
    auto r = make_result("bessel_laplace", Claims::bessel_laplace, std::nullopt, metric, 1.0);
    r.details.emplace_back("ratio_min", lo);
    r.details.emplace_back("ratio_max", hi);
    r.details.emplace_back("bracket_lo", 0.2);
    r.details.emplace_back("bracket_hi", 12.0);
    return r;
}

CheckResult check_iteration(const VerifyOptions& opts) {
    const double lam = 1.5, lam_next = 0.5;  // one halving step of the parameter
    const JacobiParams pl(lam, lam);
    const JacobiParams pn(lam_next, lam_next);
    const int nth = opts.fast ? 13 : 25;
    const auto ts = log_spaced(4e-3, 1.0, opts.fast ? 5 : 9);
    std::vector<double> thetas(nth);
    for (int k = 0; k < nth; ++k) thetas[k] = kPi * k / (nth - 1);

    auto fit_endpoint = [&](const JacobiParams& pp, double lambda,
                            const std::function<double(const HeatPoint&)>& eval) {
        std::vector<HeatPoint> points;
        std::vector<KernelValue> values;
        for (double t : ts)
            for (int k = 0; k < nth; ++k) {
                points.emplace_back(thetas[k], 0.0, t);
                values.push_back({eval(points.back()), 0.0, 0, true});
            }
        return envelopes::fit_precomputed(pp, points, values, {},
                                          envelopes::endpoint_envelope_family_algebraic(lambda),
                                          {});
    };

    // two-sided endpoint constants at lambda, algebraic gap (1 - x)/t
    const FitResult fit_lam = fit_endpoint(pl, lam, [&](const HeatPoint& pt) {
        return kernels::heat_series(pl, pt.x(), 1.0, pt.t, {2000000, 1e-13}).value;
    });

    // push the fitted envelope through one reduction step: at the endpoint
    // the first integration slot collapses and only the cosine slot remains
    const double c_red = std::exp(0.5 * std::log(kPi) + specfun::log_gamma(2.0 * lam_next + 1.5) -
                                  (2.0 * lam_next + 1.0) * kLog2 -
                                  2.0 * specfun::log_gamma(lam_next + 1.0));
    auto predictor = [&](const HeatPoint& pt, double c) {
        auto eval = [&](int m) {
            auto rule = quadrature::cached_gauss_jacobi_rule(lam_next, m);
            return quadrature::integrate(*rule, [&](double v) {
                return std::exp(-4.0 * c * (1.0 - v * std::cos(0.5 * pt.theta)) / pt.t);
            });
        };
        const double integral = quadrature::adaptive_doubling(eval, 1e-8, 64, 2048).value;
        return c_red * std::pow(0.25 * pt.t, -(lam + 1.0)) * integral;
    };

    // the true kernel at the halved parameter must sit inside the predicted
    // two-sided band, up to an off-grid interpolation margin
    const double margin = 4.0;
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    for (double t : ts) {
        for (int k = 0; k < nth; ++k) {
            const HeatPoint pt(thetas[k], 0.0, t);
            const double truth =
                kernels::heat_series(pn, pt.x(), 1.0, t, {2000000, 1e-13}).value;
            const double up = margin * fit_lam.constants.C * predictor(pt, fit_lam.constants.c2);
            const double dn = predictor(pt, fit_lam.constants.c1) /
                              (margin * fit_lam.constants.C);
            const double floor = 1e-12 * std::pow(t, -(lam_next + 1.0));
            if (truth < floor) continue;  // beneath evaluation noise
            const double m = std::max(truth / up, dn / std::max(truth, 1e-300));
            if (m > worst) {
                worst = m;
                worst_pt = pt;
            }
        }
    }

    // independent feasibility: the predictor itself fits the halved-parameter
    // endpoint shape with a moderate constant
    const FitResult fit_pred = fit_endpoint(pn, lam_next, [&](const HeatPoint& pt) {
        return predictor(pt, 0.5 * (fit_lam.constants.c1 + fit_lam.constants.c2));
    });

    auto r = make_result("iteration", Claims::iteration, std::nullopt, worst, 1.0);
    r.pass = r.pass && fit_pred.constants.C <= 1e3;
    r.worst_point = worst_pt;
    r.details.emplace_back("C_source", fit_lam.constants.C);
    r.details.emplace_back("c1_source", fit_lam.constants.c1);
    r.details.emplace_back("c2_source", fit_lam.constants.c2);
    r.details.emplace_back("C_predictor_refit", fit_pred.constants.C);
    return r;
}

CheckResult check_pi_integral_bracket(std::uint64_t seed, const VerifyOptions& opts) {
    std::mt19937_64 rng(seed ^ 0x5a5a5a5au);
    const int draws = opts.fast ? 40 : 200;
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < draws; ++i) {
        // admissible shape parameters: kappa >= 0, gamma > nu + 1/2 >= 0
        const double nu = (i % 10 == 9) ? -0.5 : uniform(rng, -0.5, 2.5);
        const double kap = uniform(rng, 0.0, 2.0);
        const double gam = nu + 0.5 + std::pow(10.0, uniform(rng, -1.0, 0.4));
        const double B = std::pow(10.0, uniform(rng, -1.0, 0.4));
        const double A = B + std::pow(10.0, uniform(rng, -2.5, 0.4));
        const double D = A + std::pow(10.0, uniform(rng, -2.5, 0.4));
        double integral;
        if (nu == -0.5) {
            integral = 0.5 * (std::pow(D - B, -kap) * std::pow(A - B, -gam) +
                              std::pow(D + B, -kap) * std::pow(A + B, -gam));
        } else {
            auto eval = [&](int m) {
                auto rule = quadrature::cached_gauss_jacobi_rule(nu, m);
                return quadrature::integrate(*rule, [&](double s) {
                    return std::pow(D - B * s, -kap) * std::pow(A - B * s, -gam);
                });
            };
            integral = quadrature::adaptive_doubling(eval, 1e-7, 128, 2048).value;
        }
        const double rhs = std::pow(D - B, -kap) * std::pow(A, -(nu + 0.5)) *
                           std::pow(A - B, -(gam - nu - 0.5));
        const double ratio = integral / rhs;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    // frozen bracket [0.025, 20]
    const double metric = std::max(hi / 20.0, 0.025 / lo);
    auto r = make_result("pi_integral_bracket", Claims::pi_integral, std::nullopt, metric, 1.0);
    r.details.emplace_back("ratio_min", lo);
    r.details.emplace_back("ratio_max", hi);
    r.details.emplace_back("bracket_lo", 0.025);
    r.details.emplace_back("bracket_hi", 20.0);
    r.details.emplace_back("draws", draws);
    return r;
}

CheckResult check_poisson(const JacobiParams& p, const VerifyOptions& opts) {
    const auto thetas = angle_grid(opts.fast ? 12 : 48);
    const auto ts = log_spaced(1e-3, 1.0, opts.fast ? 7 : 25);
    double hi = 0.0, lo = 1e300;
    HeatPoint worst_pt(0, 0, 1);
    long long integral_fallbacks = 0;
    for (double t : ts) {
        SeriesTable table(kernels::plan_poisson_series(p, t, {4000000, 1e-12}), cosines(thetas));
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            for (std::size_t j = i; j < thetas.size(); ++j) {
                const HeatPoint pt(thetas[i], thetas[j], t);
                double val = table.at(i, j).value;
                // where the oscillating series is buried under rounding, the
                // positive integral representation resolves the value
                if (val < 100.0 * table_noise(table, i, j)) {
                    val = kernels::poisson_integral(p, pt);
                    ++integral_fallbacks;
                }
                const double ratio = val / envelopes::poisson_envelope(p, pt);
                if (ratio > hi) {
                    hi = ratio;
                    worst_pt = pt;
                }
                lo = std::min(lo, ratio);
            }
        }
    }
    // the printed envelope has no normalizing constant, so comparability is
    // measured by the symmetric constant: ratio/c0 in [1/C, C] for the best c0
    const double c_small = std::sqrt(hi / lo);

    // large-time factor: H e^{t (a+b+1)/2} stays within fixed bounds
    double big_hi = 0.0, big_lo = 1e300;
    const double c = 0.5 * (p.sum() + 1.0);
    const auto big_thetas = angle_grid(12);
    for (double t : {1.0, 2.5, 5.0, 10.0, 20.0}) {
        SeriesTable table(kernels::plan_poisson_series(p, t, {4000000, 1e-14}),
                          cosines(big_thetas));
        for (std::size_t i = 0; i < big_thetas.size(); ++i) {
            for (std::size_t j = i; j < big_thetas.size(); ++j) {
                const double v = table.at(i, j).value * std::exp(t * c);
                big_hi = std::max(big_hi, v);
                big_lo = std::min(big_lo, v);
            }
        }
    }
    const double c_large = std::max(big_hi, 1.0 / big_lo);

    auto r = make_result("poisson", Claims::poisson, p, std::max(c_small, c_large), 1e3);
    r.worst_point = worst_pt;
    r.details.emplace_back("envelope_ratio_max", hi);
    r.details.emplace_back("envelope_ratio_min", lo);
    r.details.emplace_back("large_time_factor_max", big_hi);
    r.details.emplace_back("large_time_factor_min", big_lo);
    r.details.emplace_back("integral_fallbacks", static_cast<double>(integral_fallbacks));
    return r;
}

CheckResult check_poisson_consistency(const JacobiParams& p, const VerifyOptions& opts) {
    const int steps = opts.fast ? 8 : 20;
    std::vector<double> thetas(steps);
    for (int k = 0; k < steps; ++k) thetas[k] = kPi * (k + 1) / (steps + 1);
    const auto ts = opts.fast ? std::vector<double>{0.05, 0.2, 1.0}
                              : std::vector<double>{0.01, 0.05, 0.2, 1.0, 5.0};
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    for (double t : ts) {
        SeriesTable table(kernels::plan_poisson_series(p, t, {4000000, 1e-12}), cosines(thetas));
        for (int i = 0; i < steps; ++i) {
            for (int j = i; j < steps; ++j) {
                const HeatPoint pt(thetas[i], thetas[j], t);
                const double ser = table.at(i, j).value;
                const double integ = kernels::poisson_integral(p, pt);
                const double allowance = 1e-6 * std::max(std::abs(ser), std::abs(integ)) +
                                         50.0 * table_noise(table, i, j);
                const double metric = std::abs(ser - integ) / allowance;
                if (metric > worst) {
                    worst = metric;
                    worst_pt = pt;
                }
            }
        }
    }
    auto r = make_result("poisson_consistency", Claims::poisson_consistency, p, worst, 1.0);
    r.worst_point = worst_pt;
    return r;
}

CheckResult check_kernel_relation(const JacobiParams& p, const VerifyOptions& opts) {
    const int steps = opts.fast ? 8 : 13;
    std::vector<double> thetas(steps);
    for (int k = 0; k < steps; ++k) thetas[k] = kPi * (k + 1) / (steps + 1);
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    const double c = 0.5 * (p.sum() + 1.0);
    for (double t : {0.05, 0.3, 1.0}) {
        // direct summations in the function setting, composed the other way
        const int nmax = static_cast<int>(std::ceil(std::sqrt(45.0 / t))) + 60;
        const int pmax = static_cast<int>(std::ceil(45.0 / t)) + 200;
        for (int i = 0; i < steps; ++i) {
            auto sx = specfun::jacobi_poly_seq(p, std::cos(thetas[i]), std::max(nmax, pmax));
            for (int j = i; j < steps; ++j) {
                auto sy = specfun::jacobi_poly_seq(p, std::cos(thetas[j]), std::max(nmax, pmax));
                const double w = func_weight(p, thetas[i], thetas[j]);
                double direct_g = 0.0, direct_h = 0.0;
                for (int n = 0; n <= std::max(nmax, pmax); ++n) {
                    const double basis = std::exp((p.sum() + 1.0) * kLog2 -
                                                  specfun::log_jacobi_norm(p, n)) *
                                         sx.values[n] * sy.values[n] * w;
                    if (n <= nmax) direct_g += std::exp(-t * sq(n + c)) * basis;
                    direct_h += std::exp(-t * std::abs(n + c)) * basis;
                }
                const HeatPoint pt(thetas[i], thetas[j], t);
                const double via_g = kernels::func_heat(p, pt, {2000000, 1e-13}).value;
                const double via_h =
                    w * kernels::poisson_series(p, pt, {4000000, 1e-13}).value;
                const double mg = std::abs(via_g - direct_g) /
                                  (1e-10 * std::max(std::abs(via_g), std::abs(direct_g)) +
                                   1e-13 * w / std::sqrt(t));
                const double mh = std::abs(via_h - direct_h) /
                                  (1e-10 * std::max(std::abs(via_h), std::abs(direct_h)) +
                                   1e-13 * w / t);
                const double metric = std::max(mg, mh);
                if (metric > worst) {
                    worst = metric;
                    worst_pt = pt;
                }
            }
        }
    }
    auto r = make_result("kernel_relation", Claims::kernel_relation, p, worst, 1.0);
    r.worst_point = worst_pt;
    return r;
}

CheckResult check_rough(const JacobiParams& p, const VerifyOptions& opts) {
    const auto thetas = angle_grid(opts.fast ? 12 : 48);
    const auto ts = log_spaced(1e-3, 1.0, opts.fast ? 7 : 25);
    const auto xs = cosines(thetas);
    double worst = 0.0;
    HeatPoint worst_pt(0, 0, 1);
    for (double t : ts) {
        SeriesTable table(kernels::plan_heat_series(p, t, {2000000, 1e-12}), xs);
        const double bound = envelopes::rough_bound(p, t);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = i; j < xs.size(); ++j) {
                const double v = table.at(i, j).value / bound;
                if (v > worst) {
                    worst = v;
                    worst_pt = HeatPoint(thetas[i], thetas[j], t);
                }
            }
        }
    }
    auto r = make_result("rough", Claims::rough, p, worst, 1e3);
    r.worst_point = worst_pt;
    return r;
}

CheckResult check_large_time(const JacobiParams& p, const VerifyOptions& opts) {
    (void)opts;
    const double inv_h0 = 1.0 / specfun::jacobi_norm(p, 0);
    const double xy[5][2] = {{0.3, -0.8}, {0.0, 0.5}, {-0.97, 0.2}, {0.9, 0.9}, {-0.4, -0.6}};
    double final_worst = 0.0, mono_worst = 0.0;
    for (auto& q : xy) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 6; ++k) {
            const double t = std::pow(2.0, k);
            const double dev =
                std::abs(kernels::heat_series(p, q[0], q[1], t, {2000000, 1e-14}).value - inv_h0);
            mono_worst = std::max(mono_worst, dev - prev * (1.0 + 1e-12));
            prev = dev;
        }
        final_worst = std::max(final_worst, prev);
    }
    auto r = make_result("large_time", Claims::large_time, p, final_worst, 1e-10);
    r.pass = r.pass && mono_worst <= 0.0;
    r.details.emplace_back("monotonicity_excess", mono_worst);
    return r;
}

const std::vector<CheckInfo>& check_registry() {
    static const std::vector<CheckInfo> reg = {
        {"mass", Claims::mass, true},
        {"semigroup", Claims::semigroup, true},
        {"reduction", Claims::reduction, true},
        {"sphere_transfer", Claims::sphere, false},
        {"comparison", Claims::comparison, true},
        {"envelope", Claims::envelope, true},
        {"endpoint", Claims::endpoint, false},
        {"bessel_laplace", Claims::bessel_laplace, false},
        {"iteration", Claims::iteration, false},
        {"pi_integral_bracket", Claims::pi_integral, false},
        {"poisson", Claims::poisson, true},
        {"poisson_consistency", Claims::poisson_consistency, true},
        {"kernel_relation", Claims::kernel_relation, true},
        {"rough", Claims::rough, true},
        {"large_time", Claims::large_time, true},
    };
    return reg;
}

std::vector<std::string> documented_check_names() {
    return {"mass",           "semigroup", "reduction", "sphere_transfer",
            "comparison",     "envelope",  "endpoint",  "bessel_laplace",
            "iteration",      "pi_integral_bracket",    "poisson",
            "poisson_consistency",         "kernel_relation",
            "rough",          "large_time"};
}

namespace {

CheckResult dispatch(const std::string& name, const JacobiParams& p, std::uint64_t seed,
                     const VerifyOptions& opts) {
    if (name == "mass") return check_mass(p, opts);
    if (name == "semigroup") return check_semigroup(p, opts);
    if (name == "reduction") return check_reduction(p, seed, opts);
    if (name == "sphere_transfer") return check_sphere_transfer(opts);
    if (name == "comparison") return check_comparison(p, opts);
    if (name == "envelope") return check_envelope(p, opts);
    if (name == "endpoint") return check_endpoint(opts);
    if (name == "bessel_laplace") return check_bessel_laplace(opts);
    if (name == "iteration") return check_iteration(opts);
    if (name == "pi_integral_bracket") return check_pi_integral_bracket(seed, opts);
    if (name == "poisson") return check_poisson(p, opts);
    if (name == "poisson_consistency") return check_poisson_consistency(p, opts);
    if (name == "kernel_relation") return check_kernel_relation(p, opts);
    if (name == "rough") return check_rough(p, opts);
    if (name == "large_time") return check_large_time(p, opts);
    throw_invalid("unknown check name: " + name);
}

}  // namespace

std::vector<CheckResult> run_checks(const std::vector<std::string>& names,
                                    const std::vector<JacobiParams>& params_list,
                                    std::uint64_t seed, const VerifyOptions& opts) {
    for (const auto& n : names) {
        bool known = false;
        for (const auto& info : check_registry()) known = known || info.name == n;
        if (!known) throw_invalid("unknown check name: " + n);
    }
    std::vector<CheckResult> out;
    if (params_list.empty()) return out;
    for (const auto& info : check_registry()) {
        if (std::find(names.begin(), names.end(), info.name) == names.end()) continue;
        if (info.per_params) {
            for (const auto& p : params_list) out.push_back(dispatch(info.name, p, seed, opts));
        } else {
            out.push_back(dispatch(info.name, params_list.front(), seed, opts));
        }
    }
    return out;
}

std::vector<CheckResult> run_all(const std::vector<JacobiParams>& params_list,
                                 std::uint64_t seed, const VerifyOptions& opts) {
    std::vector<std::string> names;
    for (const auto& info : check_registry()) names.push_back(info.name);
    return run_checks(names, params_list, seed, opts);
}

}  // namespace jacobiheat::verify
