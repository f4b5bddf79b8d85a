// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace jacobiheat::kernels {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

using quadrature::NodesView;
using quadrature::PiRule;
using specfun::log_binom_shifted;
using specfun::log_gamma;
using specfun::log_jacobi_norm;

// sup over m >= n of (m + p) / (m + r); both slopes are 1 so the fraction is
// monotone toward 1 and the sup sits at m = n or at the limit.
double sup_linfrac(double p, double r, double n) {
    if (p >= r) return (n + p) / (n + r);
    return 1.0;
}

// Upper bound for a_{m+1}/a_m, m >= n, of the degree-wise series majorant
// a_m = e^{-lam(m)} binom(m+q, m)^2 / h_m where lam increments by at least
// step(n) for m >= n. The polynomial part is capped factor by factor.
double tail_ratio_cap(const JacobiParams& p, double q, double n, double exp_step) {
    const double s = p.sum();
    const double f1 = sup_linfrac(1.0 + q, 1.0, n);
    const double f2 = sup_linfrac(1.0, p.alpha + 1.0, n);
    const double f3 = sup_linfrac(s + 1.0, p.beta + 1.0, n);
    const double f4 = sup_linfrac(0.5 * (s + 3.0), 0.5 * (s + 1.0), n);
    return std::exp(-exp_step) * f1 * f1 * f2 * f3 * f4;
}

// Incrementally maintained logs of h_n and binom(n+q, n), refreshed from the
// closed forms periodically so drift cannot accumulate over long sweeps.
struct LogTracker {
    const JacobiParams& p;
    double q;
    long long n = 0;
    double log_h;
    double log_b = 0.0;

    explicit LogTracker(const JacobiParams& pp, double qq)
        : p(pp), q(qq), log_h(log_jacobi_norm(pp, 0)) {}

    void advance() {
        if (n == 0) {
            log_h = log_jacobi_norm(p, 1);
        } else {
            log_h += std::log(specfun::jacobi_norm_ratio(p, n));
        }
        log_b += std::log((n + 1.0 + q) / (n + 1.0));
        ++n;
        if (n % 256 == 0) {
            log_h = log_jacobi_norm(p, n);
            log_b = log_binom_shifted(q, n);
        }
    }
};

enum class SeriesKind { heat, poisson };

SeriesPlan plan_series(const JacobiParams& p, double t, const SeriesTruncation& tr,
                       SeriesKind kind) {
    tr.validate();
    if (!(t > 0.0)) throw_invalid("series plan: t must be > 0");
    if (t < kTimeFloor)
        throw Error(Status::precision_floor,
                    "series evaluation refused: t is below the cost/precision floor 1e-6");
    const double s = p.sum();
    const double c = 0.5 * (s + 1.0);
    const double q = std::max({p.alpha, p.beta, -0.5});
    const bool certifiable = p.in_theorem_range();

    const auto log_eig = [&](double n) {
        return kind == SeriesKind::heat ? t * n * (n + s + 1.0) : t * std::abs(n + c);
    };
    const double norm_shift = kind == SeriesKind::heat ? 0.0 : (s + 1.0) * kLog2;
    // heat terms eventually shrink faster than 1/2 per step; the slowly
    // decaying Poisson terms only guarantee ratio e^{-t/2}
    const double ratio_goal = kind == SeriesKind::heat ? 0.5 : std::exp(-0.5 * t);
    const long long n_start =
        kind == SeriesKind::heat ? static_cast<long long>(std::ceil(8.0 / std::sqrt(t))) + 32 : 8;

    SeriesPlan plan{p, t, 0, std::numeric_limits<double>::infinity(), false, {}};
    plan.coefs.reserve(static_cast<std::size_t>(std::min<long long>(tr.max_terms, 4096)));

    LogTracker track(p, q);
    for (long long n = 0;; ++n) {
        plan.coefs.push_back(std::exp(-log_eig(static_cast<double>(n)) + norm_shift - track.log_h));
        const bool at_cap = n + 1 >= tr.max_terms;
        if (n + 1 >= n_start || at_cap) {
            // candidate cut: degrees 0..n kept, bound the rest by a geometric
            // series starting at the majorant of degree n+1; the exponent
            // step is smallest at the first dropped degree
            const double step = kind == SeriesKind::heat
                                    ? t * (2.0 * (n + 1.0) + 2.0 + s)  // lam(n+2)-lam(n+1)
                                    : t;
            const double r = tail_ratio_cap(p, q, static_cast<double>(n + 1), step);
            double la_next;
            {
                LogTracker peek = track;
                peek.advance();
                la_next = -log_eig(static_cast<double>(n + 1)) + norm_shift + 2.0 * peek.log_b -
                          peek.log_h;
            }
            if (r <= ratio_goal) {
                const double tail = std::exp(la_next) / (1.0 - r);
                if (tail <= tr.tail_tol || at_cap) {
                    plan.terms = n + 1;
                    plan.tail = tail;
                    plan.certified = certifiable && tail <= tr.tail_tol;
                    return plan;
                }
            } else if (at_cap) {
                plan.terms = n + 1;
                plan.tail = std::numeric_limits<double>::infinity();
                plan.certified = false;
                return plan;
            }
        }
        track.advance();
    }
}

}  // namespace

double HeatPoint::x() const { return std::cos(theta); }
double HeatPoint::y() const { return std::cos(phi); }

SeriesTable::SeriesTable(SeriesPlan plan, std::vector<double> args)
    : plan_(std::move(plan)), args_(std::move(args)) {
    const std::size_t n = static_cast<std::size_t>(plan_.terms);
    data_.resize(args_.size() * n);
    parallel_for(args_.size(), [&](std::size_t i) {
        if (!(std::abs(args_[i]) <= 1.0))
            throw_invalid("SeriesTable: arguments must lie in [-1, 1]");
        specfun::JacobiRecurrence rec(plan_.params, args_[i]);
        double* row = data_.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            row[k] = rec.current();
            rec.advance();
        }
    });
}

KernelValue SeriesTable::at(std::size_t i, std::size_t j) const {
    const std::size_t n = static_cast<std::size_t>(plan_.terms);
    const double* ri = data_.data() + i * n;
    const double* rj = data_.data() + j * n;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += plan_.coefs[k] * ri[k] * rj[k];
    return {acc, plan_.tail, plan_.terms, plan_.certified};
}

SeriesPlan plan_heat_series(const JacobiParams& p, double t, const SeriesTruncation& tr) {
    return plan_series(p, t, tr, SeriesKind::heat);
}

SeriesPlan plan_poisson_series(const JacobiParams& p, double t, const SeriesTruncation& tr) {
    return plan_series(p, t, tr, SeriesKind::poisson);
}

SeriesTable heat_table(const JacobiParams& p, const std::vector<double>& xs, double t,
                       const SeriesTruncation& tr) {
    return SeriesTable(plan_heat_series(p, t, tr), xs);
}

SeriesTable poisson_table(const JacobiParams& p, const std::vector<double>& thetas, double t,
                          const SeriesTruncation& tr) {
    std::vector<double> xs(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) xs[i] = std::cos(thetas[i]);
    return SeriesTable(plan_poisson_series(p, t, tr), xs);
}

KernelValue heat_series(const JacobiParams& p, double x, double y, double t,
                        const SeriesTruncation& tr) {
    if (!(std::abs(x) <= 1.0) || !(std::abs(y) <= 1.0))
        throw_invalid("heat_series: arguments must lie in [-1, 1]");
    SeriesTable table(plan_heat_series(p, t, tr), {x, y});
    return table.at(0, 1);
}

KernelValue trig_heat(const JacobiParams& p, const HeatPoint& pt, const SeriesTruncation& tr) {
    const double c = 0.5 * (p.sum() + 1.0);
    const double pref = std::exp((p.sum() + 1.0) * kLog2 - pt.t * c * c);
    KernelValue v = heat_series(p, pt.x(), pt.y(), pt.t, tr);
    v.value *= pref;
    v.tail_bound *= pref;
    return v;
}

namespace {

// (base)^expo with the boundary convention 0^0 = 1; a negative exponent at a
// vanishing base has no finite limit.
double pow_limit(double base, double expo) {
    if (base > 0.0) return std::pow(base, expo);
    if (base < 0.0) throw_invalid("pow_limit: negative base");
    if (expo > 0.0) return 0.0;
    if (expo == 0.0) return 1.0;
    throw_invalid("function-setting kernel diverges at the boundary for parameters below -1/2");
}

}  // namespace

KernelValue func_heat(const JacobiParams& p, const HeatPoint& pt, const SeriesTruncation& tr) {
    const double ea = p.alpha + 0.5, eb = p.beta + 0.5;
    const double pref = pow_limit(std::sin(0.5 * pt.theta), ea) *
                        pow_limit(std::sin(0.5 * pt.phi), ea) *
                        pow_limit(std::cos(0.5 * pt.theta), eb) *
                        pow_limit(std::cos(0.5 * pt.phi), eb);
    if (pref == 0.0) return {0.0, 0.0, 0, p.in_theorem_range()};
    KernelValue v = trig_heat(p, pt, tr);
    v.value *= pref;
    v.tail_bound *= pref;
    return v;
}

KernelValue poisson_series(const JacobiParams& p, const HeatPoint& pt,
                           const SeriesTruncation& tr) {
    SeriesTable table(plan_poisson_series(p, pt.t, tr), {pt.x(), pt.y()});
    return table.at(0, 1);
}

double poisson_integral(const JacobiParams& p, const HeatPoint& pt, double rel_tol) {
    if (!p.in_theorem_range())
        throw_invalid("poisson_integral: representation requires alpha, beta >= -1/2");
    const double s = p.sum();
    const double ss = std::sin(0.5 * pt.theta) * std::sin(0.5 * pt.phi);
    const double cc = std::cos(0.5 * pt.theta) * std::cos(0.5 * pt.phi);
    const double base = 2.0 * sq(std::sinh(0.25 * pt.t));  // cosh(t/2) - 1
    const double expo = -(s + 2.0);
    const double c_ab = std::exp(-(s + 1.0) * kLog2 - specfun::log_beta(p.alpha + 1.0, p.beta + 1.0));

    auto eval = [&](int m) {
        const PiRule ru = quadrature::pi_measure_rule(p.alpha, m);
        const PiRule rv = quadrature::pi_measure_rule(p.beta, m);
        const NodesView u = quadrature::view(ru);
        const NodesView v = quadrature::view(rv);
        double acc = 0.0;
        for (std::size_t i = 0; i < u.count; ++i) {
            const double us = u.nodes[i] * ss;
            double inner = 0.0;
            for (std::size_t j = 0; j < v.count; ++j) {
                const double q = 1.0 - us - v.nodes[j] * cc;
                inner += v.weights[j] * std::pow(base + q, expo);
            }
            acc += u.weights[i] * inner;
        }
        return acc;
    };
    const auto res = quadrature::adaptive_doubling(eval, rel_tol, 64, 4096);
    return c_ab * std::sinh(0.5 * pt.t) * res.value;
}

KernelValue reduction_heat(const JacobiParams& p, const HeatPoint& pt,
                           const SeriesTruncation& tr) {
    if (!p.in_theorem_range())
        throw_invalid("reduction_heat: identity requires alpha, beta >= -1/2");
    const double s = p.sum();
    const JacobiParams pl(s + 0.5, s + 0.5);
    const SeriesPlan plan = plan_heat_series(pl, 0.25 * pt.t, tr);
    const double c_red = std::exp(0.5 * std::log(kPi) + log_gamma(s + 1.5) - (s + 1.0) * kLog2 -
                                  log_gamma(p.alpha + 1.0) - log_gamma(p.beta + 1.0));

    // precompute coef[n] * P_n(1); the inner kernel at (z, 1) is then a dot
    // product against the recurrence at z
    const std::size_t nterm = static_cast<std::size_t>(plan.terms);
    std::vector<double> coef1(nterm);
    double diag_scale = 0.0;  // G_{t/4}(1,1), the positive-series scale
    {
        specfun::JacobiRecurrence rec(pl, 1.0);
        for (std::size_t k = 0; k < nterm; ++k) {
            coef1[k] = plan.coefs[k] * rec.current();
            diag_scale += coef1[k] * rec.current();
            rec.advance();
        }
    }
    auto inner_eval = [&](double z) {
        specfun::JacobiRecurrence rec(pl, z);
        double acc = 0.0;
        for (std::size_t k = 0; k < nterm; ++k) {
            acc += coef1[k] * rec.current();
            rec.advance();
        }
        return acc;
    };

    const double ss = std::sin(0.5 * pt.theta) * std::sin(0.5 * pt.phi);
    const double cc = std::cos(0.5 * pt.theta) * std::cos(0.5 * pt.phi);
    auto eval = [&](int m) {
        const PiRule ru = quadrature::pi_measure_rule(p.alpha, m);
        const PiRule rv = quadrature::pi_measure_rule(p.beta, m);
        const NodesView u = quadrature::view(ru);
        const NodesView v = quadrature::view(rv);
        double acc = 0.0;
        for (std::size_t i = 0; i < u.count; ++i) {
            const double us = u.nodes[i] * ss;
            double inner = 0.0;
            for (std::size_t j = 0; j < v.count; ++j)
                inner += v.weights[j] * inner_eval(std::clamp(us + v.nodes[j] * cc, -1.0, 1.0));
            acc += u.weights[i] * inner;
        }
        return acc;
    };
    const double abs_floor = 1e-13 * diag_scale;
    const auto res = quadrature::adaptive_doubling(eval, 1e-8, 64, 2048, abs_floor);
    KernelValue out;
    out.value = c_red * res.value;
    out.tail_bound = c_red * plan.tail + std::abs(out.value) * res.last_rel_diff +
                     c_red * abs_floor;
    out.terms_used = res.degree_used;
    out.certified = plan.certified;
    return out;
}

namespace {

bool near(double v, double w) { return std::abs(v - w) < 1e-12; }

double checked_div(double num, double den, const char* what) {
    if (std::abs(den) < 1e-300) {
        std::ostringstream os;
        os << "dirichlet_neumann_oracle: " << what
           << " vanishes at the requested boundary angle";
        throw_invalid(os.str());
    }
    return num / den;
}

}  // namespace

double dirichlet_neumann_oracle(const JacobiParams& p, const HeatPoint& pt) {
    using specfun::theta_half_wrapped;
    using specfun::theta_wrapped;
    const double t = pt.t, th = pt.theta, ph = pt.phi;
    if (near(p.alpha, -0.5) && near(p.beta, -0.5))
        return (theta_wrapped(t, th - ph) + theta_wrapped(t, th + ph)) / (2.0 * kPi);
    if (near(p.alpha, 0.5) && near(p.beta, 0.5))
        return (2.0 / kPi) * checked_div(theta_wrapped(t, th - ph) - theta_wrapped(t, th + ph),
                                         std::sin(th) * std::sin(ph), "sin(theta) sin(phi)");
    if (near(p.alpha, -0.5) && near(p.beta, 0.5))
        return checked_div(theta_half_wrapped(t, th - ph) + theta_half_wrapped(t, th + ph),
                           kPi * std::cos(0.5 * th) * std::cos(0.5 * ph),
                           "cos(theta/2) cos(phi/2)");
    if (near(p.alpha, 0.5) && near(p.beta, -0.5))
        return checked_div(theta_half_wrapped(t, th - ph) - theta_half_wrapped(t, th + ph),
                           kPi * std::sin(0.5 * th) * std::sin(0.5 * ph),
                           "sin(theta/2) sin(phi/2)");
    throw_invalid("dirichlet_neumann_oracle: parameters must both be +-1/2");
}

double sphere_s1_kernel(double x, double t) {
    if (!(std::abs(x) <= 1.0)) throw_invalid("sphere_s1_kernel: x must lie in [-1, 1]");
    if (!(t > 0.0)) throw_invalid("sphere_s1_kernel: t must be > 0");
    return specfun::theta_wrapped(t, std::acos(x)) / kPi;
}

double laguerre_kernel(double alpha, double x, double y, double t) {
    if (!(alpha > -1.0)) throw_invalid("laguerre_kernel: alpha must be > -1");
    if (!(x > 0.0) || !(y > 0.0)) throw_invalid("laguerre_kernel: x, y must be > 0");
    if (!(t > 0.0) || t > 350.0) throw_invalid("laguerre_kernel: t must lie in (0, 350]");
    const double log_2sinh = t + std::log1p(-std::exp(-2.0 * t));
    const double coth = 1.0 + 2.0 / std::expm1(2.0 * t);
    const double z = x * y * std::exp(-log_2sinh);
    const double lv = -log_2sinh - 0.25 * coth * (x * x + y * y) -
                      alpha * (std::log(x) + std::log(y)) + specfun::log_bessel_i(alpha, z);
    if (lv > 709.0) throw Error(Status::overflow, "laguerre_kernel: value exceeds double range");
    return std::exp(lv);
}

double series_noise_floor(const JacobiParams& p, double x, double y, double t) {
    SeriesTruncation tr;
    tr.tail_tol = 1e-9;
    SeriesTable table(plan_heat_series(p, t, tr), {x, y});
    const double gx = std::max(table.at(0, 0).value, 1e-300);
    const double gy = std::max(table.at(1, 1).value, 1e-300);
    return 1.1e-15 * std::sqrt(gx * gy);
}

}  // namespace jacobiheat::kernels
