// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#include "specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jacobiheat::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)
constexpr double kLogDoubleMax = 709.78;

// Lanczos g = 607/128, the 15-coefficient set of Godfrey; relative error of
// the resulting ln Gamma stays below ~1e-14 for x > 0.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

double lanczos_log_gamma(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (x - 1.0 + k);
    const double base = x - 0.5 + kLanczosG;
    return kLogSqrt2Pi + (x - 0.5) * std::log(base) - base + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw_invalid("log_gamma: argument must be > 0");
    if (x < 0.5) {
        // reflection keeps the Lanczos series in its accurate range
        return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
    }
    return lanczos_log_gamma(x);
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_binom_shifted(double q, long long n) {
    if (n < 0) throw_invalid("log_binom_shifted: n must be >= 0");
    if (n == 0) return 0.0;
    return log_gamma(n + q + 1.0) - log_gamma(static_cast<double>(n) + 1.0) -
           log_gamma(q + 1.0);
}

namespace {

// Ascending series of I_nu in log form, with renormalization so the running
// sum never overflows. Converges for every z >= 0.
double log_bessel_series(double nu, double z) {
    const double w = 0.25 * z * z;
    double term = 1.0, sum = 1.0, log_scale = 0.0;
    for (int k = 1; k < 40000; ++k) {
        term *= w / (k * (nu + k));
        sum += term;
        if (term < 1e-17 * sum) break;
        if (sum > 1e280) {
            log_scale += std::log(sum);
            term /= sum;
            sum = 1.0;
        }
    }
    return nu * std::log(0.5 * z) - log_gamma(nu + 1.0) + log_scale + std::log(sum);
}

// Large-argument expansion; returns NaN when the optimal truncation cannot
// meet the accuracy target (caller falls back to the series).
double log_bessel_asymptotic(double nu, double z) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 50; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * z);
        if (std::abs(term) >= prev) break;  // divergence point reached
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) < 1e-14 * std::abs(sum)) {
            if (sum <= 0.0) return std::numeric_limits<double>::quiet_NaN();
            return z - 0.5 * std::log(2.0 * kPi * z) + std::log(sum);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double log_bessel_i(double nu, double z) {
    if (!(nu > -1.0)) throw_invalid("log_bessel_i: order must be > -1");
    if (!(z >= 0.0)) throw_invalid("log_bessel_i: argument must be >= 0");
    if (z == 0.0) {
        if (nu == 0.0) return 0.0;
        return nu > 0.0 ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
    }
    if (z > 20.0) {
        const double v = log_bessel_asymptotic(nu, z);
        if (std::isfinite(v)) return v;
    }
    return log_bessel_series(nu, z);
}

double bessel_i(double nu, double z) {
    const double lv = log_bessel_i(nu, z);
    if (lv > kLogDoubleMax)
        throw Error(Status::overflow, "bessel_i: result exceeds double range");
    return std::exp(lv);
}

JacobiRecurrence::JacobiRecurrence(const JacobiParams& p, double x)
    : a_(p.alpha), b_(p.beta), x_(x), n_(0), pn_(1.0), pnm1_(0.0) {}

void JacobiRecurrence::advance() {
    const double s = a_ + b_;
    if (n_ == 0) {
        pnm1_ = pn_;
        pn_ = 0.5 * (s + 2.0) * x_ + 0.5 * (a_ - b_);
        n_ = 1;
        return;
    }
    const double n = n_ + 1.0;  // degree being produced
    const double c1 = 2.0 * n * (n + s) * (2.0 * n + s - 2.0);
    const double c2 =
        (2.0 * n + s - 1.0) *
        ((2.0 * n + s) * (2.0 * n + s - 2.0) * x_ + (a_ - b_) * (a_ + b_));
    const double c3 = 2.0 * (n + a_ - 1.0) * (n + b_ - 1.0) * (2.0 * n + s);
    const double next = (c2 * pn_ - c3 * pnm1_) / c1;
    pnm1_ = pn_;
    pn_ = next;
    ++n_;
}

PolySequence jacobi_poly_seq(const JacobiParams& p, double x, int n_max) {
    if (!(std::abs(x) <= 1.0)) throw_invalid("jacobi_poly_seq: |x| must be <= 1");
    if (n_max < 0) throw_invalid("jacobi_poly_seq: n_max must be >= 0");
    PolySequence out{p, x, {}};
    out.values.reserve(n_max + 1);
    JacobiRecurrence rec(p, x);
    out.values.push_back(rec.current());
    for (int n = 1; n <= n_max; ++n) {
        rec.advance();
        out.values.push_back(rec.current());
    }
    return out;
}

double log_jacobi_norm(const JacobiParams& p, long long n) {
    if (n < 0) throw_invalid("jacobi_norm: n must be >= 0");
    const double s = p.sum();
    const double l2 = std::log(2.0);
    if (n == 0) {
        // (s+1) Gamma(s+1) = Gamma(s+2) handles s = -1 without special-casing
        return (s + 1.0) * l2 + log_gamma(p.alpha + 1.0) + log_gamma(p.beta + 1.0) -
               log_gamma(s + 2.0);
    }
    return (s + 1.0) * l2 + log_gamma(n + p.alpha + 1.0) + log_gamma(n + p.beta + 1.0) -
           std::log(2.0 * n + s + 1.0) - log_gamma(n + s + 1.0) -
           log_gamma(static_cast<double>(n) + 1.0);
}

double jacobi_norm(const JacobiParams& p, long long n) {
    return std::exp(log_jacobi_norm(p, n));
}

double jacobi_norm_ratio(const JacobiParams& p, long long n) {
    if (n < 1) throw_invalid("jacobi_norm_ratio: n must be >= 1");
    const double s = p.sum();
    const double m = static_cast<double>(n);
    return (m + p.alpha + 1.0) * (m + p.beta + 1.0) * (2.0 * m + s + 1.0) /
           ((m + 1.0) * (m + s + 1.0) * (2.0 * m + s + 3.0));
}

double log_jacobi_sup_bound(const JacobiParams& p, long long n) {
    if (!p.in_theorem_range())
        throw_invalid("jacobi_sup_bound: requires alpha, beta >= -1/2");
    return log_binom_shifted(std::max(p.alpha, p.beta), n);
}

double jacobi_sup_bound(const JacobiParams& p, long long n) {
    return std::exp(log_jacobi_sup_bound(p, n));
}

double log_sup_bound_heuristic(const JacobiParams& p, long long n) {
    return log_binom_shifted(std::max({p.alpha, p.beta, -0.5}), n);
}

double theta_wrapped(double t, double u) {
    if (!(t > 0.0)) throw_invalid("theta_wrapped: t must be > 0");
    if (t >= 1.0) {
        double sum = 1.0;
        for (int k = 1;; ++k) {
            const double e = std::exp(-t * k * k);
            if (e < 1e-19) break;
            sum += 2.0 * e * std::cos(k * u);
        }
        return sum;
    }
    const double radius = 2.0 * std::sqrt(745.0 * t) + 1.0;
    const int k_lo = static_cast<int>(std::floor((u - radius) / (2.0 * kPi)));
    const int k_hi = static_cast<int>(std::ceil((u + radius) / (2.0 * kPi)));
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) sum += std::exp(-sq(u - 2.0 * kPi * k) / (4.0 * t));
    return std::sqrt(kPi / t) * sum;
}

double theta_half_wrapped(double t, double u) {
    if (!(t > 0.0)) throw_invalid("theta_half_wrapped: t must be > 0");
    if (t >= 1.0) {
        double sum = 0.0;
        for (int n = 0;; ++n) {
            const double h = n + 0.5;
            const double e = std::exp(-t * h * h);
            if (e < 1e-19) break;
            sum += e * std::cos(h * u);
        }
        return sum;
    }
    const double radius = 2.0 * std::sqrt(745.0 * t) + 1.0;
    const int k_lo = static_cast<int>(std::floor((u - radius) / (2.0 * kPi)));
    const int k_hi = static_cast<int>(std::ceil((u + radius) / (2.0 * kPi)));
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(-sq(u - 2.0 * kPi * k) / (4.0 * t));
    }
    return 0.5 * std::sqrt(kPi / t) * sum;
}

}  // namespace jacobiheat::specfun
