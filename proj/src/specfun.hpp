// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#ifndef JACOBIHEAT_SPECFUN_HPP
#define JACOBIHEAT_SPECFUN_HPP

#include <vector>

#include "util.hpp"

namespace jacobiheat::specfun {

/// Type-parameter pair (alpha, beta) of a Jacobi system. Both must exceed -1
/// for the orthogonality weight to be integrable.
struct JacobiParams {
    double alpha;
    double beta;

    JacobiParams(double a, double b) : alpha(a), beta(b) {
        if (!(a > -1.0) || !(b > -1.0))
            throw_invalid("JacobiParams: alpha and beta must be > -1");
    }

    /// True iff both parameters are >= -1/2, the range in which the sharp
    /// two-sided kernel bounds (and the endpoint sup bound) are established.
    bool in_theorem_range() const { return alpha >= -0.5 && beta >= -0.5; }

    double sum() const { return alpha + beta; }

    bool operator==(const JacobiParams& o) const {
        return alpha == o.alpha && beta == o.beta;
    }
};

/// ln Gamma(x) for x > 0, Lanczos approximation (g = 607/128, 15 terms).
/// Relative error below 1e-13 over the whole domain.
double log_gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
double log_beta(double a, double b);

/// ln binom(n+q, n) for integer n >= 0 and real q > -1.
double log_binom_shifted(double q, long long n);

/// ln I_nu(z), modified Bessel function of the first kind. nu > -1, z >= 0.
/// Ascending series for z <= 20, large-argument asymptotics beyond (with a
/// series fallback when the asymptotic tail cannot reach the accuracy target).
double log_bessel_i(double nu, double z);

/// I_nu(z) itself; throws Status::overflow once e^z leaves double range.
double bessel_i(double nu, double z);

/// Values P_0^{a,b}(x) .. P_N^{a,b}(x) at a fixed argument.
struct PolySequence {
    JacobiParams params;
    double argument;
    std::vector<double> values;
};

/// Incremental three-term recurrence stepper: holds P_n and P_{n-1} and
/// advances degree by one per step. O(1) state, used by all series loops.
class JacobiRecurrence {
  public:
    JacobiRecurrence(const JacobiParams& p, double x);

    int degree() const { return n_; }
    double current() const { return pn_; }
    void advance();

  private:
    double a_, b_, x_;
    int n_;
    double pn_, pnm1_;
};

/// P_n^{a,b}(x) for 0 <= n <= n_max by the forward recurrence. |x| <= 1.
PolySequence jacobi_poly_seq(const JacobiParams& p, double x, int n_max);

/// Norming constant h_n = ||P_n||^2 in L^2((1-x)^a (1+x)^b dx). The n = 0
/// value uses Gamma(a+b+2) in the denominator, which also covers a+b = -1.
double log_jacobi_norm(const JacobiParams& p, long long n);
double jacobi_norm(const JacobiParams& p, long long n);

/// h_{n+1}/h_n for n >= 1 (closed form, no Gamma evaluations).
double jacobi_norm_ratio(const JacobiParams& p, long long n);

/// Exact max of |P_n^{a,b}| on [-1,1] for a,b >= -1/2: binom(n+q, n) with
/// q = max(a,b), attained at an endpoint. Rejects parameters below -1/2.
double jacobi_sup_bound(const JacobiParams& p, long long n);
double log_jacobi_sup_bound(const JacobiParams& p, long long n);

/// Heuristic variant used for uncertified tails when a parameter lies in
/// (-1,-1/2): same formula with q = max(a, b, -1/2).
double log_sup_bound_heuristic(const JacobiParams& p, long long n);

/// Wrapped Gaussian, integer frequencies: sum_{k in Z} e^{-t k^2} cos(k u).
/// Direct sum for t >= 1, Poisson-summed image form below.
double theta_wrapped(double t, double u);

/// Half-integer variant: sum_{n >= 0} e^{-t (n+1/2)^2} cos((n+1/2) u).
double theta_half_wrapped(double t, double u);

}  // namespace jacobiheat::specfun

#endif
