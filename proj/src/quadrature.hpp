// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#ifndef JACOBIHEAT_QUADRATURE_HPP
#define JACOBIHEAT_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "specfun.hpp"
#include "util.hpp"

namespace jacobiheat::quadrature {

enum class MeasureKind {
    pi_symmetric,   // dPi_nu: probability measure with weight (1-u^2)^(nu-1/2)
    rho_algebraic,  // drho_{a,b} = (1-x)^a (1+x)^b dx on [-1,1]
    trig_m,         // dm_{a,b} = sin(th/2)^(2a+1) cos(th/2)^(2b+1) dth on [0,pi]
};

struct QuadratureRule {
    MeasureKind kind;
    double p1;  // nu for pi_symmetric, alpha otherwise
    double p2;  // unused for pi_symmetric, beta otherwise
    int degree;
    std::vector<double> nodes;    // strictly increasing, inside the open support
    std::vector<double> weights;  // positive
};

/// The nu = -1/2 limit of Pi_nu: two atoms of mass 1/2 at the endpoints.
struct PointMassRule {
    std::array<double, 2> locations{-1.0, 1.0};
    std::array<double, 2> weights{0.5, 0.5};
};

using PiRule = std::variant<QuadratureRule, PointMassRule>;

struct NodesView {
    const double* nodes;
    const double* weights;
    std::size_t count;
};

NodesView view(const QuadratureRule& r);
NodesView view(const PiRule& r);

/// Gauss rule of the given degree for the probability measure dPi_nu,
/// nu > -1/2. Weights are renormalized to sum to exactly 1.
QuadratureRule gauss_jacobi_rule(double nu, int degree);

/// Dispatches to gauss_jacobi_rule for nu > -1/2 and to the two-atom
/// point-mass rule at nu = -1/2. nu < -1/2 is rejected.
PiRule pi_measure_rule(double nu, int degree);

/// Gauss rule for the unnormalized weight (1-x)^a (1+x)^b on (-1,1).
QuadratureRule rho_rule(double alpha, double beta, int degree);

/// Rule for dm_{a,b} on (0,pi), obtained from the rho rule via x = cos(theta).
QuadratureRule trig_m_rule(double alpha, double beta, int degree);

/// Cached variants; rules are immutable and shared across threads.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(double nu, int degree);
std::shared_ptr<const QuadratureRule> cached_rho_rule(double alpha, double beta, int degree);

template <class F>
double integrate(const NodesView& v, F&& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.count; ++i) {
        const double fx = f(v.nodes[i]);
        if (!std::isfinite(fx))
            throw_invalid("integrate: integrand is not finite at a node");
        acc += v.weights[i] * fx;
    }
    return acc;
}

template <class F>
double integrate(const QuadratureRule& r, F&& f) {
    return integrate(view(r), std::forward<F>(f));
}

template <class F>
double integrate(const PiRule& r, F&& f) {
    return integrate(view(r), std::forward<F>(f));
}

struct AdaptiveResult {
    double value;
    int degree_used;
    double last_rel_diff;
};

/// Thrown when the doubling ladder hits the degree cap; carries the best
/// estimate so far and the relative difference it achieved.
class AdaptiveError : public Error {
  public:
    AdaptiveError(const std::string& msg, double best, double achieved)
        : Error(Status::no_convergence, msg), best_estimate(best), achieved_rel_diff(achieved) {}
    double best_estimate;
    double achieved_rel_diff;
};

/// Evaluates eval(m), eval(2m), ... until two successive values agree within
/// rel_tol relatively (plus the optional absolute allowance abs_tol, for
/// integrands whose true value may sit at the rounding floor). eval is
/// expected to be a quadrature of a fixed integrand at the given degree.
AdaptiveResult adaptive_doubling(const std::function<double(int)>& eval_at_degree,
                                 double rel_tol, int start_degree = 64,
                                 int degree_cap = 4096, double abs_tol = 0.0);

}  // namespace jacobiheat::quadrature

#endif
