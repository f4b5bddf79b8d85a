// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace jacobiheat::quadrature {

namespace {

constexpr double kPi = 3.14159265358979323846;

using specfun::JacobiParams;
using specfun::log_beta;
using specfun::log_gamma;

// Nodes are the roots of P_m^{a,b}; Newton iteration with deflation against
// the roots already found, starting from Chebyshev-angle guesses.
QuadratureRule gauss_jacobi_raw(double a, double b, int m) {
    if (m < 1) throw_invalid("gauss rule: degree must be >= 1");
    if (!(a > -1.0) || !(b > -1.0)) throw_invalid("gauss rule: weight exponents must be > -1");

    const JacobiParams pm(a, b);
    const JacobiParams pd(a + 1.0, b + 1.0);
    const double dcoef = 0.5 * (m + a + b + 1.0);

    std::vector<double> roots(m);
    for (int i = 0; i < m; ++i) {
        // descending in x; refined by Newton below
        double x = std::cos(kPi * (0.5 * a + i + 0.75) / (0.5 * (1.0 + a + b) + m));
        for (int it = 0;; ++it) {
            if (it > 200) {
                std::ostringstream os;
                os << "gauss rule: Newton iteration failed to converge (a=" << a
                   << ", b=" << b << ", degree=" << m << ", root index " << i << ")";
                throw Error(Status::no_convergence, os.str());
            }
            specfun::JacobiRecurrence rp(pm, x);
            for (int k = 0; k < m; ++k) rp.advance();
            double dp;
            if (m == 1) {
                dp = dcoef;
            } else {
                specfun::JacobiRecurrence rd(pd, x);
                for (int k = 0; k < m - 1; ++k) rd.advance();
                dp = dcoef * rd.current();
            }
            double defl = 0.0;
            for (int j = 0; j < i; ++j) defl += 1.0 / (x - roots[j]);
            const double denom = dp - rp.current() * defl;
            const double step = rp.current() / denom;
            double xn = x - step;
            if (!(xn > -1.0) || !(xn < 1.0)) xn = 0.5 * (x + (xn >= 1.0 ? 1.0 : -1.0));
            const bool done = std::abs(xn - x) <= 1e-15 * (1.0 + std::abs(xn));
            x = xn;
            if (done) break;
        }
        roots[i] = x;
    }
    std::sort(roots.begin(), roots.end());

    // w_i = M / ((1 - x_i^2) P_m'(x_i)^2),
    // M = 2^{a+b+1} G(m+a+1) G(m+b+1) / (G(m+1) G(m+a+b+1))
    const double log_m_factor = (a + b + 1.0) * std::log(2.0) + log_gamma(m + a + 1.0) +
                                log_gamma(m + b + 1.0) - log_gamma(m + 1.0) -
                                log_gamma(m + a + b + 1.0);
    QuadratureRule rule{MeasureKind::rho_algebraic, a, b, m, std::move(roots), {}};
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        const double x = rule.nodes[i];
        double dp;
        if (m == 1) {
            dp = dcoef;
        } else {
            specfun::JacobiRecurrence rd(pd, x);
            for (int k = 0; k < m - 1; ++k) rd.advance();
            dp = dcoef * rd.current();
        }
        rule.weights[i] = std::exp(log_m_factor - std::log1p(-x * x) - 2.0 * std::log(std::abs(dp)));
    }

    // Rescale to the exact total mass (node rounding leaves a small mass
    // drift when nodes crowd the endpoints), then validate the first moment.
    const double mass_exact = std::exp((a + b + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0));
    double mass = 0.0;
    for (int i = 0; i < m; ++i) mass += rule.weights[i];
    const double mass_drift = std::abs(mass / mass_exact - 1.0);
    // near the atomic limit a,b -> -1 the endpoint nodes are known only to
    // absolute rounding, which shows up as a mass drift of order eps/(1-|x|)
    const double drift_tol = std::min(a, b) >= -0.9 ? 1e-10 : 1e-6;
    for (int i = 0; i < m; ++i) rule.weights[i] *= mass_exact / mass;
    double first = 0.0;
    for (int i = 0; i < m; ++i) first += rule.weights[i] * rule.nodes[i];
    const double first_exact = mass_exact * (b - a) / (a + b + 2.0);
    if (mass_drift > drift_tol || std::abs(first - first_exact) > drift_tol * mass_exact) {
        std::ostringstream os;
        os << "gauss rule: moment validation failed (a=" << a << ", b=" << b
           << ", degree=" << m << ", mass drift " << mass_drift << ")";
        throw Error(Status::internal, os.str());
    }
    return rule;
}

}  // namespace

NodesView view(const QuadratureRule& r) {
    return {r.nodes.data(), r.weights.data(), r.nodes.size()};
}

NodesView view(const PiRule& r) {
    if (const auto* q = std::get_if<QuadratureRule>(&r)) return view(*q);
    const auto& pm = std::get<PointMassRule>(r);
    return {pm.locations.data(), pm.weights.data(), 2};
}

QuadratureRule gauss_jacobi_rule(double nu, int degree) {
    if (!(nu > -0.5)) throw_invalid("gauss_jacobi_rule: nu must be > -1/2");
    QuadratureRule rule = gauss_jacobi_raw(nu - 0.5, nu - 0.5, degree);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    for (double& w : rule.weights) w /= sum;  // Pi_nu is a probability measure
    rule.kind = MeasureKind::pi_symmetric;
    rule.p1 = nu;
    rule.p2 = 0.0;
    return rule;
}

PiRule pi_measure_rule(double nu, int degree) {
    if (nu < -0.5) throw_invalid("pi_measure_rule: nu must be >= -1/2");
    if (nu == -0.5) return PointMassRule{};
    return gauss_jacobi_rule(nu, degree);
}

QuadratureRule rho_rule(double alpha, double beta, int degree) {
    return gauss_jacobi_raw(alpha, beta, degree);
}

QuadratureRule trig_m_rule(double alpha, double beta, int degree) {
    // dm_{a,b} = 2^{-(a+b+1)} drho_{a,b} under x = cos(theta)
    QuadratureRule rho = gauss_jacobi_raw(alpha, beta, degree);
    QuadratureRule rule{MeasureKind::trig_m, alpha, beta, degree, {}, {}};
    rule.nodes.resize(degree);
    rule.weights.resize(degree);
    const double scale = std::exp(-(alpha + beta + 1.0) * std::log(2.0));
    for (int i = 0; i < degree; ++i) {
        rule.nodes[i] = std::acos(rho.nodes[degree - 1 - i]);
        rule.weights[i] = scale * rho.weights[degree - 1 - i];
    }
    return rule;
}

namespace {

struct RuleKey {
    int kind;
    double a, b;
    int degree;
    bool operator<(const RuleKey& o) const {
        return std::tie(kind, a, b, degree) < std::tie(o.kind, o.a, o.b, o.degree);
    }
};

std::map<RuleKey, std::shared_ptr<const QuadratureRule>> g_cache;
std::mutex g_cache_mutex;

std::shared_ptr<const QuadratureRule> cache_lookup(const RuleKey& key,
                                                   const std::function<QuadratureRule()>& make) {
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    auto rule = std::make_shared<const QuadratureRule>(make());
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = g_cache.emplace(key, std::move(rule));
    return it->second;
}

}  // namespace

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(double nu, int degree) {
    return cache_lookup({0, nu, 0.0, degree}, [&] { return gauss_jacobi_rule(nu, degree); });
}

std::shared_ptr<const QuadratureRule> cached_rho_rule(double alpha, double beta, int degree) {
    return cache_lookup({1, alpha, beta, degree}, [&] { return rho_rule(alpha, beta, degree); });
}

AdaptiveResult adaptive_doubling(const std::function<double(int)>& eval_at_degree,
                                 double rel_tol, int start_degree, int degree_cap,
                                 double abs_tol) {
    if (!(rel_tol > 0.0)) throw_invalid("adaptive_doubling: rel_tol must be > 0");
    if (start_degree < 1 || degree_cap < start_degree)
        throw_invalid("adaptive_doubling: bad degree range");
    double prev = eval_at_degree(start_degree);
    double diff = std::numeric_limits<double>::infinity();
    for (int m = 2 * start_degree; m <= degree_cap; m *= 2) {
        const double cur = eval_at_degree(m);
        diff = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + abs_tol) return {cur, m, diff};
        prev = cur;
    }
    std::ostringstream os;
    os << "adaptive_doubling: degree cap " << degree_cap << " exceeded; best estimate " << prev
       << " with relative difference " << diff;
    throw AdaptiveError(os.str(), prev, diff);
}

}  // namespace jacobiheat::quadrature
