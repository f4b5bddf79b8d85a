// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#include "envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace jacobiheat::envelopes {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double main_envelope(const JacobiParams& p, const HeatPoint& pt, double c) {
    if (!(c > 0.0)) throw_invalid("main_envelope: c must be > 0");
    const double th = pt.theta, ph = pt.phi, t = pt.t;
    return std::pow(t + th * ph, -p.alpha - 0.5) *
           std::pow(t + (kPi - th) * (kPi - ph), -p.beta - 0.5) / std::sqrt(t) *
           std::exp(-c * sq(th - ph) / t);
}

double trig_envelope(const JacobiParams& p, const HeatPoint& pt, double c) {
    if (!(c > 0.0)) throw_invalid("trig_envelope: c must be > 0");
    const double th = pt.theta, ph = pt.phi, t = pt.t;
    return std::pow(t + std::sin(0.5 * th) * std::sin(0.5 * ph), -p.alpha - 0.5) *
           std::pow(t + std::cos(0.5 * th) * std::cos(0.5 * ph), -p.beta - 0.5) /
           std::sqrt(t) * std::exp(-c * sq(th - ph) / t);
}

double poisson_envelope(const JacobiParams& p, const HeatPoint& pt) {
    const double th = pt.theta, ph = pt.phi, t = pt.t;
    return std::pow(t * t + th * th + ph * ph, -p.alpha - 0.5) *
           std::pow(t * t + sq(kPi - th) + sq(kPi - ph), -p.beta - 0.5) * t /
           (t * t + sq(th - ph));
}

double rough_bound(const JacobiParams& p, double t) {
    if (!(t > 0.0)) throw_invalid("rough_bound: t must be > 0");
    const double gamma = std::max({p.alpha, p.beta, -0.5});
    return std::pow(t, -(2.0 * gamma + 2.0));
}

double comparison_factor(double eps, double delta, double x) {
    if (eps < 0.0 || delta < 0.0) throw_invalid("comparison_factor: exponents must be >= 0");
    if (!(std::abs(x) <= 1.0)) throw_invalid("comparison_factor: x must lie in [-1, 1]");
    const double a = (1.0 - x == 0.0 && eps == 0.0) ? 1.0 : std::pow(1.0 - x, 0.5 * eps);
    const double b = (1.0 + x == 0.0 && delta == 0.0) ? 1.0 : std::pow(1.0 + x, 0.5 * delta);
    return a * b;
}

FtDiagnostic ft_diagnostic(const HeatPoint& pt) {
    const double ss = std::sin(0.5 * pt.theta) * std::sin(0.5 * pt.phi);
    const double cc = std::cos(0.5 * pt.theta) * std::cos(0.5 * pt.phi);
    const double inf = std::numeric_limits<double>::infinity();
    const double v1 = ss > 0.0 ? 1.0 + pt.t / ss : inf;
    const double v2 = cc > 0.0 ? 1.0 + pt.t / cc : inf;
    const double co = std::cos(0.5 * (pt.theta - pt.phi));
    return {std::min(v1, v2), co > 0.0 ? 1.0 + pt.t / co : inf};
}

void GridSpec::validate() const {
    if (theta_steps < 1 || phi_steps < 1) throw_invalid("GridSpec: steps must be >= 1");
    if (t_values.empty()) throw_invalid("GridSpec: t_values must be non-empty");
    for (double t : t_values)
        if (!(t >= kernels::kTimeFloor)) throw_invalid("GridSpec: t below the evaluation floor");
}

GridSpec default_grid() {
    GridSpec g;
    g.theta_steps = 48;
    g.phi_steps = 48;
    g.t_values.resize(25);
    for (int k = 0; k < 25; ++k) g.t_values[k] = std::pow(10.0, -3.0 + 3.0 * k / 24.0);
    return g;
}

std::vector<HeatPoint> expand_grid(const GridSpec& grid) {
    grid.validate();
    std::vector<HeatPoint> pts;
    pts.reserve((grid.theta_steps + 1) * (grid.phi_steps + 1) * grid.t_values.size());
    for (double t : grid.t_values)
        for (int i = 0; i <= grid.theta_steps; ++i)
            for (int j = 0; j <= grid.phi_steps; ++j)
                pts.emplace_back(kPi * i / grid.theta_steps, kPi * j / grid.phi_steps, t);
    return pts;
}

EnvelopeFamily theorem_envelope_family(const JacobiParams& p) {
    return {
        [p](const HeatPoint& pt) {
            return std::pow(pt.t + pt.theta * pt.phi, -p.alpha - 0.5) *
                   std::pow(pt.t + (kPi - pt.theta) * (kPi - pt.phi), -p.beta - 0.5) /
                   std::sqrt(pt.t);
        },
        [](const HeatPoint& pt) { return sq(pt.theta - pt.phi) / pt.t; },
    };
}

EnvelopeFamily endpoint_envelope_family(double lambda) {
    return {
        [lambda](const HeatPoint& pt) { return std::pow(pt.t, -(lambda + 1.0)); },
        [](const HeatPoint& pt) { return sq(pt.theta) / pt.t; },
    };
}

EnvelopeFamily endpoint_envelope_family_algebraic(double lambda) {
    return {
        [lambda](const HeatPoint& pt) { return std::pow(pt.t, -(lambda + 1.0)); },
        [](const HeatPoint& pt) { return (1.0 - std::cos(pt.theta)) / pt.t; },
    };
}

namespace {

struct Sample {
    double kernel, base, gap, tail;
    bool certified, used;
};

}  // namespace

FitResult fit_constants(const JacobiParams& params, const std::vector<HeatPoint>& points,
                        const std::function<KernelValue(const HeatPoint&)>& kernel_fn,
                        const EnvelopeFamily& family, const FitOptions& opts) {
    if (points.empty()) throw_invalid("fit_constants: empty grid");
    std::vector<KernelValue> values(points.size());
    std::vector<double> noises(points.size(), 0.0);
    parallel_for(points.size(), [&](std::size_t i) {
        values[i] = kernel_fn(points[i]);
        if (opts.noise_floor) noises[i] = opts.noise_floor(points[i]);
    });
    return fit_precomputed(params, points, values, noises, family, opts);
}

FitResult fit_precomputed(const JacobiParams& params, const std::vector<HeatPoint>& points,
                          const std::vector<KernelValue>& values,
                          const std::vector<double>& noises, const EnvelopeFamily& family,
                          const FitOptions& opts) {
    if (points.empty()) throw_invalid("fit_constants: empty grid");
    if (values.size() != points.size())
        throw_invalid("fit_constants: one kernel value per point required");
    if (!noises.empty() && noises.size() != points.size())
        throw_invalid("fit_constants: noise vector size mismatch");

    std::vector<Sample> samples(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const KernelValue& kv = values[i];
        Sample& s = samples[i];
        s.kernel = kv.value;
        s.tail = kv.tail_bound;
        s.certified = kv.certified;
        s.base = family.base(points[i]);
        s.gap = family.gap(points[i]);
        const double noise = noises.empty() ? 0.0 : noises[i];
        s.used = s.kernel > 10.0 * kv.tail_bound + 100.0 * noise && s.kernel > 0.0 &&
                 std::isfinite(s.base);
    }

    FitResult out;
    out.conjectural_range = !params.in_theorem_range();
    const double t_max = [&] {
        double m = 0.0;
        for (const auto& pt : points) m = std::max(m, pt.t);
        return m;
    }();

    // Gaussian rates from the far-field decay
    double rate_min = std::numeric_limits<double>::infinity();
    double rate_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Sample& s = samples[i];
        if (!s.used) {
            ++out.points_skipped;
            continue;
        }
        ++out.points_used;
        if (s.gap >= opts.far_field_gap) {
            const double rate = std::log(s.base / s.kernel) / s.gap;
            rate_min = std::min(rate_min, rate);
            rate_max = std::max(rate_max, rate);
        }
    }
    if (out.points_used == 0) throw_invalid("fit_constants: no resolvable grid points");

    // log sweep of admissible rates; fitted rates snap outward onto it
    const double step = std::log(opts.sweep_max / opts.sweep_min) / (opts.sweep_points - 1);
    auto snap_down = [&](double c) {
        if (c <= opts.sweep_min) return opts.sweep_min;
        const double k = std::floor(std::log(c / opts.sweep_min) / step);
        return std::min(opts.sweep_max, opts.sweep_min * std::exp(k * step));
    };
    auto snap_up = [&](double c) {
        if (c >= opts.sweep_max) return opts.sweep_max;
        const double k = std::ceil(std::log(c / opts.sweep_min) / step);
        return std::max(opts.sweep_min, opts.sweep_min * std::exp(k * step));
    };

    double c2, c1;
    if (std::isfinite(rate_min)) {
        if (!(rate_min > 0.0)) {
            std::ostringstream os;
            os << "fit_constants: far-field decay rate " << rate_min
               << " is not positive; kernel does not match the envelope shape";
            throw Error(Status::infeasible, os.str());
        }
        c2 = snap_down(rate_min);
        c1 = snap_up(std::max(rate_max, rate_min));
    } else {
        // no far-field points: any rate works; report the search bounds
        c2 = opts.sweep_min;
        c1 = opts.sweep_max;
    }

    // smallest C covering every used point at the chosen rates
    double upper = 1.0, lower = 1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Sample& s = samples[i];
        if (!s.used) continue;
        const double env_up = s.base * std::exp(-c2 * s.gap);
        const double env_lo = s.base * std::exp(-c1 * s.gap);
        if (s.kernel / env_up > upper) {
            upper = s.kernel / env_up;
            out.worst_upper = points[i];
        }
        if (env_lo / s.kernel > lower) {
            lower = env_lo / s.kernel;
            out.worst_lower = points[i];
        }
    }
    const double C = std::max(upper, lower) * (1.0 + 1e-12);
    if (!(C <= opts.feasibility_cap)) {
        std::ostringstream os;
        os << "fit_constants: required constant " << C << " exceeds the feasibility cap "
           << opts.feasibility_cap;
        throw Error(Status::infeasible, os.str());
    }
    out.constants = {C, c1, c2, t_max};

    if (opts.collect_rows) {
        out.rows.reserve(out.points_used);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Sample& s = samples[i];
            if (!s.used) continue;
            const double env = s.base * std::exp(-c2 * s.gap);
            out.rows.push_back({points[i].theta, points[i].phi, points[i].t, s.kernel, env,
                                s.kernel / env, s.tail, s.certified});
        }
    }
    return out;
}

FitResult fit_constants(const JacobiParams& params, const GridSpec& grid,
                        const std::function<KernelValue(const HeatPoint&)>& kernel_fn,
                        const FitOptions& opts) {
    return fit_constants(params, expand_grid(grid), kernel_fn, theorem_envelope_family(params),
                         opts);
}

}  // namespace jacobiheat::envelopes
