// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#ifndef JACOBIHEAT_ENVELOPES_HPP
#define JACOBIHEAT_ENVELOPES_HPP

#include <functional>
#include <vector>

#include "kernels.hpp"

namespace jacobiheat::envelopes {

using kernels::HeatPoint;
using kernels::KernelValue;
using specfun::JacobiParams;

/// Constants realizing a two-sided Gaussian-envelope bound on a grid:
/// C^{-1} env(c1) <= kernel <= C env(c2). The lower-bound Gaussian decays at
/// least as fast as the upper one, so c1 >= c2.
struct EnvelopeConstants {
    double C;
    double c1;
    double c2;
    double horizon_T;
};

/// [t + th*ph]^(-a-1/2) [t + (pi-th)(pi-ph)]^(-b-1/2) t^(-1/2) e^(-c (th-ph)^2 / t)
double main_envelope(const JacobiParams& p, const HeatPoint& pt, double c);

/// (t + sin(th/2) sin(ph/2))^(-a-1/2) (t + cos(th/2) cos(ph/2))^(-b-1/2)
/// t^(-1/2) e^(-c (th-ph)^2 / t); comparable to main_envelope within fixed
/// constants since sin(th/2) sin(ph/2) and th*ph are comparable on [0,pi].
double trig_envelope(const JacobiParams& p, const HeatPoint& pt, double c);

/// (t^2+th^2+ph^2)^(-a-1/2) (t^2+(pi-th)^2+(pi-ph)^2)^(-b-1/2) t/(t^2+(th-ph)^2)
double poisson_envelope(const JacobiParams& p, const HeatPoint& pt);

/// t^(-(2 gamma + 2)) with gamma = max(alpha, beta, -1/2); the multiplicative
/// constant is supplied by the fitting harness.
double rough_bound(const JacobiParams& p, double t);

/// (1-x)^(eps/2) (1+x)^(delta/2), with (1 +- x)^0 = 1 at x = -+ 1.
double comparison_factor(double eps, double delta, double x);

struct FtDiagnostic {
    double value;      // min(1 + t/(ss), 1 + t/(cc))
    double surrogate;  // 1 + t/cos((th-ph)/2)
};
FtDiagnostic ft_diagnostic(const HeatPoint& pt);

/// Evaluation grid: angles {k pi / steps : 0 <= k <= steps} on both axes.
struct GridSpec {
    int theta_steps = 48;
    int phi_steps = 48;
    std::vector<double> t_values;

    void validate() const;
};

/// The default grid: 49 x 49 angles, 25 log-spaced times in [1e-3, 1].
GridSpec default_grid();

std::vector<HeatPoint> expand_grid(const GridSpec& grid);

/// An envelope shape with one free Gaussian rate: base(pt) * exp(-c gap(pt)).
struct EnvelopeFamily {
    std::function<double(const HeatPoint&)> base;
    std::function<double(const HeatPoint&)> gap;
};

/// Theorem-A shape: main_envelope split into its c-free factor and gap
/// (th-ph)^2/t.
EnvelopeFamily theorem_envelope_family(const JacobiParams& p);

/// Endpoint shape t^(-(lambda+1)) e^(-c th^2/t) (second angle pinned at 0).
EnvelopeFamily endpoint_envelope_family(double lambda);

/// Endpoint shape in the algebraic gap (1 - cos th)/t; equivalent to the
/// angular one up to the value of c.
EnvelopeFamily endpoint_envelope_family_algebraic(double lambda);

struct FitOptions {
    double feasibility_cap = 1e6;
    // points with gap below this do not witness the Gaussian rate: the decay
    // read off ln(base/kernel)/gap is contaminated by ln(C)/gap there
    double far_field_gap = 40.0;
    double sweep_min = 1e-4;
    double sweep_max = 64.0;
    int sweep_points = 513;
    bool collect_rows = false;
    // optional estimate of the evaluation noise at a point; points whose
    // kernel value is buried under it cannot witness the envelope and are
    // skipped (counted in the result)
    std::function<double(const HeatPoint&)> noise_floor;
};

struct FitRow {
    double theta, phi, t;
    double kernel;
    double envelope;  // base * exp(-c2 gap): the fitted upper shape at C = 1
    double ratio;     // kernel / envelope
    double tail_bound;
    bool certified;
};

struct FitResult {
    EnvelopeConstants constants{1.0, 1.0, 1.0, 1.0};
    bool conjectural_range = false;  // parameters outside the proven range
    std::size_t points_used = 0;
    std::size_t points_skipped = 0;
    HeatPoint worst_upper{0.0, 0.0, 1.0};  // argmax of kernel/upper-envelope
    HeatPoint worst_lower{0.0, 0.0, 1.0};  // argmax of lower-envelope/kernel
    std::vector<FitRow> rows;
};

/// Fits (C, c1, c2) so the two-sided bound holds at every resolvable grid
/// point. Gaussian rates are read off the far-field decay (points with
/// gap >= far_field_gap) and snapped outward to a log sweep; C is then the
/// smallest constant covering all points at those rates. Throws
/// Status::infeasible if no C below the cap exists.
FitResult fit_constants(const JacobiParams& params, const std::vector<HeatPoint>& points,
                        const std::function<KernelValue(const HeatPoint&)>& kernel_fn,
                        const EnvelopeFamily& family, const FitOptions& opts = {});

/// Same fit over already-evaluated kernel values (one per point); noises may
/// be empty or hold one rounding-floor estimate per point.
FitResult fit_precomputed(const JacobiParams& params, const std::vector<HeatPoint>& points,
                          const std::vector<KernelValue>& values,
                          const std::vector<double>& noises, const EnvelopeFamily& family,
                          const FitOptions& opts = {});

/// Grid-spec convenience overload using the Theorem-A envelope shape.
FitResult fit_constants(const JacobiParams& params, const GridSpec& grid,
                        const std::function<KernelValue(const HeatPoint&)>& kernel_fn,
                        const FitOptions& opts = {});

}  // namespace jacobiheat::envelopes

#endif
