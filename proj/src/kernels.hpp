// Copyright 2026 The jacobiheat authors
// SPDX-License-Identifier: Apache-2.0

#ifndef JACOBIHEAT_KERNELS_HPP
#define JACOBIHEAT_KERNELS_HPP

#include <vector>

#include "quadrature.hpp"
#include "specfun.hpp"

namespace jacobiheat::kernels {

using specfun::JacobiParams;

struct SeriesTruncation {
    long long max_terms = 2000000;
    double tail_tol = 1e-12;

    void validate() const {
        if (max_terms < 1) throw_invalid("SeriesTruncation: max_terms must be >= 1");
        if (!(tail_tol > 0.0)) throw_invalid("SeriesTruncation: tail_tol must be > 0");
    }
};

/// A computed kernel value with a bound on the neglected series tail.
/// certified is true only when the parameters admit the endpoint sup bound
/// (alpha, beta >= -1/2) and the tail bound met the requested tolerance;
/// otherwise the tail bound is heuristic.
struct KernelValue {
    double value = 0.0;
    double tail_bound = 0.0;
    long long terms_used = 0;
    bool certified = false;
};

/// Evaluation point in the trigonometric coordinates; x = cos(theta) and
/// y = cos(phi) are the corresponding algebraic coordinates.
struct HeatPoint {
    double theta;
    double phi;
    double t;

    HeatPoint(double th, double ph, double tt) : theta(th), phi(ph), t(tt) {
        if (!(th >= 0.0 && th <= 3.14159265358979323847) ||
            !(ph >= 0.0 && ph <= 3.14159265358979323847))
            throw_invalid("HeatPoint: angles must lie in [0, pi]");
        if (!(tt > 0.0)) throw_invalid("HeatPoint: t must be > 0");
    }
    double x() const;
    double y() const;
};

/// Series evaluation below this t is refused (cost/precision floor).
constexpr double kTimeFloor = 1e-6;

/// Precomputed degree-wise data for one (params, t) series sweep: the
/// coefficient of P_n(x) P_n(y) in the expansion, the certified tail of the
/// truncation, and the number of retained terms.
struct SeriesPlan {
    JacobiParams params;
    double t;
    long long terms;      // retained degrees: 0 .. terms-1
    double tail;          // bound on the dropped remainder, sup norm over x,y
    bool certified;       // in theorem range and tail within tolerance
    std::vector<double> coefs;
};

/// Values of P_n at a fixed set of arguments, paired with a plan; evaluating
/// a kernel at (args[i], args[j]) is then a single dot product. Grid sweeps
/// share one table instead of re-running the recurrences per pair.
class SeriesTable {
  public:
    SeriesTable(SeriesPlan plan, std::vector<double> args);

    KernelValue at(std::size_t i, std::size_t j) const;
    const SeriesPlan& plan() const { return plan_; }
    const std::vector<double>& args() const { return args_; }

  private:
    SeriesPlan plan_;
    std::vector<double> args_;
    std::vector<double> data_;  // args.size() rows of plan_.terms values
};

SeriesPlan plan_heat_series(const JacobiParams& p, double t, const SeriesTruncation& tr);
SeriesPlan plan_poisson_series(const JacobiParams& p, double t, const SeriesTruncation& tr);

SeriesTable heat_table(const JacobiParams& p, const std::vector<double>& xs, double t,
                       const SeriesTruncation& tr);
SeriesTable poisson_table(const JacobiParams& p, const std::vector<double>& thetas, double t,
                          const SeriesTruncation& tr);

/// Pure polynomial-setting heat kernel G_t(x, y) by the spectral series.
KernelValue heat_series(const JacobiParams& p, double x, double y, double t,
                        const SeriesTruncation& tr = {});

/// Trigonometric polynomial setting kernel. Related to the pure one by the
/// constant prefactor 2^(a+b+1) e^(-t ((a+b+1)/2)^2).
KernelValue trig_heat(const JacobiParams& p, const HeatPoint& pt,
                      const SeriesTruncation& tr = {});

/// Trigonometric function setting kernel: the trig kernel multiplied by
/// sin(th/2)^(a+1/2) sin(ph/2)^(a+1/2) cos(th/2)^(b+1/2) cos(ph/2)^(b+1/2),
/// with boundary values taken as limits.
KernelValue func_heat(const JacobiParams& p, const HeatPoint& pt,
                      const SeriesTruncation& tr = {});

/// Poisson kernel in the trigonometric polynomial setting (series path).
KernelValue poisson_series(const JacobiParams& p, const HeatPoint& pt,
                           const SeriesTruncation& tr = {});

/// Poisson kernel by the exact double-integral representation against
/// dPi_alpha x dPi_beta; requires alpha, beta >= -1/2. Integration degree
/// escalates by doubling until rel_tol is met.
double poisson_integral(const JacobiParams& p, const HeatPoint& pt, double rel_tol = 1e-8);

/// G_t(cos th, cos ph) evaluated through the endpoint-reduction identity:
/// an integral of the ultraspherical kernel at argument 1 with parameter
/// lambda = alpha+beta+1/2 and time t/4. Requires alpha, beta >= -1/2.
KernelValue reduction_heat(const JacobiParams& p, const HeatPoint& pt,
                           const SeriesTruncation& tr = {});

/// Closed-form kernel for the four parameter choices alpha, beta in {-1/2,
/// 1/2}, built from wrapped Gaussians; returns the trig-setting value.
/// Denominator-bearing cases reject boundary angles.
double dirichlet_neumann_oracle(const JacobiParams& p, const HeatPoint& pt);

/// Twice the heat kernel of the unit circle at geodesic distance arccos(x);
/// equals G_t(x, 1) at parameters (-1/2, -1/2).
double sphere_s1_kernel(double x, double t);

/// Laguerre-system heat kernel in closed form (log-space evaluation).
double laguerre_kernel(double alpha, double x, double y, double t);

/// Rounding-noise scale of the oscillating series at (x, y): values below a
/// modest multiple of this are not resolvable in double precision. Estimated
/// from the diagonal values, which sum without cancellation.
double series_noise_floor(const JacobiParams& p, double x, double y, double t);

}  // namespace jacobiheat::kernels

#endif
