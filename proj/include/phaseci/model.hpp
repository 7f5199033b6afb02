#ifndef PHASECI_MODEL_HPP
#define PHASECI_MODEL_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phaseci {

/// A model assumption (bounded outcomes, injective mean, nonzero derivative)
/// does not hold for the requested configuration.
class assumption_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Known closed interval containing the unknown parameter.
struct ParameterInterval {
    double lo = 0.0;
    double hi = 0.0;

    ParameterInterval() = default;
    ParameterInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi))
            throw std::invalid_argument("ParameterInterval: requires lo < hi");
    }

    double width() const { return hi - lo; }
    bool contains(double phi) const { return phi >= lo && phi <= hi; }
    double clamp(double phi) const { return phi < lo ? lo : (phi > hi ? hi : phi); }
};

/// Bounded outcome window, optionally with an explicit finite support for
/// discrete models. When the support is present it must span [lower, upper].
struct OutcomeSpace {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> support; // empty when the model is not discrete

    bool discrete() const { return !support.empty(); }
    double range() const { return upper - lower; }
    double v_max() const { return 0.25 * range() * range(); }
};

/// Statistical model of one measurement trial: the expected outcome f on the
/// parameter interval, its first two derivatives, the outcome window, and
/// (for discrete models) the outcome distribution with a matching sampler.
///
/// All callables are pure; models are immutable after construction and safe
/// to share across threads. The sampler consumes one uniform variate in
/// [0, 1) per draw so that randomness stays fully external.
struct StatisticalModel {
    std::string name;
    ParameterInterval interval;
    OutcomeSpace outcomes;

    std::function<double(double)> mean;    // f(phi)
    std::function<double(double)> dmean;   // f'(phi)
    std::function<double(double)> d2mean;  // f''(phi)

    /// Analytic per-trial outcome variance; may be empty, in which case it is
    /// derived from pmf over the support (see outcome_variance).
    std::function<double(double)> variance;

    /// pmf(outcome, phi); empty for non-discrete models.
    std::function<double(double, double)> pmf;

    /// sampler(phi, u) with u uniform in [0, 1); empty when not sampleable.
    std::function<double(double, double)> sampler;

    /// Exact curvature constant max over the interval of |f''/f'^3| when a
    /// closed form is available; otherwise curvature_constant() falls back to
    /// a dense-grid scan (a lower bound on the true maximum).
    std::optional<double> analytic_curvature;
};

struct AssumptionReport {
    bool outcomes_bounded = false;   // A2: finite outcome window
    bool mean_injective = false;     // A3: f strictly monotone on the grid
    bool derivative_nonzero = false; // A4: min grid |f'| > 0
    double min_abs_dmean = 0.0;      // evidence for A4
    int grid_points = 0;

    bool all_pass() const { return outcomes_bounded && mean_injective && derivative_nonzero; }
};

/// Checks assumptions A2-A4 on a uniform grid over the parameter interval.
/// Failures are reported, never thrown.
AssumptionReport validate_assumptions(const StatisticalModel& model, int grid_points);

/// Curvature constant L = max over the interval of |f'(phi)^-3 * f''(phi)|.
/// Returns the model's analytic value when present (after checking the grid
/// scan does not exceed it beyond relative 1e-6); otherwise the grid maximum,
/// which lower-bounds the true maximum at the stated resolution.
/// Throws assumption_error when f' vanishes on the grid.
double curvature_constant(const StatisticalModel& model, int grid_points);

/// Default grid resolution for curvature scans of models without a closed form.
inline constexpr int kCurvatureGridDefault = 100001;

/// Endpoints of the range R_f of the monotone mean function.
double range_lo(const StatisticalModel& model);
double range_hi(const StatisticalModel& model);

/// Inverse g = f^-1 by bisection on the monotone mean function. The result
/// satisfies |phi - g(r)| <= 1e-14 * max(1, interval width).
/// Throws std::range_error when r lies outside R_f.
double invert_f(const StatisticalModel& model, double r);

/// Nearest point of R_f to s (a clamp, since f is monotone). Idempotent and
/// contractive: |project(s) - f(phi)| <= |s - f(phi)| for all phi.
double project_to_range(const StatisticalModel& model, double s);

/// Per-trial outcome variance at phi: the model's analytic function when
/// supplied, otherwise the second moment of pmf over the discrete support.
double outcome_variance(const StatisticalModel& model, double phi);

} // namespace phaseci

#endif // PHASECI_MODEL_HPP
