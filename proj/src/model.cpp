#include "phaseci/model.hpp"

#include <cmath>
#include <limits>

namespace phaseci {

AssumptionReport validate_assumptions(const StatisticalModel& model, int grid_points) {
    if (grid_points < 2)
        throw std::invalid_argument("validate_assumptions: grid_points must be at least 2");

    AssumptionReport report;
    report.grid_points = grid_points;

    report.outcomes_bounded = std::isfinite(model.outcomes.lower) &&
                              std::isfinite(model.outcomes.upper) &&
                              model.outcomes.lower <= model.outcomes.upper;

    const double lo = model.interval.lo;
    const double step = model.interval.width() / static_cast<double>(grid_points - 1);

    bool injective = true;
    bool derivative_ok = true;
    double min_abs_df = std::numeric_limits<double>::infinity();
    int df_sign = 0;

    double prev_f = model.mean(lo);
    for (int i = 0; i < grid_points; ++i) {
        const double phi = (i == grid_points - 1) ? model.interval.hi
                                                  : lo + step * static_cast<double>(i);
        const double df = model.dmean(phi);
        const double abs_df = std::abs(df);
        min_abs_df = std::min(min_abs_df, abs_df);
        if (!(abs_df > 0.0)) {
            derivative_ok = false;
            injective = false;
        } else {
            const int sign = df > 0.0 ? 1 : -1;
            if (df_sign == 0) {
                df_sign = sign;
            } else if (sign != df_sign) {
                // a sign change means f' crosses zero inside the interval
                injective = false;
                derivative_ok = false;
            }
        }
        if (i > 0) {
            const double f = model.mean(phi);
            if (!(std::abs(f - prev_f) > 0.0)) injective = false;
            prev_f = f;
        }
    }

    report.mean_injective = injective;
    report.derivative_nonzero = derivative_ok && min_abs_df > 0.0;
    report.min_abs_dmean = std::isfinite(min_abs_df) ? min_abs_df : 0.0;
    return report;
}

namespace {

double grid_curvature_max(const StatisticalModel& model, int grid_points) {
    const double lo = model.interval.lo;
    const double step = model.interval.width() / static_cast<double>(grid_points - 1);
    double worst = 0.0;
    int df_sign = 0;
    for (int i = 0; i < grid_points; ++i) {
        const double phi = (i == grid_points - 1) ? model.interval.hi
                                                  : lo + step * static_cast<double>(i);
        const double df = model.dmean(phi);
        const int sign = df > 0.0 ? 1 : (df < 0.0 ? -1 : 0);
        if (sign == 0 || (df_sign != 0 && sign != df_sign))
            throw assumption_error("curvature_constant: f' vanishes on the interval near phi = " +
                                   std::to_string(phi));
        df_sign = sign;
        const double value = std::abs(model.d2mean(phi) / (df * df * df));
        if (!std::isfinite(value))
            throw assumption_error("curvature_constant: curvature diverges at phi = " +
                                   std::to_string(phi));
        worst = std::max(worst, value);
    }
    return worst;
}

} // namespace

double curvature_constant(const StatisticalModel& model, int grid_points) {
    if (grid_points < 2)
        throw std::invalid_argument("curvature_constant: grid_points must be at least 2");

    const double grid_value = grid_curvature_max(model, grid_points);
    if (model.analytic_curvature) {
        const double analytic = *model.analytic_curvature;
        if (grid_value > analytic * (1.0 + 1e-6) + 1e-300)
            throw std::logic_error("curvature_constant: grid scan exceeds the analytic maximum");
        return analytic;
    }
    return grid_value;
}

double range_lo(const StatisticalModel& model) {
    return std::min(model.mean(model.interval.lo), model.mean(model.interval.hi));
}

double range_hi(const StatisticalModel& model) {
    return std::max(model.mean(model.interval.lo), model.mean(model.interval.hi));
}

double invert_f(const StatisticalModel& model, double r) {
    const double f_lo = model.mean(model.interval.lo);
    const double f_hi = model.mean(model.interval.hi);
    const double r_min = std::min(f_lo, f_hi);
    const double r_max = std::max(f_lo, f_hi);
    if (!(r >= r_min && r <= r_max))
        throw std::range_error("invert_f: value " + std::to_string(r) + " outside R_f = [" +
                               std::to_string(r_min) + ", " + std::to_string(r_max) + "]");

    if (r == f_lo) return model.interval.lo;
    if (r == f_hi) return model.interval.hi;

    const bool increasing = f_hi > f_lo;
    const double tol = 1e-14 * std::max(1.0, model.interval.width());

    double lo = model.interval.lo;
    double hi = model.interval.hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval narrower than spacing of doubles
        const double f_mid = model.mean(mid);
        if (f_mid == r) return mid;
        if ((f_mid < r) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double project_to_range(const StatisticalModel& model, double s) {
    const double r_min = range_lo(model);
    const double r_max = range_hi(model);
    return s < r_min ? r_min : (s > r_max ? r_max : s);
}

double outcome_variance(const StatisticalModel& model, double phi) {
    if (model.variance) return model.variance(phi);
    if (!model.outcomes.discrete() || !model.pmf)
        throw std::invalid_argument(
            "outcome_variance: model supplies neither an analytic variance nor a discrete pmf");
    const double mean = model.mean(phi);
    double second = 0.0;
    for (double x : model.outcomes.support) {
        const double d = x - mean;
        second += model.pmf(x, phi) * d * d;
    }
    return second;
}

} // namespace phaseci
