#ifndef PHASECI_ESTIMATOR_HPP
#define PHASECI_ESTIMATOR_HPP

#include <optional>

#include "phaseci/concentration.hpp"
#include "phaseci/model.hpp"

namespace phaseci {

/// Point estimate with its finite-sample confidence radii.
///
/// delta is delta1 for n = 1 and min(delta1, delta2) for n >= 2, and
/// [interval_lo, interval_hi] is the parameter interval intersected with
/// [phi_ls - delta, phi_ls + delta]; it always contains phi_ls.
struct ConfidenceResult {
    double phi_ls = 0.0;
    double delta1 = 0.0;
    std::optional<double> delta2; // absent when n = 1
    double delta = 0.0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    double epsilon = 0.0;
    std::int64_t n = 0;
};

/// Direct inversion g(S_n); fails (phi empty) when the sample mean leaves the
/// range of the mean function.
struct DirectInversion {
    std::optional<double> phi;
    double sample_mean = 0.0;
    double range_lo = 0.0;
    double range_hi = 0.0;

    bool ok() const { return phi.has_value(); }
};

/// Least-squares estimate g(project(S_n)); always exists and lies in the
/// parameter interval.
double ls_estimate(const StatisticalModel& model, const DataAggregate& agg);

DirectInversion di_estimate(const StatisticalModel& model, const DataAggregate& agg);

/// Worst-case-variance radius (Hoeffding route):
///   hoeffding_radius / |f'(phi_ls)| + (L/n) * V_max * ln(2/epsilon).
double delta1(const StatisticalModel& model, const DataAggregate& agg, double epsilon);

/// Empirical-variance radius (empirical Bernstein route): with r the
/// empirical Bernstein radius of the data,
///   r / |f'(phi_ls)| + (L/2) * r^2.
/// Requires n >= 2.
double delta2(const StatisticalModel& model, const DataAggregate& agg, double epsilon);

/// Assembles the (1 - epsilon)-confidence result for the aggregate.
/// Deterministic function of (model, aggregate, epsilon).
ConfidenceResult confidence(const StatisticalModel& model, const DataAggregate& agg,
                            double epsilon);

} // namespace phaseci

#endif // PHASECI_ESTIMATOR_HPP
