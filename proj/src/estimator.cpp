#include "phaseci/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace phaseci {

namespace {

double model_curvature(const StatisticalModel& model) {
    if (model.analytic_curvature) return *model.analytic_curvature;
    return curvature_constant(model, kCurvatureGridDefault);
}

double abs_dmean_at(const StatisticalModel& model, double phi) {
    const double df = std::abs(model.dmean(phi));
    if (!(df > 0.0))
        throw assumption_error("estimator: f' vanishes at the least-squares estimate");
    return df;
}

double delta1_terms(const DataAggregate& agg, double epsilon, double abs_df, double curvature) {
    const double log_term = std::log(2.0 / epsilon);
    const double radius = hoeffding_radius(agg.count, agg.v_max(), epsilon);
    return radius / abs_df +
           (curvature / static_cast<double>(agg.count)) * agg.v_max() * log_term;
}

double delta2_terms(const DataAggregate& agg, double epsilon, double abs_df, double curvature) {
    if (agg.count < 2 || !agg.sample_variance)
        throw std::domain_error("delta2: undefined for a single trial (needs n >= 2)");
    const double radius =
        empirical_bernstein_radius(agg.count, *agg.sample_variance, agg.range(), epsilon);
    return radius / abs_df + 0.5 * curvature * radius * radius;
}

} // namespace

double ls_estimate(const StatisticalModel& model, const DataAggregate& agg) {
    return invert_f(model, project_to_range(model, agg.sample_mean));
}

DirectInversion di_estimate(const StatisticalModel& model, const DataAggregate& agg) {
    DirectInversion result;
    result.sample_mean = agg.sample_mean;
    result.range_lo = range_lo(model);
    result.range_hi = range_hi(model);
    if (agg.sample_mean >= result.range_lo && agg.sample_mean <= result.range_hi)
        result.phi = invert_f(model, agg.sample_mean);
    return result;
}

double delta1(const StatisticalModel& model, const DataAggregate& agg, double epsilon) {
    const double phi_ls = ls_estimate(model, agg);
    return delta1_terms(agg, epsilon, abs_dmean_at(model, phi_ls), model_curvature(model));
}

double delta2(const StatisticalModel& model, const DataAggregate& agg, double epsilon) {
    const double phi_ls = ls_estimate(model, agg);
    return delta2_terms(agg, epsilon, abs_dmean_at(model, phi_ls), model_curvature(model));
}

ConfidenceResult confidence(const StatisticalModel& model, const DataAggregate& agg,
                            double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("confidence: epsilon must lie in (0, 1)");

    const double phi_ls = ls_estimate(model, agg);
    const double abs_df = abs_dmean_at(model, phi_ls);
    const double curvature = model_curvature(model);

    ConfidenceResult result;
    result.phi_ls = phi_ls;
    result.epsilon = epsilon;
    result.n = agg.count;
    result.delta1 = delta1_terms(agg, epsilon, abs_df, curvature);
    if (agg.count >= 2) {
        result.delta2 = delta2_terms(agg, epsilon, abs_df, curvature);
        result.delta = std::min(result.delta1, *result.delta2);
    } else {
        result.delta = result.delta1;
    }
    result.interval_lo = std::max(model.interval.lo, phi_ls - result.delta);
    result.interval_hi = std::min(model.interval.hi, phi_ls + result.delta);
    return result;
}

} // namespace phaseci
