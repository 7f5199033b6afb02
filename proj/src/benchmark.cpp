#include "phaseci/benchmark.hpp"

#include <cmath>

#include "phaseci/estimator.hpp"

namespace phaseci {

double b_lu(const StatisticalModel& model, double phi) {
    const double df = model.dmean(phi);
    if (!(std::abs(df) > 0.0))
        throw assumption_error("b_lu: f' vanishes at phi = " + std::to_string(phi));
    return std::sqrt(outcome_variance(model, phi)) / std::abs(df);
}

double b_lu_estimate(const StatisticalModel& model, const DataAggregate& agg) {
    if (agg.count < 2 || !agg.sample_variance)
        throw std::domain_error("b_lu_estimate: undefined for a single trial (needs n >= 2)");
    const double phi_ls = ls_estimate(model, agg);
    const double df = model.dmean(phi_ls);
    if (!(std::abs(df) > 0.0))
        throw assumption_error("b_lu_estimate: f' vanishes at the least-squares estimate");
    return std::sqrt(*agg.sample_variance) / std::abs(df);
}

double asymptotic_delta_bound(double b_lu_value, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("asymptotic_delta_bound: epsilon must lie in (0, 1)");
    return b_lu_value * std::sqrt(2.0 * std::log(4.0 / epsilon));
}

double fisher_classical(const StatisticalModel& model, double phi) {
    if (!model.outcomes.discrete() || !model.pmf)
        throw std::invalid_argument("fisher_classical: model has no discrete support");

    const double h = model.interval.width() * 1e-6;
    double info = 0.0;
    for (double x : model.outcomes.support) {
        const double p = model.pmf(x, phi);
        const double dp = (model.pmf(x, phi + h) - model.pmf(x, phi - h)) / (2.0 * h);
        if (p < 1e-15) {
            if (std::abs(dp) < 1e-9) continue;
            throw std::runtime_error("fisher_classical: singular support at outcome " +
                                     std::to_string(x));
        }
        info += dp * dp / p;
    }
    return info;
}

BenchmarkReport make_benchmark_report(const StatisticalModel& model, double phi,
                                      const DataAggregate& agg, double epsilon) {
    BenchmarkReport report;
    report.b_lu = b_lu(model, phi);
    report.b_lu_estimate = b_lu_estimate(model, agg);
    report.lu = report.b_lu / std::sqrt(static_cast<double>(agg.count));
    report.asymptotic_delta_bound = asymptotic_delta_bound(report.b_lu, epsilon);
    report.fisher_classical = fisher_classical(model, phi);
    return report;
}

} // namespace phaseci
