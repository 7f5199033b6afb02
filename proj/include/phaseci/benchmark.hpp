#ifndef PHASECI_BENCHMARK_HPP
#define PHASECI_BENCHMARK_HPP

#include "phaseci/concentration.hpp"
#include "phaseci/model.hpp"

namespace phaseci {

/// Standard-approach comparison quantities evaluated for one model/data pair.
struct BenchmarkReport {
    double b_lu = 0.0;                  // sqrt(variance(phi)) / |f'(phi)|
    double b_lu_estimate = 0.0;         // sqrt(V_n) / |f'(phi_ls)|
    double lu = 0.0;                    // b_lu / sqrt(n)
    double asymptotic_delta_bound = 0.0; // b_lu * sqrt(2 ln(4/epsilon))
    double fisher_classical = 0.0;
};

/// Linearized-uncertainty prefactor at the true parameter.
double b_lu(const StatisticalModel& model, double phi);

/// Plug-in estimate of b_lu from data: sqrt(V_n) / |f'(phi_ls)|. Needs n >= 2.
double b_lu_estimate(const StatisticalModel& model, const DataAggregate& agg);

/// Large-n ceiling of sqrt(n) * E[delta]: b_lu * sqrt(2 ln(4/epsilon)).
double asymptotic_delta_bound(double b_lu_value, double epsilon);

/// Classical Fisher information of the discrete outcome distribution at phi,
/// with the score taken by centered finite differences of the pmf
/// (step = interval width * 1e-6). Support points with pmf below 1e-15
/// contribute zero when their pmf derivative is also negligible; otherwise a
/// singular support is reported.
double fisher_classical(const StatisticalModel& model, double phi);

BenchmarkReport make_benchmark_report(const StatisticalModel& model, double phi,
                                      const DataAggregate& agg, double epsilon);

} // namespace phaseci

#endif // PHASECI_BENCHMARK_HPP
