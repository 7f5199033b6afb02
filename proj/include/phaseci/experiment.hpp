#ifndef PHASECI_EXPERIMENT_HPP
#define PHASECI_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaseci/estimator.hpp"
#include "phaseci/model.hpp"
#include "phaseci/ramsey.hpp"
#include "phaseci/random.hpp"

namespace phaseci {

/// One Monte Carlo sweep: every (variant, atoms, trials) cell is replicated
/// `replications` times at the same true phase, epsilon, and interval.
struct ExperimentConfig {
    std::vector<RamseyVariant> variants;
    std::vector<int> atom_counts;   // N values
    std::vector<int> trial_counts;  // n values
    double phi_true = 0.0;
    ParameterInterval interval;
    double epsilon = 0.1;
    int replications = 1;
    std::uint64_t master_seed = 0;
    std::optional<double> reference_phase; // default: standard_reference_phase per cell
    int threads = 0;                       // 0 = hardware concurrency
};

struct TrialResult {
    ConfidenceResult confidence_result;
    double abs_error = 0.0;
    bool covered = false;
    double b_lu_estimate = 0.0; // NaN when n = 1
};

/// Per-cell Monte Carlo aggregates. mean_delta2 and mean_b_lu_estimate are
/// NaN when trials = 1 (the empirical-variance route needs two outcomes).
struct SummaryRecord {
    std::string variant;
    int atoms = 0;
    int trials = 0;
    double epsilon = 0.0;
    int replications = 0;
    double mean_delta = 0.0;
    double mean_delta1 = 0.0;
    double mean_delta2 = 0.0;
    double mean_abs_error = 0.0;
    double coverage = 0.0;
    double mean_b_lu_estimate = 0.0;
};

/// One replication: draws `trials` outcomes at phi_true from the model,
/// aggregates them, and evaluates the confidence result. Deterministic given
/// the stream.
TrialResult run_trial(const StatisticalModel& model, double phi_true, int trials,
                      double epsilon, RandomStream& stream);

/// Runs the full sweep. Replication streams are keyed on (master_seed,
/// variant, atoms, trials, replication), so the output is bit-identical for
/// any thread count and any evaluation order. Records are sorted by
/// (variant, atoms, trials). All cells are validated before any simulation
/// starts; on error nothing is returned.
std::vector<SummaryRecord> monte_carlo(const ExperimentConfig& config);

/// Visits every outcome-count vector of n trials over the model's discrete
/// support together with its multinomial probability, presented as the
/// sufficient statistics the estimator consumes. Throws std::length_error
/// when the number of count vectors exceeds the enumeration budget.
void enumerate_outcome_counts(const StatisticalModel& model, double phi, int trials,
                              const std::function<void(const DataAggregate&, double)>& visit);

inline constexpr double kEnumerationBudget = 1e7;

/// Exact P[|phi_ls - phi_true| <= delta] by summing multinomial weights over
/// outcome-count vectors (the estimator and radii depend on data only
/// through the sufficient statistics).
double exact_coverage(const StatisticalModel& model, double phi_true, int trials,
                      double epsilon);

/// Least-squares slope of log y against log x. Needs at least three points
/// with positive coordinates and non-identical x.
double loglog_slope(std::span<const std::pair<double, double>> points);

} // namespace phaseci

#endif // PHASECI_EXPERIMENT_HPP
