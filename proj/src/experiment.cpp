#include "phaseci/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace phaseci {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Cumulative distribution over the support at a fixed phase, for fast
/// repeated draws. The partial sums match the model sampler's walk exactly,
/// so both paths produce identical outcomes from identical uniforms.
struct DiscreteSampler {
    std::vector<double> support;
    std::vector<double> cumulative; // cumulative[i] = sum of pmf through i

    DiscreteSampler(const StatisticalModel& model, double phi)
        : support(model.outcomes.support) {
        cumulative.reserve(support.size());
        double sum = 0.0;
        for (double x : support) {
            sum += model.pmf(x, phi);
            cumulative.push_back(sum);
        }
    }

    double draw(double u) const {
        // first index with u < cumulative[i]; same walk the model sampler does
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end() - 1, u);
        return support[static_cast<std::size_t>(it - cumulative.begin())];
    }
};

void run_indexed(std::size_t count, int threads, const std::function<void(std::size_t)>& work) {
    unsigned int workers = threads > 0 ? static_cast<unsigned int>(threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned int t = 0; t < workers; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &work] {
            for (std::size_t i = begin; i < end; ++i) work(i);
        });
    }
    for (auto& worker : pool) worker.join();
}

double binomial_coefficient(int n, int k) {
    // exact in double for the small n this is used with
    double value = 1.0;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i)
        value = value * static_cast<double>(n - k + i) / static_cast<double>(i);
    return value;
}

} // namespace

TrialResult run_trial(const StatisticalModel& model, double phi_true, int trials,
                      double epsilon, RandomStream& stream) {
    if (trials < 1) throw std::invalid_argument("run_trial: trials must be positive");

    std::vector<double> outcomes;
    outcomes.reserve(static_cast<std::size_t>(trials));
    if (model.outcomes.discrete()) {
        const DiscreteSampler sampler(model, phi_true);
        for (int i = 0; i < trials; ++i) outcomes.push_back(sampler.draw(stream.next_unit()));
    } else if (model.sampler) {
        for (int i = 0; i < trials; ++i)
            outcomes.push_back(model.sampler(phi_true, stream.next_unit()));
    } else {
        throw std::invalid_argument("run_trial: model is not sampleable");
    }

    const DataAggregate agg = aggregate(outcomes, model.outcomes.lower, model.outcomes.upper);

    TrialResult result;
    result.confidence_result = confidence(model, agg, epsilon);
    result.abs_error = std::abs(result.confidence_result.phi_ls - phi_true);
    result.covered = result.abs_error <= result.confidence_result.delta;
    if (agg.count >= 2 && agg.sample_variance) {
        const double df = std::abs(model.dmean(result.confidence_result.phi_ls));
        result.b_lu_estimate = std::sqrt(*agg.sample_variance) / df;
    } else {
        result.b_lu_estimate = kNaN;
    }
    return result;
}

std::vector<SummaryRecord> monte_carlo(const ExperimentConfig& config) {
    if (config.variants.empty() || config.atom_counts.empty() || config.trial_counts.empty())
        throw std::invalid_argument("monte_carlo: variants, atom_counts, trial_counts must be nonempty");
    if (config.replications < 1)
        throw std::invalid_argument("monte_carlo: replications must be at least 1");
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
        throw std::domain_error("monte_carlo: epsilon must lie in (0, 1)");
    if (!config.interval.contains(config.phi_true))
        throw std::invalid_argument("monte_carlo: phi_true lies outside the parameter interval");
    for (int n : config.trial_counts)
        if (n < 1) throw std::invalid_argument("monte_carlo: trial counts must be positive");

    // Validate every cell's model before simulating anything.
    std::map<std::pair<RamseyVariant, int>, StatisticalModel> models;
    for (RamseyVariant variant : config.variants) {
        for (int atoms : config.atom_counts) {
            const double phi0 = config.reference_phase
                                    ? *config.reference_phase
                                    : standard_reference_phase(variant, atoms);
            models.emplace(std::make_pair(variant, atoms),
                           make_ramsey_model(variant, atoms, phi0, config.interval));
        }
    }

    std::vector<SummaryRecord> records;
    for (const auto& [key, model] : models) {
        const auto [variant, atoms] = key;
        for (int trials : config.trial_counts) {
            const auto reps = static_cast<std::size_t>(config.replications);
            std::vector<TrialResult> results(reps);
            run_indexed(reps, config.threads, [&](std::size_t rep) {
                RandomStream stream(stream_key(config.master_seed, variant_name(variant),
                                               static_cast<std::uint64_t>(atoms),
                                               static_cast<std::uint64_t>(trials), rep));
                results[rep] = run_trial(model, config.phi_true, trials, config.epsilon, stream);
            });

            // Reduce in replication order for bit-identical output.
            SummaryRecord record;
            record.variant = std::string(variant_name(variant));
            record.atoms = atoms;
            record.trials = trials;
            record.epsilon = config.epsilon;
            record.replications = config.replications;
            double sum_delta = 0.0, sum_delta1 = 0.0, sum_delta2 = 0.0;
            double sum_abs_error = 0.0, sum_blu = 0.0;
            std::size_t covered = 0;
            for (const TrialResult& trial : results) {
                sum_delta += trial.confidence_result.delta;
                sum_delta1 += trial.confidence_result.delta1;
                if (trial.confidence_result.delta2) sum_delta2 += *trial.confidence_result.delta2;
                sum_abs_error += trial.abs_error;
                sum_blu += trial.b_lu_estimate;
                covered += trial.covered ? 1 : 0;
            }
            const auto dreps = static_cast<double>(reps);
            record.mean_delta = sum_delta / dreps;
            record.mean_delta1 = sum_delta1 / dreps;
            record.mean_delta2 = trials >= 2 ? sum_delta2 / dreps : kNaN;
            record.mean_abs_error = sum_abs_error / dreps;
            record.coverage = static_cast<double>(covered) / dreps;
            record.mean_b_lu_estimate = trials >= 2 ? sum_blu / dreps : kNaN;
            records.push_back(std::move(record));
        }
    }

    std::sort(records.begin(), records.end(), [](const SummaryRecord& a, const SummaryRecord& b) {
        if (a.variant != b.variant) return a.variant < b.variant;
        if (a.atoms != b.atoms) return a.atoms < b.atoms;
        return a.trials < b.trials;
    });
    return records;
}

void enumerate_outcome_counts(const StatisticalModel& model, double phi, int trials,
                              const std::function<void(const DataAggregate&, double)>& visit) {
    if (!model.outcomes.discrete() || !model.pmf)
        throw std::invalid_argument("enumerate_outcome_counts: model has no discrete support");
    if (trials < 1)
        throw std::invalid_argument("enumerate_outcome_counts: trials must be positive");

    const auto& support = model.outcomes.support;
    const int k_outcomes = static_cast<int>(support.size());

    // Number of count vectors is C(n + K - 1, K - 1); enforce the budget.
    double vectors = 1.0;
    for (int i = 1; i <= k_outcomes - 1; ++i) {
        vectors *= static_cast<double>(trials + i) / static_cast<double>(i);
        if (vectors > kEnumerationBudget)
            throw std::length_error("enumerate_outcome_counts: count-vector budget exceeded");
    }

    std::vector<double> probs(support.size());
    std::vector<double> log_probs(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        probs[i] = model.pmf(support[i], phi);
        log_probs[i] = probs[i] > 0.0 ? std::log(probs[i])
                                      : -std::numeric_limits<double>::infinity();
    }

    const bool exact_weights = trials <= 25;
    const double lgamma_n = std::lgamma(static_cast<double>(trials) + 1.0);

    std::vector<int> counts(support.size(), 0);

    const std::function<void(int, int)> recurse = [&](int slot, int remaining) {
        if (slot == k_outcomes - 1) {
            counts[slot] = remaining;

            double weight;
            if (exact_weights) {
                weight = 1.0;
                int left = trials;
                for (int i = 0; i < k_outcomes; ++i) {
                    const int c = counts[i];
                    if (c == 0) continue;
                    if (probs[i] <= 0.0) { weight = 0.0; break; }
                    weight *= binomial_coefficient(left, c);
                    for (int j = 0; j < c; ++j) weight *= probs[i];
                    left -= c;
                }
            } else {
                double log_weight = lgamma_n;
                bool impossible = false;
                for (int i = 0; i < k_outcomes; ++i) {
                    const int c = counts[i];
                    if (c == 0) continue;
                    if (probs[i] <= 0.0) { impossible = true; break; }
                    log_weight += c * log_probs[i] - std::lgamma(static_cast<double>(c) + 1.0);
                }
                weight = impossible ? 0.0 : std::exp(log_weight);
            }

            if (weight > 0.0) {
                double sum = 0.0;
                for (int i = 0; i < k_outcomes; ++i) sum += counts[i] * support[i];
                const double mean = sum / static_cast<double>(trials);

                DataAggregate agg;
                agg.count = trials;
                agg.sample_mean = mean;
                agg.lower = model.outcomes.lower;
                agg.upper = model.outcomes.upper;
                if (trials >= 2) {
                    double m2 = 0.0;
                    for (int i = 0; i < k_outcomes; ++i) {
                        const double d = support[i] - mean;
                        m2 += counts[i] * d * d;
                    }
                    agg.sample_variance = m2 / static_cast<double>(trials - 1);
                }
                visit(agg, weight);
            }
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[slot] = c;
            recurse(slot + 1, remaining - c);
        }
    };
    recurse(0, trials);
}

double exact_coverage(const StatisticalModel& model, double phi_true, int trials,
                      double epsilon) {
    double covered = 0.0;
    enumerate_outcome_counts(model, phi_true, trials,
                             [&](const DataAggregate& agg, double weight) {
                                 const ConfidenceResult conf = confidence(model, agg, epsilon);
                                 if (std::abs(conf.phi_ls - phi_true) <= conf.delta)
                                     covered += weight;
                             });
    return std::min(covered, 1.0);
}

double loglog_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3)
        throw std::invalid_argument("loglog_slope: needs at least three points");

    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0))
            throw std::domain_error("loglog_slope: coordinates must be positive");
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mean_x = sx / static_cast<double>(points.size());
    const double mean_y = sy / static_cast<double>(points.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - mean_y);
    }
    if (!(sxx > 0.0))
        throw std::domain_error("loglog_slope: x coordinates must not all coincide");
    return sxy / sxx;
}

} // namespace phaseci
