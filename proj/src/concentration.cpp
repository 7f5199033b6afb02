#include "phaseci/concentration.hpp"

#include <cmath>
#include <string>

namespace phaseci {

DataAggregate aggregate(std::span<const double> outcomes, double lower, double upper) {
    if (outcomes.empty())
        throw std::invalid_argument("aggregate: outcome sequence is empty");
    if (!(lower <= upper))
        throw std::invalid_argument("aggregate: lower bound exceeds upper bound");

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const double x = outcomes[i];
        if (!(x >= lower && x <= upper))
            throw bounds_error("aggregate: outcome at index " + std::to_string(i) +
                                   " (" + std::to_string(x) + ") outside [" +
                                   std::to_string(lower) + ", " + std::to_string(upper) + "]",
                               i);
    }

    const auto n = static_cast<std::int64_t>(outcomes.size());
    double sum = 0.0;
    for (double x : outcomes) sum += x;
    const double mean = sum / static_cast<double>(n);

    DataAggregate agg;
    agg.count = n;
    agg.sample_mean = mean;
    agg.lower = lower;
    agg.upper = upper;
    if (n >= 2) {
        double m2 = 0.0;
        for (double x : outcomes) {
            const double d = x - mean;
            m2 += d * d;
        }
        agg.sample_variance = m2 / static_cast<double>(n - 1);
    }
    return agg;
}

DataAggregate merge(const DataAggregate& a, const DataAggregate& b) {
    if (a.count <= 0 || b.count <= 0)
        throw std::invalid_argument("merge: aggregates must hold at least one outcome");

    const double na = static_cast<double>(a.count);
    const double nb = static_cast<double>(b.count);
    const double n = na + nb;

    DataAggregate out;
    out.count = a.count + b.count;
    out.lower = std::min(a.lower, b.lower);
    out.upper = std::max(a.upper, b.upper);
    out.sample_mean = (na * a.sample_mean + nb * b.sample_mean) / n;
    if (out.count >= 2) {
        // Chan's pairwise update on the centered second moments.
        const double m2a = a.sample_variance ? *a.sample_variance * (na - 1.0) : 0.0;
        const double m2b = b.sample_variance ? *b.sample_variance * (nb - 1.0) : 0.0;
        const double d = b.sample_mean - a.sample_mean;
        const double m2 = m2a + m2b + d * d * na * nb / n;
        out.sample_variance = m2 / (n - 1.0);
    }
    return out;
}

namespace {

void check_epsilon(double epsilon, const char* where) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error(std::string(where) + ": epsilon must lie in (0, 1), got " +
                                std::to_string(epsilon));
}

} // namespace

double hoeffding_radius(std::int64_t n, double v_max, double epsilon) {
    if (n < 1)
        throw std::domain_error("hoeffding_radius: n must be a positive integer");
    if (!(v_max >= 0.0))
        throw std::domain_error("hoeffding_radius: v_max must be nonnegative");
    check_epsilon(epsilon, "hoeffding_radius");
    return std::sqrt((2.0 / static_cast<double>(n)) * v_max * std::log(2.0 / epsilon));
}

double empirical_bernstein_radius(std::int64_t n, double v_n, double range, double epsilon) {
    if (n < 2)
        throw std::domain_error("empirical_bernstein_radius: n must be at least 2");
    if (!(v_n >= 0.0))
        throw std::domain_error("empirical_bernstein_radius: v_n must be nonnegative");
    if (!(range >= 0.0))
        throw std::domain_error("empirical_bernstein_radius: range must be nonnegative");
    check_epsilon(epsilon, "empirical_bernstein_radius");

    const double log_term = std::log(4.0 / epsilon);
    const double dn = static_cast<double>(n);
    return std::sqrt((2.0 / dn) * v_n * log_term) +
           (8.0 * range / (3.0 * (dn - 1.0))) * log_term;
}

} // namespace phaseci
