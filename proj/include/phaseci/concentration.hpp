#ifndef PHASECI_CONCENTRATION_HPP
#define PHASECI_CONCENTRATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace phaseci {

/// An outcome fell outside the declared [lower, upper] window. `index` is the
/// zero-based position of the offending value.
class bounds_error : public std::invalid_argument {
public:
    bounds_error(const std::string& what, std::size_t index)
        : std::invalid_argument(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// Sufficient statistics of a batch of bounded outcomes: trial count, sample
/// mean S_n, unbiased sample variance V_n (absent when n = 1), and the outcome
/// bounds a <= x <= b the data were validated against.
struct DataAggregate {
    std::int64_t count = 0;
    double sample_mean = 0.0;
    std::optional<double> sample_variance;
    double lower = 0.0;
    double upper = 0.0;

    double range() const { return upper - lower; }

    /// Worst-case variance of a [lower, upper]-bounded random variable.
    double v_max() const { return 0.25 * range() * range(); }
};

/// Builds the aggregate with a two-pass mean/variance computation.
/// Throws std::invalid_argument on empty input or lower > upper, and
/// bounds_error when an outcome leaves [lower, upper].
DataAggregate aggregate(std::span<const double> outcomes, double lower, double upper);

/// Aggregate of the concatenation of the two underlying batches. Bounds are
/// the envelope of the inputs.
DataAggregate merge(const DataAggregate& a, const DataAggregate& b);

/// Two-sided Hoeffding deviation radius sqrt((2/n) * v_max * ln(2/epsilon)):
/// |S_n - E[X]| exceeds it with probability at most epsilon.
double hoeffding_radius(std::int64_t n, double v_max, double epsilon);

/// Two-sided empirical Bernstein radius
///   sqrt((2/n) * v_n * ln(4/epsilon)) + (8 * range / (3 (n-1))) * ln(4/epsilon).
/// Requires n >= 2 since it is driven by the sample variance.
double empirical_bernstein_radius(std::int64_t n, double v_n, double range, double epsilon);

} // namespace phaseci

#endif // PHASECI_CONCENTRATION_HPP
