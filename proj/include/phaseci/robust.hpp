#ifndef PHASECI_ROBUST_HPP
#define PHASECI_ROBUST_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "phaseci/concentration.hpp"
#include "phaseci/model.hpp"

namespace phaseci {

/// One axis of the noise box: closed interval [lo, hi] sampled at `points`
/// equally spaced values (points = 1 collapses the axis to lo).
struct NoiseAxis {
    double lo = 0.0;
    double hi = 0.0;
    int points = 1;
};

/// Box E over the flattened noise vector. The total grid size is capped so a
/// full scan stays tractable.
struct NoiseRegion {
    std::vector<NoiseAxis> axes;

    std::size_t total_points() const;
};

inline constexpr std::size_t kNoiseGridBudget = 10'000'000;

/// Maps a noise vector to a statistical model on a fixed interval and
/// outcome space. Every vector inside the region must yield a valid model.
using NoisyModelFamily = std::function<StatisticalModel(std::span<const double>)>;

/// Worst-case confidence radius for a possibly wrong noise guess. The value
/// is a maximum over the finite grid only, hence a lower bound on the
/// continuum maximum; grid_lower_bound records that caveat.
struct DeltaTildeResult {
    double value = 0.0;
    bool grid_lower_bound = true;
    std::size_t evaluated = 0;
    std::vector<double> worst_eta;
};

/// max over grid eta in E of  |phi_ls(x, eta_assumed) - phi_ls(x, eta)| + delta(x, epsilon, eta),
/// each term computed with the eta-specific model. eta_assumed need not lie
/// inside E. Throws assumption_error (naming the grid point) when the family
/// produces an invalid model anywhere on the grid.
DeltaTildeResult delta_tilde(const NoisyModelFamily& family, const DataAggregate& agg,
                             double epsilon, std::span<const double> eta_assumed,
                             const NoiseRegion& region);

} // namespace phaseci

#endif // PHASECI_ROBUST_HPP
