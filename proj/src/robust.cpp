#include "phaseci/robust.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phaseci/estimator.hpp"

namespace phaseci {

namespace {

std::string format_eta(std::span<const double> eta) {
    std::string text = "(";
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (i) text += ", ";
        text += std::to_string(eta[i]);
    }
    return text + ")";
}

double axis_value(const NoiseAxis& axis, int index) {
    if (axis.points <= 1) return axis.lo;
    return axis.lo + (axis.hi - axis.lo) * static_cast<double>(index) /
                         static_cast<double>(axis.points - 1);
}

} // namespace

std::size_t NoiseRegion::total_points() const {
    std::size_t total = 1;
    for (const auto& axis : axes) {
        if (axis.points < 1)
            throw std::invalid_argument("NoiseRegion: every axis needs at least one point");
        if (!(axis.lo <= axis.hi))
            throw std::invalid_argument("NoiseRegion: axis interval is empty");
        const auto points = static_cast<std::size_t>(axis.points);
        if (total > kNoiseGridBudget / points)
            throw std::length_error("NoiseRegion: grid exceeds the evaluation budget");
        total *= points;
    }
    return total;
}

DeltaTildeResult delta_tilde(const NoisyModelFamily& family, const DataAggregate& agg,
                             double epsilon, std::span<const double> eta_assumed,
                             const NoiseRegion& region) {
    if (region.axes.empty())
        throw std::invalid_argument("delta_tilde: noise region has no axes");
    const std::size_t total = region.total_points();

    const StatisticalModel assumed_model = family(eta_assumed);
    const double phi_assumed = ls_estimate(assumed_model, agg);

    DeltaTildeResult result;
    result.value = -1.0;

    std::vector<int> index(region.axes.size(), 0);
    std::vector<double> eta(region.axes.size(), 0.0);
    for (std::size_t point = 0; point < total; ++point) {
        for (std::size_t axis = 0; axis < region.axes.size(); ++axis)
            eta[axis] = axis_value(region.axes[axis], index[axis]);

        double objective = 0.0;
        try {
            const StatisticalModel model = family(eta);
            const ConfidenceResult conf = confidence(model, agg, epsilon);
            objective = std::abs(phi_assumed - conf.phi_ls) + conf.delta;
        } catch (const assumption_error& err) {
            throw assumption_error("delta_tilde: invalid model at eta = " + format_eta(eta) +
                                   ": " + err.what());
        }

        ++result.evaluated;
        if (objective > result.value) {
            result.value = objective;
            result.worst_eta = eta;
        }

        // odometer step
        for (std::size_t axis = 0; axis < index.size(); ++axis) {
            if (++index[axis] < region.axes[axis].points) break;
            index[axis] = 0;
        }
    }
    return result;
}

} // namespace phaseci
