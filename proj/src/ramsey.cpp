#include "phaseci/ramsey.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace phaseci {

namespace {

constexpr int kConstructionGrid = 1001;

/// Inverse-CDF draw over an explicit support: the first point whose partial
/// pmf sum exceeds u. Shared by the model samplers and the simulation
/// harness so both produce identical outcomes from identical uniforms.
double inverse_cdf_draw(const StatisticalModel& model, double phi, double u) {
    double cumulative = 0.0;
    const auto& support = model.outcomes.support;
    for (std::size_t i = 0; i + 1 < support.size(); ++i) {
        cumulative += model.pmf(support[i], phi);
        if (u < cumulative) return support[i];
    }
    return support.back();
}

void certify(const StatisticalModel& model, const char* what) {
    const AssumptionReport report = validate_assumptions(model, kConstructionGrid);
    if (!report.all_pass())
        throw assumption_error(std::string(what) +
                               ": assumptions fail on the requested interval (A2 " +
                               (report.outcomes_bounded ? "ok" : "fail") + ", A3 " +
                               (report.mean_injective ? "ok" : "fail") + ", A4 " +
                               (report.derivative_nonzero ? "ok" : "fail") +
                               ", min |f'| = " + std::to_string(report.min_abs_dmean) + ")");
}

double log_binomial_pmf(int n, int k, double q) {
    if (q <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (q >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
           k * std::log(q) + (n - k) * std::log1p(-q);
}

} // namespace

RamseyVariant variant_from_name(std::string_view name) {
    if (name == "separable_energy") return RamseyVariant::separable_energy;
    if (name == "ghz_parity") return RamseyVariant::ghz_parity;
    throw std::invalid_argument("unknown model variant '" + std::string(name) +
                                "' (expected separable_energy or ghz_parity)");
}

std::string_view variant_name(RamseyVariant variant) {
    return variant == RamseyVariant::separable_energy ? "separable_energy" : "ghz_parity";
}

StatisticalModel separable_model(const RamseyConfig& config, const ParameterInterval& interval,
                                 Validation validation) {
    if (config.atoms < 1)
        throw std::invalid_argument("separable_model: atoms must be at least 1");

    const int atoms = config.atoms;
    const double n_atoms = static_cast<double>(atoms);
    const double phi0 = config.reference_phase;

    StatisticalModel model;
    model.name = std::string(variant_name(RamseyVariant::separable_energy)) + "(N=" +
                 std::to_string(atoms) + ")";
    model.interval = interval;
    model.outcomes.lower = -n_atoms;
    model.outcomes.upper = n_atoms;
    model.outcomes.support.reserve(atoms + 1);
    for (int k = 0; k <= atoms; ++k)
        model.outcomes.support.push_back(-n_atoms + 2.0 * k);

    model.mean = [n_atoms, phi0](double phi) { return n_atoms * std::sin(phi - phi0); };
    model.dmean = [n_atoms, phi0](double phi) { return n_atoms * std::cos(phi - phi0); };
    model.d2mean = [n_atoms, phi0](double phi) { return -n_atoms * std::sin(phi - phi0); };
    model.variance = [n_atoms, phi0](double phi) {
        const double c = std::cos(phi - phi0);
        return n_atoms * c * c;
    };
    model.pmf = [atoms, n_atoms, phi0](double x, double phi) -> double {
        const double k_real = 0.5 * (n_atoms + x);
        const int k = static_cast<int>(std::lround(k_real));
        if (k < 0 || k > atoms || std::abs(k_real - k) > 1e-9) return 0.0;
        const double q = 0.5 * (1.0 + std::sin(phi - phi0));
        const double logp = log_binomial_pmf(atoms, k, q);
        return std::isfinite(logp) ? std::exp(logp) : 0.0;
    };

    // |f''/f'^3| = |sin(u)/cos^3(u)| / N^2 with u = phi - phi0. The signed
    // integrand is strictly increasing wherever cos(u) != 0, so the maximum
    // of its magnitude over the interval sits at an endpoint.
    const auto kappa = [n_atoms, phi0](double phi) {
        const double u = phi - phi0;
        const double c = std::cos(u);
        return std::abs(std::sin(u) / (c * c * c)) / (n_atoms * n_atoms);
    };
    model.analytic_curvature = std::max(kappa(interval.lo), kappa(interval.hi));

    model.sampler = [model_copy = model](double phi, double u) {
        return inverse_cdf_draw(model_copy, phi, u);
    };

    if (validation == Validation::checked) certify(model, "separable_model");
    return model;
}

StatisticalModel ghz_model(const RamseyConfig& config, const ParameterInterval& interval,
                           Validation validation) {
    if (config.atoms < 1)
        throw std::invalid_argument("ghz_model: atoms must be at least 1");

    const double n_atoms = static_cast<double>(config.atoms);
    const double phi0 = config.reference_phase;
    const double half_pi = std::numbers::pi / 2.0;

    StatisticalModel model;
    model.name = std::string(variant_name(RamseyVariant::ghz_parity)) + "(N=" +
                 std::to_string(config.atoms) + ")";
    model.interval = interval;
    model.outcomes.lower = -1.0;
    model.outcomes.upper = 1.0;
    model.outcomes.support = {-1.0, 1.0};

    const auto angle = [n_atoms, phi0, half_pi](double phi) {
        return n_atoms * (phi - phi0 + half_pi);
    };
    model.mean = [angle](double phi) { return std::cos(angle(phi)); };
    model.dmean = [angle, n_atoms](double phi) { return -n_atoms * std::sin(angle(phi)); };
    model.d2mean = [angle, n_atoms](double phi) {
        return -n_atoms * n_atoms * std::cos(angle(phi));
    };
    model.variance = [angle](double phi) {
        const double s = std::sin(angle(phi));
        return s * s;
    };
    model.pmf = [angle](double x, double phi) -> double {
        if (x != 1.0 && x != -1.0) return 0.0;
        const double p = 0.5 * (1.0 + x * std::cos(angle(phi)));
        return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
    };

    // |f''/f'^3| = |cos(v)/sin^3(v)| / N with v the rotated angle; the signed
    // integrand is strictly decreasing wherever sin(v) != 0, so the maximum
    // of its magnitude sits at an interval endpoint.
    const auto kappa = [angle, n_atoms](double phi) {
        const double v = angle(phi);
        const double s = std::sin(v);
        return std::abs(std::cos(v) / (s * s * s)) / n_atoms;
    };
    model.analytic_curvature = std::max(kappa(interval.lo), kappa(interval.hi));

    model.sampler = [model_copy = model](double phi, double u) {
        return inverse_cdf_draw(model_copy, phi, u);
    };

    if (validation == Validation::checked) certify(model, "ghz_model");
    return model;
}

StatisticalModel make_ramsey_model(RamseyVariant variant, int atoms, double reference_phase,
                                   const ParameterInterval& interval, Validation validation) {
    RamseyConfig config{atoms, reference_phase, variant};
    return variant == RamseyVariant::separable_energy
               ? separable_model(config, interval, validation)
               : ghz_model(config, interval, validation);
}

double standard_reference_phase(RamseyVariant variant, int atoms) {
    if (atoms < 1)
        throw std::invalid_argument("standard_reference_phase: atoms must be at least 1");
    if (variant == RamseyVariant::separable_energy) return -std::numbers::pi / 8.0;
    return std::numbers::pi / 2.0 - std::numbers::pi / (10.0 * static_cast<double>(atoms));
}

} // namespace phaseci
