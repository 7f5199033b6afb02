#ifndef PHASECI_RAMSEY_HPP
#define PHASECI_RAMSEY_HPP

#include <string_view>

#include "phaseci/model.hpp"

namespace phaseci {

enum class RamseyVariant {
    separable_energy, // product state, total-energy measurement
    ghz_parity,       // GHZ state, parity measurement
};

RamseyVariant variant_from_name(std::string_view name);
std::string_view variant_name(RamseyVariant variant);

struct RamseyConfig {
    int atoms = 1;                 // N >= 1
    double reference_phase = 0.0;  // user-tuned phase of the pi/2 pulse
    RamseyVariant variant = RamseyVariant::separable_energy;
};

/// Whether the factory certifies assumptions A3/A4 on the interval at
/// construction (throws assumption_error on failure) or defers so that
/// validate_assumptions can report failures on a deliberately bad setup.
enum class Validation { checked, deferred };

/// N-atom product state with total-energy readout. Outcomes are the energy
/// eigenvalues {-N, -N+2, ..., N}; the count of excited atoms is binomial
/// with success probability (1 + sin(phi - phi0)) / 2, so the expected
/// outcome is N sin(phi - phi0).
StatisticalModel separable_model(const RamseyConfig& config, const ParameterInterval& interval,
                                 Validation validation = Validation::checked);

/// N-atom GHZ state with parity readout. Outcomes are {-1, +1} with
/// p(x) = (1 + x cos(N (phi - phi0 + pi/2))) / 2.
StatisticalModel ghz_model(const RamseyConfig& config, const ParameterInterval& interval,
                           Validation validation = Validation::checked);

StatisticalModel make_ramsey_model(RamseyVariant variant, int atoms, double reference_phase,
                                   const ParameterInterval& interval,
                                   Validation validation = Validation::checked);

/// Reference phases used throughout the scaling experiments:
/// -pi/8 for the separable variant, pi/2 - pi/(10 N) for the GHZ variant.
double standard_reference_phase(RamseyVariant variant, int atoms);

} // namespace phaseci

#endif // PHASECI_RAMSEY_HPP
