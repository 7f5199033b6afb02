#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "phaseci/benchmark.hpp"
#include "phaseci/estimator.hpp"
#include "phaseci/ramsey.hpp"
#include "phaseci/random.hpp"

using namespace phaseci;

namespace {

constexpr double kPi = std::numbers::pi;

// frozen hand evaluation of 0.01 * sqrt(2 ln 40)
constexpr double kAsymptoticBound = 0.02716203031481239;

} // namespace

TEST_CASE("b_lu takes its closed-form values for the interferometer models") {
    const ParameterInterval interval(0.0, kPi / 400.0);
    for (const int atoms : {1, 4, 25, 100}) {
        const auto sep = separable_model(
            {atoms, standard_reference_phase(RamseyVariant::separable_energy, atoms),
             RamseyVariant::separable_energy},
            interval);
        const auto ghz =
            ghz_model({atoms, standard_reference_phase(RamseyVariant::ghz_parity, atoms),
                       RamseyVariant::ghz_parity},
                      interval);
        for (int i = 0; i <= 8; ++i) {
            const double phi = interval.lo + interval.width() * i / 8.0;
            CHECK(b_lu(sep, phi) ==
                  doctest::Approx(1.0 / std::sqrt(double(atoms))).epsilon(1e-12));
            CHECK(b_lu(ghz, phi) == doctest::Approx(1.0 / double(atoms)).epsilon(1e-12));
        }
    }

    SUBCASE("variance equal to the squared slope gives unity") {
        StatisticalModel model;
        model.interval = ParameterInterval(0.0, 1.0);
        model.outcomes.lower = -3.0;
        model.outcomes.upper = 3.0;
        model.mean = [](double phi) { return 2.0 * phi; };
        model.dmean = [](double) { return 2.0; };
        model.d2mean = [](double) { return 0.0; };
        model.variance = [](double) { return 4.0; };
        CHECK(b_lu(model, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("b_lu_estimate is the plug-in value") {
    StatisticalModel model;
    model.interval = ParameterInterval(-2.0, 2.0);
    model.outcomes.lower = -2.0;
    model.outcomes.upper = 2.0;
    model.mean = [](double phi) { return phi; };
    model.dmean = [](double) { return 1.0; };
    model.d2mean = [](double) { return 0.0; };
    model.variance = [](double) { return 4.0 / 3.0; };
    model.analytic_curvature = 0.0;

    SUBCASE("zero sample variance") {
        const std::vector<double> xs{1.0, 1.0, 1.0};
        CHECK(b_lu_estimate(model, aggregate(xs, -2.0, 2.0)) == 0.0);
    }

    SUBCASE("sample variance matching the model variance reproduces b_lu") {
        const std::vector<double> xs{0.0, 0.0, 2.0, 2.0}; // mean 1, V_n = 4/3
        const DataAggregate agg = aggregate(xs, -2.0, 2.0);
        REQUIRE(agg.sample_variance.value() == doctest::Approx(4.0 / 3.0));
        CHECK(b_lu_estimate(model, agg) ==
              doctest::Approx(b_lu(model, ls_estimate(model, agg))).epsilon(1e-15));
    }

    SUBCASE("single trial is rejected") {
        const std::vector<double> xs{1.0};
        CHECK_THROWS_AS(b_lu_estimate(model, aggregate(xs, -2.0, 2.0)), std::domain_error);
    }
}

TEST_CASE("b_lu_estimate converges toward 1/N for narrow-fringe GHZ data") {
    const int atoms = 100;
    const auto ghz = ghz_model({atoms, standard_reference_phase(RamseyVariant::ghz_parity, atoms),
                                RamseyVariant::ghz_parity},
                               ParameterInterval(0.0, kPi / 400.0));
    const auto estimate_at = [&](int n, std::uint64_t seed) {
        RandomStream stream(seed);
        std::vector<double> xs(n);
        for (double& x : xs) x = ghz.sampler(kPi / 4000.0, stream.next_unit());
        return b_lu_estimate(ghz, aggregate(xs, -1.0, 1.0));
    };
    const double small_n = estimate_at(300, 11u);
    const double large_n = estimate_at(30000, 11u);
    CHECK(std::abs(large_n - 0.01) < std::abs(small_n - 0.01));
    CHECK(large_n == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("asymptotic delta bound") {
    CHECK(asymptotic_delta_bound(0.0, 0.1) == 0.0);
    CHECK(asymptotic_delta_bound(0.3, 4.0 / std::exp(2.0)) ==
          doctest::Approx(0.6).epsilon(1e-14)); // sqrt(2*2) = 2
    CHECK(asymptotic_delta_bound(0.01, 0.1) ==
          doctest::Approx(kAsymptoticBound).epsilon(1e-15));
    CHECK(asymptotic_delta_bound(0.01, 0.1) ==
          doctest::Approx(0.01 * std::sqrt(2.0 * std::log(40.0))).epsilon(1e-15));
    CHECK_THROWS_AS(asymptotic_delta_bound(1.0, 0.0), std::domain_error);
}

TEST_CASE("classical Fisher information") {
    const ParameterInterval interval(0.0, kPi / 400.0);

    SUBCASE("GHZ parity is a Bernoulli model with information N^2") {
        for (const int atoms : {1, 10}) {
            const auto ghz =
                ghz_model({atoms, standard_reference_phase(RamseyVariant::ghz_parity, atoms),
                           RamseyVariant::ghz_parity},
                          interval);
            const double phi = kPi / 4000.0;
            CHECK(fisher_classical(ghz, phi) ==
                  doctest::Approx(double(atoms) * atoms).epsilon(1e-6));
        }
    }

    SUBCASE("separable energy readout carries information N") {
        const auto sep = separable_model(
            {10, standard_reference_phase(RamseyVariant::separable_energy, 10),
             RamseyVariant::separable_energy},
            interval);
        CHECK(fisher_classical(sep, kPi / 4000.0) == doctest::Approx(10.0).epsilon(1e-6));
    }

    SUBCASE("phase-independent pmf carries no information") {
        StatisticalModel model;
        model.interval = ParameterInterval(0.0, 1.0);
        model.outcomes.lower = 0.0;
        model.outcomes.upper = 1.0;
        model.outcomes.support = {0.0, 1.0};
        model.mean = [](double phi) { return phi; }; // unused here
        model.dmean = [](double) { return 1.0; };
        model.d2mean = [](double) { return 0.0; };
        model.pmf = [](double x, double) { return x == 1.0 ? 0.3 : 0.7; };
        CHECK(fisher_classical(model, 0.5) == 0.0);
    }

    SUBCASE("vanishing pmf with a live derivative is a singular support") {
        StatisticalModel model;
        model.interval = ParameterInterval(0.0, 1.0);
        model.outcomes.lower = 0.0;
        model.outcomes.upper = 1.0;
        model.outcomes.support = {0.0, 1.0};
        model.mean = [](double phi) { return phi; };
        model.dmean = [](double) { return 1.0; };
        model.d2mean = [](double) { return 0.0; };
        model.pmf = [](double x, double phi) { return x == 1.0 ? phi : 1.0 - phi; };
        CHECK_THROWS_AS(fisher_classical(model, 1e-16), std::runtime_error);
    }

    SUBCASE("Cramer-Rao ordering: the two interferometer LUs saturate the bound") {
        for (const int atoms : {1, 5, 20}) {
            for (const RamseyVariant variant :
                 {RamseyVariant::separable_energy, RamseyVariant::ghz_parity}) {
                const auto model = make_ramsey_model(
                    variant, atoms, standard_reference_phase(variant, atoms), interval);
                for (int i = 1; i < 8; ++i) {
                    const double phi = interval.lo + interval.width() * i / 8.0;
                    const double crb = 1.0 / std::sqrt(fisher_classical(model, phi));
                    const double lu = b_lu(model, phi);
                    CHECK(crb <= lu * (1.0 + 1e-6));
                    CHECK(crb == doctest::Approx(lu).epsilon(1e-6));
                }
            }
        }
    }
}

TEST_CASE("benchmark report is internally consistent") {
    const auto ghz = ghz_model({10, standard_reference_phase(RamseyVariant::ghz_parity, 10),
                                RamseyVariant::ghz_parity},
                               ParameterInterval(0.0, kPi / 400.0));
    RandomStream stream(5u);
    std::vector<double> xs(500);
    for (double& x : xs) x = ghz.sampler(kPi / 4000.0, stream.next_unit());
    const DataAggregate agg = aggregate(xs, -1.0, 1.0);

    const BenchmarkReport report = make_benchmark_report(ghz, kPi / 4000.0, agg, 0.1);
    CHECK(report.b_lu >= 0.0);
    CHECK(report.b_lu_estimate >= 0.0);
    CHECK(report.fisher_classical >= 0.0);
    CHECK(report.lu == report.b_lu / std::sqrt(500.0));
    CHECK(report.asymptotic_delta_bound ==
          doctest::Approx(asymptotic_delta_bound(report.b_lu, 0.1)));
}
