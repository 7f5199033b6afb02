#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "phaseci/concentration.hpp"
#include "phaseci/random.hpp"

using namespace phaseci;

namespace {

// Reference values computed by direct hand evaluation of the radius formulas.
constexpr double kHoeffding3000 = 4.468953847418872; // n=3000, v_max=1e4, eps=0.1
constexpr double kBernstein3000 = 0.05615105035351441; // n=3000, v_n=1, range=2, eps=0.1

std::vector<double> pm1_sample(RandomStream& stream, int n, double p_plus) {
    std::vector<double> xs(n);
    for (double& x : xs) x = stream.next_unit() < p_plus ? 1.0 : -1.0;
    return xs;
}

} // namespace

TEST_CASE("aggregate computes two-pass sufficient statistics") {
    const std::vector<double> two{0.0, 2.0};
    const DataAggregate agg = aggregate(two, -1.0, 3.0);
    CHECK(agg.count == 2);
    CHECK(agg.sample_mean == doctest::Approx(1.0));
    CHECK(agg.sample_variance.value() == doctest::Approx(2.0));
    CHECK(agg.v_max() == doctest::Approx(4.0));

    const std::vector<double> constant{0.7, 0.7, 0.7};
    const DataAggregate c = aggregate(constant, 0.0, 1.0);
    CHECK(c.sample_mean == doctest::Approx(0.7));
    CHECK(c.sample_variance.value() == doctest::Approx(0.0));

    const std::vector<double> parity{-1.0, 1.0, 1.0, 1.0};
    const DataAggregate p = aggregate(parity, -1.0, 1.0);
    CHECK(p.sample_mean == doctest::Approx(0.5));
    CHECK(p.sample_variance.value() == doctest::Approx(1.0));

    const std::vector<double> single{0.25};
    CHECK_FALSE(aggregate(single, 0.0, 1.0).sample_variance.has_value());
}

TEST_CASE("aggregate rejects bad input") {
    CHECK_THROWS_AS(aggregate(std::vector<double>{}, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(aggregate(std::vector<double>{0.5}, 1.0, 0.0), std::invalid_argument);

    const std::vector<double> bad{0.2, 0.4, 1.5, 0.1};
    try {
        aggregate(bad, 0.0, 1.0);
        FAIL("expected bounds_error");
    } catch (const bounds_error& err) {
        CHECK(err.index() == 2);
        CHECK(std::string(err.what()).find("index 2") != std::string::npos);
    }
}

TEST_CASE("aggregate invariants: mean in bounds, variance ceiling, permutation") {
    RandomStream stream(7081u);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 40);
        std::vector<double> xs(n);
        for (double& x : xs) x = -1.0 + 2.0 * stream.next_unit();
        const DataAggregate agg = aggregate(xs, -1.0, 1.0);

        CHECK(agg.sample_mean >= agg.lower);
        CHECK(agg.sample_mean <= agg.upper);
        const double ceiling = n * agg.range() * agg.range() / (4.0 * (n - 1));
        CHECK(agg.sample_variance.value() <= ceiling * (1.0 + 1e-12));

        std::vector<double> shuffled = xs;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[stream.next_u64() % i]);
        const DataAggregate again = aggregate(shuffled, -1.0, 1.0);
        CHECK(again.sample_mean == doctest::Approx(agg.sample_mean).epsilon(1e-12));
        CHECK(again.sample_variance.value() ==
              doctest::Approx(agg.sample_variance.value()).epsilon(1e-12));
    }

    // half-half extreme data attains the variance ceiling
    const std::vector<double> extreme{-1.0, -1.0, 1.0, 1.0};
    const DataAggregate agg = aggregate(extreme, -1.0, 1.0);
    CHECK(agg.sample_variance.value() == doctest::Approx(4.0 * 4.0 / (4.0 * 3.0)));
}

TEST_CASE("merged aggregates match the aggregate of concatenated data") {
    RandomStream stream(515u);
    for (int rep = 0; rep < 40; ++rep) {
        const int na = 1 + static_cast<int>(stream.next_u64() % 20);
        const int nb = 1 + static_cast<int>(stream.next_u64() % 20);
        std::vector<double> xs(na), ys(nb);
        for (double& x : xs) x = 3.0 * stream.next_unit();
        for (double& y : ys) y = 3.0 * stream.next_unit();

        std::vector<double> both = xs;
        both.insert(both.end(), ys.begin(), ys.end());

        const DataAggregate merged = merge(aggregate(xs, 0.0, 3.0), aggregate(ys, 0.0, 3.0));
        const DataAggregate direct = aggregate(both, 0.0, 3.0);
        CHECK(merged.count == direct.count);
        CHECK(merged.sample_mean == doctest::Approx(direct.sample_mean).epsilon(1e-12));
        if (direct.sample_variance)
            CHECK(merged.sample_variance.value() ==
                  doctest::Approx(direct.sample_variance.value()).epsilon(1e-12));
    }
}

TEST_CASE("hoeffding radius: values and domain errors") {
    CHECK(hoeffding_radius(4, 0.0, 0.1) == 0.0);
    CHECK(hoeffding_radius(2, 1.0, 2.0 / std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));

    const double direct = std::sqrt((2.0 / 3000.0) * 1e4 * std::log(20.0));
    CHECK(hoeffding_radius(3000, 1e4, 0.1) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(hoeffding_radius(3000, 1e4, 0.1) == doctest::Approx(kHoeffding3000).epsilon(1e-15));

    CHECK_THROWS_AS(hoeffding_radius(0, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(hoeffding_radius(10, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(hoeffding_radius(10, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hoeffding_radius(10, -1.0, 0.5), std::domain_error);
}

TEST_CASE("empirical Bernstein radius: values and domain errors") {
    CHECK(empirical_bernstein_radius(5, 0.0, 0.0, 0.1) == 0.0);

    // eps = 4/e^2 makes ln(4/eps) = 2: sqrt(2*2*2/2) + (8*3/(3*1))*2 = 2 + 16
    const double eps = 4.0 / std::exp(2.0);
    CHECK(empirical_bernstein_radius(2, 2.0, 3.0, eps) == doctest::Approx(18.0).epsilon(1e-13));

    const double direct =
        std::sqrt((2.0 / 3000.0) * std::log(40.0)) + (16.0 / (3.0 * 2999.0)) * std::log(40.0);
    CHECK(empirical_bernstein_radius(3000, 1.0, 2.0, 0.1) ==
          doctest::Approx(direct).epsilon(1e-15));
    CHECK(empirical_bernstein_radius(3000, 1.0, 2.0, 0.1) ==
          doctest::Approx(kBernstein3000).epsilon(1e-15));

    CHECK_THROWS_AS(empirical_bernstein_radius(1, 1.0, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(empirical_bernstein_radius(10, 1.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("radii shrink with more data and looser risk") {
    double prev_h = hoeffding_radius(1, 2.5, 0.2);
    double prev_b = empirical_bernstein_radius(2, 2.5, 3.0, 0.2);
    for (std::int64_t n = 2; n < 2000; n *= 3) {
        CHECK(hoeffding_radius(n, 2.5, 0.2) <= prev_h);
        prev_h = hoeffding_radius(n, 2.5, 0.2);
        if (n >= 3) {
            CHECK(empirical_bernstein_radius(n, 2.5, 3.0, 0.2) <= prev_b);
            prev_b = empirical_bernstein_radius(n, 2.5, 3.0, 0.2);
        }
    }
    for (double eps = 0.05; eps < 0.9; eps += 0.05) {
        CHECK(hoeffding_radius(50, 2.5, eps + 0.05) <= hoeffding_radius(50, 2.5, eps));
        CHECK(empirical_bernstein_radius(50, 2.5, 3.0, eps + 0.05) <=
              empirical_bernstein_radius(50, 2.5, 3.0, eps));
    }
}

TEST_CASE("empirical violation rate stays within epsilon plus sampling slack") {
    const double p_plus = 0.37;
    const double mean = 2.0 * p_plus - 1.0;
    const int batches = 100000;

    const struct { int n; double eps; } cells[] = {{10, 0.1}, {100, 0.1}, {100, 0.5}};
    for (const auto& cell : cells) {
        RandomStream stream(stream_key(90210u, "violation", cell.n,
                                       static_cast<std::uint64_t>(cell.eps * 1000), 0));
        int hoeffding_violations = 0;
        int bernstein_violations = 0;
        const double h_radius = hoeffding_radius(cell.n, 1.0, cell.eps);
        for (int b = 0; b < batches; ++b) {
            const std::vector<double> xs = pm1_sample(stream, cell.n, p_plus);
            const DataAggregate agg = aggregate(xs, -1.0, 1.0);
            if (std::abs(agg.sample_mean - mean) > h_radius) ++hoeffding_violations;
            const double b_radius = empirical_bernstein_radius(
                cell.n, agg.sample_variance.value(), 2.0, cell.eps);
            if (std::abs(agg.sample_mean - mean) > b_radius) ++bernstein_violations;
        }
        const double slack = 3.0 * std::sqrt(cell.eps * (1.0 - cell.eps) / batches);
        CHECK(hoeffding_violations / double(batches) <= cell.eps + slack);
        CHECK(bernstein_violations / double(batches) <= cell.eps + slack);
    }
}

TEST_CASE("exact violation probability over all outcome strings stays below epsilon") {
    for (const double p_plus : {0.5, 0.9}) {
        for (const int n : {5, 10, 15}) {
            for (const double eps : {0.1, 0.5}) {
                const double mean = 2.0 * p_plus - 1.0;
                const double h_radius = hoeffding_radius(n, 1.0, eps);
                double hoeffding_mass = 0.0;
                double bernstein_mass = 0.0;
                std::vector<double> xs(n);
                for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
                    double prob = 1.0;
                    for (int i = 0; i < n; ++i) {
                        const bool plus = (bits >> i) & 1u;
                        xs[i] = plus ? 1.0 : -1.0;
                        prob *= plus ? p_plus : 1.0 - p_plus;
                    }
                    const DataAggregate agg = aggregate(xs, -1.0, 1.0);
                    if (std::abs(agg.sample_mean - mean) > h_radius) hoeffding_mass += prob;
                    const double b_radius = empirical_bernstein_radius(
                        n, agg.sample_variance.value(), 2.0, eps);
                    if (std::abs(agg.sample_mean - mean) > b_radius) bernstein_mass += prob;
                }
                CHECK(hoeffding_mass <= eps);
                CHECK(bernstein_mass <= eps);
            }
        }
    }
}
