#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "random_models.hpp"
#include "spcd/error.hpp"
#include "spcd/measure.hpp"

using namespace spcd;
using MK = ExtendedMeasure::Kind;

namespace {

constexpr double kLn2 = std::numbers::ln2;

ProductFactors constant_volumes(double v) { return ProductFactors::direct(SequenceSpec({}, tail::Constant{v})); }

std::vector<FlowModel> one_of_each_family() {
    return {
        model::FoersterLasota{2.0},
        model::BlackScholes{0.05, 0.2},
        model::Malthusian{SequenceSpec({0.3, -0.1}, tail::Geometric{0.5, 0.5})},
        model::Fourier{{0.1, 1.0, -0.02}, 20.0},
        model::Fourier{{0.0, 0.0, 1.0}, 1.0},
        model::Maclaurin{{0.2, -0.5, 0.01, -0.001}},
    };
}

}  // namespace

TEST_CASE("ExtendedMeasure construction") {
    CHECK_THROWS(ExtendedMeasure::finite(0.0));
    CHECK_THROWS(ExtendedMeasure::finite(-1.0));
    CHECK_THROWS(ExtendedMeasure::finite(INFINITY));
    CHECK(ExtendedMeasure::finite(2.5).value() == 2.5);
    CHECK(ExtendedMeasure::from_log(std::log(3.0)).value() == doctest::Approx(3.0).epsilon(1e-15));
    // finite payloads far outside double range stay finite through their log
    CHECK(ExtendedMeasure::from_log(-1e6).is_finite());
    CHECK(ExtendedMeasure::from_log(-1e6).log_value() == -1e6);
    CHECK(pushforward(ExtendedMeasure::from_log(1e6), ExtendedMeasure::from_log(-1e6)).log_value() == 0.0);
}

TEST_CASE("pushforward arithmetic") {
    const ExtendedMeasure m = ExtendedMeasure::finite(3.0);
    CHECK(pushforward(m, ExtendedMeasure::finite(1.0)).value() == 3.0);
    CHECK(pushforward(m, ExtendedMeasure::finite(0.5)).value() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(pushforward(m, ExtendedMeasure::zero()).is_zero());
    CHECK(pushforward(m, ExtendedMeasure::infinite()).is_infinite());
    CHECK(pushforward(ExtendedMeasure::zero(), ExtendedMeasure::infinite()).is_zero());
    CHECK(pushforward(ExtendedMeasure::zero(), ExtendedMeasure::undefined()).is_zero());
    CHECK(pushforward(m, ExtendedMeasure::undefined()).is_undefined());
    CHECK(pushforward(ExtendedMeasure::infinite(), ExtendedMeasure::undefined()).is_undefined());
    CHECK(pushforward(ExtendedMeasure::infinite(), m).is_infinite());
}

TEST_CASE("rectangle_measure examples") {
    CHECK(rectangle_measure({AlphaBlocking(), constant_volumes(1.0)}) == ExtendedMeasure::finite(1.0));
    CHECK(rectangle_measure({AlphaBlocking(), constant_volumes(0.5)}).is_zero());

    // volumes exp(2^{-k})
    const RectangleSpec r{AlphaBlocking(), ProductFactors::exponential(SequenceSpec({}, tail::Geometric{1.0, 0.5}))};
    const ExtendedMeasure e2 = rectangle_measure(r);
    REQUIRE(e2.is_finite());
    CHECK(std::abs(e2.value() - std::exp(2.0)) <= 1e-10 * std::exp(2.0));
    const double brute = oracle::log_partial_product([](std::size_t k) { return std::exp(std::ldexp(1.0, -static_cast<int>(k))); }, 10000);
    CHECK(std::abs(std::exp(brute) - e2.value()) <= 1e-10 * e2.value());
}

TEST_CASE("rectangle_measure rejects rectangles outside the class") {
    CHECK_THROWS_AS((void)rectangle_measure({AlphaBlocking(), constant_volumes(2.0)}), InvalidRectangle);
    CHECK_THROWS_AS((void)rectangle_measure({AlphaBlocking(), constant_volumes(-1.0)}), InvalidRectangle);
    const RectangleSpec flip{AlphaBlocking(),
                             ProductFactors::exponential(SequenceSpec({}, tail::AlternatingPowerLaw{kLn2, 0.0}))};
    CHECK_THROWS_AS((void)rectangle_measure(flip), InvalidRectangle);
}

TEST_CASE("rectangle from sides: blocking can make an oscillating product exist") {
    const ProductFactors sides = ProductFactors::exponential(SequenceSpec({}, tail::AlternatingPowerLaw{kLn2, 0.0}));
    const ExtendedMeasure blocked = rectangle_measure_from_sides(AlphaBlocking::uniform(2), sides);
    REQUIRE(blocked.is_finite());
    CHECK(std::abs(blocked.value() - 1.0) <= 1e-10);
    CHECK_THROWS_AS((void)rectangle_measure_from_sides(AlphaBlocking(), sides), InvalidRectangle);
}

TEST_CASE("property: rectangle measure is multiplicative over a split into head cells and the rest") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    std::uniform_real_distribution<double> g(-0.9, 0.9);
    for (int trial = 0; trial < 300; ++trial) {
        const SequenceSpec rest({}, tail::Geometric{g(rng), g(rng)});
        std::vector<double> head(1 + rng() % 5);
        double head_product = 1.0;
        for (double& h : head) head_product *= (h = u(rng));
        std::vector<double> log_head;
        for (double h : head) log_head.push_back(std::log(h));
        const ExtendedMeasure whole =
            rectangle_measure({AlphaBlocking(), ProductFactors::exponential(rest.with_prefix(log_head))});
        const ExtendedMeasure tail_part = rectangle_measure({AlphaBlocking(), ProductFactors::exponential(rest)});
        REQUIRE(whole.is_finite());
        REQUIRE(tail_part.is_finite());
        CHECK(std::abs(whole.value() - head_product * tail_part.value()) <= 1e-12 * whole.value());
    }
}

TEST_CASE("liouville_factor examples") {
    for (const FlowModel& m : one_of_each_family()) {
        CHECK(liouville_factor(m, 0.0, MeasureFlavor::Ordinary) == ExtendedMeasure::finite(1.0));
        CHECK(liouville_factor(m, 0.0, MeasureFlavor::Standard) == ExtendedMeasure::finite(1.0));
    }
    for (double gamma : {-1.0, 0.0, 2.0, 10.0}) {
        CHECK(liouville_factor(model::FoersterLasota{gamma}, 1.0, MeasureFlavor::Ordinary).is_zero());
    }
    const FlowModel half_ln2 = model::Malthusian{SequenceSpec({}, tail::Geometric{kLn2 / 2.0, 0.5})};
    const ExtendedMeasure eight = liouville_factor(half_ln2, 3.0, MeasureFlavor::Ordinary);
    REQUIRE(eight.is_finite());
    CHECK(std::abs(eight.value() - 8.0) <= 1e-12 * 8.0);
    const double brute = oracle::partial_sum([](std::size_t k) { return kLn2 * std::ldexp(1.0, -static_cast<int>(k) - 1); }, 200);
    CHECK(std::abs(std::exp(3.0 * brute) - eight.value()) <= 1e-12 * 8.0);

    CHECK(liouville_factor(model::Malthusian{SequenceSpec({}, tail::Constant{1.0})}, 0.5, MeasureFlavor::Ordinary)
              .is_infinite());
    CHECK(liouville_factor(model::Malthusian{SequenceSpec({}, tail::AlternatingPowerLaw{1.0, 0.0})}, 0.5,
                           MeasureFlavor::Ordinary)
              .is_undefined());
    CHECK_THROWS_AS((void)liouville_factor(half_ln2, -1.0, MeasureFlavor::Ordinary), std::invalid_argument);
}

TEST_CASE("truncated_jacobian_check examples") {
    const JacobianCheck one = truncated_jacobian_check(model::Malthusian{SequenceSpec({0.3}, tail::Zero{})}, 2.0, 1);
    CHECK(one.predicted == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(one.computed == doctest::Approx(0.6).epsilon(1e-15));

    for (std::size_t n : {1u, 3u, 7u, 20u}) {
        const JacobianCheck rot = truncated_jacobian_check(model::Fourier{{0.0, 1.0}, std::numbers::pi}, 1.3, n);
        CHECK(rot.predicted == 0.0);
        CHECK(std::abs(rot.computed) <= 1e-14);
    }

    const JacobianCheck fl = truncated_jacobian_check(model::FoersterLasota{2.0}, 1.0, 4);
    CHECK(fl.predicted == 2.0);
    CHECK(std::abs(fl.computed - 2.0) <= 1e-14);
}

TEST_CASE("truncated_jacobian_check across families, sizes and times") {
    for (const FlowModel& m : one_of_each_family()) {
        for (std::size_t n : {1u, 4u, 16u, 64u}) {
            for (double t : {0.5, 1.0, 2.0}) {
                const JacobianCheck c = truncated_jacobian_check(m, t, n);
                CHECK(std::abs(c.predicted - c.computed) <= 1e-9 * std::max(1.0, std::abs(c.predicted)));
            }
        }
    }
}

TEST_CASE("property: box volumes scale by the truncated Liouville factor") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> side(0.1, 4.0);
    std::uniform_real_distribution<double> ut(0.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const FlowModel m = testgen::random_model(rng);
        const std::size_t cells = 1 + rng() % 6;
        const double t = ut(rng);
        const StateVector zero = StateVector::zeros_for(m, cells);
        const std::size_t n = zero.size();
        // image of the box is the parallelepiped spanned by Phi_t(s_i e_i)
        std::vector<double> edges(n * n, 0.0);
        double log_box = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            const double s = side(rng);
            log_box += std::log(s);
            StateVector e = zero;
            e[c] = s;
            const StateVector img = evolve(m, e, t);
            for (std::size_t r = 0; r < n; ++r) edges[r * n + c] = img[r];
        }
        const SequenceSpec d = rate_sequence(m).rates;
        const double log_factor = t * oracle::partial_sum([&](std::size_t k) { return d.term(k); }, cells);
        const double log_image = oracle::log_abs_det(edges, n);
        CHECK(std::abs((log_image - log_box) - log_factor) <= 1e-9 * std::max(1.0, std::abs(log_factor)));
    }
}

TEST_CASE("property: cocycle law of the scale factor") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ut(0.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        const FlowModel m = testgen::random_model(rng);
        const FlowClass fc = classify_flow(m, MeasureFlavor::Ordinary, SumOptions{2000});
        const double t1 = ut(rng);
        const double t2 = ut(rng);
        const ExtendedMeasure whole = liouville_factor(fc, t1 + t2);
        const ExtendedMeasure composed = pushforward(liouville_factor(fc, t1), liouville_factor(fc, t2));
        REQUIRE(whole.kind() == composed.kind());
        if (whole.is_finite()) {
            CHECK(std::abs(whole.log_value() - composed.log_value()) <= 1e-12 * std::max(1.0, std::abs(whole.log_value())));
        }
    }
}

TEST_CASE("property: monotonicity in t follows the sign of the rate sum") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 300; ++trial) {
        const FlowModel m = testgen::random_model(rng);
        const FlowClass fc = classify_flow(m, MeasureFlavor::Ordinary, SumOptions{2000});
        if (!fc.admits_solution()) continue;
        const double lam = fc.rate_sum.value();
        double prev = liouville_factor(fc, 0.0).value();
        for (double t : {0.5, 1.0, 2.0}) {
            const double cur = liouville_factor(fc, t).value();
            if (lam < 0.0) CHECK(cur < prev);
            if (lam > 0.0) CHECK(cur > prev);
            if (lam == 0.0) CHECK(cur == prev);
            prev = cur;
        }
    }
}
