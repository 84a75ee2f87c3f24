#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "random_models.hpp"
#include "spcd/error.hpp"
#include "spcd/flow_models.hpp"
#include "spcd/series.hpp"

using namespace spcd;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// Dense Jacobian of evolve() at time t, row-major, built from basis vectors.
std::vector<double> dense_jacobian(const FlowModel& m, std::size_t cells, double t) {
    const StateVector zero = StateVector::zeros_for(m, cells);
    const std::size_t n = zero.size();
    std::vector<double> j(n * n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        StateVector e = zero;
        e[c] = 1.0;
        const StateVector col = evolve(m, e, t);
        for (std::size_t r = 0; r < n; ++r) j[r * n + c] = col[r];
    }
    return j;
}

double rate_partial_sum(const FlowModel& m, std::size_t cells) {
    const SequenceSpec d = rate_sequence(m).rates;
    return oracle::partial_sum([&](std::size_t k) { return d.term(k); }, cells);
}

}  // namespace

TEST_CASE("maclaurin_rate examples") {
    CHECK(maclaurin_rate(std::vector<double>{2.0, -1.0}, 2) == 0.0);
    const double r = 0.05;
    const double s = 0.2;
    CHECK(maclaurin_rate(std::vector<double>{r, -r, -s * s / 2.0}, 1) == 0.0);
    for (std::size_t k : {0u, 1u, 5u, 40u}) CHECK(maclaurin_rate(std::vector<double>{1.25}, k) == 1.25);
    // falling factorial 5!/(5-3)! = 60
    CHECK(maclaurin_rate(std::vector<double>{0.0, 0.0, 0.0, 1.0}, 5) == 60.0);
    CHECK(maclaurin_rate(std::vector<double>{0.0, 0.0, 0.0, 1.0}, 2) == 0.0);
}

TEST_CASE("sigma_omega examples") {
    const CellFrequencies transport = sigma_omega(std::vector<double>{0.0, 1.5}, 2.0, 3);
    CHECK(transport.sigma == 0.0);
    CHECK(transport.omega == doctest::Approx(1.5 * 3.0 * kPi / 2.0).epsilon(1e-15));

    const CellFrequencies constant = sigma_omega(std::vector<double>{0.7}, 3.0, 4);
    CHECK(constant.sigma == 0.7);
    CHECK(constant.omega == 0.0);

    const CellFrequencies heat = sigma_omega(std::vector<double>{0.0, 0.0, 1.0}, kPi, 2);
    CHECK(heat.sigma == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(heat.omega == 0.0);
}

TEST_CASE("rate_sequence examples") {
    const SequenceSpec fl = rate_sequence(model::FoersterLasota{3.0}).rates;
    for (std::size_t k = 0; k < 20; ++k) CHECK(fl.term(k) == 3.0 - static_cast<double>(k));

    const double r = 0.05;
    const double s = 0.2;
    const SequenceSpec bs = rate_sequence(model::BlackScholes{r, s}).rates;
    const std::vector<double> a{r, -r, -s * s / 2.0};
    for (std::size_t k = 0; k <= 100; ++k) {
        const double kd = static_cast<double>(k);
        const double closed = r - r * kd - 0.5 * s * s * kd * (kd - 1.0);
        CHECK(bs.term(k) == doctest::Approx(closed).epsilon(1e-13));
        CHECK(maclaurin_rate(a, k) == doctest::Approx(closed).epsilon(1e-13));
    }

    const SequenceSpec tr = rate_sequence(model::Fourier{{0.0, 2.0}, 1.5}).rates;
    for (std::size_t k = 0; k < 20; ++k) CHECK(tr.term(k) == 0.0);

    const SequenceSpec heat = rate_sequence(model::Fourier{{0.5, 0.0, 1.0}, kPi}).rates;
    CHECK(heat.term(0) == 0.5);
    for (std::size_t k = 1; k < 20; ++k) {
        const CellFrequencies f = sigma_omega(std::vector<double>{0.5, 0.0, 1.0}, kPi, k);
        CHECK(heat.term(k) == doctest::Approx(2.0 * f.sigma).epsilon(1e-14));
    }

    const SequenceSpec lam(std::vector<double>{1.0}, tail::Geometric{0.5, 0.5});
    CHECK(rate_sequence(model::Malthusian{lam}).rates == lam);
}

TEST_CASE("validate rejects bad parameters") {
    CHECK_THROWS_AS(validate(model::Fourier{{1.0}, 0.0}), InvalidModel);
    CHECK_THROWS_AS(validate(model::Fourier{{}, 1.0}), InvalidModel);
    CHECK_THROWS_AS(validate(model::BlackScholes{-0.1, 0.2}), InvalidModel);
    CHECK_THROWS_AS(validate(model::BlackScholes{0.1, -0.2}), InvalidModel);
    CHECK_THROWS_AS(validate(model::FoersterLasota{NAN}), InvalidModel);
    CHECK_THROWS_AS(validate(model::Maclaurin{{}}), InvalidModel);
    CHECK_NOTHROW(validate(model::BlackScholes{0.0, 0.3}));
}

TEST_CASE("state layouts") {
    CHECK_THROWS_AS(StateVector::fourier({1.0, 2.0}), LayoutMismatch);
    CHECK_THROWS_AS(StateVector::diagonal({}), LayoutMismatch);
    CHECK(StateVector::fourier({1.0, 2.0, 3.0}).cells() == 2);
    CHECK(StateVector::zeros_for(model::Fourier{{0.0}, 1.0}, 4).size() == 7);
    CHECK_THROWS_AS((void)evolve(model::Fourier{{0.0}, 1.0}, StateVector::diagonal({1.0, 2.0}), 1.0),
                    LayoutMismatch);
    CHECK_THROWS_AS((void)evolve(model::FoersterLasota{1.0}, StateVector::fourier({1.0}), 1.0), LayoutMismatch);
}

TEST_CASE("evolve examples") {
    const StateVector x = StateVector::diagonal({1.0, 1.0, 1.0});
    const StateVector y = evolve(model::FoersterLasota{1.0}, x, std::numbers::ln2);
    CHECK(y[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(y[1] == 1.0);
    CHECK(y[2] == doctest::Approx(0.5).epsilon(1e-15));

    const StateVector f = evolve(model::Fourier{{0.0, 1.0}, kPi}, StateVector::fourier({0.0, 1.0, 0.0}), kPi / 2.0);
    CHECK(std::abs(f[1]) < 1e-15);
    CHECK(f[2] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("evolve at t = 0 is the identity for every family") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const FlowModel m = testgen::random_model(rng);
        const StateVector x = testgen::random_state(rng, m, 1 + rng() % 10);
        CHECK(evolve(m, x, 0.0) == x);
    }
}

TEST_CASE("property: semigroup law") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.0, 5.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const FlowModel m = testgen::random_model(rng);
        const StateVector x = testgen::random_state(rng, m, 1 + rng() % 8);
        const double t1 = ut(rng);
        const double t2 = ut(rng);
        const StateVector lhs = evolve(m, evolve(m, x, t1), t2);
        const StateVector rhs = evolve(m, x, t1 + t2);
        CHECK(testgen::cellwise_rel_error(lhs, rhs) <= 1e-10);
    }
}

TEST_CASE("property: linearity") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const FlowModel m = testgen::random_model(rng);
        const std::size_t cells = 1 + rng() % 8;
        const StateVector x = testgen::random_state(rng, m, cells);
        const StateVector y = testgen::random_state(rng, m, cells);
        const double a = u(rng);
        const double b = u(rng);
        const double t = std::abs(u(rng));
        StateVector combo = x;
        for (std::size_t i = 0; i < x.size(); ++i) combo[i] = a * x[i] + b * y[i];
        const StateVector ex = evolve(m, x, t);
        const StateVector ey = evolve(m, y, t);
        StateVector expect = ex;
        for (std::size_t i = 0; i < x.size(); ++i) expect[i] = a * ex[i] + b * ey[i];
        const StateVector got = evolve(m, combo, t);
        // scale against the inputs, since a x + b y may cancel
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double scale = std::abs(a * ex[i]) + std::abs(b * ey[i]);
            CHECK(std::abs(got[i] - expect[i]) <= 1e-10 * scale + 1e-300);
        }
    }
}

TEST_CASE("property: named families equal their Maclaurin forms exactly") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double gamma = 4.0 * u(rng) - 4.0;
        const double r = u(rng);
        const double s = u(rng);
        const double t = u(rng);
        const FlowModel fl = model::FoersterLasota{gamma};
        const FlowModel bs = model::BlackScholes{r, s};
        const StateVector x = testgen::random_state(rng, fl, 1 + rng() % 12);
        CHECK(evolve(fl, x, t) == evolve(model::Maclaurin{{gamma, -1.0}}, x, t));
        CHECK(evolve(bs, x, t) == evolve(model::Maclaurin{{r, -r, -s * s / 2.0}}, x, t));
    }
}

TEST_CASE("property: Fourier cell determinant and orthogonality") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 2000; ++trial) {
        // A = [s, w] on l = pi gives sigma_1 = s and omega_1 = w
        const double s = u(rng);
        const double w = u(rng);
        const double t = std::abs(u(rng));
        const std::vector<double> j = dense_jacobian(model::Fourier{{s, w}, kPi}, 2, t);
        // rows/cols 1..2 of the 3x3 matrix hold cell 1
        const double a = j[4], b = j[5], c = j[7], d = j[8];
        const double det = a * d - b * c;
        CHECK(std::abs(det - std::exp(2.0 * s * t)) <= 1e-12 * std::exp(2.0 * s * t));

        const std::vector<double> q = dense_jacobian(model::Fourier{{0.0, w}, kPi}, 2, t);
        const double qa = q[4], qb = q[5], qc = q[7], qd = q[8];
        CHECK(std::abs(qa * qa + qc * qc - 1.0) <= 1e-12);
        CHECK(std::abs(qb * qb + qd * qd - 1.0) <= 1e-12);
        CHECK(std::abs(qa * qb + qc * qd) <= 1e-12);
    }
}

TEST_CASE("property: log|det| of the truncated Jacobian equals t times the rate partial sum") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> ut(0.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const FlowModel m = testgen::random_model(rng);
        const std::size_t cells = 1 + rng() % 8;
        const double t = ut(rng);
        const std::vector<double> j = dense_jacobian(m, cells, t);
        const std::size_t n = StateVector::zeros_for(m, cells).size();
        const double computed = oracle::log_abs_det(j, n);
        const double predicted = t * rate_partial_sum(m, cells);
        CHECK(std::abs(computed - predicted) <= 1e-9 * std::max(1.0, std::abs(predicted)));
    }
}

TEST_CASE("evolve_forced examples") {
    const StateVector c0 = StateVector::diagonal({1.0, -2.0, 0.5, 3.0});

    const std::vector<double> a{0.3, -1.0, 0.1};
    const ForcedEvolution none = evolve_forced(a, c0, [](std::size_t, double) { return 0.0; }, 1.7);
    CHECK(none.state == evolve(model::Maclaurin{a}, c0, 1.7));
    CHECK(none.step == doctest::Approx(1.7 / 256.0));

    const double c = 0.8;
    const ForcedEvolution flat = evolve_forced(std::vector<double>{0.0}, c0, [&](std::size_t, double) { return c; }, 2.0);
    for (std::size_t k = 0; k < c0.size(); ++k) CHECK(std::abs(flat.state[k] - (c0[k] + 2.0 * c)) <= 1e-8);

    const ForcedEvolution grow =
        evolve_forced(std::vector<double>{1.0}, c0, [](std::size_t, double tau) { return std::exp(tau); }, 1.0);
    for (std::size_t k = 0; k < c0.size(); ++k) CHECK(std::abs(grow.state[k] - (kE * c0[k] + kE)) <= 1e-8);

    CHECK_THROWS_AS((void)evolve_forced(a, c0, [](std::size_t, double) { return 0.0; }, -1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)evolve_forced(a, c0, [](std::size_t, double) { return 0.0; }, 1.0, 0), std::invalid_argument);
}

TEST_CASE("evolve_forced converges under panel refinement for a non-polynomial forcing") {
    // a' = -k a + sin(tau): closed form of the integral for rate p = -k
    const std::vector<double> a{0.0, -1.0};
    const StateVector c0 = StateVector::diagonal({0.0, 0.0, 0.0});
    const double t = 2.0;
    const ForcedEvolution r = evolve_forced(a, c0, [](std::size_t, double tau) { return std::sin(tau); }, t);
    for (std::size_t k = 0; k < 3; ++k) {
        const double p = -static_cast<double>(k);
        // int_0^t e^{p(t - tau)} sin(tau) dtau
        const double exact = (std::exp(p * t) - std::cos(t) - p * std::sin(t)) / (1.0 + p * p);
        CHECK(std::abs(r.state[k] - exact) <= 1e-9);
    }
}
