#include "spcd/flow_models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spcd/detail/overloaded.hpp"
#include "spcd/error.hpp"

namespace spcd {

namespace {

using detail::overloaded;

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidModel(message);
}

void require_finite_list(const std::vector<double>& v, const char* what) {
    require(!v.empty(), std::string(what) + " must not be empty");
    for (double x : v) require(std::isfinite(x), std::string(what) + " must be finite");
}

// Ascending coefficients of k(k-1)...(k-n+1).
std::vector<double> falling_factorial_poly(std::size_t n) {
    std::vector<double> p{1.0};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> next(p.size() + 1, 0.0);
        for (std::size_t j = 0; j < p.size(); ++j) {
            next[j + 1] += p[j];
            next[j] -= static_cast<double>(i) * p[j];
        }
        p = std::move(next);
    }
    return p;
}

double cell_wavenumber(std::size_t k, double length) {
    return static_cast<double>(k) * std::numbers::pi / length;
}

void require_layout(const FlowModel& model, const StateVector& x) {
    const auto expected = is_fourier(model) ? StateVector::Layout::Fourier : StateVector::Layout::Diagonal;
    if (x.layout() != expected) {
        throw LayoutMismatch("state layout does not match the " + family_name(model) + " model");
    }
}

}  // namespace

void validate(const FlowModel& model) {
    std::visit(overloaded{
                   [](const model::FoersterLasota& m) { require(std::isfinite(m.gamma), "gamma must be finite"); },
                   [](const model::BlackScholes& m) {
                       require(std::isfinite(m.r) && m.r >= 0.0, "r must be finite and >= 0");
                       require(std::isfinite(m.sigma) && m.sigma >= 0.0, "sigma must be finite and >= 0");
                   },
                   [](const model::Malthusian&) {},
                   [](const model::Fourier& m) {
                       require_finite_list(m.coefficients, "Fourier coefficients");
                       require(std::isfinite(m.length) && m.length > 0.0, "Fourier length l must be > 0");
                   },
                   [](const model::Maclaurin& m) { require_finite_list(m.coefficients, "Maclaurin coefficients"); },
               },
               model);
}

std::string family_name(const FlowModel& model) {
    return std::visit(overloaded{
                          [](const model::FoersterLasota&) { return "foerster_lasota"; },
                          [](const model::BlackScholes&) { return "black_scholes"; },
                          [](const model::Malthusian&) { return "malthusian"; },
                          [](const model::Fourier&) { return "fourier"; },
                          [](const model::Maclaurin&) { return "maclaurin"; },
                      },
                      model);
}

bool is_fourier(const FlowModel& model) { return std::holds_alternative<model::Fourier>(model); }

std::vector<double> maclaurin_coefficients(const FlowModel& model) {
    return std::visit(overloaded{
                          [](const model::FoersterLasota& m) { return std::vector<double>{m.gamma, -1.0}; },
                          [](const model::BlackScholes& m) {
                              return std::vector<double>{m.r, -m.r, -(m.sigma * m.sigma) / 2.0};
                          },
                          [](const model::Maclaurin& m) { return m.coefficients; },
                          [](const auto&) { return std::vector<double>{}; },
                      },
                      model);
}

double maclaurin_rate(std::span<const double> coefficients, std::size_t k) {
    double acc = 0.0;
    double falling = 1.0;
    for (std::size_t n = 0; n < coefficients.size() && n <= k; ++n) {
        if (n > 0) falling *= static_cast<double>(k - (n - 1));
        acc += coefficients[n] * falling;
    }
    return acc;
}

CellFrequencies sigma_omega(std::span<const double> coefficients, double length, std::size_t k) {
    const double x = cell_wavenumber(k, length);
    CellFrequencies f;
    double power = 1.0;  // x^n
    for (std::size_t n = 0; n < coefficients.size(); ++n) {
        const double sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
        if (n % 2 == 0) {
            f.sigma += sign * coefficients[n] * power;
        } else {
            f.omega += sign * coefficients[n] * power;
        }
        power *= x;
    }
    return f;
}

CellRate rate_sequence(const FlowModel& model) {
    if (const auto* m = std::get_if<model::Malthusian>(&model)) return {m->lambda};
    if (const auto* f = std::get_if<model::Fourier>(&model)) {
        // d_k = 2 sigma_k = sum_n 2 (-1)^n A_{2n} (pi/l)^{2n} k^{2n} for k >= 1
        const double w = std::numbers::pi / f->length;
        std::vector<double> poly;
        double w2n = 1.0;
        for (std::size_t n = 0; 2 * n < f->coefficients.size(); ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            poly.resize(2 * n + 1, 0.0);
            poly[2 * n] = 2.0 * sign * f->coefficients[2 * n] * w2n;
            w2n *= w * w;
        }
        return {SequenceSpec({f->coefficients[0]}, polynomial_tail(std::move(poly)))};
    }
    const std::vector<double> a = maclaurin_coefficients(model);
    std::vector<double> poly(a.size(), 0.0);
    for (std::size_t n = 0; n < a.size(); ++n) {
        const std::vector<double> ff = falling_factorial_poly(n);
        for (std::size_t j = 0; j < ff.size(); ++j) poly[j] += a[n] * ff[j];
    }
    return {SequenceSpec({}, polynomial_tail(std::move(poly)))};
}

StateVector::StateVector(std::vector<double> coords, Layout layout)
    : coords_(std::move(coords)), layout_(layout) {
    if (coords_.empty()) throw LayoutMismatch("state vector needs at least one coordinate");
    if (layout_ == Layout::Fourier && coords_.size() % 2 == 0) {
        throw LayoutMismatch("Fourier state size must be 1 + 2 (cells - 1), got " +
                             std::to_string(coords_.size()));
    }
}

StateVector StateVector::diagonal(std::vector<double> coords) {
    return StateVector(std::move(coords), Layout::Diagonal);
}

StateVector StateVector::fourier(std::vector<double> coords) {
    return StateVector(std::move(coords), Layout::Fourier);
}

StateVector StateVector::zeros_for(const FlowModel& model, std::size_t cells) {
    if (cells == 0) throw LayoutMismatch("state vector needs at least one cell");
    if (is_fourier(model)) return fourier(std::vector<double>(2 * cells - 1, 0.0));
    return diagonal(std::vector<double>(cells, 0.0));
}

std::size_t StateVector::cells() const noexcept {
    return layout_ == Layout::Fourier ? (coords_.size() + 1) / 2 : coords_.size();
}

StateVector evolve(const FlowModel& model, const StateVector& x0, double t) {
    require_layout(model, x0);
    StateVector x = x0;
    if (const auto* f = std::get_if<model::Fourier>(&model)) {
        x[0] = std::exp(t * f->coefficients[0]) * x0[0];
        for (std::size_t k = 1; k < x0.cells(); ++k) {
            const CellFrequencies fr = sigma_omega(f->coefficients, f->length, k);
            const double scale = std::exp(fr.sigma * t);
            const double c = std::cos(fr.omega * t);
            const double s = std::sin(fr.omega * t);
            const double a = x0[2 * k - 1];
            const double b = x0[2 * k];
            x[2 * k - 1] = scale * (c * a + s * b);
            x[2 * k] = scale * (-s * a + c * b);
        }
        return x;
    }
    if (const auto* m = std::get_if<model::Malthusian>(&model)) {
        for (std::size_t k = 0; k < x0.size(); ++k) x[k] = std::exp(t * m->lambda.term(k)) * x0[k];
        return x;
    }
    const std::vector<double> a = maclaurin_coefficients(model);
    for (std::size_t k = 0; k < x0.size(); ++k) x[k] = std::exp(t * maclaurin_rate(a, k)) * x0[k];
    return x;
}

ForcedEvolution evolve_forced(std::span<const double> coefficients, const StateVector& x0,
                              const Forcing& forcing, double t, std::size_t steps) {
    if (!(t >= 0.0)) throw std::invalid_argument("forced evolution needs t >= 0");
    if (steps == 0) throw std::invalid_argument("forced evolution needs at least one panel");
    if (x0.layout() != StateVector::Layout::Diagonal) {
        throw LayoutMismatch("forced Maclaurin evolution needs a diagonal state");
    }
    const double h = t / static_cast<double>(steps);
    StateVector x = x0;
    for (std::size_t k = 0; k < x0.size(); ++k) {
        const double rate = maclaurin_rate(coefficients, k);
        auto integrand = [&](double tau) { return std::exp((t - tau) * rate) * forcing(k, tau); };
        double ends = integrand(0.0) + integrand(t);
        double interior = 0.0;
        double mids = 0.0;
        for (std::size_t i = 0; i < steps; ++i) {
            const double left = h * static_cast<double>(i);
            mids += integrand(left + 0.5 * h);
            if (i > 0) interior += integrand(left);
        }
        const double integral = (t == 0.0) ? 0.0 : (h / 6.0) * (ends + 2.0 * interior + 4.0 * mids);
        x[k] = std::exp(t * rate) * x0[k] + integral;
    }
    return {std::move(x), h};
}

}  // namespace spcd
