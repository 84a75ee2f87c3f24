#include "spcd/sequence.hpp"

#include <cmath>
#include <stdexcept>

#include "spcd/detail/overloaded.hpp"
#include "spcd/error.hpp"

namespace spcd {

namespace {

using detail::overloaded;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InvalidSpec(std::string("sequence parameter '") + what + "' must be finite");
    }
}

double horner(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

SequenceSpec::SequenceSpec(std::vector<double> head, TailClass tail)
    : SequenceSpec(std::move(head), std::move(tail), 0) {
    origin_ = head_.size();
}

SequenceSpec::SequenceSpec(std::vector<double> head, TailClass tail, std::size_t tail_origin)
    : head_(std::move(head)), tail_(std::move(tail)), origin_(tail_origin) {
    for (double v : head_) require_finite(v, "head");
    std::visit(overloaded{
                   [](const tail::Zero&) {},
                   [](const tail::Constant& t) { require_finite(t.c, "c"); },
                   [](const tail::Geometric& t) {
                       require_finite(t.a, "a");
                       require_finite(t.q, "q");
                   },
                   [](const tail::PowerLaw& t) {
                       require_finite(t.c, "c");
                       require_finite(t.p, "p");
                   },
                   [](const tail::AffineLinear& t) {
                       require_finite(t.s, "s");
                       require_finite(t.b, "b");
                   },
                   [](const tail::QuadraticPoly& t) {
                       require_finite(t.c2, "c2");
                       require_finite(t.c1, "c1");
                       require_finite(t.c0, "c0");
                   },
                   [](const tail::AlternatingPowerLaw& t) {
                       require_finite(t.c, "c");
                       require_finite(t.p, "p");
                   },
                   [](const tail::Polynomial& t) {
                       for (double c : t.coeffs) require_finite(c, "coeffs");
                   },
               },
               tail_);
}

double SequenceSpec::tail_value(std::size_t j) const {
    const double x = static_cast<double>(j);
    return std::visit(
        overloaded{
            [](const tail::Zero&) { return 0.0; },
            [](const tail::Constant& t) { return t.c; },
            [&](const tail::Geometric& t) {
                return t.a * std::pow(t.q, static_cast<double>(j - origin_));
            },
            [&](const tail::PowerLaw& t) { return t.c / std::pow(x + 1.0, t.p); },
            [&](const tail::AffineLinear& t) { return t.s * x + t.b; },
            [&](const tail::QuadraticPoly& t) { return t.c2 * x * x + t.c1 * x + t.c0; },
            [&](const tail::AlternatingPowerLaw& t) {
                const double mag = t.c / std::pow(x + 1.0, t.p);
                return (j % 2 == 0) ? mag : -mag;
            },
            [&](const tail::Polynomial& t) { return horner(t.coeffs, x); },
        },
        tail_);
}

double SequenceSpec::term(std::size_t k) const {
    if (k < head_.size()) return head_[k];
    return tail_value(k - head_.size() + origin_);
}

SequenceSpec SequenceSpec::with_prefix(const std::vector<double>& values) const {
    std::vector<double> head = values;
    head.insert(head.end(), head_.begin(), head_.end());
    return SequenceSpec(std::move(head), tail_, origin_);
}

double term(const SequenceSpec& spec, std::size_t k) { return spec.term(k); }

TailClass polynomial_tail(std::vector<double> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    switch (coeffs.size()) {
        case 0:
            return tail::Zero{};
        case 1:
            return tail::Constant{coeffs[0]};
        case 2:
            return tail::AffineLinear{coeffs[1], coeffs[0]};
        case 3:
            return tail::QuadraticPoly{coeffs[2], coeffs[1], coeffs[0]};
        default:
            return tail::Polynomial{std::move(coeffs)};
    }
}

bool is_polynomial(const TailClass& tail) {
    return std::holds_alternative<tail::Zero>(tail) || std::holds_alternative<tail::Constant>(tail) ||
           std::holds_alternative<tail::AffineLinear>(tail) ||
           std::holds_alternative<tail::QuadraticPoly>(tail) ||
           std::holds_alternative<tail::Polynomial>(tail);
}

std::vector<double> polynomial_coefficients(const TailClass& tail) {
    std::vector<double> c = std::visit(
        overloaded{
            [](const tail::Zero&) { return std::vector<double>{}; },
            [](const tail::Constant& t) { return std::vector<double>{t.c}; },
            [](const tail::AffineLinear& t) { return std::vector<double>{t.b, t.s}; },
            [](const tail::QuadraticPoly& t) { return std::vector<double>{t.c0, t.c1, t.c2}; },
            [](const tail::Polynomial& t) { return t.coeffs; },
            [](const auto&) -> std::vector<double> {
                throw std::invalid_argument("tail class is not a polynomial");
            },
        },
        tail);
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return c;
}

std::string tail_name(const TailClass& tail) {
    return std::visit(overloaded{
                          [](const tail::Zero&) { return "zero"; },
                          [](const tail::Constant&) { return "constant"; },
                          [](const tail::Geometric&) { return "geometric"; },
                          [](const tail::PowerLaw&) { return "power_law"; },
                          [](const tail::AffineLinear&) { return "affine_linear"; },
                          [](const tail::QuadraticPoly&) { return "quadratic_poly"; },
                          [](const tail::AlternatingPowerLaw&) { return "alternating_power_law"; },
                          [](const tail::Polynomial&) { return "polynomial"; },
                      },
                      tail);
}

}  // namespace spcd
