#include "spcd/measure.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "spcd/error.hpp"

namespace spcd {

namespace {

ExtendedMeasure finite_or_throw(const ExtendedMeasure& m) {
    if (m.is_infinite()) throw InvalidRectangle("cell volumes have an infinite ordinary product");
    if (m.is_undefined()) throw InvalidRectangle("cell volumes have no ordinary product (partial products oscillate)");
    return m;
}

// Coordinates [first, first + count) of cell k.
std::pair<std::size_t, std::size_t> cell_span(const StateVector& x, std::size_t k) {
    if (x.layout() == StateVector::Layout::Diagonal || k == 0) return {k, 1};
    return {2 * k - 1, 2};
}

double cell_determinant(const FlowModel& model, const StateVector& zero, std::size_t k, double t) {
    const auto [first, count] = cell_span(zero, k);
    double block[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t c = 0; c < count; ++c) {
        StateVector e = zero;
        e[first + c] = 1.0;
        const StateVector y = evolve(model, e, t);
        for (std::size_t i = 0; i < y.size(); ++i) {
            const bool inside = i >= first && i < first + count;
            if (inside) {
                block[i - first][c] = y[i];
            } else if (y[i] != 0.0) {
                throw std::logic_error("flow couples cell " + std::to_string(k) + " to coordinate " +
                                       std::to_string(i));
            }
        }
    }
    if (count == 1) return block[0][0];
    return block[0][0] * block[1][1] - block[0][1] * block[1][0];
}

double cell_log_determinant(const FlowModel& model, const StateVector& zero, std::size_t k, double t) {
    double scale = 1.0;
    for (int halvings = 0; halvings <= 60; ++halvings) {
        const double det = cell_determinant(model, zero, k, t / scale);
        if (std::isnormal(det)) return scale * std::log(std::abs(det));
        scale *= 2.0;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ExtendedMeasure rectangle_measure(const RectangleSpec& rect, const SumOptions& opts) {
    try {
        return finite_or_throw(ordinary_product(rect.cell_volumes, opts));
    } catch (const NegativeFactor& e) {
        throw InvalidRectangle(std::string("negative cell volume: ") + e.what());
    }
}

ExtendedMeasure rectangle_measure_from_sides(const AlphaBlocking& alpha, const ProductFactors& sides,
                                             const SumOptions& opts) {
    try {
        return finite_or_throw(ordinary_alpha_product(alpha, sides, opts));
    } catch (const NegativeFactor& e) {
        throw InvalidRectangle(std::string("negative side length: ") + e.what());
    }
}

ExtendedMeasure liouville_factor(const FlowClass& flow_class, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("scale factor needs t >= 0");
    if (t == 0.0) return ExtendedMeasure::finite(1.0);
    switch (flow_class.kind) {
        case FlowClass::Kind::Stable:
        case FlowClass::Kind::Expansible:
        case FlowClass::Kind::Pressing:
            return ExtendedMeasure::from_log(t * flow_class.rate_sum.value());
        case FlowClass::Kind::TotallyExpansible:
            return ExtendedMeasure::infinite();
        case FlowClass::Kind::TotallyPressing:
            return ExtendedMeasure::zero();
        case FlowClass::Kind::Indeterminate:
            break;
    }
    return ExtendedMeasure::undefined();
}

ExtendedMeasure liouville_factor(const FlowModel& model, double t, MeasureFlavor flavor,
                                 const SumOptions& opts) {
    return liouville_factor(classify_flow(model, flavor, opts), t);
}

JacobianCheck truncated_jacobian_check(const FlowModel& model, double t, std::size_t cells) {
    validate(model);
    const StateVector zero = StateVector::zeros_for(model, cells);
    const SequenceSpec rates = rate_sequence(model).rates;
    long double rate_total = 0.0L;
    long double log_det = 0.0L;
    for (std::size_t k = 0; k < cells; ++k) {
        rate_total += rates.term(k);
        log_det += cell_log_determinant(model, zero, k, t);
    }
    JacobianCheck check;
    check.cells = cells;
    check.t = t;
    check.predicted = static_cast<double>(static_cast<long double>(t) * rate_total);
    check.computed = static_cast<double>(log_det);
    return check;
}

}  // namespace spcd
