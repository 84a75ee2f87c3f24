#include "spcd/extended_measure.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spcd {

ExtendedMeasure ExtendedMeasure::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("finite measure must be a positive finite real");
    }
    return ExtendedMeasure(Kind::Finite, std::log(value), value);
}

ExtendedMeasure ExtendedMeasure::from_log(double log_value) {
    if (!std::isfinite(log_value)) {
        throw std::invalid_argument("finite measure needs a finite logarithm");
    }
    return ExtendedMeasure(Kind::Finite, log_value, std::exp(log_value));
}

double ExtendedMeasure::value() const noexcept {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Finite:
            return value_;
        case Kind::Infinite:
            return std::numeric_limits<double>::infinity();
        case Kind::Undefined:
            break;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double ExtendedMeasure::log_value() const noexcept {
    switch (kind_) {
        case Kind::Zero:
            return -std::numeric_limits<double>::infinity();
        case Kind::Finite:
            return log_;
        case Kind::Infinite:
            return std::numeric_limits<double>::infinity();
        case Kind::Undefined:
            break;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

ExtendedMeasure pushforward(const ExtendedMeasure& m, const ExtendedMeasure& factor) {
    if (m.is_zero() || factor.is_zero()) return ExtendedMeasure::zero();
    if (m.is_undefined() || factor.is_undefined()) return ExtendedMeasure::undefined();
    if (m.is_infinite() || factor.is_infinite()) return ExtendedMeasure::infinite();
    const double product = m.value_ * factor.value_;
    if (std::isnormal(product)) {
        return ExtendedMeasure(ExtendedMeasure::Kind::Finite, m.log_ + factor.log_, product);
    }
    return ExtendedMeasure::from_log(m.log_ + factor.log_);
}

std::string to_string(ExtendedMeasure::Kind kind) {
    switch (kind) {
        case ExtendedMeasure::Kind::Zero:
            return "zero";
        case ExtendedMeasure::Kind::Finite:
            return "finite";
        case ExtendedMeasure::Kind::Infinite:
            return "infinite";
        case ExtendedMeasure::Kind::Undefined:
            break;
    }
    return "undefined";
}

}  // namespace spcd
