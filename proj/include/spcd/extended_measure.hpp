#pragma once

#include <string>

namespace spcd {

/// A nonnegative extended real: 0, a finite positive value, +inf, or the
/// "undefined" marker produced by oscillating limits.
///
/// Finite values carry their natural logarithm so that scale factors such as
/// e^{t * Lambda} stay representable far outside double range, next to the
/// plain double value (exact when constructed from one, and kept exact
/// through products that stay in range).
class ExtendedMeasure {
public:
    enum class Kind { Zero, Finite, Infinite, Undefined };

    static ExtendedMeasure zero() noexcept { return ExtendedMeasure(Kind::Zero, 0.0); }
    static ExtendedMeasure infinite() noexcept { return ExtendedMeasure(Kind::Infinite, 0.0); }
    static ExtendedMeasure undefined() noexcept { return ExtendedMeasure(Kind::Undefined, 0.0); }
    /// Throws std::invalid_argument unless value is finite and > 0.
    static ExtendedMeasure finite(double value);
    /// Throws std::invalid_argument unless log_value is finite.
    static ExtendedMeasure from_log(double log_value);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_zero() const noexcept { return kind_ == Kind::Zero; }
    [[nodiscard]] bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    [[nodiscard]] bool is_infinite() const noexcept { return kind_ == Kind::Infinite; }
    [[nodiscard]] bool is_undefined() const noexcept { return kind_ == Kind::Undefined; }

    /// 0, the finite value, +inf or NaN. May under/overflow for extreme finite payloads.
    [[nodiscard]] double value() const noexcept;
    /// -inf, log, +inf or NaN.
    [[nodiscard]] double log_value() const noexcept;

    friend bool operator==(const ExtendedMeasure&, const ExtendedMeasure&) = default;

private:
    ExtendedMeasure(Kind kind, double log_value, double value = 0.0) noexcept
        : kind_(kind), log_(log_value), value_(value) {}

    friend ExtendedMeasure pushforward(const ExtendedMeasure& m, const ExtendedMeasure& factor);

    Kind kind_;
    double log_;
    double value_;
};

/// Measure of the image of a set of measure `m` under a map that scales
/// measure by `factor`. Zero absorbs everything (0 * inf = 0, 0 * undefined
/// = 0); otherwise Undefined propagates, then Infinite.
[[nodiscard]] ExtendedMeasure pushforward(const ExtendedMeasure& m, const ExtendedMeasure& factor);

[[nodiscard]] std::string to_string(ExtendedMeasure::Kind kind);

}  // namespace spcd
