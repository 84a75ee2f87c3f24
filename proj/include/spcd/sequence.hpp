#pragma once

// Closed-form real sequences: an explicit head followed by a symbolic tail.
//
// Tail formulas are written in a formula index j. By default j equals the
// absolute index k; a spec built with with_prefix() keeps its tail terms fixed
// while the head grows, so j = k - h + origin where origin is the formula index
// of the first tail term. Geometric exponents count from the start of the tail.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace spcd {

namespace tail {

struct Zero {
    friend bool operator==(const Zero&, const Zero&) = default;
};

struct Constant {
    double c = 0.0;
    friend bool operator==(const Constant&, const Constant&) = default;
};

/// a * q^(k - h)
struct Geometric {
    double a = 0.0;
    double q = 0.0;
    friend bool operator==(const Geometric&, const Geometric&) = default;
};

/// c / (k + 1)^p
struct PowerLaw {
    double c = 0.0;
    double p = 0.0;
    friend bool operator==(const PowerLaw&, const PowerLaw&) = default;
};

/// s * k + b
struct AffineLinear {
    double s = 0.0;
    double b = 0.0;
    friend bool operator==(const AffineLinear&, const AffineLinear&) = default;
};

/// c2 * k^2 + c1 * k + c0
struct QuadraticPoly {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
    friend bool operator==(const QuadraticPoly&, const QuadraticPoly&) = default;
};

/// c * (-1)^k / (k + 1)^p
struct AlternatingPowerLaw {
    double c = 0.0;
    double p = 0.0;
    friend bool operator==(const AlternatingPowerLaw&, const AlternatingPowerLaw&) = default;
};

/// sum_j coeffs[j] * k^j, ascending powers. Used for rates of degree > 2.
struct Polynomial {
    std::vector<double> coeffs;
    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

}  // namespace tail

using TailClass = std::variant<tail::Zero, tail::Constant, tail::Geometric, tail::PowerLaw,
                               tail::AffineLinear, tail::QuadraticPoly,
                               tail::AlternatingPowerLaw, tail::Polynomial>;

class SequenceSpec {
public:
    SequenceSpec() = default;
    /// Throws InvalidSpec when any head value or tail parameter is not finite.
    SequenceSpec(std::vector<double> head, TailClass tail);
    SequenceSpec(std::vector<double> head, TailClass tail, std::size_t tail_origin);

    [[nodiscard]] const std::vector<double>& head() const noexcept { return head_; }
    [[nodiscard]] const TailClass& tail() const noexcept { return tail_; }
    [[nodiscard]] std::size_t head_size() const noexcept { return head_.size(); }
    /// Formula index of the first tail term.
    [[nodiscard]] std::size_t tail_origin() const noexcept { return origin_; }
    /// Tail formula evaluated at formula index j (>= tail_origin()).
    [[nodiscard]] double tail_value(std::size_t j) const;

    /// Value at index k: head lookup for k < h, tail formula otherwise.
    [[nodiscard]] double term(std::size_t k) const;

    /// The same sequence with `values` prepended; tail formulas are shifted
    /// so that every original term keeps its value.
    [[nodiscard]] SequenceSpec with_prefix(const std::vector<double>& values) const;

    friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

private:
    std::vector<double> head_;
    TailClass tail_ = tail::Zero{};
    std::size_t origin_ = 0;
};

[[nodiscard]] double term(const SequenceSpec& spec, std::size_t k);

/// Builds the tightest tail class for the polynomial with ascending
/// coefficients (trailing zeros dropped): Zero, Constant, AffineLinear,
/// QuadraticPoly or Polynomial.
[[nodiscard]] TailClass polynomial_tail(std::vector<double> coeffs);

/// True for Zero, Constant, AffineLinear, QuadraticPoly and Polynomial.
[[nodiscard]] bool is_polynomial(const TailClass& tail);
/// Ascending coefficients of a polynomial tail, trailing zeros dropped
/// (empty for Zero). Throws std::invalid_argument for non-polynomial tails.
[[nodiscard]] std::vector<double> polynomial_coefficients(const TailClass& tail);

[[nodiscard]] std::string tail_name(const TailClass& tail);

}  // namespace spcd
