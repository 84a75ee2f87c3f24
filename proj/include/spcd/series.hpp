#pragma once

// Exact classification of infinite sums and ordinary (alpha-)products for the
// closed tail classes of SequenceSpec.
//
// The tag of a verdict is always decided symbolically from the tail class.
// Numeric values are a compensated partial sum over the first `depth` terms
// plus a closed-form estimate of the remainder; `remainder_bound` certifies
// |reported value - true value| including floating-point rounding.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spcd/extended_measure.hpp"
#include "spcd/sequence.hpp"

namespace spcd {

struct SumOptions {
    std::size_t depth = 100000;
};

class SeriesVerdict {
public:
    enum class Kind { ConvergesTo, DivergesPlus, DivergesMinus, Oscillates };

    static SeriesVerdict converges(double value, bool absolutely, double remainder_bound);
    static SeriesVerdict diverges_plus() noexcept { return SeriesVerdict(Kind::DivergesPlus); }
    static SeriesVerdict diverges_minus() noexcept { return SeriesVerdict(Kind::DivergesMinus); }
    static SeriesVerdict oscillates() noexcept { return SeriesVerdict(Kind::Oscillates); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool converged() const noexcept { return kind_ == Kind::ConvergesTo; }
    /// Only meaningful for ConvergesTo; 0 otherwise.
    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] double remainder_bound() const noexcept { return bound_; }
    /// False for every non-convergent verdict.
    [[nodiscard]] bool absolutely() const noexcept { return absolutely_; }

    friend bool operator==(const SeriesVerdict&, const SeriesVerdict&) = default;

private:
    explicit SeriesVerdict(Kind kind) noexcept : kind_(kind) {}

    Kind kind_;
    double value_ = 0.0;
    double bound_ = 0.0;
    bool absolutely_ = false;
};

[[nodiscard]] std::string to_string(SeriesVerdict::Kind kind);

[[nodiscard]] SeriesVerdict classify_sum(const SequenceSpec& spec, const SumOptions& opts = {});

/// Sum over S_- = {k : spec(k) < 0}. An empty S_- gives ConvergesTo(0).
[[nodiscard]] SeriesVerdict negative_part_sum(const SequenceSpec& spec,
                                              const SumOptions& opts = {});

/// Block sizes (n_k) of an alpha-partition of the index set.
///
/// Tails are Constant(n) or AffineLinear(s, b) with integer parameters and
/// s >= 0, so the parity of block boundaries is periodic with period <= 4;
/// alpha-products of oscillating factors depend only on that parity.
class AlphaBlocking {
public:
    /// alpha = (1, 1, ...)
    AlphaBlocking();
    /// Throws InvalidSpec unless every n_k is a positive integer.
    explicit AlphaBlocking(SequenceSpec sizes);

    static AlphaBlocking uniform(std::size_t n);

    [[nodiscard]] const SequenceSpec& sizes() const noexcept { return sizes_; }
    [[nodiscard]] std::size_t block_size(std::size_t k) const;
    /// First index of block F_k, i.e. n_0 + ... + n_{k-1}.
    [[nodiscard]] std::size_t block_begin(std::size_t k) const;
    /// One past the last index of F_k.
    [[nodiscard]] std::size_t block_end(std::size_t k) const { return block_begin(k + 1); }

    /// Parity of block_end(k) for all k >= some k0, if it is eventually constant.
    [[nodiscard]] std::optional<int> eventual_boundary_parity(std::size_t min_boundary) const;

private:
    SequenceSpec sizes_;
};

/// Factors beta_k of an ordinary product, given either directly or as
/// beta_k = exp(s_k). The log form covers factors such as exp(2^{-k}) and
/// (2, 1/2, 2, 1/2, ...) = exp(ln2 * (-1)^k) that no direct tail class holds.
class ProductFactors {
public:
    enum class Form { Direct, Exponential };

    static ProductFactors direct(SequenceSpec values);
    static ProductFactors exponential(SequenceSpec logs);

    [[nodiscard]] Form form() const noexcept { return form_; }
    [[nodiscard]] const SequenceSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] double factor(std::size_t k) const;

private:
    ProductFactors(Form form, SequenceSpec spec) : form_(form), spec_(std::move(spec)) {}

    Form form_;
    SequenceSpec spec_;
};

/// Limit of the partial products in [0, +inf], or Undefined when they
/// oscillate. Throws NegativeFactor if any direct factor is negative.
[[nodiscard]] ExtendedMeasure ordinary_product(const ProductFactors& factors,
                                               const SumOptions& opts = {});

/// Ordinary product of the block products prod_{i in F_k} beta_i.
[[nodiscard]] ExtendedMeasure ordinary_alpha_product(const AlphaBlocking& alpha,
                                                     const ProductFactors& factors,
                                                     const SumOptions& opts = {});

}  // namespace spcd
