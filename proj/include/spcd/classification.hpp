#pragma once

#include <optional>
#include <string>

#include "spcd/flow_models.hpp"
#include "spcd/series.hpp"

namespace spcd {

/// Ordinary: the (1,1,...) / (1,2,2,...) ordinary Lebesgue measures.
/// Standard: finite scale factors additionally need an absolutely
/// convergent rate series; otherwise the negative part decides.
enum class MeasureFlavor { Ordinary, Standard };

[[nodiscard]] std::string to_string(MeasureFlavor flavor);

struct FlowClass {
    enum class Kind { Stable, Expansible, Pressing, TotallyExpansible, TotallyPressing, Indeterminate };

    Kind kind = Kind::Indeterminate;
    /// Lambda = sum_k d_k.
    SeriesVerdict rate_sum = SeriesVerdict::oscillates();
    /// Set when the standard flavor fell through to the negative-part rule.
    std::optional<SeriesVerdict> negative_part;
    /// For the three finite classes: false when |Lambda| does not exceed its
    /// remainder bound, so the sign was read off the numeric estimate.
    bool sign_certified = true;
    std::string reason;

    [[nodiscard]] bool admits_solution() const noexcept {
        return kind == Kind::Stable || kind == Kind::Expansible || kind == Kind::Pressing;
    }
};

[[nodiscard]] std::string to_string(FlowClass::Kind kind);

/// Decision table on a rate sequence (Lambda tag, sign, absolute
/// convergence, negative part). Applied to every family, not just Fourier.
[[nodiscard]] FlowClass classify_rates(const SequenceSpec& rates, MeasureFlavor flavor,
                                       const SumOptions& opts = {});

[[nodiscard]] FlowClass classify_flow(const FlowModel& model, MeasureFlavor flavor,
                                      const SumOptions& opts = {});

}  // namespace spcd
