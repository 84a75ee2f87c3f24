#pragma once

// Satisfaction of consumer demands: a supplier holds a set of measure m0 at
// t = 0, the flow rescales its measure by e^{(t' - t) Lambda} between demands,
// and consumer k removes a subset of measure m_k at time t_k.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spcd/classification.hpp"
#include "spcd/flow_models.hpp"

namespace spcd {

struct Demand {
    double time = 0.0;
    double measure = 0.0;
};

class DemandSchedule {
public:
    /// Throws InvalidSchedule unless the list is non-empty, 0 < t_1 < ... < t_n
    /// and every m_k is finite and > 0.
    explicit DemandSchedule(std::vector<Demand> demands);

    [[nodiscard]] const std::vector<Demand>& demands() const noexcept { return demands_; }
    [[nodiscard]] std::size_t size() const noexcept { return demands_.size(); }

private:
    std::vector<Demand> demands_;
};

struct SupplyStep {
    double time = 0.0;
    double measure_before = 0.0;
    double demand = 0.0;
    double residual_after = 0.0;
};

struct SupplyPlan {
    double m0 = 0.0;
    std::vector<SupplyStep> trace;
};

struct SupplyFailure {
    std::size_t demand_index = 0;  // 1-based
    double time = 0.0;
    double measure_before = 0.0;
    double demand = 0.0;
    double shortfall = 0.0;
};

struct SimulationResult {
    double m0 = 0.0;
    /// Steps completed before any failure.
    std::vector<SupplyStep> trace;
    std::optional<SupplyFailure> failure;

    [[nodiscard]] bool feasible() const noexcept { return !failure.has_value(); }
};

struct SimulationOptions {
    /// A residual r >= -tolerance * max(measure_before, demand) counts as 0,
    /// as does a final residual below +tolerance * max(measure_before, demand)
    /// plus the rounding of m0 grown to the last demand time.
    double tolerance = 1e-12;
};

/// Forward replay of the supply rule with a finite rate sum Lambda.
/// Throws std::invalid_argument for non-finite Lambda or m0 < 0.
[[nodiscard]] SimulationResult simulate(double lambda, const DemandSchedule& schedule, double m0,
                                        const SimulationOptions& opts = {});

/// sum_k m_k e^{-t_k Lambda}
[[nodiscard]] double minimal_initial_measure(double lambda, const DemandSchedule& schedule);

struct SolveOutcome {
    enum class Kind { Solution, NoSolutionVanishing, NoMinimum, Unknown };

    Kind kind = Kind::Unknown;
    FlowClass flow_class;
    std::optional<SupplyPlan> plan;
    std::string reason;
};

[[nodiscard]] std::string to_string(SolveOutcome::Kind kind);

/// Outcome from a classification: a finite class gives the closed-form m0 and
/// its replayed trace; totally pressing flows admit no initial system
/// (NoSolutionVanishing); totally expansible flows satisfy every schedule
/// from any m0 > 0 so no minimum is attained (NoMinimum); unresolved
/// oscillation gives Unknown.
[[nodiscard]] SolveOutcome solve(const FlowClass& flow_class, const DemandSchedule& schedule,
                                 const SimulationOptions& opts = {});

[[nodiscard]] SolveOutcome solve(const FlowModel& model, const DemandSchedule& schedule,
                                 MeasureFlavor flavor, const SumOptions& sum_opts = {},
                                 const SimulationOptions& opts = {});

struct MinimalityReport {
    bool feasible_at_m0 = false;
    bool infeasible_below = false;  // simulate(m0 (1 - eps)) fails
    double threshold = 0.0;         // bisection estimate of the feasibility threshold
    double threshold_gap = 0.0;     // |threshold - m0|
    [[nodiscard]] bool passed() const noexcept { return feasible_at_m0 && infeasible_below; }
};

[[nodiscard]] MinimalityReport verify_minimality(double lambda, const DemandSchedule& schedule,
                                                 double m0, double eps,
                                                 const SimulationOptions& opts = {});

struct ExtendedReplay {
    bool feasible = false;
    std::size_t failed_at = 0;  // 1-based; 0 when feasible
    std::string reason;
};

/// Replays the supply rule in extended arithmetic for any class, including
/// zero and infinite scale factors.
[[nodiscard]] ExtendedReplay replay(const FlowClass& flow_class, const DemandSchedule& schedule,
                                    double m0);

}  // namespace spcd
