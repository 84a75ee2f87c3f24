#include "spcd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spcd/error.hpp"
#include "spcd/measure.hpp"

namespace spcd {

DemandSchedule::DemandSchedule(std::vector<Demand> demands) : demands_(std::move(demands)) {
    if (demands_.empty()) throw InvalidSchedule("demand schedule must not be empty");
    double previous = 0.0;
    for (std::size_t i = 0; i < demands_.size(); ++i) {
        const Demand& d = demands_[i];
        if (!std::isfinite(d.time)) throw InvalidSchedule("demand times must be finite");
        if (i == 0 && !(d.time > 0.0)) throw InvalidSchedule("first demand time must be > 0");
        if (i > 0 && !(d.time > previous)) throw InvalidSchedule("demand times must be strictly increasing");
        if (!std::isfinite(d.measure) || !(d.measure > 0.0)) {
            throw InvalidSchedule("demand measures must be finite and > 0");
        }
        previous = d.time;
    }
}

namespace {

// A value hi + lo carried to roughly twice double precision.
struct Compensated {
    double hi = 0.0;
    double lo = 0.0;

    void add(double x) {
        const double s = hi + x;
        const double bp = s - hi;
        const double err = (hi - (s - bp)) + (x - bp);
        lo += err;
        hi = s + lo;
        lo -= hi - s;
    }
    [[nodiscard]] double value() const { return hi + lo; }
};

// m_k e^{-t_k Lambda}: demand k expressed as measure at time 0.
double discounted(const Demand& d, double lambda) { return d.measure * std::exp(-d.time * lambda); }

// Exponents beyond this leave double range for e^{t Lambda} or its inverse.
constexpr double kMaxExponent = 600.0;

bool discounted_in_range(double lambda, const DemandSchedule& schedule) {
    return std::abs(schedule.demands().back().time * lambda) <= kMaxExponent;
}

}  // namespace

SimulationResult simulate(double lambda, const DemandSchedule& schedule, double m0,
                          const SimulationOptions& opts) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("simulate needs a finite rate sum");
    if (!std::isfinite(m0) || m0 < 0.0) throw std::invalid_argument("initial measure must be finite and >= 0");
    SimulationResult result;
    result.m0 = m0;
    // The supply is tracked as its time-0 equivalent so that the rounding of
    // early subtractions is not amplified by e^{(t_k - t_j) Lambda} later on.
    const bool use_discounted = discounted_in_range(lambda, schedule);
    Compensated left;
    left.add(m0);
    double residual = m0;
    double previous = 0.0;
    std::size_t index = 0;
    for (const Demand& d : schedule.demands()) {
        ++index;
        double before = 0.0;
        double after = 0.0;
        if (use_discounted) {
            const double grow = std::exp(d.time * lambda);
            before = left.value() * grow;
            left.add(-discounted(d, lambda));
            after = left.value() * grow;
        } else {
            before = residual * std::exp((d.time - previous) * lambda);
            after = before - d.measure;
        }
        const double slack = opts.tolerance * std::max(before, d.measure);
        // The last demand exhausts a minimal supply, so leftover rounding there is
        // dropped, including the few ulps of m0 itself grown to time t_n.
        const double m0_ulps = 4.0 * std::numeric_limits<double>::epsilon() * m0 * std::exp(d.time * lambda);
        if (index == schedule.size() && after > 0.0 && after <= slack + m0_ulps) after = 0.0;
        if (after < 0.0) {
            if (-after <= slack) {
                after = 0.0;
                left = Compensated{};
            } else {
                result.failure = SupplyFailure{index, d.time, before, d.measure, -after};
                return result;
            }
        }
        result.trace.push_back({d.time, before, d.measure, after});
        residual = after;
        previous = d.time;
    }
    return result;
}

double minimal_initial_measure(double lambda, const DemandSchedule& schedule) {
    if (!discounted_in_range(lambda, schedule)) {
        long double total = 0.0L;
        for (const Demand& d : schedule.demands()) total += d.measure * std::exp(-d.time * lambda);
        return static_cast<double>(total);
    }
    Compensated total;
    for (const Demand& d : schedule.demands()) total.add(discounted(d, lambda));
    // round up, so the returned double is never below the sum it stands for
    const double m0 = total.value();
    return (total.hi == m0 && total.lo > 0.0) ? std::nextafter(m0, INFINITY) : m0;
}

std::string to_string(SolveOutcome::Kind kind) {
    switch (kind) {
        case SolveOutcome::Kind::Solution:
            return "solution";
        case SolveOutcome::Kind::NoSolutionVanishing:
            return "no_solution_vanishing";
        case SolveOutcome::Kind::NoMinimum:
            return "no_minimum";
        case SolveOutcome::Kind::Unknown:
            break;
    }
    return "unknown";
}

SolveOutcome solve(const FlowClass& flow_class, const DemandSchedule& schedule,
                   const SimulationOptions& opts) {
    SolveOutcome out;
    out.flow_class = flow_class;
    switch (flow_class.kind) {
        case FlowClass::Kind::TotallyPressing:
            out.kind = SolveOutcome::Kind::NoSolutionVanishing;
            out.reason = "every initial system has measure 0 after any t > 0, so demand 1 cannot be met";
            return out;
        case FlowClass::Kind::TotallyExpansible:
            out.kind = SolveOutcome::Kind::NoMinimum;
            out.reason = "every initial system of positive measure satisfies all demands; the infimum 0 is not attained";
            return out;
        case FlowClass::Kind::Indeterminate:
            out.kind = SolveOutcome::Kind::Unknown;
            out.reason = "rate sum oscillates; solvability is not decided";
            return out;
        default:
            break;
    }
    const double lambda = flow_class.rate_sum.value();
    const double m0 = minimal_initial_measure(lambda, schedule);
    const SimulationResult sim = simulate(lambda, schedule, m0, opts);
    if (!sim.feasible()) {
        // Only reachable if the closed form and replay disagree beyond tolerance.
        out.kind = SolveOutcome::Kind::Unknown;
        out.reason = "closed-form initial measure failed replay at demand " +
                     std::to_string(sim.failure->demand_index);
        return out;
    }
    out.kind = SolveOutcome::Kind::Solution;
    out.plan = SupplyPlan{m0, sim.trace};
    out.reason = "minimal initial measure sum_k m_k exp(-t_k Lambda)";
    return out;
}

SolveOutcome solve(const FlowModel& model, const DemandSchedule& schedule, MeasureFlavor flavor,
                   const SumOptions& sum_opts, const SimulationOptions& opts) {
    return solve(classify_flow(model, flavor, sum_opts), schedule, opts);
}

MinimalityReport verify_minimality(double lambda, const DemandSchedule& schedule, double m0, double eps,
                                   const SimulationOptions& opts) {
    if (!(eps > 0.0)) throw std::invalid_argument("minimality check needs eps > 0");
    auto feasible = [&](double m) { return simulate(lambda, schedule, m, opts).feasible(); };
    MinimalityReport report;
    report.feasible_at_m0 = feasible(m0);
    report.infeasible_below = !feasible(m0 * (1.0 - eps));

    double lo = 0.0;
    double hi = m0 > 0.0 ? 2.0 * m0 : 1.0;
    for (int i = 0; i < 2000 && !feasible(hi); ++i) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (feasible(mid) ? hi : lo) = mid;
    }
    report.threshold = hi;
    report.threshold_gap = std::abs(hi - m0);
    return report;
}

ExtendedReplay replay(const FlowClass& flow_class, const DemandSchedule& schedule, double m0) {
    ExtendedReplay out;
    ExtendedMeasure residual = m0 > 0.0 ? ExtendedMeasure::finite(m0) : ExtendedMeasure::zero();
    double previous = 0.0;
    std::size_t index = 0;
    for (const Demand& d : schedule.demands()) {
        ++index;
        const ExtendedMeasure before = pushforward(residual, liouville_factor(flow_class, d.time - previous));
        previous = d.time;
        if (before.is_undefined()) {
            out.failed_at = index;
            out.reason = "scale factor undefined";
            return out;
        }
        if (before.is_infinite()) {
            residual = before;
            continue;
        }
        const double available = before.value();
        if (available < d.measure) {
            out.failed_at = index;
            out.reason = "available measure " + std::to_string(available) + " below demand";
            return out;
        }
        const double left = available - d.measure;
        residual = left > 0.0 ? ExtendedMeasure::finite(left) : ExtendedMeasure::zero();
    }
    out.feasible = true;
    return out;
}

}  // namespace spcd
