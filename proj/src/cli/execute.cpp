#include "spcd/cli/execute.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <vector>

#include "spcd/measure.hpp"

namespace spcd::cli {

namespace {

using Ordered = nlohmann::ordered_json;

// Relative step below the closed-form m0 at which replay must fail.
constexpr double kMinimalityEps = 1e-6;

Ordered verdict_json(const SeriesVerdict& v) {
    Ordered out;
    out["verdict"] = to_string(v.kind());
    if (v.converged()) {
        out["value"] = v.value();
        out["absolutely"] = v.absolutely();
        out["remainder_bound"] = v.remainder_bound();
    }
    return out;
}

Ordered measure_json(const ExtendedMeasure& m) {
    Ordered out;
    out["kind"] = to_string(m.kind());
    if (m.is_finite()) {
        out["value"] = m.value();
        out["log_value"] = m.log_value();
    }
    return out;
}

Ordered class_json(const FlowClass& fc, const FlowModel& model) {
    Ordered out;
    out["class"] = to_string(fc.kind);
    out["reason"] = fc.reason;
    if (fc.admits_solution()) out["sign_certified"] = fc.sign_certified;
    if (fc.negative_part) out["negative_part"] = verdict_json(*fc.negative_part);
    out["decision_table"] = is_fourier(model) ? "fourier rate sequence"
                                              : "fourier decision table applied to this family's rate sequence";
    return out;
}

Ordered trace_json(const std::vector<SupplyStep>& trace) {
    Ordered out = Ordered::array();
    for (const SupplyStep& s : trace) {
        out.push_back({{"t", s.time},
                       {"measure_before", s.measure_before},
                       {"demand", s.demand},
                       {"residual_after", s.residual_after}});
    }
    return out;
}

const DemandSchedule& require_schedule(const RunConfig& c, Command command) {
    if (!c.schedule) throw ValidationError("demands: required for " + to_string(command));
    return *c.schedule;
}

std::string describe(const FlowClass& fc) {
    std::ostringstream s;
    s << "flow class: " << to_string(fc.kind) << " (" << fc.reason << ")";
    if (fc.admits_solution()) s << ", rate sum " << fc.rate_sum.value();
    if (fc.admits_solution() && !fc.sign_certified) s << " [sign not certified]";
    return s.str();
}

int solve_exit_code(SolveOutcome::Kind k) {
    switch (k) {
        case SolveOutcome::Kind::Solution:
            return kSuccess;
        case SolveOutcome::Kind::NoSolutionVanishing:
        case SolveOutcome::Kind::NoMinimum:
            return kNoSolution;
        case SolveOutcome::Kind::Unknown:
            break;
    }
    return kUnknown;
}

void run_classify(const RunConfig& c, const FlowClass& fc, Report& r) {
    Ordered factors = Ordered::array();
    for (double t : c.options.check_times) {
        factors.push_back({{"t", t}, {"factor", measure_json(liouville_factor(fc, t))}});
    }
    r.document["liouville_factor"] = factors;
    r.exit_code = kSuccess;
}

void run_solve(const RunConfig& c, const FlowClass& fc, Report& r, std::ostringstream& summary) {
    const DemandSchedule& schedule = require_schedule(c, Command::Solve);
    const SolveOutcome out = solve(fc, schedule, SimulationOptions{c.options.tolerance});
    Ordered o;
    o["kind"] = to_string(out.kind);
    o["reason"] = out.reason;
    if (out.plan) {
        o["m0"] = out.plan->m0;
        o["trace"] = trace_json(out.plan->trace);
        const MinimalityReport m = verify_minimality(fc.rate_sum.value(), schedule, out.plan->m0, kMinimalityEps,
                                                     SimulationOptions{c.options.tolerance});
        o["minimality"] = {{"eps", kMinimalityEps},
                           {"feasible_at_m0", m.feasible_at_m0},
                           {"infeasible_below", m.infeasible_below},
                           {"threshold", m.threshold},
                           {"threshold_gap", m.threshold_gap},
                           {"passed", m.passed()}};
        summary << "\noutcome: solution, minimal initial measure m0 = " << out.plan->m0;
    } else {
        summary << "\noutcome: " << to_string(out.kind) << " (" << out.reason << ")";
    }
    r.document["outcome"] = o;
    r.exit_code = solve_exit_code(out.kind);
}

void run_simulate(const RunConfig& c, const FlowClass& fc, Report& r, std::ostringstream& summary) {
    const DemandSchedule& schedule = require_schedule(c, Command::Simulate);
    if (!c.options.m0) throw ValidationError("options.m0: required for simulate (or pass --m0)");
    const double m0 = *c.options.m0;
    Ordered o;
    o["m0"] = m0;
    if (fc.admits_solution()) {
        const SimulationResult sim = simulate(fc.rate_sum.value(), schedule, m0, SimulationOptions{c.options.tolerance});
        o["method"] = "finite_rate";
        o["feasible"] = sim.feasible();
        o["trace"] = trace_json(sim.trace);
        if (sim.failure) {
            const SupplyFailure& f = *sim.failure;
            o["failure"] = {{"demand_index", f.demand_index},
                            {"t", f.time},
                            {"measure_before", f.measure_before},
                            {"demand", f.demand},
                            {"shortfall", f.shortfall}};
            summary << "\nsimulation: demand " << f.demand_index << " at t = " << f.time << " short by " << f.shortfall;
        } else {
            summary << "\nsimulation: all " << schedule.size() << " demands met";
        }
        r.exit_code = sim.feasible() ? kSuccess : kNoSolution;
    } else {
        const ExtendedReplay rep = replay(fc, schedule, m0);
        o["method"] = "extended_replay";
        o["feasible"] = rep.feasible;
        if (!rep.feasible) {
            o["failure"] = {{"demand_index", rep.failed_at}, {"reason", rep.reason}};
        }
        if (fc.kind == FlowClass::Kind::Indeterminate) {
            r.exit_code = kUnknown;
            summary << "\nsimulation: undecided, " << rep.reason;
        } else {
            r.exit_code = rep.feasible ? kSuccess : kNoSolution;
            summary << "\nsimulation: " << (rep.feasible ? "all demands met" : "demand " + std::to_string(rep.failed_at) + " not met");
        }
    }
    r.document["simulation"] = o;
}

void run_check(const RunConfig& c, Report& r, std::ostringstream& summary) {
    const std::vector<std::size_t>& sizes = c.options.truncation;
    const std::vector<double>& times = c.options.check_times;
    // one worker per truncation size; results are merged in input order
    std::vector<std::future<std::vector<JacobianCheck>>> jobs;
    for (std::size_t n : sizes) {
        jobs.push_back(std::async(std::launch::async, [&model = c.model, &times, n] {
            std::vector<JacobianCheck> rows;
            for (double t : times) rows.push_back(truncated_jacobian_check(model, t, n));
            return rows;
        }));
    }
    Ordered rows = Ordered::array();
    double worst = 0.0;
    for (auto& job : jobs) {
        for (const JacobianCheck& j : job.get()) {
            const double diff = std::abs(j.predicted - j.computed);
            const double allowed = c.options.check_tolerance * std::max(1.0, std::abs(j.predicted));
            worst = std::max(worst, std::isnan(diff) ? INFINITY : diff / std::max(1.0, std::abs(j.predicted)));
            rows.push_back({{"N", j.cells},
                            {"t", j.t},
                            {"predicted", j.predicted},
                            {"computed", j.computed},
                            {"abs_diff", diff},
                            {"within_tolerance", diff <= allowed}});
        }
    }
    const bool ok = worst <= c.options.check_tolerance;
    r.document["check"] = {{"tolerance", c.options.check_tolerance},
                           {"passed", ok},
                           {"max_scaled_diff", worst},
                           {"rows", rows}};
    summary << "\ncheck: " << rows.size() << " truncations, max scaled |predicted - computed| = " << worst
            << (ok ? " (ok)" : " (exceeds tolerance)");
    r.exit_code = ok ? kSuccess : kError;
}

}  // namespace

std::string to_string(Command command) {
    switch (command) {
        case Command::Classify:
            return "classify";
        case Command::Solve:
            return "solve";
        case Command::Simulate:
            return "simulate";
        case Command::Check:
            break;
    }
    return "check";
}

Report execute(const RunConfig& config, Command command) {
    Report r;
    r.document["command"] = to_string(command);
    r.document["config"] = to_json(config);

    const FlowClass fc = classify_flow(config.model, config.flavor, SumOptions{config.options.depth});
    r.document["rate_sum"] = verdict_json(fc.rate_sum);
    r.document["flow_class"] = class_json(fc, config.model);

    std::ostringstream summary;
    summary << family_name(config.model) << ", " << to_string(config.flavor) << " measure\n" << describe(fc);
    switch (command) {
        case Command::Classify:
            run_classify(config, fc, r);
            break;
        case Command::Solve:
            run_solve(config, fc, r, summary);
            break;
        case Command::Simulate:
            run_simulate(config, fc, r, summary);
            break;
        case Command::Check:
            run_check(config, r, summary);
            break;
    }
    r.document["exit_code"] = r.exit_code;
    r.summary = summary.str();
    return r;
}

}  // namespace spcd::cli
