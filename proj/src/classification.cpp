#include "spcd/classification.hpp"

#include <cmath>

namespace spcd {

namespace {

FlowClass finite_class(const SeriesVerdict& sum) {
    FlowClass c;
    c.rate_sum = sum;
    const double v = sum.value();
    const double bound = sum.remainder_bound();
    c.sign_certified = (v == 0.0 && bound == 0.0) || std::abs(v) > bound;
    if (v == 0.0) {
        c.kind = FlowClass::Kind::Stable;
        c.reason = "rate sum is 0";
    } else if (v > 0.0) {
        c.kind = FlowClass::Kind::Expansible;
        c.reason = "rate sum is finite and positive";
    } else {
        c.kind = FlowClass::Kind::Pressing;
        c.reason = "rate sum is finite and negative";
    }
    return c;
}

}  // namespace

std::string to_string(MeasureFlavor flavor) {
    return flavor == MeasureFlavor::Ordinary ? "ordinary" : "standard";
}

std::string to_string(FlowClass::Kind kind) {
    switch (kind) {
        case FlowClass::Kind::Stable:
            return "stable";
        case FlowClass::Kind::Expansible:
            return "expansible";
        case FlowClass::Kind::Pressing:
            return "pressing";
        case FlowClass::Kind::TotallyExpansible:
            return "totally_expansible";
        case FlowClass::Kind::TotallyPressing:
            return "totally_pressing";
        case FlowClass::Kind::Indeterminate:
            break;
    }
    return "indeterminate";
}

FlowClass classify_rates(const SequenceSpec& rates, MeasureFlavor flavor, const SumOptions& opts) {
    const SeriesVerdict sum = classify_sum(rates, opts);

    if (flavor == MeasureFlavor::Standard) {
        if (sum.converged() && sum.absolutely()) return finite_class(sum);
        FlowClass c;
        c.rate_sum = sum;
        c.negative_part = negative_part_sum(rates, opts);
        if (c.negative_part->kind() == SeriesVerdict::Kind::DivergesMinus) {
            c.kind = FlowClass::Kind::TotallyPressing;
            c.reason = "rate series not absolutely convergent and its negative part is -inf";
        } else {
            c.kind = FlowClass::Kind::TotallyExpansible;
            c.reason = "rate series not absolutely convergent and its negative part is > -inf";
        }
        return c;
    }

    switch (sum.kind()) {
        case SeriesVerdict::Kind::ConvergesTo:
            return finite_class(sum);
        case SeriesVerdict::Kind::DivergesPlus: {
            FlowClass c;
            c.rate_sum = sum;
            c.kind = FlowClass::Kind::TotallyExpansible;
            c.reason = "rate sum is +inf";
            return c;
        }
        case SeriesVerdict::Kind::DivergesMinus: {
            FlowClass c;
            c.rate_sum = sum;
            c.kind = FlowClass::Kind::TotallyPressing;
            c.reason = "rate sum is -inf";
            return c;
        }
        case SeriesVerdict::Kind::Oscillates:
            break;
    }
    FlowClass c;
    c.rate_sum = sum;
    c.kind = FlowClass::Kind::Indeterminate;
    c.reason = "rate partial sums oscillate";
    return c;
}

FlowClass classify_flow(const FlowModel& model, MeasureFlavor flavor, const SumOptions& opts) {
    validate(model);
    return classify_rates(rate_sequence(model).rates, flavor, opts);
}

}  // namespace spcd
