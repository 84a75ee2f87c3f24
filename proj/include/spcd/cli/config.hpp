#pragma once

// Run configuration documents for the spcd command-line tool.
//
// {
//   "model":   {"family": "malthusian", "lambda": {"head": [0.5], "tail": {"class": "geometric",
//               "params": {"a": 0.25, "q": 0.5}}}},
//   "flavor":  "ordinary",
//   "demands": [{"t": 1, "m": 1}, {"t": 2, "m": 1}],
//   "options": {"truncation": [1, 4, 16], "depth": 100000, "panels": 256,
//               "tolerance": 1e-12, "check_tolerance": 1e-9, "check_times": [0.5, 1, 2], "m0": 0.75}
// }
//
// Unknown keys are rejected at every level.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spcd/classification.hpp"
#include "spcd/error.hpp"
#include "spcd/flow_models.hpp"
#include "spcd/solver.hpp"

namespace spcd::cli {

/// The document is not well-formed JSON.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The document is JSON but violates the schema or a model/schedule
/// invariant. The message starts with the offending field path.
class ValidationError : public Error {
public:
    using Error::Error;
};

struct RunOptions {
    std::vector<std::size_t> truncation{1, 4, 16, 64};
    std::size_t depth = 100000;
    /// Quadrature panels for forced evolution; validated and echoed, the
    /// commands themselves integrate no forcing.
    std::size_t panels = 256;
    double tolerance = 1e-12;
    double check_tolerance = 1e-9;
    std::vector<double> check_times{0.5, 1.0, 2.0};
    std::optional<double> m0;
};

struct RunConfig {
    FlowModel model;
    MeasureFlavor flavor = MeasureFlavor::Ordinary;
    std::optional<DemandSchedule> schedule;
    RunOptions options;
};

/// Command-line values that replace the corresponding options.
struct Overrides {
    std::optional<std::size_t> truncation;
    std::optional<std::size_t> depth;
    std::optional<double> tolerance;
    std::optional<double> check_tolerance;
    std::optional<double> m0;
};

[[nodiscard]] RunConfig parse_config(const std::string& document);

/// Throws ValidationError for values the options would reject in a document.
void apply_overrides(RunConfig& config, const Overrides& overrides);

/// Canonical form of a configuration, defaults filled in. Parsing the dump
/// of this document yields the same configuration.
[[nodiscard]] nlohmann::ordered_json to_json(const RunConfig& config);

[[nodiscard]] nlohmann::ordered_json to_json(const SequenceSpec& spec);

}  // namespace spcd::cli
