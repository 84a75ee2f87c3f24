#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "spcd/cli/execute.hpp"

namespace {

using spcd::cli::Command;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spcd::Error("cannot open config file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measure flows on R^inf and solve consumer demand problems"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::size_t> truncation;
    std::optional<std::size_t> depth;
    std::optional<double> tolerance;
    std::optional<double> m0;

    const std::vector<std::pair<Command, std::string>> commands{
        {Command::Classify, "classify the flow and report its scale factors"},
        {Command::Solve, "find the minimal initial measure for the demand schedule"},
        {Command::Simulate, "replay the demand schedule from a given initial measure"},
        {Command::Check, "compare truncated Jacobian log-determinants with the rate sums"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [command, help] : commands) {
        CLI::App* sub = app.add_subcommand(spcd::cli::to_string(command), help);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--truncation", truncation, "number of cells for check (replaces options.truncation)");
        sub->add_option("--depth", depth, "partial-sum depth K before closed-form remainders");
        sub->add_option("--tolerance", tolerance,
                        "feasibility tolerance for solve/simulate, log-determinant tolerance for check");
        sub->add_option("--m0", m0, "initial measure (required for simulate unless options.m0 is set)");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return spcd::cli::kError;
    }

    Command command = Command::Classify;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) command = commands[i].first;
    }

    try {
        spcd::cli::RunConfig config = spcd::cli::parse_config(read_file(config_path));
        spcd::cli::Overrides overrides{truncation, depth, std::nullopt, std::nullopt, m0};
        (command == Command::Check ? overrides.check_tolerance : overrides.tolerance) = tolerance;
        spcd::cli::apply_overrides(config, overrides);
        const spcd::cli::Report report = spcd::cli::execute(config, command);
        std::cout << report.document.dump(2) << "\n";
        std::cerr << report.summary << "\n";
        return report.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return spcd::cli::kError;
    }
}
