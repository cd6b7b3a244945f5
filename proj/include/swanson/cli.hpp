#pragma once

// Command orchestration behind the `swanson` executable. Kept in the library
// so that tests can drive it without spawning processes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swanson/coefficients.hpp"

namespace swanson::cli {

enum class Command { Spectrum, Reduce, Evolve, Verify, Fig1 };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// Options as given on the command line; unset optionals take the defaults
/// below. Grid-type options are rejected by commands that have no grid.
struct RunConfig {
    Command command = Command::Spectrum;
    std::optional<std::string> config_path;
    std::optional<nlohmann::json> scenario_json;  // overrides config_path when set
    std::string out_prefix = "swanson";

    std::optional<int> dim;          // 256
    std::optional<int> n_max;        // 10
    std::optional<double> dt;        // 1e-4
    std::optional<double> t_final;   // 2
    std::optional<int> t_samples;    // 64
    std::optional<double> dx;        // 5e-3 (fig1: 2e-2)
    std::optional<double> sigma;     // 1/sqrt(2)
    std::optional<double> x0;        // 2
};

constexpr int kDefaultDim = 256;
constexpr int kDefaultNmax = 10;
constexpr double kDefaultDt = 1e-4;
constexpr double kDefaultTFinal = 2.0;
constexpr int kDefaultTSamples = 64;
constexpr double kDefaultDx = 5e-3;
constexpr double kDefaultFigDx = 2e-2;

struct RunResult {
    int exit_code = 0;
    std::vector<std::string> artifacts;  // paths written
};

/// Runs one command. Exit code 1 for invalid configuration, 2 for numerical
/// failures; in both cases a JSON object {"error", "kind", "message"} is
/// written to `err`. Progress lines go to `log`.
RunResult run(const RunConfig& config, std::ostream& log, std::ostream& err);

}  // namespace swanson::cli
