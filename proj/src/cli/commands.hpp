// commands.hpp — the simulate, sweep, shorttime and validate subcommands

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "noisent/analysis.hpp"
#include "run_config.hpp"

namespace noisent::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int integrator = 3;
inline constexpr int shorttime = 4;
inline constexpr int validation = 5;
} // namespace exit_code

// Trajectory CSV: t,concurrence_AB,pop_A,pop_B,pop_D,trace_err. Throws Error.
std::string simulate_csv(const RunConfig& cfg);

struct SweepOutput {
    SweepGrid grid;
    std::string csv;
    std::string svg;
    std::string summary;
};

SweepOutput run_sweep(const RunConfig& cfg);

struct ShorttimeRow {
    double t = 0.0;
    double numeric = 0.0;
    double analytic = 0.0;
    double rel_err = 0.0;
    bool in_window = true;
};

struct ShorttimeOutput {
    std::vector<ShorttimeRow> rows;
    std::string csv;
    bool bound_violated = false; // some in-window rel_err > 0.05
};

inline constexpr double shorttime_bound = 0.05;

ShorttimeOutput run_shorttime(const RunConfig& cfg);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Never throws: failures, including StateCorrupted, become failed checks.
std::vector<Check> run_validation(const RunConfig& cfg);
std::string format_checks(const std::vector<Check>& checks);

// Runs the configured subcommand, writes its files under cfg.out_dir and
// returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace noisent::cli
