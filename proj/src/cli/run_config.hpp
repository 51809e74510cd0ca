// run_config.hpp — command-line and config-file parameters for the noisent tool

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noisent/analysis.hpp"
#include "noisent/dynamics.hpp"
#include "noisent/model.hpp"

namespace noisent::cli {

enum class Command { Simulate, Sweep, Shorttime, Validate };

// Single: g = g_AD, rates are taken as given (g_AD is the unit).
// Collective: g = sqrt(g_AD^2 + g_BD^2) and gamma, gamma_D are multiples of g.
// In both cases the default sweep time is t = 1/g.
enum class CouplingUnit { Single, Collective };

struct RunConfig {
    Command command = Command::Simulate;

    double g_ad = 1.0;
    double g_bd = 1.0;
    double gamma = 0.2;
    double gamma_d = 0.2;
    NoiseKind noise = NoiseKind::White;
    double n_thermal = 1.0;
    double squeeze_fraction = 1.0; // M = fraction * sqrt(n_T (n_T + 1))
    RateConvention convention = RateConvention::Literal;
    CouplingUnit coupling_unit = CouplingUnit::Single;

    double step = 1e-3;
    double t_end = 5.0;
    std::size_t record_every = 10;

    SweepParameter axis1 = SweepParameter::NoiseIntensity;
    SweepParameter axis2 = SweepParameter::Time;
    std::vector<double> grid1; // empty: default grid of axis1
    std::vector<double> grid2;
    std::optional<double> at_time; // default 1/g

    double shorttime_dt = 0.005;
    double shorttime_tmax = 0.1;
    double shorttime_window = 0.05;

    std::string out_dir = ".";
    std::size_t workers = 1;
    std::uint64_t seed = 1;

    double coupling_scale() const; // g
    double rate_scale() const;     // factor applied to gamma and gamma_D
    NoiseModel noise_model(double n_thermal) const;
    ModelSpec model() const;
    double fixed_time() const;
    IntegratorConfig integrator() const;
    std::vector<double> axis_samples(int which) const; // 1 or 2

    // Re-checks every model and integrator invariant. Throws Error.
    void validate() const;

    // One-line key=value echo of the effective configuration.
    std::string echo() const;
};

std::string to_string(Command command);
std::string to_string(NoiseKind kind);
std::string to_string(RateConvention convention);
std::string to_string(CouplingUnit unit);

// "n_T", "t", "gamma", "gamma_D" (also accepts "nt", "gamma_d", "gamma-d").
SweepParameter parse_parameter(const std::string& name);

// "start:step:stop" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

std::vector<double> default_grid(SweepParameter parameter);

struct ParseResult {
    std::optional<RunConfig> config; // empty when the program should exit now
    int exit_code = 0;
};

// Parses argv, prints help or errors to stdout/stderr.
ParseResult parse_command_line(int argc, const char* const* argv);

} // namespace noisent::cli
