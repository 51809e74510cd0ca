// run_config.cpp — option table, config-file loading and validation

#include "run_config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include "noisent/error.hpp"
#include "report.hpp"

namespace noisent::cli {

namespace {

std::vector<double> range_samples(double start, double step, double stop) {
    if (!(step > 0.0) || !(stop >= start)) {
        throw Error(ErrorKind::InvalidArgument, "grid range needs step > 0 and stop >= start");
    }
    const auto n = static_cast<std::size_t>(std::llround((stop - start) / step)) + 1;
    if (n > 100000) throw Error(ErrorKind::InvalidArgument, "grid has too many samples");
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = start + static_cast<double>(k) * step;
    return out;
}

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, "not a number: '" + text + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

double RunConfig::coupling_scale() const {
    return coupling_unit == CouplingUnit::Single ? std::abs(g_ad) : std::hypot(g_ad, g_bd);
}

double RunConfig::rate_scale() const { return coupling_unit == CouplingUnit::Single ? 1.0 : coupling_scale(); }

NoiseModel RunConfig::noise_model(double n) const {
    if (noise == NoiseKind::White) return WhiteNoise{n};
    const double m = n >= 0.0 ? squeeze_fraction * max_squeezing(n) : 0.0;
    return SqueezedWhiteNoise{n, Complex(m, 0.0)};
}

ModelSpec RunConfig::model() const {
    const double unit = rate_scale();
    ModelSpec s;
    s.g_ad = g_ad;
    s.g_bd = g_bd;
    s.gamma = gamma * unit;
    s.gamma_d = gamma_d * unit;
    s.noise = noise_model(n_thermal);
    s.convention = convention;
    return s;
}

double RunConfig::fixed_time() const {
    if (at_time) return *at_time;
    return 1.0 / coupling_scale();
}

IntegratorConfig RunConfig::integrator() const {
    IntegratorConfig cfg;
    cfg.step = step;
    cfg.t_end = t_end;
    cfg.record_every = record_every;
    cfg.positivity_floor = positivity_floor(noise_model(n_thermal));
    return cfg;
}

std::vector<double> RunConfig::axis_samples(int which) const {
    const auto& grid = which == 1 ? grid1 : grid2;
    if (!grid.empty()) return grid;
    return default_grid(which == 1 ? axis1 : axis2);
}

void RunConfig::validate() const {
    if (coupling_scale() == 0.0 && (coupling_unit == CouplingUnit::Collective || !at_time)) {
        throw Error(ErrorKind::ZeroCoupling, "the coupling unit g is zero");
    }
    if (!(squeeze_fraction >= 0.0 && squeeze_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidNoise, "squeeze-fraction must lie in [0, 1]");
    }
    model().validate();
    integrator().validate();
    if (workers == 0) throw Error(ErrorKind::InvalidArgument, "workers must be >= 1");
    if (at_time && !(*at_time >= 0.0)) throw Error(ErrorKind::InvalidArgument, "at-time must be >= 0");
    if (command == Command::Sweep) {
        if (axis1 == axis2) throw Error(ErrorKind::InvalidArgument, "axis1 and axis2 must differ");
        for (int which : {1, 2}) {
            const auto param = which == 1 ? axis1 : axis2;
            for (double v : axis_samples(which)) {
                if (v < 0.0) throw Error(ErrorKind::InvalidArgument, to_string(param) + " samples must be >= 0");
            }
        }
    }
    if (command == Command::Shorttime) {
        if (!(shorttime_dt > 0.0) || !(shorttime_tmax >= shorttime_dt)) {
            throw Error(ErrorKind::InvalidArgument, "shorttime-dt must be > 0 and <= shorttime-tmax");
        }
        const double ratio = shorttime_dt / step;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
            throw Error(ErrorKind::InvalidArgument, "shorttime-dt must be a multiple of step");
        }
    }
}

std::string RunConfig::echo() const {
    std::ostringstream os;
    os << "command=" << to_string(command) << " g_ad=" << format_number(g_ad) << " g_bd=" << format_number(g_bd)
       << " gamma=" << format_number(gamma) << " gamma_d=" << format_number(gamma_d)
       << " noise=" << to_string(noise) << " n_t=" << format_number(n_thermal);
    if (noise == NoiseKind::Squeezed) os << " squeeze_fraction=" << format_number(squeeze_fraction);
    os << " rate_convention=" << to_string(convention) << " coupling_unit=" << to_string(coupling_unit)
       << " step=" << format_number(step);
    switch (command) {
    case Command::Simulate:
        os << " t_end=" << format_number(t_end) << " record_every=" << record_every;
        break;
    case Command::Sweep:
        os << " axis1=" << to_string(axis1) << " axis2=" << to_string(axis2)
           << " at_time=" << format_number(fixed_time());
        break;
    case Command::Shorttime:
        os << " shorttime_dt=" << format_number(shorttime_dt) << " shorttime_tmax=" << format_number(shorttime_tmax)
           << " shorttime_window=" << format_number(shorttime_window);
        break;
    case Command::Validate: os << " seed=" << seed; break;
    }
    return os.str();
}

std::string to_string(Command command) {
    switch (command) {
    case Command::Simulate: return "simulate";
    case Command::Sweep: return "sweep";
    case Command::Shorttime: return "shorttime";
    case Command::Validate: return "validate";
    }
    return "unknown";
}

std::string to_string(NoiseKind kind) { return kind == NoiseKind::White ? "white" : "squeezed"; }

std::string to_string(RateConvention convention) {
    return convention == RateConvention::Literal ? "literal" : "symmetric";
}

std::string to_string(CouplingUnit unit) { return unit == CouplingUnit::Single ? "single" : "collective"; }

SweepParameter parse_parameter(const std::string& name) {
    static const std::map<std::string, SweepParameter> names{
        {"n_T", SweepParameter::NoiseIntensity}, {"nt", SweepParameter::NoiseIntensity},
        {"n_t", SweepParameter::NoiseIntensity}, {"t", SweepParameter::Time},
        {"gamma", SweepParameter::Gamma},        {"gamma_D", SweepParameter::GammaD},
        {"gamma_d", SweepParameter::GammaD},     {"gamma-d", SweepParameter::GammaD}};
    const auto it = names.find(name);
    if (it == names.end()) throw Error(ErrorKind::InvalidArgument, "unknown sweep parameter '" + name + "'");
    return it->second;
}

std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(parse_number(trim(item)));
        if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "grid range must be start:step:stop");
        return range_samples(parts[0], parts[1], parts[2]);
    }
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    return out;
}

std::vector<double> default_grid(SweepParameter parameter) {
    switch (parameter) {
    case SweepParameter::NoiseIntensity: return range_samples(0.0, 0.25, 5.0);
    case SweepParameter::Time: return range_samples(0.0, 0.1, 5.0);
    case SweepParameter::Gamma: return range_samples(0.0, 0.05, 1.0);
    case SweepParameter::GammaD: return range_samples(0.0, 0.05, 1.0);
    }
    return {};
}

ParseResult parse_command_line(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Noise-induced entanglement of two atoms coupled through a noisy mediator atom.\n"
                 "Rates and couplings are in units of g0 = g_AD, times in 1/g0."};
    app.set_config("--config", "", "Flat key = value file; keys are the long option names", false);
    app.allow_config_extras(false);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string noise = "white", convention = "literal", unit = "single";
    std::string axis1 = "n_T", axis2 = "t", grid1, grid2;
    double at_time = -1.0;

    app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads for sweeps")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for randomized validation checks")->capture_default_str();
    app.add_option("--noise", noise, "Bath noise")->check(CLI::IsMember({"white", "squeezed"}))->capture_default_str();
    app.add_option("--nt", cfg.n_thermal, "Noise intensity n_T")->capture_default_str();
    app.add_option("--squeeze-fraction", cfg.squeeze_fraction, "M / sqrt(n_T (n_T + 1)) for squeezed noise")
        ->capture_default_str();
    app.add_option("--gamma", cfg.gamma, "Decay rate of atoms A and B")->capture_default_str();
    app.add_option("--gamma-d", cfg.gamma_d, "Bath coupling rate of the mediator D")->capture_default_str();
    app.add_option("--gad", cfg.g_ad, "Coupling g_AD")->capture_default_str();
    app.add_option("--gbd", cfg.g_bd, "Coupling g_BD")->capture_default_str();
    app.add_option("--rate-convention", convention,
                   "literal: kappa (2 L rho L+ - ...); symmetric: kappa/2 (2 L rho L+ - ...)")
        ->check(CLI::IsMember({"literal", "symmetric"}))
        ->capture_default_str();
    app.add_option("--coupling-unit", unit, "Unit g for rates and t = 1/g: single (g_AD) or collective")
        ->check(CLI::IsMember({"single", "collective"}))
        ->capture_default_str();
    app.add_option("--t-end", cfg.t_end, "Final time of simulate")->capture_default_str();
    app.add_option("--step", cfg.step, "RK4 step")->capture_default_str();
    app.add_option("--record-every", cfg.record_every, "Record every N steps")->capture_default_str();
    app.add_option("--axis1", axis1, "Sweep axis 1: n_T, t, gamma, gamma_D")->capture_default_str();
    app.add_option("--axis2", axis2, "Sweep axis 2: n_T, t, gamma, gamma_D")->capture_default_str();
    app.add_option("--grid1", grid1, "Axis-1 samples, start:step:stop or a,b,c (default per parameter)");
    app.add_option("--grid2", grid2, "Axis-2 samples, start:step:stop or a,b,c (default per parameter)");
    app.add_option("--at-time", at_time, "Evaluation time when no axis is t (default 1/g)");
    app.add_option("--shorttime-dt", cfg.shorttime_dt, "Sample spacing of shorttime")->capture_default_str();
    app.add_option("--shorttime-tmax", cfg.shorttime_tmax, "Last shorttime sample")->capture_default_str();
    app.add_option("--shorttime-window", cfg.shorttime_window, "Samples with t <= window are checked")
        ->capture_default_str();

    const std::pair<const char*, Command> commands[] = {
        {"simulate", Command::Simulate}, {"sweep", Command::Sweep},
        {"shorttime", Command::Shorttime}, {"validate", Command::Validate}};
    const char* descriptions[] = {"Integrate the three-atom model from |ggg> and write a trajectory CSV",
                                  "Concurrence over a two-parameter grid: CSV, SVG heatmap and argmax summary",
                                  "Compare the integrated C,D concurrence with the short-time law",
                                  "Run the built-in invariant checks"};
    std::vector<CLI::App*> subs;
    for (std::size_t k = 0; k < 4; ++k) subs.push_back(app.add_subcommand(commands[k].first, descriptions[k])->fallthrough());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return {std::nullopt, code == 0 ? 0 : 2};
    }

    try {
        for (std::size_t k = 0; k < 4; ++k)
            if (subs[k]->parsed()) cfg.command = commands[k].second;
        cfg.noise = noise == "white" ? NoiseKind::White : NoiseKind::Squeezed;
        cfg.convention = convention == "literal" ? RateConvention::Literal : RateConvention::Symmetric;
        cfg.coupling_unit = unit == "single" ? CouplingUnit::Single : CouplingUnit::Collective;
        cfg.axis1 = parse_parameter(axis1);
        cfg.axis2 = parse_parameter(axis2);
        if (!grid1.empty()) cfg.grid1 = parse_grid(grid1);
        if (!grid2.empty()) cfg.grid2 = parse_grid(grid2);
        if (app.count("--at-time") > 0) cfg.at_time = at_time;
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return {std::nullopt, 2};
    }
    return {cfg, 0};
}

} // namespace noisent::cli
