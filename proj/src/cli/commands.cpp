// commands.cpp — subcommand bodies and file output

#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "noisent/entanglement.hpp"
#include "noisent/error.hpp"
#include "report.hpp"

namespace noisent::cli {

namespace {

ComplexMatrix ground(std::size_t dim) { return ComplexMatrix::basis_projector(dim, 0); }

ReducedSpec reduced_cd(const ModelSpec& s) {
    return ReducedSpec{s.collective_coupling(), s.gamma, s.gamma_d, s.noise, s.convention};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    f << content;
    if (!f) throw Error(ErrorKind::InvalidArgument, "failed writing " + path.string());
}

std::filesystem::path output_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::InvalidArgument, "cannot create " + dir.string() + ": " + ec.message());
    return dir;
}

ComplexMatrix random_state(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho *= Complex(1.0 / rho.trace().real());
    return (rho + rho.adjoint()) * 0.5;
}

ComplexMatrix random_local_unitary(std::mt19937_64& rng) {
    // exp(-i theta n.sigma) on each qubit
    std::normal_distribution<double> normal(0.0, 1.0);
    auto one = [&] {
        double nx = normal(rng), ny = normal(rng), nz = normal(rng);
        const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
        nx /= norm;
        ny /= norm;
        nz /= norm;
        const double theta = normal(rng);
        const ComplexMatrix n_sigma = ops::sigma_x() * nx + ops::sigma_y() * ny + ops::sigma_z() * nz;
        return ComplexMatrix::identity(2) * std::cos(theta) - n_sigma * Complex(0.0, std::sin(theta));
    };
    const ComplexMatrix a = one();
    return kron(a, one());
}

Check audited_run(const std::string& name, const ModelSpec& s, const IntegratorConfig& base, double t_end) {
    IntegratorConfig cfg = base;
    cfg.t_end = t_end;
    cfg.record_every = 1; // audit every step, not only the recorded ones
    cfg.positivity_floor = positivity_floor(s.noise);
    const auto traj = evolve(build_hamiltonian_full(s), build_liouvillian_full(s), ground(8), cfg);
    const auto& a = traj.audit;
    const bool ok = a.max_trace_error <= bounds::trace && a.max_hermiticity_error <= bounds::hermiticity &&
                    a.min_eigenvalue >= -cfg.positivity_floor;
    return {name, ok,
            "trace_err=" + format_number(a.max_trace_error) + " herm_err=" + format_number(a.max_hermiticity_error) +
                " min_eig=" + format_number(a.min_eigenvalue)};
}

template <class Fn>
Check guarded(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return {name, false, e.what()};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

} // namespace

std::string simulate_csv(const RunConfig& cfg) {
    const ModelSpec s = cfg.model();
    auto traj = evolve(build_hamiltonian_full(s), build_liouvillian_full(s), ground(8), cfg.integrator());
    annotate_concurrence(traj);
    std::ostringstream os;
    os << csv_preamble(cfg.echo());
    os << "t,concurrence_AB,pop_A,pop_B,pop_D,trace_err\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double trace_err = std::abs(traj.states[k].trace() - Complex(1.0));
        os << format_number(traj.times[k]) << "," << format_number(traj.concurrence[k]) << ","
           << format_number(traj.populations[0][k]) << "," << format_number(traj.populations[1][k]) << ","
           << format_number(traj.populations[2][k]) << "," << format_number(trace_err) << "\n";
    }
    return os.str();
}

SweepOutput run_sweep(const RunConfig& cfg) {
    SweepRequest req;
    req.base = cfg.model();
    req.axis1 = {cfg.axis1, cfg.axis_samples(1)};
    req.axis2 = {cfg.axis2, cfg.axis_samples(2)};
    req.fixed_time = cfg.fixed_time();
    req.noise_kind = cfg.noise;
    req.squeeze_fraction = cfg.squeeze_fraction;
    req.integrator = cfg.integrator();
    req.workers = cfg.workers;
    // Rate axes follow the configured unit like the scalar options do.
    const double unit = cfg.rate_scale();
    for (auto* axis : {&req.axis1, &req.axis2}) {
        if (axis->parameter == SweepParameter::Gamma || axis->parameter == SweepParameter::GammaD) {
            for (double& v : axis->samples) v *= unit;
        }
    }

    SweepOutput out;
    out.grid = sweep(req);
    out.csv = sweep_csv(out.grid, cfg.echo());
    out.svg = heatmap_svg(out.grid);
    out.summary = "# config: " + cfg.echo() + "\n" + sweep_summary(out.grid);
    return out;
}

ShorttimeOutput run_shorttime(const RunConfig& cfg) {
    const ReducedSpec r = reduced_cd(cfg.model());
    IntegratorConfig ic = cfg.integrator();
    const auto per_sample = static_cast<std::size_t>(std::llround(cfg.shorttime_dt / cfg.step));
    const auto samples = static_cast<std::size_t>(std::floor(cfg.shorttime_tmax / cfg.shorttime_dt + 1e-9));
    ic.record_every = per_sample;
    ic.t_end = static_cast<double>(per_sample * samples) * cfg.step;
    const auto traj = evolve(build_hamiltonian_cd(r), build_liouvillian_cd(r), ground(4), ic);

    ShorttimeOutput out;
    std::ostringstream os;
    os << csv_preamble(cfg.echo());
    os << "# c_analytic = g * r_up * t^2, r_up = initial bath excitation rate of D; window: t <= "
       << format_number(cfg.shorttime_window) << "\n";
    os << "t,c_numeric,c_analytic,rel_err,window\n";
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        ShorttimeRow row;
        row.t = traj.times[k];
        row.numeric = concurrence(traj.states[k]).value;
        row.analytic = shorttime_concurrence_CD(r, row.t);
        if (row.analytic > 0.0) {
            row.rel_err = std::abs(row.numeric - row.analytic) / row.analytic;
        } else {
            row.rel_err = row.numeric == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        row.in_window = row.t <= cfg.shorttime_window * (1 + 1e-12);
        if (row.in_window && row.rel_err > shorttime_bound) out.bound_violated = true;
        os << format_number(row.t) << "," << format_number(row.numeric) << "," << format_number(row.analytic) << ","
           << format_number(row.rel_err) << "," << (row.in_window ? "true" : "false") << "\n";
        out.rows.push_back(row);
    }
    out.csv = os.str();
    return out;
}

std::vector<Check> run_validation(const RunConfig& cfg) {
    const ModelSpec base = cfg.model();
    IntegratorConfig ic = cfg.integrator();
    std::vector<Check> checks;

    checks.push_back(guarded("physical states, configured noise", [&] {
        return audited_run("physical states, configured noise", base, ic, 5.0);
    }));

    checks.push_back(guarded("physical states, squeezing boundary", [&] {
        ModelSpec s = base;
        s.noise = perfect_squeezing(std::max(noise_intensity(base.noise), 1.0));
        return audited_run("physical states, squeezing boundary", s, ic, 5.0);
    }));

    checks.push_back(guarded("no entanglement at n_T = 0", [&] {
        ModelSpec s = base;
        s.noise = WhiteNoise{0.0};
        IntegratorConfig c = ic;
        c.t_end = 5.0;
        auto traj = evolve(build_hamiltonian_full(s), build_liouvillian_full(s), ground(8), c);
        annotate_concurrence(traj);
        const double worst = *std::max_element(traj.concurrence.begin(), traj.concurrence.end());
        return Check{"no entanglement at n_T = 0", worst <= 1e-12, "max concurrence=" + format_number(worst)};
    }));

    checks.push_back(guarded("concurrence golden values", [&] {
        const double s = 1.0 / std::sqrt(2.0);
        const double bell = concurrence(ComplexMatrix::projector({s, 0.0, 0.0, s})).value;
        const ComplexMatrix singlet = ComplexMatrix::projector({0.0, s, -s, 0.0});
        const double werner = concurrence(singlet * 0.8 + ComplexMatrix::identity(4) * 0.05).value;
        const double product = concurrence(kron(ComplexMatrix::diagonal({0.3, 0.7}), ComplexMatrix::diagonal({0.6, 0.4}))).value;
        const bool ok = std::abs(bell - 1.0) <= 1e-10 && std::abs(werner - 0.7) <= 1e-9 && product <= 1e-10;
        return Check{"concurrence golden values", ok,
                     "bell=" + format_number(bell) + " werner(0.8)=" + format_number(werner) +
                         " product=" + format_number(product)};
    }));

    checks.push_back(guarded("concurrence local-unitary invariance", [&] {
        std::mt19937_64 rng(cfg.seed);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const ComplexMatrix rho = random_state(4, rng);
            const ComplexMatrix mixed =
                rho * 0.4 + ComplexMatrix::projector({1 / std::sqrt(2.0), 0.0, 0.0, 1 / std::sqrt(2.0)}) * 0.6;
            const ComplexMatrix u = random_local_unitary(rng);
            ComplexMatrix rotated = u * mixed * u.adjoint();
            rotated = (rotated + rotated.adjoint()) * 0.5;
            worst = std::max(worst, std::abs(concurrence(mixed).value - concurrence(rotated).value));
        }
        return Check{"concurrence local-unitary invariance", worst <= 1e-8, "max diff=" + format_number(worst)};
    }));

    checks.push_back(guarded("mode E decoupled", [&] {
        const auto ct = collective_transform(base);
        IntegratorConfig c = ic;
        c.t_end = 20.0;
        const auto traj = evolve(build_hamiltonian_ced(ct.reduced), build_liouvillian_ced(ct.reduced), ground(8), c);
        const double worst = *std::max_element(traj.populations[1].begin(), traj.populations[1].end());
        return Check{"mode E decoupled", worst <= 1e-10, "max E population=" + format_number(worst)};
    }));

    checks.push_back(guarded("series consistency", [&] {
        const auto h = build_hamiltonian_full(base);
        const auto terms = build_liouvillian_full(base);
        const auto series = perturbative_series(h, terms, ground(8), 4);
        const double first = max_abs_diff(series[1].coeff, rhs(h, terms, ground(8)));
        IntegratorConfig c = ic;
        c.t_end = 0.05;
        const auto traj = evolve(h, terms, ground(8), c);
        const double t = traj.times.back();
        const double err = max_abs_diff(evaluate_series(series, t), traj.states.back());
        const bool ok = first == 0.0 && std::abs(t - 0.05) <= 1e-12 && err <= 1e-6;
        return Check{"series consistency", ok,
                     "t=" + format_number(t) + " |series - integrated|=" + format_number(err)};
    }));

    checks.push_back(guarded("thermal steady state", [&] {
        const auto terms = noise_terms(0.2, WhiteNoise{1.0}, base.convention, 0, 1);
        IntegratorConfig c = ic;
        const auto ss = steady_state_longtime(ComplexMatrix(2), terms, ground(2), 50.0 / 0.2, c);
        const double pop = ss.state(1, 1).real();
        return Check{"thermal steady state", std::abs(pop - 1.0 / 3.0) <= 1e-6, "rho_ee=" + format_number(pop)};
    }));

    return checks;
}

std::string format_checks(const std::vector<Check>& checks) {
    std::size_t width = 5;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ') << c.detail
           << "\n";
    }
    return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
        case Command::Simulate: {
            const std::string csv = simulate_csv(cfg);
            const auto path = output_dir(cfg) / "simulate.csv";
            write_file(path, csv);
            out << "wrote " << path.string() << "\n";
            return exit_code::ok;
        }
        case Command::Sweep: {
            const SweepOutput s = run_sweep(cfg);
            const auto dir = output_dir(cfg);
            write_file(dir / "sweep.csv", s.csv);
            write_file(dir / "sweep.svg", s.svg);
            write_file(dir / "sweep_summary.txt", s.summary);
            out << s.summary << "wrote " << (dir / "sweep.csv").string() << ", sweep.svg, sweep_summary.txt\n";
            return exit_code::ok;
        }
        case Command::Shorttime: {
            const ShorttimeOutput s = run_shorttime(cfg);
            const auto path = output_dir(cfg) / "shorttime.csv";
            write_file(path, s.csv);
            out << "wrote " << path.string() << "\n";
            if (s.bound_violated) {
                err << "short-time relative error exceeds " << format_number(shorttime_bound)
                    << " inside the window\n";
                return exit_code::shorttime;
            }
            return exit_code::ok;
        }
        case Command::Validate: {
            const auto checks = run_validation(cfg);
            out << format_checks(checks);
            for (const auto& c : checks)
                if (!c.passed) return exit_code::validation;
            return exit_code::ok;
        }
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.kind() == ErrorKind::StateCorrupted ? exit_code::integrator : exit_code::config;
    }
    return exit_code::config;
}

} // namespace noisent::cli
