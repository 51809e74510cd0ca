// dynamics.cpp — generator assembly, RK4 stepping, state monitoring

#include "noisent/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "noisent/error.hpp"

namespace noisent {

void IntegratorConfig::validate() const {
    if (!std::isfinite(step) || step <= 0.0) throw Error(ErrorKind::InvalidArgument, "step must be > 0");
    if (!std::isfinite(t_end) || t_end < 0.0) throw Error(ErrorKind::InvalidArgument, "t_end must be >= 0");
    if (record_every == 0) throw Error(ErrorKind::InvalidArgument, "record_every must be >= 1");
    if (!(positivity_floor >= 0.0)) throw Error(ErrorKind::InvalidArgument, "positivity_floor must be >= 0");
}

std::size_t IntegratorConfig::step_count() const {
    return static_cast<std::size_t>(std::llround(t_end / step));
}

double positivity_floor(const NoiseModel& noise) {
    return is_squeezing_boundary(noise) ? bounds::positivity_squeezed : bounds::positivity;
}

StateCheck inspect_state(const ComplexMatrix& rho) {
    StateCheck check;
    check.trace_error = std::abs(rho.trace() - Complex(1.0));
    check.hermiticity_error = hermiticity_error(rho);
    if (check.hermiticity_error <= tolerance::hermitian) {
        check.min_eigenvalue = eig_hermitian(rho).values.front();
    } else {
        check.min_eigenvalue = -std::numeric_limits<double>::infinity();
    }
    return check;
}

void StateAudit::observe(const StateCheck& check) {
    ++states;
    max_trace_error = std::max(max_trace_error, check.trace_error);
    max_hermiticity_error = std::max(max_hermiticity_error, check.hermiticity_error);
    min_eigenvalue = std::min(min_eigenvalue, check.min_eigenvalue);
}

void StateAudit::merge(const StateAudit& other) {
    states += other.states;
    max_trace_error = std::max(max_trace_error, other.max_trace_error);
    max_hermiticity_error = std::max(max_hermiticity_error, other.max_hermiticity_error);
    min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
}

StateCheck require_physical(const ComplexMatrix& rho, double t, double floor) {
    const StateCheck check = inspect_state(rho);
    const auto fail = [&](const std::string& what) {
        throw Error(ErrorKind::StateCorrupted, what + " at t = " + std::to_string(t) + " (step too large?)");
    };
    if (!(check.trace_error <= bounds::trace)) fail("|trace - 1| = " + std::to_string(check.trace_error));
    if (!(check.hermiticity_error <= bounds::hermiticity)) {
        fail("hermiticity error " + std::to_string(check.hermiticity_error));
    }
    if (!(check.min_eigenvalue >= -floor)) fail("min eigenvalue " + std::to_string(check.min_eigenvalue));
    return check;
}

Generator::Generator(const ComplexMatrix& hamiltonian, std::span<const LindbladTerm> terms)
    : left_(hamiltonian * Complex(0.0, -1.0)), right_(hamiltonian * Complex(0.0, 1.0)) {
    for (const auto& term : terms) {
        if (term.dim() != hamiltonian.dim()) {
            throw Error(ErrorKind::DimensionMismatch, "dissipator and Hamiltonian dimensions differ");
        }
        const ComplexMatrix& l = term.jump;
        if (!term.is_anomalous()) {
            if (term.rate == 0.0) continue;
            const ComplexMatrix ldl = l.adjoint() * l;
            left_.add_scaled(-term.rate, ldl);
            right_.add_scaled(-term.rate, ldl);
            sandwiches_.push_back({Complex(2.0 * term.rate), l, l.adjoint()});
            continue;
        }
        const ComplexMatrix& k = *term.cross;
        const Complex a = term.amplitude;
        const ComplexMatrix both = (-a) * (l * k) + (-std::conj(a)) * (k.adjoint() * l.adjoint());
        left_ += both;
        right_ += both;
        sandwiches_.push_back({2.0 * a, l, k});
        sandwiches_.push_back({2.0 * std::conj(a), k.adjoint(), l.adjoint()});
    }
}

ComplexMatrix Generator::operator()(const ComplexMatrix& rho) const {
    if (rho.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "rho dimension differs from generator");
    ComplexMatrix out = left_ * rho;
    out += rho * right_;
    for (const auto& s : sandwiches_) out.add_scaled(s.weight, s.left * rho * s.right);
    return out;
}

ComplexMatrix rhs(const ComplexMatrix& h, std::span<const LindbladTerm> terms, const ComplexMatrix& rho) {
    if (h.dim() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian and rho dimensions differ");
    ComplexMatrix out = commutator(h, rho) * Complex(0.0, -1.0);
    out += apply_liouvillian(terms, rho);
    return out;
}

void rk4_step(const Generator& f, ComplexMatrix& rho, double step) {
    const ComplexMatrix k1 = f(rho);
    ComplexMatrix probe = rho;
    probe.add_scaled(step / 2.0, k1);
    const ComplexMatrix k2 = f(probe);
    probe = rho;
    probe.add_scaled(step / 2.0, k2);
    const ComplexMatrix k3 = f(probe);
    probe = rho;
    probe.add_scaled(step, k3);
    const ComplexMatrix k4 = f(probe);
    rho.add_scaled(step / 6.0, k1);
    rho.add_scaled(step / 3.0, k2);
    rho.add_scaled(step / 3.0, k3);
    rho.add_scaled(step / 6.0, k4);
}

void propagate(const Generator& f, ComplexMatrix& rho, std::size_t n_steps, double step) {
    for (std::size_t i = 0; i < n_steps; ++i) rk4_step(f, rho, step);
}

std::vector<double> excited_populations(const ComplexMatrix& rho) {
    const std::size_t dim = rho.dim();
    if (!std::has_single_bit(dim) || dim < 2) return {};
    const std::size_t n_sites = static_cast<std::size_t>(std::countr_zero(dim));
    std::vector<double> pops(n_sites, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        const double p = rho(i, i).real();
        for (std::size_t s = 0; s < n_sites; ++s) {
            // Site 0 is the most significant bit.
            if ((i >> (n_sites - 1 - s)) & 1U) pops[s] += p;
        }
    }
    return pops;
}

namespace {

void require_initial_state(const ComplexMatrix& rho0) {
    const StateCheck check = inspect_state(rho0);
    if (check.trace_error > bounds::trace || check.hermiticity_error > tolerance::hermitian ||
        check.min_eigenvalue < -tolerance::psd) {
        throw Error(ErrorKind::InvalidState, "initial state is not a density matrix");
    }
}

void record(Trajectory& traj, const ComplexMatrix& rho, double t, double floor) {
    traj.audit.observe(require_physical(rho, t, floor));
    traj.times.push_back(t);
    traj.states.push_back(rho);
    const auto pops = excited_populations(rho);
    if (traj.populations.empty()) traj.populations.resize(pops.size());
    for (std::size_t s = 0; s < pops.size(); ++s) traj.populations[s].push_back(pops[s]);
}

} // namespace

Trajectory evolve(const ComplexMatrix& h, std::span<const LindbladTerm> terms, const ComplexMatrix& rho0,
                  const IntegratorConfig& cfg) {
    cfg.validate();
    if (rho0.dim() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "rho0 and Hamiltonian dimensions differ");
    require_initial_state(rho0);

    const Generator f(h, terms);
    const std::size_t n_steps = cfg.step_count();
    Trajectory traj;
    ComplexMatrix rho = rho0;
    record(traj, rho, 0.0, cfg.positivity_floor);
    for (std::size_t k = 1; k <= n_steps; ++k) {
        rk4_step(f, rho, cfg.step);
        if (k % cfg.record_every == 0 || k == n_steps) {
            record(traj, rho, static_cast<double>(k) * cfg.step, cfg.positivity_floor);
        }
    }
    return traj;
}

SteadyState steady_state_longtime(const ComplexMatrix& h, std::span<const LindbladTerm> terms,
                                  const ComplexMatrix& rho0, double t_long, const IntegratorConfig& cfg) {
    IntegratorConfig run = cfg;
    run.t_end = t_long;
    run.record_every = std::max<std::size_t>(run.step_count(), 1);
    Trajectory traj = evolve(h, terms, rho0, run);
    SteadyState out{std::move(traj.states.back()), 0.0};
    out.residual = max_abs(rhs(h, terms, out.state));
    return out;
}

} // namespace noisent
