// dynamics.hpp — fixed-step RK4 integration of the Lindblad master equation

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "noisent/linalg.hpp"
#include "noisent/model.hpp"

namespace noisent {

namespace bounds {
inline constexpr double trace = 1e-8;
inline constexpr double hermiticity = 1e-9;
inline constexpr double positivity = 1e-7;
inline constexpr double positivity_squeezed = 1e-6; // squeezing at |M| = sqrt(n(n+1))
} // namespace bounds

enum class IntegrationMethod { Rk4Fixed };

struct IntegratorConfig {
    double step = 1e-3;
    double t_end = 1.0;
    IntegrationMethod method = IntegrationMethod::Rk4Fixed;
    std::size_t record_every = 10;
    double positivity_floor = bounds::positivity; // min eigenvalue allowed is -positivity_floor

    // Throws InvalidArgument.
    void validate() const;
    std::size_t step_count() const;
};

// Positivity tolerance for trajectories driven by `noise`.
double positivity_floor(const NoiseModel& noise);

struct StateCheck {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
};

StateCheck inspect_state(const ComplexMatrix& rho);

// Running worst case of StateCheck over many states.
struct StateAudit {
    std::size_t states = 0;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = std::numeric_limits<double>::infinity();

    void observe(const StateCheck& check);
    void merge(const StateAudit& other);
};

// Throws StateCorrupted if any bound is exceeded; returns the measured check.
StateCheck require_physical(const ComplexMatrix& rho, double t, double positivity_floor);

struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
    std::vector<double> concurrence;              // filled by annotate_concurrence
    std::vector<std::vector<double>> populations; // [site][record], excited-state probability
    StateAudit audit;
};

// d rho/dt = L_left rho + rho L_right + sum_j c_j P_j rho Q_j, precomputed
// from a Hamiltonian and a dissipator list.
class Generator {
public:
    Generator(const ComplexMatrix& hamiltonian, std::span<const LindbladTerm> terms);

    ComplexMatrix operator()(const ComplexMatrix& rho) const;
    std::size_t dim() const noexcept { return left_.dim(); }

private:
    struct Sandwich {
        Complex weight;
        ComplexMatrix left;
        ComplexMatrix right;
    };
    ComplexMatrix left_;
    ComplexMatrix right_;
    std::vector<Sandwich> sandwiches_;
};

// -i[H, rho] + L(rho)
ComplexMatrix rhs(const ComplexMatrix& h, std::span<const LindbladTerm> terms, const ComplexMatrix& rho);

void rk4_step(const Generator& generator, ComplexMatrix& rho, double step);
void propagate(const Generator& generator, ComplexMatrix& rho, std::size_t n_steps, double step);

// Excited-state probability of each qubit; empty if dim is not a power of two.
std::vector<double> excited_populations(const ComplexMatrix& rho);

// Records at t = 0, every record_every steps, and at t_end.
Trajectory evolve(const ComplexMatrix& h, std::span<const LindbladTerm> terms, const ComplexMatrix& rho0,
                  const IntegratorConfig& cfg);

struct SteadyState {
    ComplexMatrix state;
    double residual = 0.0; // max |rhs(state)|
};

SteadyState steady_state_longtime(const ComplexMatrix& h, std::span<const LindbladTerm> terms,
                                  const ComplexMatrix& rho0, double t_long, const IntegratorConfig& cfg = {});

} // namespace noisent
