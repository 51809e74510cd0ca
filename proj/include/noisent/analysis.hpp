// analysis.hpp — short-time series, parameter sweeps and argmax extraction

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "noisent/dynamics.hpp"
#include "noisent/linalg.hpp"
#include "noisent/model.hpp"

namespace noisent {

struct SeriesTerm {
    std::size_t order = 0;
    ComplexMatrix coeff; // k-th time derivative of rho at t = 0
};

// coeff_0 = rho0, coeff_k = -i[H, coeff_{k-1}] + L(coeff_{k-1}).
std::vector<SeriesTerm> perturbative_series(const ComplexMatrix& h, std::span<const LindbladTerm> terms,
                                            const ComplexMatrix& rho0, std::size_t max_order);

// sum_k coeff_k t^k / k!
ComplexMatrix evaluate_series(std::span<const SeriesTerm> series, double t);

// Initial rate at which the bath excites the mediator from |g>: gamma_D n_T
// under RateConvention::Symmetric, twice that under Literal.
double excitation_rate(double gamma_d, const NoiseModel& noise, RateConvention convention);

// g * excitation_rate * t^2: concurrence of the second-order truncated C,D
// state grown from |gg>. With the symmetric convention this is g gamma_D n_T t^2.
double shorttime_concurrence_CD(const ReducedSpec& spec, double t);
double shorttime_concurrence_CD(const ModelSpec& spec, double t);

struct SeparabilitySample {
    double t = 0.0;
    std::size_t order = 0;
    bool series_state_valid = true; // false if the truncated series is not a density matrix
    double series_concurrence = 0.0;
    double numeric_concurrence = 0.0; // from integrating the full model to t
};

struct SeparabilityReport {
    std::vector<SeparabilitySample> samples;
    double max_series_concurrence = 0.0;
};

// A,B concurrence of the order-0..max_order truncated series of the full
// three-atom model grown from |ggg>, alongside the integrated value.
// max_order is capped at 4.
SeparabilityReport shorttime_separability_AB(const ModelSpec& spec, std::size_t max_order,
                                             std::span<const double> t_samples, double step = 1e-3);

enum class SweepParameter { NoiseIntensity, Time, Gamma, GammaD };

std::string to_string(SweepParameter parameter);

struct SweepAxis {
    SweepParameter parameter = SweepParameter::NoiseIntensity;
    std::vector<double> samples;

    std::string name() const { return to_string(parameter); }
};

enum class NoiseKind { White, Squeezed };

struct SweepRequest {
    ModelSpec base;
    SweepAxis axis1;
    SweepAxis axis2;
    double fixed_time = 1.0; // used when neither axis is Time
    NoiseKind noise_kind = NoiseKind::White;
    double squeeze_fraction = 1.0; // M = fraction * sqrt(n_T (n_T + 1))
    IntegratorConfig integrator;   // step and positivity floor; t_end is ignored
    std::size_t workers = 1;
};

struct SweepGrid {
    SweepAxis axis1;
    SweepAxis axis2;
    std::vector<double> values; // row-major, |axis1| x |axis2|
    double fixed_time = 0.0;
    ModelSpec fixed;
    StateAudit audit;

    double at(std::size_t i, std::size_t j) const { return values[i * axis2.samples.size() + j]; }
    std::vector<double> along_axis1(std::size_t j) const;
    std::vector<double> along_axis2(std::size_t i) const;
};

// Concurrence of A,B after evolving the three-atom model from |ggg> for every
// grid point. Independent points run on `workers` threads; results are
// assembled by index. StateCorrupted is rethrown with the grid coordinates.
SweepGrid sweep(const SweepRequest& request);

struct AxisArgmax {
    std::size_t index = 0;
    double location = 0.0;
    double value = 0.0;
    bool is_interior = false; // strictly inside the sampled range
};

// Argmax of a sampled curve; ties go to the smaller axis value.
AxisArgmax argmax(std::span<const double> axis, std::span<const double> values);

// Argmax along `axis` with the other axis held at the sample `at`.
// Throws InvalidArgument if `axis` is not on the grid or `at` is not a sample.
AxisArgmax argmax_axis(const SweepGrid& grid, SweepParameter axis, double at);

bool is_non_increasing(std::span<const double> values, double slack);

} // namespace noisent
