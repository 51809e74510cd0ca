// analysis.cpp — series expansion, separability report, sweeps

#include "noisent/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <thread>

#include "noisent/entanglement.hpp"
#include "noisent/error.hpp"

namespace noisent {

namespace {

ComplexMatrix ground_state(std::size_t n_sites) {
    return ComplexMatrix::basis_projector(std::size_t{1} << n_sites, 0);
}

std::size_t steps_for(double t, double step) {
    if (!std::isfinite(t) || t < 0.0) throw Error(ErrorKind::InvalidArgument, "times must be finite and >= 0");
    return static_cast<std::size_t>(std::llround(t / step));
}

bool same_sample(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

std::vector<SeriesTerm> perturbative_series(const ComplexMatrix& h, std::span<const LindbladTerm> terms,
                                            const ComplexMatrix& rho0, std::size_t max_order) {
    if (h.dim() != rho0.dim()) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian and rho0 dimensions differ");
    std::vector<SeriesTerm> series;
    series.reserve(max_order + 1);
    series.push_back({0, rho0});
    for (std::size_t k = 1; k <= max_order; ++k) series.push_back({k, rhs(h, terms, series.back().coeff)});
    return series;
}

ComplexMatrix evaluate_series(std::span<const SeriesTerm> series, double t) {
    if (series.empty()) throw Error(ErrorKind::InvalidArgument, "empty series");
    ComplexMatrix out(series.front().coeff.dim());
    for (const auto& term : series) {
        const double weight = std::pow(t, static_cast<double>(term.order)) / std::tgamma(term.order + 1.0);
        out.add_scaled(weight, term.coeff);
    }
    return out;
}

double excitation_rate(double gamma_d, const NoiseModel& noise, RateConvention convention) {
    const double kappa_up = gamma_d * noise_intensity(noise);
    return convention == RateConvention::Literal ? 2.0 * kappa_up : kappa_up;
}

double shorttime_concurrence_CD(const ReducedSpec& spec, double t) {
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
    return spec.coupling * excitation_rate(spec.gamma_d, spec.noise, spec.convention) * t * t;
}

double shorttime_concurrence_CD(const ModelSpec& spec, double t) {
    const ReducedSpec reduced{spec.collective_coupling(), spec.gamma, spec.gamma_d, spec.noise, spec.convention};
    return shorttime_concurrence_CD(reduced, t);
}

SeparabilityReport shorttime_separability_AB(const ModelSpec& spec, std::size_t max_order,
                                             std::span<const double> t_samples, double step) {
    if (max_order > 4) throw Error(ErrorKind::InvalidArgument, "max_order is capped at 4");
    const ComplexMatrix h = build_hamiltonian_full(spec);
    const auto terms = build_liouvillian_full(spec);
    const ComplexMatrix rho0 = ground_state(3);
    const auto series = perturbative_series(h, terms, rho0, max_order);
    const Generator f(h, terms);

    std::vector<double> times(t_samples.begin(), t_samples.end());
    std::sort(times.begin(), times.end());

    SeparabilityReport report;
    ComplexMatrix rho = rho0;
    std::size_t done = 0;
    for (double t : times) {
        const std::size_t target = steps_for(t, step);
        propagate(f, rho, target - done, step);
        done = target;
        const double numeric = concurrence_AB(rho).value;
        for (std::size_t order = 0; order <= max_order; ++order) {
            SeparabilitySample sample{t, order, true, 0.0, numeric};
            const ComplexMatrix truncated =
                evaluate_series(std::span<const SeriesTerm>(series.data(), order + 1), t);
            try {
                sample.series_concurrence = concurrence_AB(truncated).value;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::InvalidState) throw;
                sample.series_state_valid = false;
            }
            report.max_series_concurrence = std::max(report.max_series_concurrence, sample.series_concurrence);
            report.samples.push_back(sample);
        }
    }
    return report;
}

std::string to_string(SweepParameter parameter) {
    switch (parameter) {
    case SweepParameter::NoiseIntensity: return "n_T";
    case SweepParameter::Time: return "t";
    case SweepParameter::Gamma: return "gamma";
    case SweepParameter::GammaD: return "gamma_D";
    }
    return "unknown";
}

std::vector<double> SweepGrid::along_axis1(std::size_t j) const {
    std::vector<double> out(axis1.samples.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i, j);
    return out;
}

std::vector<double> SweepGrid::along_axis2(std::size_t i) const {
    std::vector<double> out(axis2.samples.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = at(i, j);
    return out;
}

namespace {

struct PointModel {
    ModelSpec spec;
    double time = 0.0;
};

void apply(PointModel& point, SweepParameter parameter, double value, const SweepRequest& request) {
    switch (parameter) {
    case SweepParameter::NoiseIntensity:
        if (request.noise_kind == NoiseKind::White) {
            point.spec.noise = WhiteNoise{value};
        } else {
            point.spec.noise = SqueezedWhiteNoise{value, Complex(request.squeeze_fraction * max_squeezing(value), 0.0)};
        }
        break;
    case SweepParameter::Time: point.time = value; break;
    case SweepParameter::Gamma: point.spec.gamma = value; break;
    case SweepParameter::GammaD: point.spec.gamma_d = value; break;
    }
}

PointModel base_point(const SweepRequest& request) {
    PointModel point{request.base, request.fixed_time};
    apply(point, SweepParameter::NoiseIntensity, noise_intensity(request.base.noise), request);
    return point;
}

// One unit of work: a fixed model evaluated at one or more times.
struct WorkItem {
    PointModel model;
    std::vector<std::pair<double, std::size_t>> times; // (t, flat grid index)
};

std::string coordinates(const SweepRequest& request, std::size_t flat) {
    const std::size_t n2 = request.axis2.samples.size();
    const std::size_t i = flat / n2, j = flat % n2;
    return request.axis1.name() + " = " + std::to_string(request.axis1.samples[i]) + ", " + request.axis2.name() +
           " = " + std::to_string(request.axis2.samples[j]);
}

std::vector<WorkItem> plan(const SweepRequest& request) {
    const auto& a1 = request.axis1;
    const auto& a2 = request.axis2;
    const std::size_t n1 = a1.samples.size(), n2 = a2.samples.size();
    std::vector<WorkItem> items;
    if (a2.parameter == SweepParameter::Time || a1.parameter == SweepParameter::Time) {
        const bool time_is_second = a2.parameter == SweepParameter::Time;
        const auto& other = time_is_second ? a1 : a2;
        const auto& time_axis = time_is_second ? a2 : a1;
        for (std::size_t o = 0; o < other.samples.size(); ++o) {
            WorkItem item{base_point(request), {}};
            apply(item.model, other.parameter, other.samples[o], request);
            for (std::size_t k = 0; k < time_axis.samples.size(); ++k) {
                const std::size_t flat = time_is_second ? o * n2 + k : k * n2 + o;
                item.times.emplace_back(time_axis.samples[k], flat);
            }
            std::stable_sort(item.times.begin(), item.times.end());
            items.push_back(std::move(item));
        }
        return items;
    }
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            WorkItem item{base_point(request), {}};
            apply(item.model, a1.parameter, a1.samples[i], request);
            apply(item.model, a2.parameter, a2.samples[j], request);
            item.times.emplace_back(item.model.time, i * n2 + j);
            items.push_back(std::move(item));
        }
    }
    return items;
}

StateAudit run_item(const WorkItem& item, const SweepRequest& request, std::vector<double>& values) {
    const ModelSpec& spec = item.model.spec;
    spec.validate();
    const Generator f(build_hamiltonian_full(spec), build_liouvillian_full(spec));
    const double floor = std::max(request.integrator.positivity_floor, positivity_floor(spec.noise));
    const double step = request.integrator.step;

    StateAudit audit;
    ComplexMatrix rho = ground_state(3);
    std::size_t done = 0;
    for (const auto& [t, flat] : item.times) {
        const std::size_t target = steps_for(t, step);
        propagate(f, rho, target - done, step);
        done = target;
        try {
            audit.observe(require_physical(rho, t, floor));
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " [" + coordinates(request, flat) + "]");
        }
        values[flat] = concurrence_AB(rho).value;
    }
    return audit;
}

void validate_request(const SweepRequest& request) {
    if (request.axis1.samples.empty() || request.axis2.samples.empty()) {
        throw Error(ErrorKind::InvalidArgument, "sweep axes must be nonempty");
    }
    if (request.axis1.parameter == request.axis2.parameter) {
        throw Error(ErrorKind::InvalidArgument, "sweep axes must be different parameters");
    }
    for (const auto* axis : {&request.axis1, &request.axis2}) {
        for (double v : axis->samples) {
            if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite sample on " + axis->name());
        }
    }
    if (!(request.squeeze_fraction >= 0.0 && request.squeeze_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidNoise, "squeeze fraction must lie in [0, 1]");
    }
    IntegratorConfig cfg = request.integrator;
    cfg.t_end = 0.0;
    cfg.validate();
}

} // namespace

SweepGrid sweep(const SweepRequest& request) {
    validate_request(request);
    const auto items = plan(request);

    SweepGrid grid;
    grid.axis1 = request.axis1;
    grid.axis2 = request.axis2;
    grid.fixed_time = request.fixed_time;
    grid.fixed = request.base;
    grid.values.assign(request.axis1.samples.size() * request.axis2.samples.size(), 0.0);

    std::vector<StateAudit> audits(items.size());
    std::vector<std::exception_ptr> failures(items.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < items.size(); k = next++) {
            try {
                audits[k] = run_item(items[k], request, grid.values);
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };

    const std::size_t width = std::clamp<std::size_t>(request.workers, 1, std::max<std::size_t>(items.size(), 1));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(width);
        for (std::size_t w = 0; w < width; ++w) pool.emplace_back(worker);
    }

    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    for (const auto& audit : audits) grid.audit.merge(audit);
    return grid;
}

AxisArgmax argmax(std::span<const double> axis, std::span<const double> values) {
    if (axis.empty() || axis.size() != values.size()) {
        throw Error(ErrorKind::InvalidArgument, "argmax needs equal-length nonempty axis and values");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] > values[best] || (values[k] == values[best] && axis[k] < axis[best])) best = k;
    }
    const auto [lo, hi] = std::minmax_element(axis.begin(), axis.end());
    return AxisArgmax{best, axis[best], values[best], axis[best] > *lo && axis[best] < *hi};
}

AxisArgmax argmax_axis(const SweepGrid& grid, SweepParameter axis, double at) {
    const bool along_first = grid.axis1.parameter == axis;
    if (!along_first && grid.axis2.parameter != axis) {
        throw Error(ErrorKind::InvalidArgument, to_string(axis) + " is not a grid axis");
    }
    const auto& other = along_first ? grid.axis2.samples : grid.axis1.samples;
    const auto hit = std::find_if(other.begin(), other.end(), [&](double v) { return same_sample(v, at); });
    if (hit == other.end()) throw Error(ErrorKind::InvalidArgument, "value is not a sample of the other axis");
    const auto index = static_cast<std::size_t>(hit - other.begin());
    if (along_first) return argmax(grid.axis1.samples, grid.along_axis1(index));
    return argmax(grid.axis2.samples, grid.along_axis2(index));
}

bool is_non_increasing(std::span<const double> values, double slack) {
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[k - 1] + slack) return false;
    return true;
}

} // namespace noisent
