// model.cpp — three-atom and collective-mode model construction

#include "noisent/model.hpp"

#include <cmath>
#include <string>

#include "noisent/error.hpp"

namespace noisent {

namespace ops {

ComplexMatrix sigma_plus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_minus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix sigma_z() { return {{-1.0, 0.0}, {0.0, 1.0}}; }
ComplexMatrix excited_projector() { return {{0.0, 0.0}, {0.0, 1.0}}; }

} // namespace ops

namespace {

constexpr double kBoundarySlack = 1e-12;

double rate_scale(RateConvention convention) {
    return convention == RateConvention::Symmetric ? 0.5 : 1.0;
}

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " is not finite");
}

ComplexMatrix exchange(std::size_t mediator, std::size_t atom, std::size_t n_sites, double coupling) {
    ComplexMatrix up = embed_op(ops::sigma_plus(), mediator, n_sites) * embed_op(ops::sigma_minus(), atom, n_sites);
    return coupling * (up + up.adjoint());
}

} // namespace

double noise_intensity(const NoiseModel& noise) {
    return std::visit([](const auto& n) { return n.n_thermal; }, noise);
}

double max_squeezing(double n_thermal) { return std::sqrt(n_thermal * (n_thermal + 1.0)); }

SqueezedWhiteNoise perfect_squeezing(double n_thermal) {
    return SqueezedWhiteNoise{n_thermal, Complex(max_squeezing(n_thermal), 0.0)};
}

bool is_squeezing_boundary(const NoiseModel& noise) {
    const auto* sq = std::get_if<SqueezedWhiteNoise>(&noise);
    if (sq == nullptr) return false;
    const double bound = max_squeezing(sq->n_thermal);
    return bound > 0.0 && std::abs(sq->squeezing) >= bound * (1.0 - 1e-9);
}

void validate(const NoiseModel& noise) {
    const double n = noise_intensity(noise);
    if (!std::isfinite(n) || n < 0.0) {
        throw Error(ErrorKind::InvalidNoise, "n_T must be finite and >= 0, got " + std::to_string(n));
    }
    if (const auto* sq = std::get_if<SqueezedWhiteNoise>(&noise)) {
        const double m = std::abs(sq->squeezing);
        const double bound = max_squeezing(n);
        if (!std::isfinite(m) || m > bound * (1.0 + kBoundarySlack) + kBoundarySlack) {
            throw Error(ErrorKind::InvalidNoise,
                        "|M| = " + std::to_string(m) + " exceeds sqrt(n_T(n_T+1)) = " + std::to_string(bound));
        }
    }
}

double ModelSpec::collective_coupling() const { return std::hypot(g_ad, g_bd); }

void ModelSpec::validate() const {
    require_finite(g_ad, "g_AD");
    require_finite(g_bd, "g_BD");
    require_finite(gamma, "gamma");
    require_finite(gamma_d, "gamma_D");
    if (gamma < 0.0) throw Error(ErrorKind::InvalidArgument, "gamma must be >= 0");
    if (gamma_d < 0.0) throw Error(ErrorKind::InvalidArgument, "gamma_D must be >= 0");
    noisent::validate(noise);
}

LindbladTerm LindbladTerm::diagonal(ComplexMatrix jump, double rate) {
    if (!(rate >= 0.0)) throw Error(ErrorKind::InvalidArgument, "dissipator rate must be >= 0");
    return LindbladTerm{std::move(jump), rate, std::nullopt, Complex{}};
}

LindbladTerm LindbladTerm::anomalous(ComplexMatrix first, ComplexMatrix second, Complex amplitude) {
    if (first.dim() != second.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "anomalous term operators differ in dimension");
    }
    return LindbladTerm{std::move(first), 0.0, std::move(second), amplitude};
}

ComplexMatrix embed_op(const ComplexMatrix& op, std::size_t site, std::size_t n_sites) {
    if (site >= n_sites) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "site " + std::to_string(site) + " of " + std::to_string(n_sites));
    }
    const ComplexMatrix id = ComplexMatrix::identity(op.dim());
    ComplexMatrix out = site == 0 ? op : id;
    for (std::size_t s = 1; s < n_sites; ++s) out = kron(out, s == site ? op : id);
    return out;
}

ComplexMatrix excitation_number(std::size_t n_sites) {
    ComplexMatrix n(std::size_t{1} << n_sites);
    for (std::size_t s = 0; s < n_sites; ++s) n += embed_op(ops::excited_projector(), s, n_sites);
    return n;
}

ComplexMatrix build_hamiltonian_full(const ModelSpec& spec) {
    return exchange(site::d, site::a, 3, spec.g_ad) + exchange(site::d, site::b, 3, spec.g_bd);
}

ComplexMatrix build_hamiltonian_lab(const ModelSpec& spec) {
    ComplexMatrix h = build_hamiltonian_full(spec);
    for (std::size_t s = 0; s < 3; ++s) h.add_scaled(spec.omega / 2.0, embed_op(ops::sigma_z(), s, 3));
    return h;
}

std::vector<LindbladTerm> noise_terms(double gamma_d, const NoiseModel& noise, RateConvention convention,
                                      std::size_t site, std::size_t n_sites) {
    validate(noise);
    const double scale = rate_scale(convention);
    const double n = noise_intensity(noise);
    const ComplexMatrix lower = embed_op(ops::sigma_minus(), site, n_sites);
    std::vector<LindbladTerm> terms;
    if (gamma_d * (n + 1.0) > 0.0) terms.push_back(LindbladTerm::diagonal(lower, scale * gamma_d * (n + 1.0)));
    if (gamma_d * n > 0.0) terms.push_back(LindbladTerm::diagonal(lower.adjoint(), scale * gamma_d * n));
    if (const auto* sq = std::get_if<SqueezedWhiteNoise>(&noise)) {
        const Complex amplitude = scale * gamma_d * sq->squeezing;
        if (amplitude != Complex{}) terms.push_back(LindbladTerm::anomalous(lower, lower, amplitude));
    }
    return terms;
}

std::vector<LindbladTerm> build_liouvillian_full(const ModelSpec& spec) {
    spec.validate();
    auto terms = noise_terms(spec.gamma_d, spec.noise, spec.convention, site::d, 3);
    const double rate = rate_scale(spec.convention) * spec.gamma;
    if (rate > 0.0) {
        terms.push_back(LindbladTerm::diagonal(embed_op(ops::sigma_minus(), site::a, 3), rate));
        terms.push_back(LindbladTerm::diagonal(embed_op(ops::sigma_minus(), site::b, 3), rate));
    }
    return terms;
}

std::pair<ComplexMatrix, ComplexMatrix> collective_raising(const ModelSpec& spec) {
    const double g = spec.collective_coupling();
    if (!(g > 0.0)) throw Error(ErrorKind::ZeroCoupling, "g_AD^2 + g_BD^2 must be positive");
    const ComplexMatrix up_a = embed_op(ops::sigma_plus(), 0, 2);
    const ComplexMatrix up_b = embed_op(ops::sigma_plus(), 1, 2);
    ComplexMatrix up_c = (spec.g_ad / g) * up_a + (spec.g_bd / g) * up_b;
    ComplexMatrix up_e = (spec.g_bd / g) * up_a - (spec.g_ad / g) * up_b;
    return {std::move(up_c), std::move(up_e)};
}

CollectiveTransform collective_transform(const ModelSpec& spec) {
    spec.validate();
    const double g = spec.collective_coupling();
    if (!(g > 0.0)) throw Error(ErrorKind::ZeroCoupling, "g_AD^2 + g_BD^2 must be positive");

    // Rows are C,E basis states written in the A,B basis:
    //   |g_C e_E> = sigma_E^+|gg>,  |e_C g_E> = sigma_C^+|gg>,  |ee> unchanged.
    const double ca = spec.g_ad / g, cb = spec.g_bd / g;
    ComplexMatrix u(4);
    u(0, 0) = 1.0;
    u(1, 1) = -ca; // <g_C e_E | g_A e_B>
    u(1, 2) = cb;  // <g_C e_E | e_A g_B>
    u(2, 1) = cb;
    u(2, 2) = ca;
    u(3, 3) = 1.0;

    ReducedSpec reduced{g, spec.gamma, spec.gamma_d, spec.noise, spec.convention};
    return {reduced, std::move(u)};
}

ComplexMatrix build_hamiltonian_ced(const ReducedSpec& spec) {
    return exchange(site::d, site::c, 3, spec.coupling);
}

std::vector<LindbladTerm> build_liouvillian_ced(const ReducedSpec& spec) {
    if (!(spec.gamma >= 0.0) || !(spec.gamma_d >= 0.0)) throw Error(ErrorKind::InvalidArgument, "rates must be >= 0");
    auto terms = noise_terms(spec.gamma_d, spec.noise, spec.convention, site::d, 3);
    const double rate = rate_scale(spec.convention) * spec.gamma;
    if (rate > 0.0) {
        terms.push_back(LindbladTerm::diagonal(embed_op(ops::sigma_minus(), site::c, 3), rate));
        terms.push_back(LindbladTerm::diagonal(embed_op(ops::sigma_minus(), site::e, 3), rate));
    }
    return terms;
}

ComplexMatrix build_hamiltonian_cd(const ReducedSpec& spec) {
    return exchange(1, 0, 2, spec.coupling);
}

std::vector<LindbladTerm> build_liouvillian_cd(const ReducedSpec& spec) {
    if (!(spec.gamma >= 0.0) || !(spec.gamma_d >= 0.0)) throw Error(ErrorKind::InvalidArgument, "rates must be >= 0");
    auto terms = noise_terms(spec.gamma_d, spec.noise, spec.convention, 1, 2);
    const double rate = rate_scale(spec.convention) * spec.gamma;
    if (rate > 0.0) terms.push_back(LindbladTerm::diagonal(embed_op(ops::sigma_minus(), 0, 2), rate));
    return terms;
}

ComplexMatrix apply_liouvillian(std::span<const LindbladTerm> terms, const ComplexMatrix& rho) {
    ComplexMatrix out(rho.dim());
    for (const auto& term : terms) {
        if (term.dim() != rho.dim()) {
            throw Error(ErrorKind::DimensionMismatch,
                        "term acts on dim " + std::to_string(term.dim()) + ", rho has dim " + std::to_string(rho.dim()));
        }
        const ComplexMatrix& l = term.jump;
        if (!term.is_anomalous()) {
            const ComplexMatrix ldl = l.adjoint() * l;
            ComplexMatrix piece = ldl * rho + rho * ldl - 2.0 * (l * rho * l.adjoint());
            out.add_scaled(-term.rate, piece);
            continue;
        }
        const ComplexMatrix& k = *term.cross;
        const ComplexMatrix lk = l * k;
        ComplexMatrix piece = lk * rho + rho * lk - 2.0 * (l * rho * k);
        out.add_scaled(-term.amplitude, piece);
        // Hermitian-conjugate partner, written so the map stays linear in rho.
        const ComplexMatrix kd = k.adjoint(), ld = l.adjoint();
        const ComplexMatrix kdld = kd * ld;
        ComplexMatrix partner = kdld * rho + rho * kdld - 2.0 * (kd * rho * ld);
        out.add_scaled(-std::conj(term.amplitude), partner);
    }
    return out;
}

} // namespace noisent
