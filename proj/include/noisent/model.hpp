// model.hpp — operators, Hamiltonians and Liouvillians for two qubits bridged by a noisy mediator

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "noisent/linalg.hpp"

namespace noisent {

// Single-qubit basis: index 0 = |g>, 1 = |e>. Composite spaces are ordered
// A (x) B (x) D for the three-atom model, C (x) E (x) D and C (x) D for the
// collective-mode models.
namespace site {
inline constexpr std::size_t a = 0, b = 1, d = 2;
inline constexpr std::size_t c = 0, e = 1;
} // namespace site

namespace ops {
ComplexMatrix sigma_plus();  // |e><g|
ComplexMatrix sigma_minus(); // |g><e|
ComplexMatrix sigma_x();
ComplexMatrix sigma_y(); // [[0, -i], [i, 0]]
ComplexMatrix sigma_z(); // |e><e| - |g><g|
ComplexMatrix excited_projector();
} // namespace ops

// How a stored rate kappa enters a dissipator.
//   Literal:   -kappa (L+L rho + rho L+L - 2 L rho L+), so |e> decays at 2*kappa.
//   Symmetric: the same form with kappa/2, so |e> decays at kappa.
enum class RateConvention { Literal, Symmetric };

struct WhiteNoise {
    double n_thermal = 0.0; // effective particle number
};

struct SqueezedWhiteNoise {
    double n_thermal = 0.0;
    Complex squeezing{}; // M, with |M| <= sqrt(n (n + 1))
};

using NoiseModel = std::variant<WhiteNoise, SqueezedWhiteNoise>;

double noise_intensity(const NoiseModel& noise);
double max_squeezing(double n_thermal);
SqueezedWhiteNoise perfect_squeezing(double n_thermal);
bool is_squeezing_boundary(const NoiseModel& noise);
// Throws InvalidNoise.
void validate(const NoiseModel& noise);

struct ModelSpec {
    double g_ad = 1.0;
    double g_bd = 1.0;
    double gamma = 0.2;   // decay rate of A and B (identical atoms)
    double gamma_d = 0.2; // decay rate of the mediator D
    NoiseModel noise = WhiteNoise{};
    double omega = 0.0; // bare transition frequency; the interaction picture is what gets evolved
    RateConvention convention = RateConvention::Literal;

    // g = sqrt(g_AD^2 + g_BD^2)
    double collective_coupling() const;
    // Throws InvalidArgument / InvalidNoise.
    void validate() const;
};

// One dissipator. Ordinary terms contribute
//   -rate (L+L rho + rho L+L - 2 L rho L+).
// Anomalous (squeezing) terms carry a second operator K and a complex
// amplitude a, and contribute
//   -a (L K rho + rho L K - 2 L rho K)  plus its Hermitian conjugate.
struct LindbladTerm {
    ComplexMatrix jump;
    double rate = 0.0;
    std::optional<ComplexMatrix> cross;
    Complex amplitude{};

    static LindbladTerm diagonal(ComplexMatrix jump, double rate);
    static LindbladTerm anomalous(ComplexMatrix first, ComplexMatrix second, Complex amplitude);

    bool is_anomalous() const noexcept { return cross.has_value(); }
    std::size_t dim() const noexcept { return jump.dim(); }
};

// I (x) ... (x) op (x) ... (x) I with op at `site`.
ComplexMatrix embed_op(const ComplexMatrix& op, std::size_t site, std::size_t n_sites);

// Total excitation number sum_i sigma_i^+ sigma_i^-.
ComplexMatrix excitation_number(std::size_t n_sites);

// Interaction-picture exchange Hamiltonian on A (x) B (x) D.
ComplexMatrix build_hamiltonian_full(const ModelSpec& spec);
// Lab-frame Hamiltonian including the omega/2 sigma_z terms. Not used for evolution.
ComplexMatrix build_hamiltonian_lab(const ModelSpec& spec);
std::vector<LindbladTerm> build_liouvillian_full(const ModelSpec& spec);

// Thermal (and squeezed) bath acting on the qubit at `site`. Zero-rate terms are dropped.
std::vector<LindbladTerm> noise_terms(double gamma_d, const NoiseModel& noise, RateConvention convention,
                                      std::size_t site, std::size_t n_sites);

struct ReducedSpec {
    double coupling = 0.0; // g
    double gamma = 0.0;    // decay of modes C and E
    double gamma_d = 0.0;
    NoiseModel noise = WhiteNoise{};
    RateConvention convention = RateConvention::Literal;
};

struct CollectiveTransform {
    ReducedSpec reduced;
    // Unitary on the A,B space taking the A (x) B product basis to the
    // C (x) E product basis: rho_CE = U rho_AB U^dagger.
    ComplexMatrix basis_change;
};

// Throws ZeroCoupling when g_AD = g_BD = 0.
CollectiveTransform collective_transform(const ModelSpec& spec);

// sigma_C^+ and sigma_E^+ as operators on the A (x) B space.
std::pair<ComplexMatrix, ComplexMatrix> collective_raising(const ModelSpec& spec);

// Collective-mode model on C (x) E (x) D, with C and E treated as two-level modes.
ComplexMatrix build_hamiltonian_ced(const ReducedSpec& spec);
std::vector<LindbladTerm> build_liouvillian_ced(const ReducedSpec& spec);

// Same model with the decoupled mode E dropped: C (x) D.
ComplexMatrix build_hamiltonian_cd(const ReducedSpec& spec);
std::vector<LindbladTerm> build_liouvillian_cd(const ReducedSpec& spec);

// Dissipative part of the generator applied to rho.
ComplexMatrix apply_liouvillian(std::span<const LindbladTerm> terms, const ComplexMatrix& rho);

} // namespace noisent
