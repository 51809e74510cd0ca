// entanglement.hpp — Wootters concurrence of two-qubit states

#pragma once

#include <array>

#include "noisent/dynamics.hpp"
#include "noisent/linalg.hpp"

namespace noisent {

struct ConcurrenceResult {
    double value = 0.0;              // max(0, l1 - l2 - l3 - l4), clamped to [0, 1]
    std::array<double, 4> lambdas{}; // descending
};

// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y)
ComplexMatrix spin_flip(const ComplexMatrix& rho);

// The lambdas are square roots of the eigenvalues of rho * spin_flip(rho),
// taken from the Hermitian matrix sqrt(rho) spin_flip(rho) sqrt(rho).
// Throws InvalidState when rho is not a density matrix within tolerance.
ConcurrenceResult concurrence(const ComplexMatrix& rho);

// Concurrence of the first two qubits of a three-qubit state (traces out the third).
ConcurrenceResult concurrence_AB(const ComplexMatrix& rho_full);

// Fills traj.concurrence: 4x4 states directly, 8x8 states via concurrence_AB.
void annotate_concurrence(Trajectory& traj);

} // namespace noisent
