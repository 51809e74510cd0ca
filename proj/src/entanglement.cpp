// entanglement.cpp — spin flip and concurrence

#include "noisent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisent/error.hpp"
#include "noisent/model.hpp"

namespace noisent {

namespace {

const ComplexMatrix& yy() {
    static const ComplexMatrix m = kron(ops::sigma_y(), ops::sigma_y());
    return m;
}

void require_two_qubit(const ComplexMatrix& rho) {
    if (rho.dim() != 4) {
        throw Error(ErrorKind::DimensionMismatch, "expected a 4x4 matrix, got " + std::to_string(rho.dim()));
    }
}

} // namespace

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
    require_two_qubit(rho);
    return yy() * rho.conj() * yy();
}

ConcurrenceResult concurrence(const ComplexMatrix& rho) {
    require_two_qubit(rho);
    const double trace_err = std::abs(rho.trace() - Complex(1.0));
    if (trace_err > bounds::trace) {
        throw Error(ErrorKind::InvalidState, "|trace - 1| = " + std::to_string(trace_err));
    }
    const double herm_err = hermiticity_error(rho);
    if (herm_err > tolerance::hermitian) {
        throw Error(ErrorKind::InvalidState, "hermiticity error " + std::to_string(herm_err));
    }

    ComplexMatrix root;
    try {
        root = sqrt_psd(rho);
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidState, e.what());
    }
    ComplexMatrix r = root * spin_flip(rho) * root;
    r = (r + r.adjoint()) * 0.5;
    const auto eig = eig_hermitian(r);

    ConcurrenceResult out;
    for (std::size_t k = 0; k < 4; ++k) out.lambdas[k] = std::sqrt(std::max(eig.values[3 - k], 0.0));
    const double c = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
    out.value = std::clamp(c, 0.0, 1.0);
    return out;
}

ConcurrenceResult concurrence_AB(const ComplexMatrix& rho_full) {
    if (rho_full.dim() != 8) {
        throw Error(ErrorKind::DimensionMismatch, "expected an 8x8 matrix, got " + std::to_string(rho_full.dim()));
    }
    return concurrence(partial_trace(rho_full, {2, 2, 2}, {0, 1}));
}

void annotate_concurrence(Trajectory& traj) {
    traj.concurrence.clear();
    traj.concurrence.reserve(traj.states.size());
    for (const auto& rho : traj.states) {
        if (rho.dim() == 4) {
            traj.concurrence.push_back(concurrence(rho).value);
        } else if (rho.dim() == 8) {
            traj.concurrence.push_back(concurrence_AB(rho).value);
        } else {
            throw Error(ErrorKind::DimensionMismatch, "concurrence needs 4x4 or 8x8 states");
        }
    }
}

} // namespace noisent
