// linalg.hpp — dense complex matrices for few-qubit density-matrix work

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace noisent {

using Complex = std::complex<double>;

namespace tolerance {
inline constexpr double hermitian = 1e-9; // max |a - a^dagger| entry
inline constexpr double eigen = 1e-10;    // eigen-residual and orthonormality
inline constexpr double psd = 1e-8;       // eigenvalues above -psd are clamped to zero
} // namespace tolerance

// Square dense matrix, row-major. Hermiticity, trace and positivity are not
// enforced here; callers check what they need.
class ComplexMatrix {
public:
    ComplexMatrix() : ComplexMatrix(1) {}
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    // |psi><psi| for an unnormalised ket.
    static ComplexMatrix projector(std::span<const Complex> ket);
    static ComplexMatrix projector(std::initializer_list<Complex> ket);
    // |k><k| in a dim-dimensional space.
    static ComplexMatrix basis_projector(std::size_t dim, std::size_t k);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> data() const noexcept { return entries_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conj() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);
    // Adds scale * other without a temporary.
    ComplexMatrix& add_scaled(Complex scale, const ComplexMatrix& other);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex(s); }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s); }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex(-1.0); }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

// Largest entry magnitude.
double max_abs(const ComplexMatrix& a);
// max |a - b| over entries; DimensionMismatch if shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max |a - a^dagger| over entries.
double hermiticity_error(const ComplexMatrix& a);

// Kronecker product, a's indices outer.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // column k pairs with values[k]
};

// Cyclic complex Jacobi. Throws NotHermitian beyond tolerance::hermitian.
EigenDecomposition eig_hermitian(const ComplexMatrix& a);

// Hermitian PSD square root. Eigenvalues in [-tolerance::psd, 0) are treated
// as zero; anything more negative throws NotPositive.
ComplexMatrix sqrt_psd(const ComplexMatrix& a);

// Reduced matrix on the subsystems in `keep` (original order retained).
// dims lists every subsystem dimension, outermost first.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep);

} // namespace noisent
