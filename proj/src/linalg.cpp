// linalg.cpp — ComplexMatrix arithmetic, Jacobi eigensolver, partial trace

#include "noisent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "noisent/error.hpp"

namespace noisent {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidNoise: return "InvalidNoise";
    case ErrorKind::ZeroCoupling: return "ZeroCoupling";
    case ErrorKind::StateCorrupted: return "StateCorrupted";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* where) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(where) + ": " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
    if (entries_.size() != dim * dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
        std::copy(row.begin(), row.end(), entries_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
        ++r;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::initializer_list<Complex> ket) {
    return projector(std::span<const Complex>(ket.begin(), ket.size()));
}

ComplexMatrix ComplexMatrix::basis_projector(std::size_t dim, std::size_t k) {
    if (k >= dim) throw Error(ErrorKind::IndexOutOfRange, "basis index " + std::to_string(k));
    ComplexMatrix m(dim);
    m(k, k) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out(*this);
    for (auto& z : out.entries_) z = std::conj(z);
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : entries_) z *= scale;
    return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(Complex scale, const ComplexMatrix& other) {
    require_same_dim(*this, other, "add_scaled");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += scale * other.entries_[k];
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "operator*");
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    // Operators here are mostly embedded Pauli ladders, so skipping zeros pays off.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a.entries_[i * n + k];
            if (aik == Complex{}) continue;
            const Complex* brow = &b.entries_[k * n];
            Complex* orow = &out.entries_[i * n];
            for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

double hermiticity_error(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
    if (factors.size() == 0) throw Error(ErrorKind::InvalidArgument, "kron of no factors");
    auto it = factors.begin();
    ComplexMatrix out = *it;
    for (++it; it != factors.end(); ++it) out = kron(out, *it);
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& input) {
    const double herm_err = hermiticity_error(input);
    if (herm_err > tolerance::hermitian) {
        throw Error(ErrorKind::NotHermitian, "max |a - a^dagger| = " + std::to_string(herm_err));
    }
    const std::size_t n = input.dim();
    ComplexMatrix a = (input + input.adjoint()) * 0.5;
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm2 = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
        return s;
    };
    double frob2 = 0.0;
    for (const auto& z : a.data()) frob2 += std::norm(z);
    const double stop = frob2 * 1e-32;

    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_norm2() <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Rotation U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] zeroes a(p,q).
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex u00 = c, u01 = s;
                const Complex u10 = -s * std::conj(phase), u11 = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u00 + akq * u10;
                    a(k, q) = akp * u01 + akq * u11;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
                    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u00 + vkq * u10;
                    v(k, q) = vkp * u01 + vkq * u11;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& a) {
    const auto eig = eig_hermitian(a);
    if (eig.values.front() < -tolerance::psd) {
        throw Error(ErrorKind::NotPositive, "smallest eigenvalue " + std::to_string(eig.values.front()));
    }
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(eig.values[k], 0.0));
        if (root == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vi = eig.vectors(i, k) * root;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.vectors(j, k));
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (dims.empty() || total != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "subsystem dims multiply to " + std::to_string(total) + ", matrix is " + std::to_string(rho.dim()));
    }
    if (keep.empty()) throw Error(ErrorKind::DimensionMismatch, "keep set is empty");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw Error(ErrorKind::DimensionMismatch, "bad subsystem index " + std::to_string(k));
        }
        kept[k] = true;
    }

    const std::size_t n_sub = dims.size();
    std::size_t reduced_dim = 1;
    for (std::size_t s = 0; s < n_sub; ++s)
        if (kept[s]) reduced_dim *= dims[s];

    // Split a composite index into (kept part, traced part).
    auto split = [&](std::size_t index) {
        std::size_t kept_index = 0, traced_index = 0, kept_stride = 1, traced_stride = 1;
        for (std::size_t s = n_sub; s-- > 0;) {
            const std::size_t digit = index % dims[s];
            index /= dims[s];
            if (kept[s]) {
                kept_index += digit * kept_stride;
                kept_stride *= dims[s];
            } else {
                traced_index += digit * traced_stride;
                traced_stride *= dims[s];
            }
        }
        return std::pair{kept_index, traced_index};
    };

    std::vector<std::pair<std::size_t, std::size_t>> parts(total);
    for (std::size_t i = 0; i < total; ++i) parts[i] = split(i);

    ComplexMatrix out(reduced_dim);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (parts[i].second == parts[j].second) out(parts[i].first, parts[j].first) += rho(i, j);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(dims.begin(), dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

} // namespace noisent
