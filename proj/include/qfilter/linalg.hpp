// Dense complex linear algebra for small qubit registers (dimension <= 64).
//
// Qubit 1 is the leftmost (most significant) tensor factor: basis state
// |b1 b2 ... bn> has index b1*2^(n-1) + ... + bn.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfilter/errors.hpp"

namespace qfilter {

using complex = std::complex<double>;

namespace tol {
inline constexpr double algebraic = 1e-12; // entrywise identities
inline constexpr double spectral = 1e-10;  // eigenvalues, trace, hermiticity
inline constexpr double composed = 1e-9;   // chains of products
inline constexpr double jacobi = 1e-14;    // off-diagonal norm at convergence
} // namespace tol

inline constexpr int max_qubits = 6;

class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
        if (dim == 0) throw contract_error("ComplexMatrix: dim must be >= 1");
    }

    ComplexMatrix(std::size_t dim, std::vector<complex> row_major)
        : dim_(dim), data_(std::move(row_major)) {
        if (dim == 0) throw contract_error("ComplexMatrix: dim must be >= 1");
        if (data_.size() != dim * dim)
            throw contract_error("ComplexMatrix: entry count must equal dim^2");
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows)
        : ComplexMatrix(rows.size()) {
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) throw contract_error("ComplexMatrix: ragged initializer");
            std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
            ++r;
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const complex> diag) {
        ComplexMatrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<complex> diag) {
        return diagonal(std::span<const complex>(diag.begin(), diag.size()));
    }

    // |u><v|
    static ComplexMatrix outer(std::span<const complex> u, std::span<const complex> v) {
        if (u.size() != v.size()) throw contract_error("outer: size mismatch");
        ComplexMatrix m(u.size());
        for (std::size_t r = 0; r < u.size(); ++r)
            for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * std::conj(v[c]);
        return m;
    }

    std::size_t dim() const { return dim_; }
    std::span<const complex> entries() const { return data_; }

    complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    // Entrywise complex conjugate in the computational basis.
    ComplexMatrix conjugate() const {
        ComplexMatrix out(*this);
        for (auto& z : out.data_) z = std::conj(z);
        return out;
    }

    complex trace() const {
        complex t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs_diff(const ComplexMatrix& other) const {
        require_same_dim(other, "max_abs_diff");
        double m = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
        return m;
    }

    bool approx_equal(const ComplexMatrix& other, double eps = tol::algebraic) const {
        return dim_ == other.dim_ && max_abs_diff(other) <= eps;
    }

    bool is_hermitian(double eps = tol::spectral) const {
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = r; c < dim_; ++c)
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > eps) return false;
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_dim(o, "operator+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_dim(o, "operator-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix& operator*=(complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
    friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_dim(b, "operator*");
        const std::size_t n = a.dim_;
        ComplexMatrix out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const complex ark = a(r, k);
                if (ark == complex{}) continue;
                for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

private:
    void require_same_dim(const ComplexMatrix& o, const char* where) const {
        if (o.dim_ != dim_) throw contract_error(std::string(where) + ": dimension mismatch");
    }

    std::size_t dim_;
    std::vector<complex> data_;
};

namespace detail {

inline int qubits_for_dim(std::size_t dim) {
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim || n < 1 || n > max_qubits)
        throw contract_error("dimension " + std::to_string(dim) + " is not 2^n with 1 <= n <= " +
                             std::to_string(max_qubits));
    return n;
}

} // namespace detail

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t ar = 0; ar < na; ++ar)
        for (std::size_t ac = 0; ac < na; ++ac) {
            const complex s = a(ar, ac);
            if (s == complex{}) continue;
            for (std::size_t br = 0; br < nb; ++br)
                for (std::size_t bc = 0; bc < nb; ++bc) out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
        }
    return out;
}

// Eigen-decomposition of a Hermitian matrix: values descending, vectors as the
// matching columns of a unitary.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
// a_pq, then applies the real symmetric rotation that zeroes it.
inline HermitianEigen herm_eigen(const ComplexMatrix& input) {
    if (!input.is_hermitian(tol::spectral)) throw contract_error("herm_eigen: matrix is not Hermitian");

    const std::size_t n = input.dim();
    ComplexMatrix a = input;
    ComplexMatrix v = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    const double threshold = tol::jacobi * std::max(1.0, input.frobenius_norm());
    constexpr int max_sweeps = 100;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) s += std::norm(a(r, c));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex apq = a(p, q);
                const double b = std::abs(apq);
                if (b == 0.0) continue;

                const complex phase = std::conj(apq) / b; // e^{-i arg a_pq}
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // J = diag-phase * real rotation; columns p and q of J:
                //   J_pp = c, J_qp = -s e^{-i phi}, J_pq = s, J_qq = c e^{-i phi}
                for (std::size_t k = 0; k < n; ++k) {
                    const complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * phase * akq;
                    a(k, q) = s * akp + c * phase * akq;
                    const complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * phase * vkq;
                    v(k, q) = s * vkp + c * phase * vkq;
                }
                const complex cphase = std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * cphase * aqk;
                    a(q, k) = s * apk + c * cphase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

inline std::vector<double> herm_eigvals(const ComplexMatrix& a) { return herm_eigen(a).values; }

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// [-1e-10, 0) are treated as 0.
inline ComplexMatrix mat_sqrt_psd(const ComplexMatrix& a) {
    auto [values, vectors] = herm_eigen(a);
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (values[k] < -tol::spectral)
            throw contract_error("mat_sqrt_psd: eigenvalue " + std::to_string(values[k]) + " is negative");
        const double root = std::sqrt(std::max(values[k], 0.0));
        if (root == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const complex vr = vectors(r, k) * root;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(vectors(c, k));
        }
    }
    return out;
}

class StateVector {
public:
    StateVector(int n_qubits, std::vector<complex> amplitudes)
        : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
        if (n_qubits < 1 || n_qubits > max_qubits) throw contract_error("StateVector: qubit count out of range");
        if (amps_.size() != (std::size_t{1} << n_qubits))
            throw contract_error("StateVector: amplitude count must be 2^n_qubits");
        const double nrm = norm();
        if (!std::isfinite(nrm) || nrm == 0.0) throw contract_error("StateVector: norm must be finite and nonzero");
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const complex> amplitudes() const { return amps_; }
    const complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto& z : amps_) s += std::norm(z);
        return std::sqrt(s);
    }

    StateVector normalized() const {
        const double nrm = norm();
        std::vector<complex> out(amps_);
        for (auto& z : out) z /= nrm;
        return StateVector(n_qubits_, std::move(out));
    }

    friend StateVector operator*(complex s, const StateVector& v) {
        std::vector<complex> out(v.amps_);
        for (auto& z : out) z *= s;
        return StateVector(v.n_qubits_, std::move(out));
    }

private:
    int n_qubits_;
    std::vector<complex> amps_;
};

// Unit-trace Hermitian PSD matrix over n qubits. Construction validates all
// three properties.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m) : n_qubits_(detail::qubits_for_dim(m.dim())), mat_(std::move(m)) {
        if (!mat_.is_hermitian(tol::spectral)) throw contract_error("DensityMatrix: not Hermitian");
        const complex tr = mat_.trace();
        if (std::abs(tr - 1.0) > tol::spectral)
            throw contract_error("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
        const auto values = herm_eigvals(mat_);
        if (values.back() < -tol::spectral)
            throw contract_error("DensityMatrix: negative eigenvalue " + std::to_string(values.back()));
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return mat_.dim(); }
    const ComplexMatrix& matrix() const { return mat_; }
    const complex& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

private:
    int n_qubits_;
    ComplexMatrix mat_;
};

// Reduced state on the qubits in `keep` (1-based, qubit 1 most significant).
// The result orders the kept qubits ascending.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
    const int n = rho.n_qubits();
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty() || static_cast<int>(keep.size()) >= n)
        throw contract_error("partial_trace: keep must be a nonempty proper subset of the register");
    for (int q : keep)
        if (q < 1 || q > n) throw contract_error("partial_trace: qubit index " + std::to_string(q) + " out of range");

    auto bit = [n](std::size_t index, int qubit) { return (index >> (n - qubit)) & 1U; };
    auto kept_index = [&](std::size_t index) {
        std::size_t sub = 0;
        for (int q : keep) sub = (sub << 1) | bit(index, q);
        return sub;
    };
    std::size_t traced_mask = 0;
    for (int q = 1; q <= n; ++q)
        if (!std::binary_search(keep.begin(), keep.end(), q)) traced_mask |= std::size_t{1} << (n - q);

    const std::size_t dim = rho.dim();
    ComplexMatrix out(std::size_t{1} << keep.size());
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if ((i & traced_mask) == (j & traced_mask)) out(kept_index(i), kept_index(j)) += rho(i, j);
    return DensityMatrix(std::move(out));
}

} // namespace qfilter
