#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "qfilter/channels.hpp"
#include "qfilter/linalg.hpp"

namespace qfilter {

// Concurrences at or below this are reported as exactly zero.
inline constexpr double concurrence_zero_snap = 1e-12;

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho, const char* where) {
    if (rho.n_qubits() != 2)
        throw contract_error(std::string(where) + ": expected a 2-qubit state, got " + std::to_string(rho.n_qubits()));
}

} // namespace detail

/// (sigma_y x sigma_y) rho* (sigma_y x sigma_y)
inline ComplexMatrix spin_flip(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "spin_flip");
    const ComplexMatrix yy = kron(sigma_y(), sigma_y());
    return yy * rho.matrix().conjugate() * yy;
}

// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
//
// These are the singular values of B = sqrt(rho) * sqrt(spin_flip(rho)), and
// sqrt(spin_flip(rho)) = YY sqrt(rho)* YY. They are read off the Hermitian
// dilation [[0, B], [B^dagger, 0]], whose spectrum is {+-sigma_i}. Going
// through the eigenvalues of B B^dagger instead would take square roots of
// roundoff for rank-deficient rho and cost ~1e-8 absolute accuracy.
inline std::array<double, 4> concurrence_spectrum(const DensityMatrix& rho) {
    detail::require_two_qubits(rho, "concurrence");
    const ComplexMatrix root = mat_sqrt_psd(rho.matrix());
    const ComplexMatrix b = root * kron(sigma_y(), sigma_y()) * root.conjugate();
    ComplexMatrix dilation(8);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            dilation(r, c + 4) = b(r, c);
            dilation(c + 4, r) = std::conj(b(r, c));
        }
    const auto values = herm_eigvals(dilation);
    std::array<double, 4> lambda{};
    for (std::size_t i = 0; i < 4; ++i) lambda[i] = std::max(values[i], 0.0);
    return lambda;
}

/// Wootters concurrence, max(0, l1 - l2 - l3 - l4).
inline double concurrence(const DensityMatrix& rho) {
    const auto l = concurrence_spectrum(rho);
    const double c = l[0] - l[1] - l[2] - l[3];
    if (c <= concurrence_zero_snap) return 0.0;
    return std::min(c, 1.0);
}

/// Tr(rho^2)
inline double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    double s = 0.0;
    for (const auto& z : rho.matrix().entries()) s += std::norm(z);
    return s;
}

inline double mixedness(const DensityMatrix& rho) { return 1.0 - purity(rho); }

} // namespace qfilter
