// Test-only oracles and random generators. Nothing here calls the library
// routine it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qfilter/linalg.hpp"

namespace qfilter::testing {

using cvec = std::vector<complex>;

// Reduced density matrix by explicit summation over traced indices:
// out[a][b] = sum_t rho[join(a, t)][join(b, t)].
inline cvec brute_partial_trace(const cvec& rho, int n, const std::vector<int>& keep) {
    std::vector<int> traced;
    for (int q = 1; q <= n; ++q) {
        bool kept = false;
        for (int k : keep) kept = kept || (k == q);
        if (!kept) traced.push_back(q);
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t kd = std::size_t{1} << keep.size();
    const std::size_t td = std::size_t{1} << traced.size();
    auto join = [&](std::size_t kept_bits, std::size_t traced_bits) {
        std::size_t full = 0;
        for (std::size_t i = 0; i < keep.size(); ++i)
            if ((kept_bits >> (keep.size() - 1 - i)) & 1U) full |= std::size_t{1} << (n - keep[i]);
        for (std::size_t i = 0; i < traced.size(); ++i)
            if ((traced_bits >> (traced.size() - 1 - i)) & 1U) full |= std::size_t{1} << (n - traced[i]);
        return full;
    };
    cvec out(kd * kd);
    for (std::size_t a = 0; a < kd; ++a)
        for (std::size_t b = 0; b < kd; ++b)
            for (std::size_t t = 0; t < td; ++t) out[a * kd + b] += rho[join(a, t) * dim + join(b, t)];
    return out;
}

inline cvec outer(const cvec& psi) {
    double nrm = 0.0;
    for (auto z : psi) nrm += std::norm(z);
    cvec out(psi.size() * psi.size());
    for (std::size_t r = 0; r < psi.size(); ++r)
        for (std::size_t c = 0; c < psi.size(); ++c) out[r * psi.size() + c] = psi[r] * std::conj(psi[c]) / nrm;
    return out;
}

inline double trace_of_square(const cvec& m, std::size_t dim) {
    complex s = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) s += m[i * dim + j] * m[j * dim + i];
    return s.real();
}

// |W'> = (F x I x I)|W> written out amplitude by amplitude; returns <W'|W'>.
inline double filtered_w_norm_squared(double k) {
    const double a = 1.0 / std::sqrt(3.0);
    const double amps[3] = {std::sqrt(1.0 - k) * a,  // |001>, qubit 1 in |0>
                            std::sqrt(1.0 - k) * a,  // |010>
                            std::sqrt(k) * a};       // |100>, qubit 1 in |1>
    return amps[0] * amps[0] + amps[1] * amps[1] + amps[2] * amps[2];
}

// a|00> + b|01> + c|10> + d|11> (normalized): concurrence = 2|ad - bc|,
// equal to twice the product of the Schmidt coefficients.
inline double pure_state_concurrence(const cvec& psi) {
    double nrm = 0.0;
    for (auto z : psi) nrm += std::norm(z);
    return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]) / nrm;
}

// Characteristic polynomial det(lambda I - A) by Faddeev-LeVerrier;
// coefficients c[0..n] of lambda^n ... lambda^0.
inline std::vector<complex> char_poly(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    std::vector<complex> c(n + 1);
    c[0] = 1.0;
    ComplexMatrix m(n); // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        ComplexMatrix next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
        m = next;
        c[k] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

inline complex poly_eval(const std::vector<complex>& c, double x) {
    complex s = 0.0;
    for (const auto& ci : c) s = s * x + ci;
    return s;
}

// sum_i K_i rho K_i^dagger with the Pauli matrices spelled out.
inline ComplexMatrix depolarize_direct(const ComplexMatrix& rho, double p) {
    const complex i(0, 1);
    const ComplexMatrix X{{0.0, 1.0}, {1.0, 0.0}};
    const ComplexMatrix Y{{0.0, -i}, {i, 0.0}};
    const ComplexMatrix Z{{1.0, 0.0}, {0.0, -1.0}};
    ComplexMatrix out = (1.0 - p) * rho;
    out += (p / 3.0) * (X * rho * X + Y * rho * Y + Z * rho * Z);
    return out;
}

// rho with tensor factors reordered: new qubit q is old qubit perm[q-1].
inline ComplexMatrix permute_qubits(const ComplexMatrix& rho, int n, const std::vector<int>& perm) {
    auto map = [&](std::size_t idx) {
        std::size_t out = 0;
        for (int q = 1; q <= n; ++q) {
            const std::size_t bit = (idx >> (n - perm[static_cast<std::size_t>(q - 1)])) & 1U;
            out |= bit << (n - q);
        }
        return out;
    };
    ComplexMatrix out(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j) out(map(i), map(j)) = rho(i, j);
    return out;
}

inline ComplexMatrix to_matrix(const cvec& entries, std::size_t dim) { return ComplexMatrix(dim, entries); }

inline cvec to_cvec(const ComplexMatrix& m) { return cvec(m.entries().begin(), m.entries().end()); }

class Random {
public:
    explicit Random(unsigned seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    complex gaussian() {
        std::normal_distribution<double> n;
        return {n(gen_), n(gen_)};
    }

    ComplexMatrix matrix(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) m(r, c) = gaussian();
        return m;
    }

    ComplexMatrix hermitian(std::size_t dim) {
        const ComplexMatrix g = matrix(dim);
        return 0.5 * (g + g.adjoint());
    }

    // G G^dagger / Tr with G dim x rank
    ComplexMatrix density(std::size_t dim, std::size_t rank = 0) {
        if (rank == 0) rank = dim;
        ComplexMatrix g(dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < rank; ++c) g(r, c) = gaussian();
        ComplexMatrix rho = g * g.adjoint();
        rho *= 1.0 / rho.trace().real();
        return rho;
    }

    cvec state(std::size_t dim) {
        cvec v(dim);
        double nrm = 0.0;
        for (auto& z : v) {
            z = gaussian();
            nrm += std::norm(z);
        }
        for (auto& z : v) z /= std::sqrt(nrm);
        return v;
    }

    // e^{i alpha} [[a, -conj(b)], [b, conj(a)]]
    ComplexMatrix unitary2() {
        const cvec ab = state(2);
        const complex phase = std::polar(1.0, uniform(0.0, 2.0 * M_PI));
        return ComplexMatrix{{phase * ab[0], -phase * std::conj(ab[1])}, {phase * ab[1], phase * std::conj(ab[0])}};
    }

private:
    std::mt19937_64 gen_;
};

} // namespace qfilter::testing
