// Local filtering and depolarizing noise on qubit registers.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qfilter/linalg.hpp"

namespace qfilter {

inline constexpr double filter_zero_probability = 1e-14;

struct FilterParams {
    double k = 0.5;       // filtering parameter in [0, 1]
    int target_qubit = 1; // 1-based
};

struct NoiseParams {
    double gamma_t = 0.0;           // dimensionless time Gamma*t >= 0
    std::vector<int> noisy_qubits; // 1-based
};

struct FilterOutcome {
    DensityMatrix state;
    double success_prob;
};

inline ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix sigma_y() { return {{0.0, complex(0, -1)}, {complex(0, 1), 0.0}}; }
inline ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

// Finite operator list closed under sum_i op_i^dagger op_i = I.
class KrausSet {
public:
    explicit KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) throw contract_error("KrausSet: empty operator list");
        for (const auto& op : ops_)
            if (op.dim() != ops_.front().dim()) throw contract_error("KrausSet: operators differ in dimension");
        if (completeness_defect() > tol::algebraic) throw contract_error("KrausSet: completeness violated");
    }

    std::size_t dim() const { return ops_.front().dim(); }
    std::size_t size() const { return ops_.size(); }
    const std::vector<ComplexMatrix>& ops() const { return ops_; }
    const ComplexMatrix& operator[](std::size_t i) const { return ops_[i]; }

    // max entrywise |sum op^dagger op - I|
    double completeness_defect() const {
        ComplexMatrix sum(dim());
        for (const auto& op : ops_) sum += op.adjoint() * op;
        return sum.max_abs_diff(ComplexMatrix::identity(dim()));
    }

private:
    std::vector<ComplexMatrix> ops_;
};

/// diag(sqrt(1-k), sqrt(k))
inline ComplexMatrix filter_op(double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw contract_error("filter_op: k = " + std::to_string(k) + " outside [0, 1]");
    return ComplexMatrix::diagonal({std::sqrt(1.0 - k), std::sqrt(k)});
}

/// Places a single-qubit operator at position `target` of an n-qubit
/// register, identity elsewhere.
inline ComplexMatrix lift(const ComplexMatrix& op, int n_qubits, int target) {
    if (op.dim() != 2) throw contract_error("lift: operator must be 2x2");
    if (n_qubits < 1 || n_qubits > max_qubits) throw contract_error("lift: qubit count out of range");
    if (target < 1 || target > n_qubits) throw contract_error("lift: target " + std::to_string(target) + " out of range");
    ComplexMatrix out = (target == 1) ? op : identity2();
    for (int q = 2; q <= n_qubits; ++q) out = kron(out, q == target ? op : identity2());
    return out;
}

inline double p_of_time(double gamma_t) {
    if (!(gamma_t >= 0.0) || std::isinf(gamma_t))
        throw contract_error("p_of_time: gamma_t = " + std::to_string(gamma_t) + " must be finite and >= 0");
    return -std::expm1(-gamma_t / 2.0);
}

// Single-qubit depolarizing operators. The third operator is taken as
// sqrt(p/3) * [[0, i], [-i, 0]], the transpose of the usual sigma_y; the
// channel it generates is the same.
inline KrausSet depolarizing_kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw contract_error("depolarizing_kraus: p = " + std::to_string(p) + " outside [0, 1]");
    const double a = std::sqrt(1.0 - p);
    const double b = std::sqrt(p / 3.0);
    const complex i(0.0, 1.0);
    return KrausSet({
        ComplexMatrix{{a, 0.0}, {0.0, a}},
        ComplexMatrix{{0.0, b}, {b, 0.0}},
        ComplexMatrix{{0.0, i * b}, {-i * b, 0.0}},
        ComplexMatrix{{b, 0.0}, {0.0, -b}},
    });
}

// Tensor-product Kraus set acting with `single` on each qubit in `qubits`
// and identity elsewhere. Tuples are enumerated lexicographically with the
// lowest-numbered qubit as the most significant index.
inline KrausSet lift_kraus(const KrausSet& single, int n_qubits, std::vector<int> qubits) {
    if (single.dim() != 2) throw contract_error("lift_kraus: single-qubit set required");
    if (n_qubits < 1 || n_qubits > max_qubits) throw contract_error("lift_kraus: qubit count out of range");
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    if (qubits.empty()) throw contract_error("lift_kraus: no target qubits");
    for (int q : qubits)
        if (q < 1 || q > n_qubits) throw contract_error("lift_kraus: qubit " + std::to_string(q) + " out of range");

    const std::size_t m = single.size();
    std::size_t count = 1;
    for (std::size_t t = 0; t < qubits.size(); ++t) count *= m;

    std::vector<ComplexMatrix> ops;
    ops.reserve(count);
    std::vector<std::size_t> digits(qubits.size());
    for (std::size_t tuple = 0; tuple < count; ++tuple) {
        std::size_t rest = tuple;
        for (std::size_t t = qubits.size(); t-- > 0;) {
            digits[t] = rest % m;
            rest /= m;
        }
        auto factor = [&](int q) -> ComplexMatrix {
            const auto it = std::find(qubits.begin(), qubits.end(), q);
            if (it == qubits.end()) return identity2();
            return single[digits[static_cast<std::size_t>(it - qubits.begin())]];
        };
        ComplexMatrix op = factor(1);
        for (int q = 2; q <= n_qubits; ++q) op = kron(op, factor(q));
        ops.push_back(std::move(op));
    }
    return KrausSet(std::move(ops));
}

/// sum_i K_i rho K_i^dagger
inline DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus) {
    if (kraus.dim() != rho.dim()) throw contract_error("apply_kraus: dimension mismatch");
    ComplexMatrix out(rho.dim());
    for (const auto& op : kraus.ops()) out += op * rho.matrix() * op.adjoint();
    return DensityMatrix(std::move(out));
}

inline DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseParams& params) {
    const double p = p_of_time(params.gamma_t);
    return apply_kraus(rho, lift_kraus(depolarizing_kraus(p), rho.n_qubits(), params.noisy_qubits));
}

/// Conditional state after a successful filter on one qubit, and the
/// probability of that outcome, Tr(M rho M^dagger).
inline FilterOutcome apply_filter(const DensityMatrix& rho, const FilterParams& params) {
    const ComplexMatrix m = lift(filter_op(params.k), rho.n_qubits(), params.target_qubit);
    ComplexMatrix unnormalized = m * rho.matrix() * m.adjoint();
    const double prob = unnormalized.trace().real();
    if (prob < filter_zero_probability)
        throw filter_annihilates_state("filter annihilates state (success probability " + std::to_string(prob) + ")");
    unnormalized *= 1.0 / prob;
    return {DensityMatrix(std::move(unnormalized)), std::clamp(prob, 0.0, 1.0)};
}

} // namespace qfilter
