#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "qfilter/linalg.hpp"

namespace qfilter {

namespace detail {

inline StateVector uniform_superposition(std::initializer_list<std::size_t> indices) {
    std::vector<complex> amps(8);
    const double a = 1.0 / std::sqrt(static_cast<double>(indices.size()));
    for (std::size_t i : indices) amps[i] = a;
    return StateVector(3, std::move(amps));
}

} // namespace detail

/// (|001> + |010> + |100>) / sqrt(3)
inline StateVector w3() { return detail::uniform_superposition({0b001, 0b010, 0b100}); }

/// (|110> + |101> + |011>) / sqrt(3)
inline StateVector wbar3() { return detail::uniform_superposition({0b110, 0b101, 0b011}); }

/// (|000> + |111>) / sqrt(2)
inline StateVector ghz3() { return detail::uniform_superposition({0b000, 0b111}); }

/// Equal superposition of W and W-bar: 1/sqrt(6) on every basis state of
/// Hamming weight 1 or 2.
inline StateVector wwbar3() {
    return detail::uniform_superposition({0b001, 0b010, 0b100, 0b011, 0b101, 0b110});
}

/// |psi><psi| for the normalized psi.
inline DensityMatrix density(const StateVector& psi) {
    const StateVector unit = psi.normalized();
    return DensityMatrix(ComplexMatrix::outer(unit.amplitudes(), unit.amplitudes()));
}

} // namespace qfilter
