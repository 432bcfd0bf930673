#include <gtest/gtest.h>

#include <cmath>

#include "qfilter/channels.hpp"
#include "qfilter/linalg.hpp"
#include "qfilter/states.hpp"
#include "support.hpp"

using namespace qfilter;
using namespace qfilter::testing;

namespace {

const complex I(0.0, 1.0);

ComplexMatrix psi_plus_projector() {
    const double h = 0.5;
    return ComplexMatrix{{0, 0, 0, 0}, {0, h, h, 0}, {0, h, h, 0}, {0, 0, 0, 0}};
}

} // namespace

TEST(ComplexMatrix, RejectsBadShapes) {
    EXPECT_THROW(ComplexMatrix(0), contract_error);
    EXPECT_THROW(ComplexMatrix(2, cvec(3)), contract_error);
    EXPECT_THROW((ComplexMatrix{{1.0, 0.0}, {1.0}}), contract_error);
    EXPECT_THROW(ComplexMatrix(2) * ComplexMatrix(3), contract_error);
}

TEST(ComplexMatrix, ToleranceEquality) {
    ComplexMatrix a = ComplexMatrix::identity(2);
    ComplexMatrix b = a;
    b(0, 1) = 5e-13;
    EXPECT_TRUE(a.approx_equal(b));
    b(0, 1) = 5e-12;
    EXPECT_FALSE(a.approx_equal(b));
    EXPECT_TRUE(a.approx_equal(b, 1e-11));
}

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_TRUE(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)).approx_equal(ComplexMatrix::identity(4)));
}

TEST(Kron, FilterAtZeroIsProjector) {
    const ComplexMatrix f = ComplexMatrix::diagonal({std::sqrt(1.0 - 0.0), std::sqrt(0.0)});
    EXPECT_TRUE(kron(f, ComplexMatrix::identity(2)).approx_equal(ComplexMatrix::diagonal({1.0, 1.0, 0.0, 0.0})));
}

TEST(Kron, SigmaYSigmaYIsSignedAntiDiagonal) {
    const ComplexMatrix y{{0.0, -I}, {I, 0.0}};
    // Hand expansion: (y x y)[r][c] = y[r/2][c/2] * y[r%2][c%2]
    ComplexMatrix expected(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) expected(r, c) = y(r / 2, c / 2) * y(r % 2, c % 2);
    const ComplexMatrix got = kron(y, y);
    EXPECT_TRUE(got.approx_equal(expected));
    const ComplexMatrix anti{{0, 0, 0, -1.0}, {0, 0, 1.0, 0}, {0, 1.0, 0, 0}, {-1.0, 0, 0, 0}};
    EXPECT_TRUE(got.approx_equal(anti));
}

TEST(Kron, AssociativeAndTraceMultiplicative) {
    Random rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = rng.matrix(2), b = rng.matrix(2), c = rng.matrix(2);
        EXPECT_LE(kron(kron(a, b), c).max_abs_diff(kron(a, kron(b, c))), 1e-12);
        EXPECT_LE(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-12);
    }
}

TEST(PartialTrace, WStateOnPair23) {
    const DensityMatrix rho23 = partial_trace(density(w3()), {2, 3});
    ComplexMatrix expected = (1.0 / 3.0) * ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0});
    expected += (2.0 / 3.0) * psi_plus_projector();
    EXPECT_TRUE(rho23.matrix().approx_equal(expected));
}

TEST(PartialTrace, ProductStateFactorizes) {
    Random rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix a(rng.density(2)), b(rng.density(4)), c(rng.density(2));
        const DensityMatrix ab(kron(a.matrix(), b.matrix()));
        EXPECT_TRUE(partial_trace(ab, {1}).matrix().approx_equal(a.matrix()));
        EXPECT_TRUE(partial_trace(ab, {2, 3}).matrix().approx_equal(b.matrix()));
        const DensityMatrix abc(kron(kron(a.matrix(), c.matrix()), c.matrix()));
        EXPECT_TRUE(partial_trace(abc, {2}).matrix().approx_equal(c.matrix()));
        EXPECT_TRUE(partial_trace(abc, {1}).matrix().approx_equal(a.matrix()));
    }
}

TEST(PartialTrace, GhzMatchesIndexSummation) {
    const cvec rho = outer({1.0, 0, 0, 0, 0, 0, 0, 1.0});
    const cvec oracle = brute_partial_trace(rho, 3, {2, 3});
    const ComplexMatrix expected = 0.5 * ComplexMatrix::diagonal({1.0, 0.0, 0.0, 1.0});
    EXPECT_TRUE(to_matrix(oracle, 4).approx_equal(expected));
    EXPECT_TRUE(partial_trace(density(ghz3()), {2, 3}).matrix().approx_equal(expected));
}

TEST(PartialTrace, RandomStatesMatchIndexSummation) {
    Random rng(99);
    const std::vector<std::vector<int>> subsets = {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}};
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m = rng.density(8);
        const DensityMatrix rho(m);
        for (const auto& keep : subsets) {
            const auto got = partial_trace(rho, keep);
            EXPECT_LE(got.matrix().max_abs_diff(to_matrix(brute_partial_trace(to_cvec(m), 3, keep), got.dim())), 1e-12);
            EXPECT_NEAR(got.matrix().trace().real(), 1.0, 1e-12);
        }
    }
}

TEST(PartialTrace, RejectsEmptyOrFullKeep) {
    const DensityMatrix rho = density(w3());
    EXPECT_THROW(partial_trace(rho, {}), contract_error);
    EXPECT_THROW(partial_trace(rho, {1, 2, 3}), contract_error);
    EXPECT_THROW(partial_trace(rho, {0}), contract_error);
    EXPECT_THROW(partial_trace(rho, {4}), contract_error);
}

TEST(HermEigvals, SimpleCases) {
    const auto id = herm_eigvals(ComplexMatrix::identity(2));
    EXPECT_NEAR(id[0], 1.0, 1e-10);
    EXPECT_NEAR(id[1], 1.0, 1e-10);
    const auto d = herm_eigvals(ComplexMatrix::diagonal({1.0 / 3.0, 2.0 / 3.0}));
    EXPECT_NEAR(d[0], 2.0 / 3.0, 1e-10);
    EXPECT_NEAR(d[1], 1.0 / 3.0, 1e-10);
}

TEST(HermEigvals, WReducedStateAgainstCharacteristicPolynomial) {
    const ComplexMatrix rho23 = partial_trace(density(w3()), {2, 3}).matrix();
    // Frozen from the oracle: p(x) = x^2 (x - 2/3)(x - 1/3)
    const auto poly = char_poly(rho23);
    EXPECT_LE(std::abs(poly_eval(poly, 2.0 / 3.0)), 1e-12);
    EXPECT_LE(std::abs(poly_eval(poly, 1.0 / 3.0)), 1e-12);
    EXPECT_LE(std::abs(poly[4]), 1e-12); // constant term: double root at 0
    EXPECT_LE(std::abs(poly[3]), 1e-12);

    const auto values = herm_eigvals(rho23);
    const double expected[4] = {2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(values[i], expected[i], 1e-10);
}

TEST(HermEigvals, RejectsNonHermitian) {
    EXPECT_THROW(herm_eigvals(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), contract_error);
}

TEST(HermEigen, RandomHermitianDecomposes) {
    Random rng(3);
    for (std::size_t dim : {2u, 4u, 8u}) {
        for (int trial = 0; trial < 25; ++trial) {
            const ComplexMatrix h = rng.hermitian(dim);
            const auto [values, vectors] = herm_eigen(h);
            double sum = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                sum += values[i];
                if (i > 0) {
                    EXPECT_GE(values[i - 1], values[i]);
                }
            }
            EXPECT_NEAR(sum, h.trace().real(), 1e-10);
            EXPECT_LE((vectors.adjoint() * vectors).max_abs_diff(ComplexMatrix::identity(dim)), 1e-12);
            ComplexMatrix d(dim);
            for (std::size_t i = 0; i < dim; ++i) d(i, i) = values[i];
            EXPECT_LE((vectors * d * vectors.adjoint()).max_abs_diff(h), 1e-10);
            // each eigenvalue is a root of the characteristic polynomial
            const auto poly = char_poly(h);
            double scale = 1.0;
            for (const auto& ci : poly) scale = std::max(scale, std::abs(ci));
            for (double v : values) EXPECT_LE(std::abs(poly_eval(poly, v)) / scale, 1e-8);
        }
    }
}

TEST(HermEigen, DegenerateSpectrum) {
    Random rng(21);
    // U diag(1,1,1,0,0,0,0,0) U^dagger has a highly degenerate spectrum
    const auto [values, vectors] = herm_eigen(rng.hermitian(8));
    ComplexMatrix d(8);
    for (std::size_t i = 0; i < 3; ++i) d(i, i) = 1.0;
    const ComplexMatrix p = vectors * d * vectors.adjoint();
    const auto got = herm_eigvals(p);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(got[i], i < 3 ? 1.0 : 0.0, 1e-10);
}

TEST(MatSqrtPsd, SimpleCases) {
    EXPECT_TRUE(mat_sqrt_psd(ComplexMatrix::identity(4)).approx_equal(ComplexMatrix::identity(4)));
    EXPECT_TRUE(mat_sqrt_psd(ComplexMatrix::diagonal({4.0, 1.0})).approx_equal(ComplexMatrix::diagonal({2.0, 1.0})));
}

TEST(MatSqrtPsd, BellProjectorIsItsOwnRoot) {
    const ComplexMatrix p = psi_plus_projector();
    EXPECT_LE(mat_sqrt_psd(p).max_abs_diff(p), 1e-9);
}

TEST(MatSqrtPsd, SquaresBack) {
    Random rng(8);
    for (std::size_t dim : {2u, 4u, 8u}) {
        for (std::size_t rank = 1; rank <= dim; rank += (dim > 2 ? 3 : 1)) {
            const ComplexMatrix a = rng.density(dim, rank);
            const ComplexMatrix r = mat_sqrt_psd(a);
            EXPECT_TRUE(r.is_hermitian(1e-12));
            EXPECT_LE((r * r).max_abs_diff(a), 1e-9);
            EXPECT_GE(herm_eigvals(r).back(), -1e-10);
        }
    }
}

TEST(MatSqrtPsd, ClampsRoundoffButRejectsNegative) {
    EXPECT_NO_THROW(mat_sqrt_psd(ComplexMatrix::diagonal({1.0, -5e-11})));
    EXPECT_THROW(mat_sqrt_psd(ComplexMatrix::diagonal({1.0, -1e-9})), contract_error);
}

TEST(DensityMatrix, ValidatesInvariants) {
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), contract_error);           // trace 2
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal({1.5, -0.5})), contract_error); // not PSD
    EXPECT_THROW(DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), contract_error);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal({1.0, 0.0, 0.0})), contract_error); // not 2^n
    const DensityMatrix ok(0.5 * ComplexMatrix::identity(2));
    EXPECT_EQ(ok.n_qubits(), 1);
}

TEST(StateVector, RejectsZeroAndMisSized) {
    EXPECT_THROW(StateVector(1, cvec{0.0, 0.0}), contract_error);
    EXPECT_THROW(StateVector(2, cvec{1.0, 0.0}), contract_error);
    EXPECT_THROW(StateVector(1, cvec{NAN, 0.0}), contract_error);
}
