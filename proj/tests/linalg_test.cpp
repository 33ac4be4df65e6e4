#include "qadder/linalg.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace qadder;
using qadder::testing::naive_product;
using qadder::testing::random_hermitian;
using qadder::testing::random_matrix;
using qadder::testing::unitarity_residual;

namespace {

// H(1/4, 3/4) = 1/2 + (3/4) log2(4/3)
constexpr double kH14 = 0.8112781244591328;

ComplexMatrix reconstruct(const Eigensystem &e) {
    ComplexMatrix scaled = e.vectors;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        for (std::size_t i = 0; i < scaled.rows(); ++i) {
            scaled(i, k) *= e.values[k];
        }
    }
    return naive_product(scaled, e.vectors.adjoint());
}

}  // namespace

TEST(kron, identities) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
    const auto p0 = PureState::basis(2, 0).projector();
    const auto p1 = PureState::basis(2, 1).projector();
    EXPECT_EQ(kron(p0, p1), PureState::basis(4, 1).projector());
}

TEST(kron, index_formula) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto a = random_matrix(2, 2, seed);
        const auto b = random_matrix(2, 2, seed + 100);
        const auto k = kron(a, b);
        ASSERT_EQ(k.rows(), 4u);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t r = 0; r < 2; ++r) {
                    for (std::size_t c = 0; c < 2; ++c) {
                        EXPECT_EQ(k(2 * i + r, 2 * j + c), a(i, j) * b(r, c));
                    }
                }
            }
        }
    }
}

TEST(kron, associative) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = random_matrix(2, 3, seed);
        const auto b = random_matrix(3, 2, seed + 1000);
        const auto c = random_matrix(2, 2, seed + 2000);
        EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    }
}

TEST(kron, rejects_oversized_result) {
    const ComplexMatrix wide(1, std::size_t{1} << 9);
    EXPECT_THROW(kron(wide, ComplexMatrix(1, std::size_t{1} << 8)), std::invalid_argument);
}

TEST(matrix, product_matches_naive) {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u}) {
        const auto a = random_matrix(n, n + 1, n);
        const auto b = random_matrix(n + 1, n, n + 7);
        EXPECT_LE(max_abs_diff(a * b, naive_product(a, b)), 1e-13);
        EXPECT_LE(max_abs_diff(multiply_adjoint(a, a), naive_product(a, a.adjoint())), 1e-13);
    }
}

TEST(matrix, rejects_nonfinite_and_bad_sizes) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cd>(3)), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(1, 1, {cd(std::nan(""), 0)}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), std::invalid_argument);
}

TEST(eigensystem, diagonal) {
    const std::array<double, 2> d{3, 1};
    const auto e = hermitian_eigensystem(ComplexMatrix::diagonal(d));
    ASSERT_EQ(e.values.size(), 2u);
    EXPECT_NEAR(e.values[0], 1, 1e-15);
    EXPECT_NEAR(e.values[1], 3, 1e-15);
}

TEST(eigensystem, pauli_x) {
    const ComplexMatrix x(2, 2, {0, 1, 1, 0});
    const auto e = hermitian_eigensystem(x);
    EXPECT_NEAR(e.values[0], -1, 1e-15);
    EXPECT_NEAR(e.values[1], 1, 1e-15);
    const double r = 1 / std::sqrt(2.0);
    // Up to phase: |<v|expected>| = 1.
    EXPECT_NEAR(std::abs(e.vectors(0, 0) * r - e.vectors(1, 0) * r), 1, 1e-12);
    EXPECT_NEAR(std::abs(e.vectors(0, 1) * r + e.vectors(1, 1) * r), 1, 1e-12);
}

TEST(eigensystem, reconstruction_random) {
    for (std::size_t n : {1u, 2u, 3u, 4u, 8u, 16u, 33u, 64u}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto h = random_hermitian(n, 31 * n + seed);
            const auto e = hermitian_eigensystem(h);
            EXPECT_LE(max_abs_diff(reconstruct(e), h), 1e-9) << "n=" << n;
            EXPECT_LE(unitarity_residual(e.vectors), 1e-9) << "n=" << n;
            for (std::size_t k = 1; k < n; ++k) {
                EXPECT_LE(e.values[k - 1], e.values[k]);
            }
            const auto only = hermitian_eigenvalues(h);
            for (std::size_t k = 0; k < n; ++k) {
                EXPECT_NEAR(only[k], e.values[k], 1e-11);
            }
        }
    }
}

TEST(eigensystem, degenerate_and_real_block) {
    // Projector onto a 2-dim subspace of C^4 plus structured zeros.
    const auto u = random_unitary(4, 5);
    const std::array<double, 4> d{1, 1, 0, 0};
    const auto h = conjugate(u, ComplexMatrix::diagonal(d));
    const auto e = hermitian_eigensystem(h);
    EXPECT_NEAR(e.values[0], 0, 1e-12);
    EXPECT_NEAR(e.values[3], 1, 1e-12);
    EXPECT_LE(max_abs_diff(reconstruct(e), h), 1e-9);
    EXPECT_LE(unitarity_residual(e.vectors), 1e-9);
}

TEST(eigensystem, rejects_non_hermitian) {
    const ComplexMatrix m(2, 2, {0, 1, 0, 0});
    try {
        hermitian_eigensystem(m);
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("deviation"), std::string::npos);
    }
}

TEST(entropy, examples) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::from_pure(random_pure_state(4, 3))), 0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(2)), 1, 1e-15);
    const std::array<double, 2> d{0.25, 0.75};
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(ComplexMatrix::diagonal(d))), kH14, 1e-15);
}

TEST(entropy, rejects_non_state) {
    const std::array<double, 2> d{1.5, -0.5};
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(d)), std::invalid_argument);
    EXPECT_THROW(von_neumann_entropy(DensityMatrix::unchecked(ComplexMatrix::diagonal(d))),
                 std::invalid_argument);
}

TEST(entropy, clamps_tiny_negative_eigenvalues) {
    const std::array<double, 3> d{1.0 + 5e-11, -5e-11, 0.0};
    const DensityMatrix rho(ComplexMatrix::diagonal(d));
    EXPECT_NEAR(von_neumann_entropy(rho), 0, 1e-9);
}

TEST(shannon, examples) {
    EXPECT_EQ(shannon_entropy(std::array<double, 2>{1, 0}), 0);
    EXPECT_EQ(shannon_entropy(std::array<double, 2>{0.5, 0.5}), 1);
    // 2 * (1/4 * 2) + 1/2 * 1
    EXPECT_NEAR(shannon_entropy(std::array<double, 3>{0.25, 0.5, 0.25}), 1.5, 1e-15);
    EXPECT_THROW(shannon_entropy(std::array<double, 2>{0.5, 0.6}), std::invalid_argument);
    EXPECT_NEAR(binary_entropy(0.25), kH14, 1e-15);
}

TEST(entropy, unitary_invariance) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t dim = 2 + seed % 7;
        const auto rho = random_density(dim, seed);
        const auto u = random_unitary(dim, seed + 500);
        const auto rotated = DensityMatrix::unchecked(conjugate(u, rho.matrix()));
        EXPECT_NEAR(von_neumann_entropy(rotated), von_neumann_entropy(rho), 1e-9);
    }
}

TEST(entropy, additive_on_products) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto a = random_density(2 + seed % 3, seed);
        const auto b = random_density(2 + seed % 4, seed + 77);
        EXPECT_NEAR(von_neumann_entropy(kron(a, b)), von_neumann_entropy(a) + von_neumann_entropy(b),
                    1e-9);
    }
}

TEST(partial_trace, product_state) {
    const auto r1 = random_density(2, 1);
    const auto r2 = random_density(3, 2);
    const std::array<std::size_t, 2> dims{2, 3};
    EXPECT_LE(max_abs_diff(partial_trace(kron(r1, r2), dims, std::array<std::size_t, 1>{0}).matrix(),
                           r1.matrix()),
              1e-15);
    EXPECT_LE(max_abs_diff(partial_trace(kron(r1, r2), dims, std::array<std::size_t, 1>{1}).matrix(),
                           r2.matrix()),
              1e-15);
    const auto scalar = partial_trace(kron(r1, r2), dims, std::span<const std::size_t>{});
    ASSERT_EQ(scalar.dim(), 1u);
    EXPECT_NEAR(scalar.matrix()(0, 0).real(), 1, 1e-14);
}

TEST(partial_trace, bell_marginal) {
    const double r = 1 / std::sqrt(2.0);
    const auto phi = DensityMatrix::from_pure(PureState({r, 0, 0, r}));
    const std::array<std::size_t, 2> dims{2, 2};
    const auto m = partial_trace(phi, dims, std::array<std::size_t, 1>{0});
    EXPECT_LE(max_abs_diff(m.matrix(), DensityMatrix::maximally_mixed(2).matrix()), 1e-15);
}

TEST(partial_trace, ghz_marginals) {
    const double r = 1 / std::sqrt(2.0);
    std::vector<cd> amps(8);
    amps[0] = r;
    amps[7] = r;
    const auto ghz = DensityMatrix::from_pure(PureState(amps));
    const std::array<std::size_t, 3> dims{2, 2, 2};
    for (std::size_t k = 0; k < 3; ++k) {
        const auto m = partial_trace(ghz, dims, std::array<std::size_t, 1>{k});
        EXPECT_LE(max_abs_diff(m.matrix(), DensityMatrix::maximally_mixed(2).matrix()), 1e-15);
    }
}

TEST(partial_trace, composes) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(2 * 3 * 2 * 2, seed);
        const std::array<std::size_t, 4> dims{2, 3, 2, 2};
        // Trace factor 2, then factor 3 (index 2 after the first trace).
        const auto step = partial_trace(rho, dims, std::array<std::size_t, 3>{0, 1, 3});
        const auto twice =
            partial_trace(step, std::array<std::size_t, 3>{2, 3, 2}, std::array<std::size_t, 2>{0, 1});
        const auto once = partial_trace(rho, dims, std::array<std::size_t, 2>{0, 1});
        EXPECT_LE(max_abs_diff(twice.matrix(), once.matrix()), 1e-10);
    }
}

TEST(partial_trace, rejects_dim_mismatch) {
    const auto rho = random_density(4, 0);
    EXPECT_THROW(partial_trace(rho, std::array<std::size_t, 2>{2, 3}, std::array<std::size_t, 1>{0}),
                 std::invalid_argument);
}

TEST(psd_sqrt, examples) {
    EXPECT_LE(max_abs_diff(psd_sqrt(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)), 1e-15);
    const std::array<double, 2> d{4, 9};
    const std::array<double, 2> r{2, 3};
    EXPECT_LE(max_abs_diff(psd_sqrt(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(r)), 1e-14);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto m = random_density(4, seed).matrix();
        const auto root = psd_sqrt(m);
        EXPECT_LE(max_abs_diff(naive_product(root, root), m), 1e-9);
        EXPECT_LE(hermitian_deviation(root), 1e-12);
        EXPECT_GE(hermitian_eigenvalues(root).front(), -1e-12);
    }
    const std::array<double, 2> neg{1, -0.1};
    EXPECT_THROW(psd_sqrt(ComplexMatrix::diagonal(neg)), std::invalid_argument);
}

TEST(random_unitary, contract) {
    const auto one = random_unitary(1, 3);
    EXPECT_NEAR(std::abs(one(0, 0)), 1, 1e-15);
    EXPECT_LE(unitarity_residual(random_unitary(4, 42)), 1e-10);
    EXPECT_LE(unitarity_residual(random_unitary(32, 42)), 1e-10);
    EXPECT_EQ(random_unitary(4, 42), random_unitary(4, 42));
    EXPECT_GT(max_abs_diff(random_unitary(4, 42), random_unitary(4, 43)), 1e-3);
}

TEST(random_density, contract) {
    EXPECT_NEAR(random_density(2, 9).matrix().trace().real(), 1, 1e-12);
    EXPECT_GE(hermitian_eigenvalues(random_density(4, 9).matrix()).front(), 0);
    EXPECT_EQ(random_density(4, 9).matrix(), random_density(4, 9).matrix());
    // Validating constructor accepts it.
    EXPECT_NO_THROW(DensityMatrix(random_density(8, 1).matrix()));
}
