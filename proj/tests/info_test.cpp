#include "qadder/info.hpp"

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"
#include "qadder/channels.hpp"

using namespace qadder;

namespace {

constexpr double kH14 = 0.8112781244591328;

DensityMatrix proj(std::size_t dim, std::size_t i) {
    return DensityMatrix::basis(dim, i);
}

ProductEnsemble classical_adder_ensemble(std::vector<double> p, std::vector<double> q) {
    const auto alpha = adder_channel(2);
    std::vector<DensityMatrix> signals;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            signals.push_back(apply_channel(alpha, proj(4, 2 * i + j)));
        }
    }
    return ProductEnsemble({std::move(p), {"0", "1"}}, {std::move(q), {"0", "1"}}, std::move(signals));
}

Ensemble random_ensemble(std::size_t dim, std::size_t size, std::uint64_t seed) {
    std::vector<EnsembleItem> items;
    for (std::size_t k = 0; k < size; ++k) {
        items.push_back({1.0 / static_cast<double>(size), std::to_string(k),
                         random_density(dim, derive_seed(seed, k))});
    }
    return Ensemble(std::move(items));
}

}  // namespace

TEST(holevo, examples) {
    EXPECT_NEAR(holevo(Ensemble({{1.0, "a", random_density(4, 3)}})), 0, 1e-12);
    EXPECT_NEAR(holevo(Ensemble({{0.5, "0", proj(2, 0)}, {0.5, "1", proj(2, 1)}})), 1, 1e-12);
    EXPECT_NEAR(joint_holevo(classical_adder_ensemble({0.5, 0.5}, {0.5, 0.5})), 1.5, 1e-12);
}

TEST(holevo, invariant_under_common_unitary) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto e = random_ensemble(4, 3, seed);
        const auto u = random_unitary(4, seed + 999);
        std::vector<EnsembleItem> rotated;
        for (const auto &it : e.items()) {
            rotated.push_back({it.probability, it.label, DensityMatrix::unchecked(conjugate(u, it.state.matrix()))});
        }
        EXPECT_NEAR(holevo(e), holevo(Ensemble(std::move(rotated))), 1e-9);
    }
}

TEST(holevo, bounded_by_average_entropy) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto e = random_ensemble(2, 4, seed);
        EXPECT_LE(holevo(e), von_neumann_entropy(e.average_state()) + 1e-10);
        EXPECT_GE(holevo(e), 0);
    }
}

TEST(ensemble, validation) {
    EXPECT_THROW(Ensemble({{0.5, "a", proj(2, 0)}}), std::invalid_argument);
    EXPECT_THROW(Ensemble({{0.5, "a", proj(2, 0)}, {0.5, "a", proj(2, 1)}}), std::invalid_argument);
    EXPECT_THROW(Ensemble({{0.5, "a", proj(2, 0)}, {0.5, "b", proj(4, 1)}}), std::invalid_argument);
    EXPECT_THROW(Ensemble({{1.5, "a", proj(2, 0)}, {-0.5, "b", proj(2, 1)}}), std::invalid_argument);
    EXPECT_THROW(ProductEnsemble({{1.0}, {"a"}}, {{1.0}, {"b"}}, {}), std::invalid_argument);
}

TEST(conditional_holevo, examples) {
    const auto uniform = classical_adder_ensemble({0.5, 0.5}, {0.5, 0.5});
    EXPECT_NEAR(conditional_holevo_1(uniform), 1.0, 1e-12);
    EXPECT_NEAR(conditional_holevo_2(uniform), 1.0, 1e-12);

    const auto q_point = classical_adder_ensemble({0.5, 0.5}, {0.0, 1.0});
    EXPECT_NEAR(conditional_holevo_1(q_point), holevo(q_point.given_sender2(1)), 1e-15);

    const auto p_point = classical_adder_ensemble({1.0, 0.0}, {0.5, 0.5});
    EXPECT_NEAR(conditional_holevo_1(p_point), 0, 1e-12);
}

TEST(pair_mixture_entropy, examples) {
    const auto a = PureState::basis(2, 0);
    const auto b = PureState::basis(2, 1);
    EXPECT_NEAR(pair_mixture_entropy(a, b), 1, 1e-15);
    EXPECT_NEAR(pair_mixture_entropy(a, a), 0, 1e-15);
}

TEST(pair_mixture_entropy, matches_eigendecomposition) {
    for (std::size_t dim : {2u, 4u}) {
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const auto v = random_pure_state(dim, derive_seed(seed, 2 * dim));
            const auto w = random_pure_state(dim, derive_seed(seed, 2 * dim + 1));
            ComplexMatrix mix = (v.projector() + w.projector()) * cd{0.5, 0};
            const double oracle = von_neumann_entropy(DensityMatrix(std::move(mix)));
            EXPECT_NEAR(pair_mixture_entropy(v, w), oracle, 1e-10);
        }
    }
}

TEST(pair_mixture_entropy, symmetric_and_phase_invariant) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto v = random_pure_state(4, seed);
        const auto w = random_pure_state(4, seed + 5000);
        const double h = pair_mixture_entropy(v, w);
        EXPECT_NEAR(h, pair_mixture_entropy(w, v), 1e-12);
        std::vector<cd> rotated(w.amplitudes().begin(), w.amplitudes().end());
        const cd phase = std::polar(1.0, 0.1 * static_cast<double>(seed));
        for (auto &x : rotated) {
            x *= phase;
        }
        EXPECT_NEAR(h, pair_mixture_entropy(v, PureState(rotated)), 1e-12);
    }
}

TEST(entropy_sandwich, examples) {
    const auto zero = entropy_sandwich(0);
    EXPECT_EQ(zero.lower, 1);
    EXPECT_NEAR(zero.mid, 1, 1e-15);
    EXPECT_EQ(zero.upper, 1);

    const auto one = entropy_sandwich(1);
    EXPECT_EQ(one.lower, 0);
    EXPECT_NEAR(one.mid, 0, 1e-15);
    EXPECT_EQ(one.upper, 0.5);

    const auto half = entropy_sandwich(0.5);
    EXPECT_NEAR(half.mid, kH14, 1e-15);
    EXPECT_EQ(half.lower, 0.75);
    EXPECT_EQ(half.upper, 0.875);

    EXPECT_THROW(entropy_sandwich(-0.01), std::invalid_argument);
    EXPECT_THROW(entropy_sandwich(1.01), std::invalid_argument);
    EXPECT_THROW(entropy_sandwich(std::nan("")), std::invalid_argument);
}

TEST(entropy_sandwich, ordered_on_grid) {
    for (int k = 0; k <= 100; ++k) {
        const auto s = entropy_sandwich(k / 100.0);
        EXPECT_LE(s.lower, s.mid) << k;
        EXPECT_LE(s.mid, s.upper) << k;
    }
}

TEST(measurement_decomposition, bell_state_computational) {
    const auto rho = DensityMatrix::from_pure(bell_states()[0]);
    const std::vector<ComplexMatrix> povm{proj(2, 0).matrix(), proj(2, 1).matrix()};
    const auto out = measurement_decomposition(rho, povm, 2, 2);
    ASSERT_EQ(out.size(), 2u);
    for (const auto &o : out) {
        EXPECT_NEAR(o.probability, 0.5, 1e-15);
        EXPECT_NEAR(von_neumann_entropy(o.state), 0, 1e-12);
    }
    EXPECT_NEAR(measurement_entropy_bound(out), 1, 1e-12);
}

TEST(measurement_decomposition, product_state) {
    const auto r1 = random_density(2, 11);
    const auto r2 = random_density(2, 12);
    const auto rho = kron(r1, r2);
    const std::vector<ComplexMatrix> povm{proj(2, 0).matrix(), proj(2, 1).matrix()};
    const auto out = measurement_decomposition(rho, povm, 2, 2);
    ASSERT_EQ(out.size(), 2u);
    for (const auto &o : out) {
        EXPECT_NEAR(von_neumann_entropy(o.state), von_neumann_entropy(r1), 1e-10);
    }
    EXPECT_LE(von_neumann_entropy(rho), measurement_entropy_bound(out) + 1e-10);
}

TEST(measurement_decomposition, drops_zero_outcomes_and_rejects_incomplete) {
    const auto rho = kron(random_density(2, 1), proj(2, 0));
    const std::vector<ComplexMatrix> povm{proj(2, 0).matrix(), proj(2, 1).matrix()};
    const auto out = measurement_decomposition(rho, povm, 2, 2);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].index, 0u);

    const std::vector<ComplexMatrix> partial{proj(2, 0).matrix()};
    EXPECT_THROW(measurement_decomposition(rho, partial, 2, 2), std::invalid_argument);
    EXPECT_THROW(measurement_decomposition(rho, povm, 2, 4), std::invalid_argument);
}

TEST(random_povm, complete_and_positive) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto povm = random_povm(4, 3, seed);
        ComplexMatrix total(4, 4);
        for (const auto &e : povm) {
            total += e;
            EXPECT_GE(hermitian_eigenvalues(e).front(), -1e-12);
        }
        EXPECT_LE(max_abs_diff(total, ComplexMatrix::identity(4)), 1e-12);
    }
}

TEST(measurement_decomposition, entropy_bound_random_suite) {
    std::size_t checked = 0;
    for (std::size_t d2 : {2u, 4u}) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const std::uint64_t s = derive_seed(seed, d2);
            const auto rho = random_density(2 * d2, s);
            const auto povm = random_povm(d2, 2 + s % 3, s ^ 0x5a5aU);
            const auto out = measurement_decomposition(rho, povm, 2, d2);
            double total = 0;
            for (const auto &o : out) {
                total += o.probability;
            }
            EXPECT_NEAR(total, 1, 1e-9);
            EXPECT_LE(von_neumann_entropy(rho), measurement_entropy_bound(out) + 1e-10);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 2000u);
}
