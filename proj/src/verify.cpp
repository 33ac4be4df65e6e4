#include "qadder/verify.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "qadder/channels.hpp"
#include "qadder/codes.hpp"
#include "qadder/info.hpp"
#include "qadder/schur.hpp"

namespace qadder {

namespace {

class Tally {
   public:
    explicit Tally(std::string name) { result_.name = std::move(name); }

    // Fails when deviation > tolerance, or is NaN.
    void check(double deviation, double tolerance, const std::string &what) {
        ++result_.checked;
        if (deviation > result_.worst) {
            result_.worst = deviation;
        }
        if (!(deviation <= tolerance)) {
            if (result_.failed == 0) {
                result_.detail = what;
            }
            ++result_.failed;
        }
    }

    SuiteResult done() { return std::move(result_); }

   private:
    SuiteResult result_;
};

std::string at(const char *label, std::uint64_t i) {
    std::ostringstream os;
    os << label << ' ' << i;
    return os.str();
}

SuiteResult measurement_entropy(std::uint64_t seed) {
    Tally t("measurement_entropy");
    for (std::size_t d2 : {2u, 4u}) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const std::uint64_t s = derive_seed(seed, (d2 << 32) + i);
            const auto rho = random_density(2 * d2, s);
            const auto povm = random_povm(d2, 2 + s % 3, derive_seed(s, 1));
            const auto out = measurement_decomposition(rho, povm, 2, d2);
            t.check(von_neumann_entropy(rho) - measurement_entropy_bound(out), 1e-10, at("instance", i));
        }
    }
    return t.done();
}

SuiteResult pair_mixture(std::uint64_t seed) {
    Tally t("pair_mixture");
    for (std::uint64_t i = 0; i < 500; ++i) {
        const std::size_t dim = i % 2 == 0 ? 2 : 4;
        const std::uint64_t s = derive_seed(seed, 1'000'000 + i);
        const auto v = random_pure_state(dim, s);
        const auto w = random_pure_state(dim, derive_seed(s, 1));
        const std::array<double, 2> half{0.5, 0.5};
        const std::array<DensityMatrix, 2> pure{DensityMatrix::from_pure(v), DensityMatrix::from_pure(w)};
        const double oracle = von_neumann_entropy(mixture(half, pure));
        t.check(std::abs(pair_mixture_entropy(v, w) - oracle), 1e-10, at("pair", i));
    }
    return t.done();
}

SuiteResult sandwich() {
    Tally t("entropy_sandwich");
    for (int k = 0; k <= 100; ++k) {
        const double x = k / 100.0;
        const auto b = entropy_sandwich(x);
        t.check(b.lower - b.mid, 1e-12, at("lower, x*100 =", k));
        t.check(b.mid - b.upper, 1e-12, at("upper, x*100 =", k));
        // Two pure states with overlap x realize the middle term.
        const PureState v(std::vector<cd>{1, 0});
        const PureState w(std::vector<cd>{x, std::sqrt(1 - x * x)});
        const std::array<double, 2> half{0.5, 0.5};
        const std::array<DensityMatrix, 2> pure{DensityMatrix::from_pure(v), DensityMatrix::from_pure(w)};
        t.check(std::abs(von_neumann_entropy(mixture(half, pure)) - b.mid), 1e-10, at("middle, x*100 =", k));
    }
    return t.done();
}

SuiteResult bell_invariance(std::uint64_t seed, bool corrupt) {
    Tally t("bell_invariance");
    auto bell = bell_states();
    if (corrupt) {
        const double r = 1 / std::sqrt(2.0);
        bell[3] = PureState(std::vector<cd>{0, r, r, 0});
    }
    const auto flip = flip_operator();
    const std::array<double, 4> phases{1, 1, 1, -1};
    const auto alpha = adder_channel(2);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            t.check(std::abs(std::abs(inner(bell[i], bell[j])) - expected), 1e-10, at("inner product", 4 * i + j));
        }
        const auto fb = apply(flip, bell[i]);
        double phase_error = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            phase_error = std::max(phase_error, std::abs(fb[k] - phases[i] * bell[i][k]));
        }
        t.check(phase_error, 1e-10, at("flip phase", i));
        const auto p = bell[i].projector();
        t.check(max_abs_diff(apply_channel(alpha, p), p), 1e-10, at("fixed projector", i));
    }
    std::array<DensityMatrix, 4> projectors{DensityMatrix::from_pure(bell[0]), DensityMatrix::from_pure(bell[1]),
                                            DensityMatrix::from_pure(bell[2]), DensityMatrix::from_pure(bell[3])};
    for (std::uint64_t i = 0; i < 200; ++i) {
        // Random weights: the diagonal of a random state.
        const auto r = random_density(4, derive_seed(seed, 2'000'000 + i));
        std::array<double, 4> w{};
        for (std::size_t k = 0; k < 4; ++k) {
            w[k] = r.matrix()(k, k).real();
        }
        const auto rho = mixture(w, projectors);
        // A Bell-diagonal state is fixed by the permuter, and its spectrum is
        // the weight vector when the basis is orthonormal.
        const double spectrum_error = std::abs(von_neumann_entropy(rho) - shannon_entropy(w));
        t.check(std::max(max_abs_diff(apply_channel(alpha, rho).matrix(), rho.matrix()), spectrum_error), 1e-10,
                at("Bell-diagonal state", i));
    }
    return t.done();
}

SuiteResult idempotence(std::uint64_t seed) {
    Tally t("adder_idempotence");
    for (std::size_t l : {2u, 3u}) {
        const auto alpha = adder_channel(l);
        for (std::uint64_t i = 0; i < 200; ++i) {
            const auto once = apply_channel(alpha, random_density(std::size_t{1} << l, derive_seed(seed, 3'000'000 + 1000 * l + i)));
            const auto twice = apply_channel(alpha, once);
            t.check(max_abs_diff(once.matrix(), twice.matrix()), 1e-10, at("state", i));
        }
    }
    return t.done();
}

SuiteResult pinching(std::uint64_t seed) {
    Tally t("pinching_identity");
    const auto alpha = adder_channel(2);
    const auto ps = symmetric_projector();
    const auto pa = antisymmetric_projector();
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto sigma = random_density(4, derive_seed(seed, 4'000'000 + i));
        const auto pinched = ps * sigma.matrix() * ps + pa * sigma.matrix() * pa;
        t.check(max_abs_diff(apply_channel(alpha, sigma).matrix(), pinched), 1e-10, at("state", i));
    }
    return t.done();
}

SuiteResult schur_oracle() {
    Tally t("schur_oracle");
    for (std::size_t l = 1; l <= 4; ++l) {
        const double q = quantum_rate_sum(l);
        t.check(std::abs(q - (2.0 * static_cast<double>(l) - tau_entropy_oracle(l))), 1e-9, at("L =", l));
    }
    t.check(std::abs(quantum_rate_sum(3) - 4), 1e-12, "L = 3 exact value");
    t.check(std::abs(quantum_rate_sum(2) - (4 - binary_entropy(0.25))), 1e-9, "L = 2 exact value");
    return t.done();
}

SuiteResult ghz_lift_error(std::uint64_t seed) {
    Tally t("ghz_lift_error");
    const auto alpha = adder_channel(2);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto base = random_adder_code(derive_seed(seed, 5'000'000 + i), 2, 4, i % 2 == 1);
        const auto b = classical_code_performance(base);
        const auto q = error_probability(ghz_lift(base), alpha);
        const std::size_t phases = std::size_t{1} << base.n();
        double worst = 0;
        for (std::size_t m1 = 0; m1 < base.book1().size(); ++m1) {
            for (std::size_t c = 0; c < phases; ++c) {
                for (std::size_t m2 = 0; m2 < base.book2().size(); ++m2) {
                    worst = std::max(worst,
                                     std::abs(q.per_message_errors[m1 * phases + c][m2] - b.per_message_errors[m1][m2]));
                }
            }
        }
        t.check(worst, 1e-10, at("code", i));
    }
    return t.done();
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions &options) {
    return {
        measurement_entropy(options.seed),
        pair_mixture(options.seed),
        sandwich(),
        bell_invariance(options.seed, options.corrupt_psi_minus),
        idempotence(options.seed),
        pinching(options.seed),
        schur_oracle(),
        ghz_lift_error(options.seed),
    };
}

bool all_passed(const std::vector<SuiteResult> &results) {
    for (const auto &r : results) {
        if (!r.passed()) {
            return false;
        }
    }
    return true;
}

}  // namespace qadder
