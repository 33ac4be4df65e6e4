// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qadder/capacity.hpp"
#include "qadder/channels.hpp"
#include "qadder/cli.hpp"
#include "qadder/codes.hpp"
#include "qadder/documents.hpp"
#include "qadder/info.hpp"
#include "qadder/schur.hpp"

using namespace qadder;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OptimizeDocument cli_optimize(const std::vector<std::string> &args, int &status) {
    std::ostringstream out;
    std::ostringstream err;
    status = cli::run(args, out, err);
    if (status != 0) {
        return {};
    }
    return parse_optimize_document(out.str());
}

DensityMatrix bloch_density(double x, double y, double z) {
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (1 + z);
    m(1, 1) = 0.5 * (1 - z);
    m(0, 1) = cd{0.5 * x, -0.5 * y};
    m(1, 0) = cd{0.5 * x, 0.5 * y};
    return DensityMatrix(m);
}

Outcome unassisted_sum_capacity() {
    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    const auto d = cli_optimize(
        {"optimize", "--scenario", "unassisted", "--restarts", "20", "--budget", "20000", "--seed", "42"}, status);
    const double elapsed = seconds_since(t0);

    const Scenario s(ScenarioTag::unassisted, EncodingMode::prepare);
    const WeightedLabels uniform{{0.5, 0.5}, {BlochPoint{0, 0}, BlochPoint{std::numbers::pi, 0}}};
    const double classical = joint_holevo(scenario_ensemble(s, uniform, uniform));

    const bool ok = status == 0 && d.best_value >= 1.4990 && d.best_value <= 1.5 + 1e-9 &&
                    std::abs(classical - 1.5) <= 1e-9 && elapsed < 60;
    return {ok, fmt("best %.10f, classical-uniform %.12f, %.2f s", d.best_value, classical, elapsed)};
}

Outcome single_qubit_upper_expression() {
    const double at_zero = unassisted_upper_expr(bloch_density(0, 0, 0), bloch_density(0, 0, 0));
    double grid_max = -1;
    double arg_max = -1;
    for (int k = 0; k <= 50; ++k) {
        const double y = k / 50.0;
        const double v = unassisted_upper_expr(bloch_density(0, 0, y), bloch_density(0, 0, y));
        if (v > grid_max) {
            grid_max = v;
            arg_max = y;
        }
    }
    double random_max = -1;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto p = random_density(2, derive_seed(606, 2 * i));
        const auto q = random_density(2, derive_seed(606, 2 * i + 1));
        random_max = std::max(random_max, unassisted_upper_expr(p, q));
    }
    const bool ok = std::abs(at_zero - 1.5) <= 1e-9 && arg_max == 0 && grid_max <= at_zero && random_max <= 1.5 + 1e-9;
    return {ok, fmt("grid max %.12f at y = %.2f, random max %.12f", grid_max, arg_max, random_max)};
}

Outcome two_ebit_pauli() {
    const Scenario s(ScenarioTag::two_ebit, EncodingMode::pauli);
    const WeightedLabels paulis{{0.25, 0.25, 0.25, 0.25}, {PauliIndex{0}, PauliIndex{1}, PauliIndex{2}, PauliIndex{3}}};
    const auto ensemble = scenario_ensemble(s, paulis, paulis);
    const double chi = joint_holevo(ensemble);
    const double expected = 4 - binary_entropy(0.25);
    const double schur = quantum_rate_sum(2);
    const bool ok = ensemble.joint().size() == 16 && std::abs(chi - expected) <= 1e-9 &&
                    std::abs(chi - schur) <= 1e-9 && std::abs(chi - 3.188722) <= 1e-6;
    return {ok, fmt("joint Holevo %.12f, 4 - H(1/4) %.12f, Schur L=2 %.12f", chi, expected, schur)};
}

Outcome ghz_bound_and_code() {
    int status = 0;
    const auto d = cli_optimize({"optimize", "--scenario", "ghz", "--mode", "unitary", "--seed", "42"}, status);
    const bool bound = status == 0 && d.best_value <= 2.5 + 1e-6;

    const AdderCode base(2, {{0, 0}, {1, 1}}, {{0, 0}, {0, 1}, {1, 0}});
    const auto lifted = ghz_lift(base);
    const auto rates = lifted.rates();
    const auto perf = error_probability(lifted, adder_channel(2));
    const bool code = std::abs(rates.first - 1.5) <= 1e-12 && std::abs(rates.second - 0.79248) <= 1e-5 &&
                      perf.max_message_error <= 1e-12;

    double worst = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto b = random_adder_code(derive_seed(404, i), 2, 4, i % 2 == 0);
        const auto be = classical_code_performance(b);
        const auto qe = error_probability(ghz_lift(b), adder_channel(2));
        const std::size_t phases = std::size_t{1} << b.n();
        for (std::size_t m1 = 0; m1 < b.book1().size(); ++m1) {
            for (std::size_t c = 0; c < phases; ++c) {
                for (std::size_t m2 = 0; m2 < b.book2().size(); ++m2) {
                    worst = std::max(worst, std::abs(qe.per_message_errors[m1 * phases + c][m2] -
                                                     be.per_message_errors[m1][m2]));
                }
            }
        }
    }
    const bool random = worst <= 1e-10;
    std::string detail = fmt("optimizer %.10f, lifted rates (%.6f, %.6f)", d.best_value, rates.first, rates.second);
    detail += fmt(", error %.2e, worst random-code gap %.2e", perf.max_message_error, worst);
    return {bound && code && random, detail};
}

Outcome dense_coding() {
    const auto code = dense_coding_code();
    const auto perf = error_probability(code, adder_channel(2));
    const bool ok = code.messages1() * code.messages2() == 4 && perf.max_message_error <= 1e-12;
    return {ok, fmt("4 messages, max error %.2e", perf.max_message_error)};
}

Outcome measurement_entropy() {
    std::size_t checked = 0;
    std::size_t failed = 0;
    double worst = -1;
    for (std::size_t d2 : {2u, 4u}) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const std::uint64_t s = derive_seed(707 + d2, i);
            const auto rho = random_density(2 * d2, s);
            const auto povm = random_povm(d2, 2 + i % 3, derive_seed(s, 9));
            const auto out = measurement_decomposition(rho, povm, 2, d2);
            const double gap = von_neumann_entropy(rho) - measurement_entropy_bound(out);
            worst = std::max(worst, gap);
            failed += gap > 1e-10 ? 1 : 0;
            ++checked;
        }
    }
    return {failed == 0, fmt("%.0f instances, %.0f failures, largest H(rho) - bound %.3e", static_cast<double>(checked),
                             static_cast<double>(failed), worst)};
}

Outcome pair_entropy_and_sandwich() {
    double worst = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const std::size_t dim = 2 + 2 * (i % 2);
        const auto v = random_pure_state(dim, derive_seed(808, 2 * i));
        const auto w = random_pure_state(dim, derive_seed(808, 2 * i + 1));
        const std::array<double, 2> half{0.5, 0.5};
        const std::array<DensityMatrix, 2> pure{DensityMatrix::from_pure(v), DensityMatrix::from_pure(w)};
        const double oracle = entropy_of_spectrum(hermitian_eigenvalues(mixture(half, pure).matrix()));
        worst = std::max(worst, std::abs(pair_mixture_entropy(v, w) - oracle));
    }
    bool ordered = true;
    for (int k = 0; k <= 100; ++k) {
        const auto b = entropy_sandwich(k / 100.0);
        ordered = ordered && b.lower <= b.mid + 1e-15 && b.mid <= b.upper + 1e-15;
    }
    return {worst <= 1e-10 && ordered,
            fmt("500 pairs, worst gap %.2e; sandwich ", worst) + (ordered ? "holds" : "FAILS") + " on 101 points"};
}

Outcome schur_oracle() {
    double worst = 0;
    for (std::size_t l = 1; l <= 4; ++l) {
        worst = std::max(worst, std::abs(quantum_rate_sum(l) - (2.0 * static_cast<double>(l) - tau_entropy_oracle(l))));
    }
    const double three = quantum_rate_sum(3);
    const double two = quantum_rate_sum(2);
    const double four = quantum_rate_sum(4);
    const bool ok = worst <= 1e-9 && std::abs(three - 4) <= 1e-12 && std::abs(two - 3.188722) <= 1e-6;
    return {ok, fmt("oracle gap %.2e, L=2 %.9f, L=3 %.15f", worst, two, three) + fmt(", L=4 %.9f", four)};
}

Outcome asymptotics() {
    const double dq = quantum_rate_sum(1024, SchurMode::log_space) - quantum_rate_sum(512, SchurMode::log_space);
    const double dc = classical_rate_sum(1024, SchurMode::log_space) - classical_rate_sum(512, SchurMode::log_space);
    const bool ok = std::abs(dq - 1.5) <= 0.1 && std::abs(dc - 0.5) <= 0.05;
    return {ok, fmt("quantum doubling step %.6f, classical doubling step %.6f", dq, dc)};
}

Outcome shared_randomness() {
    const AdderCode biased(1, {{0}, {1}}, {{0}, {1}}, ClassicalDecoder{{{0}, {0, 0}}, {{1}, {0, 1}}, {{2}, {1, 1}}});
    const auto base = classical_code_performance(biased);
    const auto wrapped = shared_randomness_performance(wrap_shared_randomness(biased));
    bool quarter = base.per_message_errors == std::vector<std::vector<double>>{{0, 0}, {1, 0}};
    for (const auto &row : wrapped.per_message_errors) {
        for (double e : row) {
            quarter = quarter && std::abs(e - 0.25) <= 1e-12;
        }
    }
    double worst = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        const auto c = random_adder_code(derive_seed(1010, i), 3, 6, true);
        const auto b = classical_code_performance(c);
        const auto w = shared_randomness_performance(wrap_shared_randomness(c));
        worst = std::max(worst, std::abs(w.max_message_error - b.average_error));
    }
    return {quarter && worst <= 1e-12,
            fmt("biased code spread to %.6f everywhere, worst max-vs-average gap %.2e", wrapped.max_message_error, worst)};
}

Outcome channel_identities() {
    const auto alpha = adder_channel(2);
    const auto ps = symmetric_projector();
    const auto pa = antisymmetric_projector();
    const auto bell = bell_states();
    const std::array<DensityMatrix, 4> bell_rho{DensityMatrix::from_pure(bell[0]), DensityMatrix::from_pure(bell[1]),
                                                DensityMatrix::from_pure(bell[2]), DensityMatrix::from_pure(bell[3])};
    double idem = 0;
    double bell_gap = 0;
    double pinch = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto sigma = random_density(4, derive_seed(1111, i));
        const auto once = apply_channel(alpha, sigma);
        idem = std::max(idem, max_abs_diff(apply_channel(alpha, once).matrix(), once.matrix()));
        pinch = std::max(pinch, max_abs_diff(once.matrix(), ps * sigma.matrix() * ps + pa * sigma.matrix() * pa));

        std::array<double, 4> w{};
        for (std::size_t k = 0; k < 4; ++k) {
            w[k] = sigma.matrix()(k, k).real();
        }
        const auto diag = mixture(w, bell_rho);
        bell_gap = std::max(bell_gap, max_abs_diff(apply_channel(alpha, diag).matrix(), diag.matrix()));
    }
    for (const auto &b : bell_rho) {
        bell_gap = std::max(bell_gap, max_abs_diff(apply_channel(alpha, b).matrix(), b.matrix()));
    }
    const bool ok = idem <= 1e-10 && bell_gap <= 1e-10 && pinch <= 1e-10;
    return {ok, fmt("idempotence %.2e, Bell invariance %.2e, pinching %.2e", idem, bell_gap, pinch)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"unassisted sum capacity", unassisted_sum_capacity},
        {"single-qubit upper expression maximizer", single_qubit_upper_expression},
        {"two-ebit Pauli achievability", two_ebit_pauli},
        {"GHZ sum bound and lifted code", ghz_bound_and_code},
        {"dense coding through the permuter", dense_coding},
        {"measurement entropy bound suite", measurement_entropy},
        {"pair-mixture entropy and sandwich suites", pair_entropy_and_sandwich},
        {"Schur formula against the tau oracle", schur_oracle},
        {"rate-sum asymptotics", asymptotics},
        {"shared-randomness wrapper", shared_randomness},
        {"channel identities", channel_identities},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.ok ? 0 : 1;
        std::printf("%s criterion %2zu  %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
