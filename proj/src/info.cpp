#include "qadder/info.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qadder {

namespace {

constexpr double kProbabilityTol = 1e-9;
constexpr double kDropBelow = 1e-12;

void check_distribution(std::span<const double> w, const char *who) {
    if (w.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty distribution");
    }
    double total = 0;
    for (double x : w) {
        if (x < -1e-12) {
            throw std::invalid_argument(std::string(who) + ": negative probability");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > kProbabilityTol) {
        throw std::invalid_argument(std::string(who) + ": probabilities sum to " + std::to_string(total));
    }
}

void check_labels(const std::vector<std::string> &labels, const char *who) {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
        throw std::invalid_argument(std::string(who) + ": duplicate labels");
    }
}

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
    std::vector<double> w;
    std::vector<std::string> labels;
    for (const auto &it : items_) {
        w.push_back(it.probability);
        labels.push_back(it.label);
        if (it.state.dim() != items_.front().state.dim()) {
            throw std::invalid_argument("Ensemble: states differ in dimension");
        }
    }
    check_distribution(w, "Ensemble");
    check_labels(labels, "Ensemble");
}

DensityMatrix Ensemble::average_state() const {
    std::vector<double> w;
    std::vector<DensityMatrix> states;
    for (const auto &it : items_) {
        w.push_back(it.probability);
        states.push_back(it.state);
    }
    return mixture(w, states);
}

ProductEnsemble::ProductEnsemble(ActionDistribution p, ActionDistribution q, std::vector<DensityMatrix> signals)
    : p_(std::move(p)), q_(std::move(q)), signals_(std::move(signals)) {
    check_distribution(p_.weights, "ProductEnsemble (sender 1)");
    check_distribution(q_.weights, "ProductEnsemble (sender 2)");
    if (p_.labels.size() != p_.weights.size() || q_.labels.size() != q_.weights.size()) {
        throw std::invalid_argument("ProductEnsemble: one label per action required");
    }
    check_labels(p_.labels, "ProductEnsemble (sender 1)");
    check_labels(q_.labels, "ProductEnsemble (sender 2)");
    if (signals_.size() != p_.weights.size() * q_.weights.size()) {
        throw std::invalid_argument("ProductEnsemble: need one signal per action pair");
    }
    for (const auto &s : signals_) {
        if (s.dim() != signals_.front().dim()) {
            throw std::invalid_argument("ProductEnsemble: signals differ in dimension");
        }
    }
}

Ensemble ProductEnsemble::given_sender2(std::size_t j) const {
    std::vector<EnsembleItem> items;
    for (std::size_t i = 0; i < p_.weights.size(); ++i) {
        items.push_back({p_.weights[i], p_.labels[i], signal(i, j)});
    }
    return Ensemble(std::move(items));
}

Ensemble ProductEnsemble::given_sender1(std::size_t i) const {
    std::vector<EnsembleItem> items;
    for (std::size_t j = 0; j < q_.weights.size(); ++j) {
        items.push_back({q_.weights[j], q_.labels[j], signal(i, j)});
    }
    return Ensemble(std::move(items));
}

Ensemble ProductEnsemble::joint() const {
    std::vector<EnsembleItem> items;
    for (std::size_t i = 0; i < p_.weights.size(); ++i) {
        for (std::size_t j = 0; j < q_.weights.size(); ++j) {
            items.push_back({p_.weights[i] * q_.weights[j], p_.labels[i] + "|" + q_.labels[j], signal(i, j)});
        }
    }
    return Ensemble(std::move(items));
}

double holevo(const Ensemble &e) {
    double average_entropy = 0;
    for (const auto &it : e.items()) {
        if (it.probability > 0) {
            average_entropy += it.probability * von_neumann_entropy(it.state);
        }
    }
    const double chi = von_neumann_entropy(e.average_state()) - average_entropy;
    return std::max(chi, 0.0);
}

double joint_holevo(const ProductEnsemble &pe) {
    return holevo(pe.joint());
}

double conditional_holevo_1(const ProductEnsemble &pe) {
    double acc = 0;
    for (std::size_t j = 0; j < pe.q().weights.size(); ++j) {
        if (pe.q().weights[j] > 0) {
            acc += pe.q().weights[j] * holevo(pe.given_sender2(j));
        }
    }
    return acc;
}

double conditional_holevo_2(const ProductEnsemble &pe) {
    double acc = 0;
    for (std::size_t i = 0; i < pe.p().weights.size(); ++i) {
        if (pe.p().weights[i] > 0) {
            acc += pe.p().weights[i] * holevo(pe.given_sender1(i));
        }
    }
    return acc;
}

double pair_mixture_entropy(const PureState &v, const PureState &w) {
    const double t = std::min(1.0, std::abs(inner(v, w)));
    return binary_entropy((1.0 - t) / 2.0);
}

SandwichBounds entropy_sandwich(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("entropy_sandwich: x must lie in [0, 1]");
    }
    return {1.0 - x * x, binary_entropy((1.0 - x) / 2.0), 1.0 - 0.5 * x * x};
}

std::vector<MeasurementOutcome> measurement_decomposition(const DensityMatrix &rho,
                                                          std::span<const ComplexMatrix> povm, std::size_t d1,
                                                          std::size_t d2) {
    if (d1 * d2 != rho.dim()) {
        throw std::invalid_argument("measurement_decomposition: d1 * d2 does not match the state");
    }
    if (povm.empty()) {
        throw std::invalid_argument("measurement_decomposition: empty POVM");
    }
    ComplexMatrix total(d2, d2);
    for (const auto &e : povm) {
        if (e.rows() != d2 || e.cols() != d2) {
            throw std::invalid_argument("measurement_decomposition: POVM element has wrong shape");
        }
        total += e;
    }
    const double incompleteness = max_abs_diff(total, ComplexMatrix::identity(d2));
    if (incompleteness > 1e-9) {
        throw std::invalid_argument("measurement_decomposition: POVM elements sum to I only within " +
                                    std::to_string(incompleteness));
    }

    const auto id1 = ComplexMatrix::identity(d1);
    std::vector<MeasurementOutcome> out;
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const auto root = kron(id1, psd_sqrt(povm[i]));
        ComplexMatrix post = root * rho.matrix() * root;
        const double lambda = post.trace().real();
        if (lambda < kDropBelow) {
            continue;
        }
        post *= cd{1.0 / lambda, 0};
        out.push_back({i, lambda, DensityMatrix::unchecked(std::move(post))});
    }
    return out;
}

std::vector<ComplexMatrix> random_povm(std::size_t dim, std::size_t outcomes, std::uint64_t seed) {
    if (outcomes == 0) {
        throw std::invalid_argument("random_povm: need at least one outcome");
    }
    std::vector<ComplexMatrix> g;
    ComplexMatrix total(dim, dim);
    for (std::size_t i = 0; i < outcomes; ++i) {
        // Unnormalized Ginibre product via random_density: only the shape matters.
        g.push_back(random_density(dim, derive_seed(seed, i)).matrix());
        total += g.back();
    }
    auto eig = hermitian_eigensystem(total);
    ComplexMatrix scaled = eig.vectors;
    for (std::size_t k = 0; k < dim; ++k) {
        const double inv_root = 1.0 / std::sqrt(eig.values[k]);
        for (std::size_t r = 0; r < dim; ++r) {
            scaled(r, k) *= inv_root;
        }
    }
    const auto inv_sqrt = multiply_adjoint(scaled, eig.vectors);
    std::vector<ComplexMatrix> povm;
    for (const auto &gi : g) {
        ComplexMatrix e = inv_sqrt * gi * inv_sqrt;
        for (std::size_t r = 0; r < dim; ++r) {
            e(r, r) = e(r, r).real();
            for (std::size_t c = r + 1; c < dim; ++c) {
                e(c, r) = std::conj(e(r, c));
            }
        }
        povm.push_back(std::move(e));
    }
    return povm;
}

double measurement_entropy_bound(std::span<const MeasurementOutcome> outcomes) {
    std::vector<double> lambda;
    double total = 0;
    double conditional = 0;
    for (const auto &o : outcomes) {
        lambda.push_back(o.probability);
        total += o.probability;
        conditional += o.probability * von_neumann_entropy(o.state);
    }
    for (double &l : lambda) {
        l /= total;
    }
    return shannon_entropy(lambda) + conditional;
}

}  // namespace qadder
