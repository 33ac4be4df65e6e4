#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qadder/linalg.hpp"

namespace qadder {

struct EnsembleItem {
    double probability;
    std::string label;
    DensityMatrix state;
};

/// Finite ensemble of labelled states. Probabilities are nonnegative and sum
/// to 1 within 1e-9; labels are unique; all states share one dimension.
class Ensemble {
   public:
    explicit Ensemble(std::vector<EnsembleItem> items);

    const std::vector<EnsembleItem> &items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    std::size_t dim() const { return items_.front().state.dim(); }
    DensityMatrix average_state() const;

   private:
    std::vector<EnsembleItem> items_;
};

/// Probability distribution over one sender's actions.
struct ActionDistribution {
    std::vector<double> weights;
    std::vector<std::string> labels;
};

/// P x Q with a signal state W(i, j) for every action pair.
class ProductEnsemble {
   public:
    /// `signals` is row-major: signals[i * q.size() + j] = W(i, j).
    ProductEnsemble(ActionDistribution p, ActionDistribution q, std::vector<DensityMatrix> signals);

    const ActionDistribution &p() const { return p_; }
    const ActionDistribution &q() const { return q_; }
    const DensityMatrix &signal(std::size_t i, std::size_t j) const { return signals_[i * q_.weights.size() + j]; }
    std::size_t dim() const { return signals_.front().dim(); }

    /// i -> (p_i, W(i, j)) for fixed j.
    Ensemble given_sender2(std::size_t j) const;
    /// j -> (q_j, W(i, j)) for fixed i.
    Ensemble given_sender1(std::size_t i) const;
    /// (i, j) -> (p_i q_j, W(i, j)).
    Ensemble joint() const;

   private:
    ActionDistribution p_;
    ActionDistribution q_;
    std::vector<DensityMatrix> signals_;
};

/// H(sum p rho) - sum p H(rho), in bits.
double holevo(const Ensemble &e);
/// I(P x Q; W)
double joint_holevo(const ProductEnsemble &pe);
/// I(P; W | Q) = sum_j q_j I(P; W(., j))
double conditional_holevo_1(const ProductEnsemble &pe);
/// I(Q; W | P) = sum_i p_i I(Q; W(i, .))
double conditional_holevo_2(const ProductEnsemble &pe);

/// Entropy of (|v><v| + |w><w|)/2 in closed form: H((1-t)/2, (1+t)/2), t = |<v|w>|.
double pair_mixture_entropy(const PureState &v, const PureState &w);

struct SandwichBounds {
    double lower;  ///< 1 - x^2
    double mid;    ///< H((1-x)/2, (1+x)/2)
    double upper;  ///< 1 - x^2 / 2
};

/// Rejects x outside [0, 1].
SandwichBounds entropy_sandwich(double x);

struct MeasurementOutcome {
    std::size_t index;   ///< position of the POVM element
    double probability;  ///< Tr(rho (1 (x) E_i))
    DensityMatrix state; ///< sqrt(1 (x) E_i) rho sqrt(1 (x) E_i) / probability
};

/// Measures factor 2 of a d1 x d2 state with a POVM and returns the outcome
/// probabilities and post-measurement states. Outcomes with probability below
/// 1e-12 are dropped. Rejects POVMs that do not sum to I within 1e-9.
std::vector<MeasurementOutcome> measurement_decomposition(const DensityMatrix &rho,
                                                          std::span<const ComplexMatrix> povm, std::size_t d1,
                                                          std::size_t d2);

/// Random POVM with `outcomes` full-rank elements on C^dim:
/// E_i = S^{-1/2} G_i S^{-1/2}, G_i = A_i A_i^dagger, S = sum G_i.
std::vector<ComplexMatrix> random_povm(std::size_t dim, std::size_t outcomes, std::uint64_t seed);

/// H(lambda) + sum_i lambda_i H(sigma_i); never below H(rho).
double measurement_entropy_bound(std::span<const MeasurementOutcome> outcomes);

}  // namespace qadder
