#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qadder/channels.hpp"
#include "qadder/info.hpp"

namespace qadder {

/// a * R1 + b * R2 <= c
struct Constraint {
    double a;
    double b;
    double c;
    bool operator==(const Constraint &) const = default;
};

struct RatePoint {
    double r1;
    double r2;
    bool operator==(const RatePoint &) const = default;
};

/// Intersection of half-planes with the nonnegative quadrant. The quadrant
/// constraints are implicit and not listed. Must contain the origin.
class RateRegion {
   public:
    explicit RateRegion(std::vector<Constraint> constraints, std::vector<std::string> notes = {});

    const std::vector<Constraint> &constraints() const { return constraints_; }
    /// Corners, counterclockwise starting from the one nearest the origin.
    const std::vector<RatePoint> &vertices() const { return vertices_; }
    const std::vector<std::string> &notes() const { return notes_; }

    bool contains(RatePoint p, double tol = 1e-9) const;
    /// Largest c for the constraint R1 + R2 <= c implied by the vertices.
    double max_rate_sum() const;

   private:
    std::vector<Constraint> constraints_;
    std::vector<RatePoint> vertices_;
    std::vector<std::string> notes_;
};

/// R1 <= I(P;W|Q), R2 <= I(Q;W|P), R1 + R2 <= I(PxQ;W).
RateRegion pentagon(const ProductEnsemble &pe);

/// 2-D hull of every region's vertices, turned back into constraints.
RateRegion convex_hull_union(const std::vector<RateRegion> &regions);

/// classical, ghz, two_ebit_unitary or ss_maximal.
RateRegion named_region(const std::string &tag);

struct TimeSharingParams {
    double alpha;
    double beta_squared;
    double entropy;  ///< H(alpha^2, beta^2)
};

/// Rejects alpha outside [1/sqrt2, 1], allowing 1e-8 below so that an 8-digit
/// 1/sqrt2 is accepted.
TimeSharingParams time_sharing_params(double alpha);

/// R1, R2 <= 1 + h and R1 + R2 <= 3/2 + h/2. The sum bound is achievable by
/// time sharing; that it is also the converse is conjectured and the region
/// carries a note saying so.
RateRegion time_sharing_region(const TimeSharingParams &t);

extern const char *const kConjecturedConverse;

/// H(rho_p (x) rho_q / 2 + rho_q (x) rho_p / 2) - 1 + Tr(rho_p rho_q), both single-qubit.
double unassisted_upper_expr(const DensityMatrix &rho_p, const DensityMatrix &rho_q);

// ---------------------------------------------------------------------------
// Scenarios and their signal states

enum class ScenarioTag { unassisted, sender_sender, ghz, two_ebit };
enum class EncodingMode { prepare, unitary, pauli };

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
struct BlochPoint {
    double theta;
    double phi;
    bool operator==(const BlochPoint &) const = default;
};

/// [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]]
struct UnitaryAngles {
    double theta;
    double phi;
    double lambda;
    bool operator==(const UnitaryAngles &) const = default;
};

/// 0..3 for I, X, Y, Z.
struct PauliIndex {
    unsigned index;
    bool operator==(const PauliIndex &) const = default;
};

using EncodingLabel = std::variant<BlochPoint, UnitaryAngles, PauliIndex>;

PureState bloch_state(const BlochPoint &b);
ComplexMatrix unitary_from_angles(const UnitaryAngles &u);

class Scenario {
   public:
    /// Unassisted pairs only with prepare; the assisted tags only with unitary
    /// or pauli. `alpha` is used by sender_sender only.
    Scenario(ScenarioTag tag, EncodingMode mode, double alpha = 1.0);

    ScenarioTag tag() const { return tag_; }
    EncodingMode mode() const { return mode_; }
    double alpha() const { return alpha_; }
    const SharedResource &resource() const { return resource_; }
    /// Dimension of every signal state.
    std::size_t signal_dim() const { return resource_.dim(); }

   private:
    ScenarioTag tag_;
    EncodingMode mode_;
    double alpha_;
    SharedResource resource_;
};

std::string to_string(ScenarioTag tag);
std::string to_string(EncodingMode mode);

/// The vector psi with W = (|psi><psi| + |S psi><S psi|) / 2, S swapping the
/// sender qubits. Every signal in scope has this form.
PureState scenario_signal_vector(const Scenario &s, const EncodingLabel &l1, const EncodingLabel &l2);

/// Rejects labels whose kind does not match the scenario's mode.
DensityMatrix scenario_signal(const Scenario &s, const EncodingLabel &l1, const EncodingLabel &l2);

struct WeightedLabels {
    std::vector<double> weights;
    std::vector<EncodingLabel> labels;
    bool operator==(const WeightedLabels &) const = default;
};

/// Builds the product ensemble of signals for the given input distributions.
ProductEnsemble scenario_ensemble(const Scenario &s, const WeightedLabels &p, const WeightedLabels &q);

/// Joint Holevo quantity of scenario_ensemble(s, p, q), evaluated through the
/// closed-form rank-2 signal entropies.
double scenario_rate_sum(const Scenario &s, const WeightedLabels &p, const WeightedLabels &q);

// ---------------------------------------------------------------------------
// Rate-sum search

struct OptimizeOptions {
    std::size_t restarts = 20;
    std::uint64_t seed = 42;
    std::size_t budget = 20000;  ///< evaluations per restart
    std::size_t support = 0;     ///< points per sender; 0 picks the mode default
};

struct OptimizeResult {
    double best_value;
    WeightedLabels sender1;
    WeightedLabels sender2;
    ProductEnsemble best_ensemble;
    std::size_t evaluations;  ///< summed over restarts
    std::size_t best_restart;
};

/// Multi-start Nelder-Mead over input distributions for the scenario's
/// encoding mode. Restart r uses derive_seed(seed, r); restart 0 starts from
/// uniform weights. Deterministic given the options.
OptimizeResult optimize_rate_sum(const Scenario &s, const OptimizeOptions &opt);

/// Support size used when OptimizeOptions::support is 0.
std::size_t default_support(EncodingMode mode);

}  // namespace qadder
