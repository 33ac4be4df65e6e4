#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qadder/linalg.hpp"

namespace qadder {

/// exact: 64-bit integer binomials, L <= 64. log_space: log-gamma binomials
/// with compensated sums, any L. automatic picks exact when it can.
enum class SchurMode { automatic, exact, log_space };

/// Spin blocks of (C^2)^{(x) L}, k = 0 .. floor(L/2), k = 0 the top block.
struct SchurSpectrum {
    std::size_t senders;
    SchurMode mode;                        ///< exact or log_space, never automatic
    std::vector<std::uint64_t> d;          ///< multiplicities; exact mode only
    std::vector<double> log2_d;            ///< both modes
    std::vector<std::uint64_t> spin_dims;  ///< L - 2k + 1
    std::vector<double> p;                 ///< d_k (L - 2k + 1) / 2^L
    std::vector<double> log2_p;
};

/// Throws std::overflow_error for L > 64 in exact mode (use log_space) and
/// std::invalid_argument for L = 0.
SchurSpectrum schur_spectrum(std::size_t senders, SchurMode mode = SchurMode::automatic);

/// 2L - H(p) - sum_k p_k log2(d_k^2)
double quantum_rate_sum(std::size_t senders, SchurMode mode = SchurMode::automatic);

/// Entropy of Binomial(L, 1/2) in bits.
double classical_rate_sum(std::size_t senders, SchurMode mode = SchurMode::automatic);

/// (1/L!) sum_pi (F_pi (x) I)|Phi><Phi|(F_pi (x) I)^dagger, Phi maximally
/// entangled between L sender qubits and L reference qubits. L <= 4.
DensityMatrix tau_state(std::size_t senders);

double tau_entropy_oracle(std::size_t senders);

/// Max deviation from I / 4^L of the average, over all 4^L Pauli words on the
/// senders' halves of Phi, of the permuter output. L <= 3.
double pauli_average_deviation(std::size_t senders);

struct RateSumRow {
    std::size_t senders;
    double quantum;
    double classical;
    double asymptote;              ///< 1.5 log2 L
    std::optional<double> oracle;  ///< 2L - H(tau), L <= 4
    bool operator==(const RateSumRow &) const = default;
};

std::vector<RateSumRow> rate_sum_table(const std::vector<std::size_t> &senders);

}  // namespace qadder
