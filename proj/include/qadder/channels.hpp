#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qadder/linalg.hpp"

namespace qadder {

/// Completely positive trace-preserving map given by Kraus operators
/// (out_dim x in_dim each) with sum K^dagger K = I.
class QuantumChannel {
   public:
    /// Throws std::invalid_argument if shapes disagree or trace preservation
    /// fails by more than 1e-9.
    explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

    static QuantumChannel unitary(const ComplexMatrix &u);
    static QuantumChannel identity(std::size_t dim);

    std::size_t in_dim() const { return in_dim_; }
    std::size_t out_dim() const { return out_dim_; }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }

   private:
    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<ComplexMatrix> kraus_;
};

/// max |sum K^dagger K - I|
double trace_preservation_error(const std::vector<ComplexMatrix> &kraus);

/// Kraus products of a on the left factor and b on the right factor.
QuantumChannel tensor(const QuantumChannel &a, const QuantumChannel &b);

DensityMatrix apply_channel(const QuantumChannel &c, const DensityMatrix &rho);
/// Same map on an arbitrary operator (used for projectors and POVM elements).
ComplexMatrix apply_channel(const QuantumChannel &c, const ComplexMatrix &op);

/// 0-based permutation of qubit positions. Output slot i carries input qubit
/// p[i], so |x_0 ... x_{L-1}> maps to |x_{p[0]} ... x_{p[L-1]}>.
using Permutation = std::vector<std::size_t>;

struct PermutationOperator {
    Permutation permutation;
    ComplexMatrix matrix;  ///< 2^L x 2^L, big-endian qubit order
};

/// Rejects non-bijections and L > 8.
PermutationOperator permutation_operator(const Permutation &p, std::size_t qubits);
/// All L! permutations of {0..L-1} in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t qubits);

/// The random permuter on L qubits: Kraus set {F_p / sqrt(L!)}. L <= 4.
QuantumChannel adder_channel(std::size_t senders);

/// Swap of two qubits.
ComplexMatrix flip_operator();
/// Projector onto span{Phi+, Phi-, Psi+}.
ComplexMatrix symmetric_projector();
/// Projector onto Psi-.
ComplexMatrix antisymmetric_projector();

enum class Bell { phi_plus = 0, phi_minus = 1, psi_plus = 2, psi_minus = 3 };

/// Phi+, Phi-, Psi+, Psi- in that order; Psi- = (|01> - |10>)/sqrt 2.
std::array<PureState, 4> bell_states();

/// I, X, Y, Z.
std::array<ComplexMatrix, 4> pauli_matrices();
std::array<QuantumChannel, 4> pauli_channels();

/// Pure state shared by sender 1, sender 2 and the receiver, in that qubit
/// order (big-endian). The receiver register has dimension 1, 2 or 4.
class SharedResource {
   public:
    SharedResource(PureState state, std::size_t receiver_dim);

    const PureState &state() const { return state_; }
    std::size_t receiver_dim() const { return receiver_dim_; }
    std::size_t dim() const { return 4 * receiver_dim_; }
    std::array<std::size_t, 3> factor_dims() const { return {2, 2, receiver_dim_}; }

   private:
    PureState state_;
    std::size_t receiver_dim_;
};

/// |00>, nothing shared.
SharedResource product_resource();
/// (|000> + |111>)/sqrt 2, receiver holds the third qubit.
SharedResource ghz_state();
/// (1/2) sum_i Bell_i (x) |i>, receiver dim 4.
SharedResource max_entangled_resource();
/// alpha|00> + beta|11> between the senders, 1/sqrt2 <= alpha <= 1 (1e-8 slack below).
SharedResource partial_entangled_resource(double alpha);

/// (f (x) g (x) id)(|iota><iota|), before the channel acts.
DensityMatrix encoded_state(const QuantumChannel &f, const QuantumChannel &g, const SharedResource &iota);
/// The assisted channel output: the encoded state pushed through the permuter
/// on the two sender qubits, identity on the receiver register.
DensityMatrix assisted_output(const QuantumChannel &f, const QuantumChannel &g, const SharedResource &iota);

/// `channel` on the two sender qubits, identity on a receiver register of the given dimension.
QuantumChannel with_receiver(const QuantumChannel &channel, std::size_t receiver_dim);

}  // namespace qadder
