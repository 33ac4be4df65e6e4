#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qadder/channels.hpp"

namespace qadder {

using BitWord = std::vector<std::uint8_t>;  ///< entries 0 or 1
using SumWord = std::vector<std::uint8_t>;  ///< entries 0, 1 or 2
using MessagePair = std::pair<std::size_t, std::size_t>;
/// Sum word -> decoded messages. Sums missing from the table decode to "fail".
using ClassicalDecoder = std::map<SumWord, MessagePair>;

/// Componentwise integer sum. Rejects words of different length.
SumWord classical_adder_output(const BitWord &x1, const BitWord &x2);

/// Classical block code for the two-sender adder channel.
class AdderCode {
   public:
    /// Words must have length n, be binary and distinct within each book.
    /// Without a decoder the maximum-likelihood table is used: each reachable
    /// sum goes to its first preimage in (i, j) lexicographic order.
    AdderCode(std::size_t n, std::vector<BitWord> book1, std::vector<BitWord> book2,
              std::optional<ClassicalDecoder> decoder = std::nullopt);

    std::size_t n() const { return n_; }
    const std::vector<BitWord> &book1() const { return book1_; }
    const std::vector<BitWord> &book2() const { return book2_; }
    const ClassicalDecoder &decoder() const { return decoder_; }
    SumWord output(std::size_t i, std::size_t j) const { return classical_adder_output(book1_[i], book2_[j]); }
    std::pair<double, double> rates() const;

   private:
    std::size_t n_;
    std::vector<BitWord> book1_;
    std::vector<BitWord> book2_;
    ClassicalDecoder decoder_;
};

ClassicalDecoder maximum_likelihood_decoder(const std::vector<BitWord> &book1, const std::vector<BitWord> &book2);

struct ZeroErrorReport {
    bool zero_error;
    /// Two message pairs with the same channel output, when not zero-error.
    std::optional<std::pair<MessagePair, MessagePair>> collision;
};

/// Rejects codes with more than 2^20 message pairs.
ZeroErrorReport zero_error_check(const AdderCode &c);

struct CodePerformance {
    double average_error;
    double max_message_error;
    std::vector<std::vector<double>> per_message_errors;  ///< [m1][m2]
};

/// Average and maximum of a per-message error table.
CodePerformance summarize(std::vector<std::vector<double>> per_message_errors);

/// Exact error of every message pair through the noiseless classical channel.
CodePerformance classical_code_performance(const AdderCode &c, const ClassicalDecoder &decoder);
CodePerformance classical_code_performance(const AdderCode &c);

// ---------------------------------------------------------------------------
// Codes over the quantum channel

struct DecoderElement {
    ComplexMatrix effect;
    std::optional<MessagePair> message;  ///< nullopt: decoding failure
};

/// Block code with a shared resource per symbol, local encodings per message
/// and symbol, and a POVM on the n-symbol output.
class AssistedCode {
   public:
    /// encoders1[m][t] is sender 1's channel for message m at symbol t. The
    /// decoder must sum to I within 1e-9 on a space of dimension (4 r)^n <= 256.
    AssistedCode(SharedResource resource, std::size_t n, std::vector<std::vector<QuantumChannel>> encoders1,
                 std::vector<std::vector<QuantumChannel>> encoders2, std::vector<DecoderElement> decoder);

    const SharedResource &resource() const { return resource_; }
    std::size_t n() const { return n_; }
    std::size_t messages1() const { return encoders1_.size(); }
    std::size_t messages2() const { return encoders2_.size(); }
    const std::vector<std::vector<QuantumChannel>> &encoders1() const { return encoders1_; }
    const std::vector<std::vector<QuantumChannel>> &encoders2() const { return encoders2_; }
    const std::vector<DecoderElement> &decoder() const { return decoder_; }
    std::size_t block_dim() const;
    std::pair<double, double> rates() const;

   private:
    SharedResource resource_;
    std::size_t n_;
    std::vector<std::vector<QuantumChannel>> encoders1_;
    std::vector<std::vector<QuantumChannel>> encoders2_;
    std::vector<DecoderElement> decoder_;
};

/// Block output state for a message pair; `channel` acts on the two sender
/// qubits of every symbol.
DensityMatrix block_output(const AssistedCode &code, const QuantumChannel &channel, std::size_t m1, std::size_t m2);

/// 1 - Tr(W D) for every message pair, evaluated exactly.
CodePerformance error_probability(const AssistedCode &code, const QuantumChannel &channel);

/// Phi+ between the senders, four Pauli messages for sender 1, none for
/// sender 2, Bell-basis decoder.
AssistedCode dense_coding_code();

/// Uncoded transmission over the quantum channel: X^b encodings of |00>,
/// computational measurement, then the base decoder on the sum word.
AssistedCode classical_as_assisted(const AdderCode &base);

/// Projectors onto P = span{(|ab0> + |a'b'1>)/sqrt2} and N (minus sign),
/// a' = 1 - a, in the sender, sender, receiver order.
std::pair<ComplexMatrix, ComplexMatrix> ghz_phase_subspaces();

/// One GHZ per symbol. Sender 1 message m1 * 2^n + c applies Z^{c_t} X^{b_t},
/// sender 2 applies X^{b_t}. The receiver measures P/N, rotates N back onto
/// P, applies CNOTs from its qubit onto both channel qubits, reads the sum
/// and runs the base decoder. Block length n <= 2.
AssistedCode ghz_lift(const AdderCode &base);

/// Seeded small code: n in [1, max_n], books of 1..min(2^n, max_book) distinct
/// words. With `scrambled_decoder` the table maps each sum word to a random
/// message pair and leaves about one in five unmapped.
AdderCode random_adder_code(std::uint64_t seed, std::size_t max_n, std::size_t max_book, bool scrambled_decoder);

// ---------------------------------------------------------------------------
// Shared randomness

/// Sender i transmits (m_i + X_i) mod M_i with X_i uniform and known to the
/// receiver, who subtracts it after decoding.
struct SharedRandomnessCode {
    AdderCode base;
    std::size_t m1;
    std::size_t m2;
};

SharedRandomnessCode wrap_shared_randomness(const AdderCode &base);

/// Exact expectation over all (X1, X2).
CodePerformance shared_randomness_performance(const SharedRandomnessCode &c);

}  // namespace qadder
