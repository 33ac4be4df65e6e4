#include "qadder/codes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace qadder {

namespace {

constexpr std::size_t kMaxPairs = std::size_t{1} << 20;
constexpr std::size_t kMaxBlockDim = 256;

void check_book(const std::vector<BitWord> &book, std::size_t n, const char *name) {
    if (book.empty()) {
        throw std::invalid_argument(std::string("AdderCode: ") + name + " is empty");
    }
    std::set<BitWord> seen;
    for (const auto &w : book) {
        if (w.size() != n) {
            throw std::invalid_argument(std::string("AdderCode: word in ") + name + " has length " +
                                        std::to_string(w.size()) + ", expected " + std::to_string(n));
        }
        if (std::any_of(w.begin(), w.end(), [](std::uint8_t b) { return b > 1; })) {
            throw std::invalid_argument(std::string("AdderCode: non-binary word in ") + name);
        }
        if (!seen.insert(w).second) {
            throw std::invalid_argument(std::string("AdderCode: repeated word in ") + name);
        }
    }
}

double log2_size(std::size_t m) {
    return std::log2(static_cast<double>(m));
}

// Sums, over every length-n sequence of per-symbol outcomes, the Kronecker
// product of their effects into one POVM element per decoded message.
template <typename Outcome>
std::vector<DecoderElement> block_povm(
    const std::vector<std::pair<ComplexMatrix, Outcome>> &symbol, std::size_t n,
    const std::function<std::optional<MessagePair>(const std::vector<Outcome> &)> &decode) {
    std::map<std::optional<MessagePair>, ComplexMatrix> grouped;
    std::vector<std::size_t> digits(n, 0);
    for (;;) {
        ComplexMatrix effect = symbol[digits[0]].first;
        std::vector<Outcome> outcomes{symbol[digits[0]].second};
        for (std::size_t t = 1; t < n; ++t) {
            effect = kron(effect, symbol[digits[t]].first);
            outcomes.push_back(symbol[digits[t]].second);
        }
        const auto message = decode(outcomes);
        auto it = grouped.find(message);
        if (it == grouped.end()) {
            grouped.emplace(message, std::move(effect));
        } else {
            it->second += effect;
        }
        std::size_t t = n;
        while (t > 0 && ++digits[t - 1] == symbol.size()) {
            digits[--t] = 0;
        }
        if (t == 0) {
            break;
        }
    }
    std::vector<DecoderElement> out;
    for (auto &[message, effect] : grouped) {
        out.push_back({std::move(effect), message});
    }
    return out;
}

std::optional<MessagePair> lookup(const ClassicalDecoder &decoder, const SumWord &y) {
    const auto it = decoder.find(y);
    if (it == decoder.end()) {
        return std::nullopt;
    }
    return it->second;
}

ComplexMatrix bit_flip(std::uint8_t b) {
    return b ? pauli_matrices()[1] : ComplexMatrix::identity(2);
}

}  // namespace

SumWord classical_adder_output(const BitWord &x1, const BitWord &x2) {
    if (x1.size() != x2.size()) {
        throw std::invalid_argument("classical_adder_output: words differ in length");
    }
    SumWord y(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) {
        y[i] = static_cast<std::uint8_t>(x1[i] + x2[i]);
    }
    return y;
}

ClassicalDecoder maximum_likelihood_decoder(const std::vector<BitWord> &book1, const std::vector<BitWord> &book2) {
    ClassicalDecoder d;
    for (std::size_t i = 0; i < book1.size(); ++i) {
        for (std::size_t j = 0; j < book2.size(); ++j) {
            d.emplace(classical_adder_output(book1[i], book2[j]), MessagePair{i, j});
        }
    }
    return d;
}

AdderCode::AdderCode(std::size_t n, std::vector<BitWord> book1, std::vector<BitWord> book2,
                     std::optional<ClassicalDecoder> decoder)
    : n_(n), book1_(std::move(book1)), book2_(std::move(book2)) {
    if (n_ == 0) {
        throw std::invalid_argument("AdderCode: block length must be at least 1");
    }
    check_book(book1_, n_, "book1");
    check_book(book2_, n_, "book2");
    if (decoder) {
        for (const auto &[y, m] : *decoder) {
            if (y.size() != n_ || std::any_of(y.begin(), y.end(), [](std::uint8_t v) { return v > 2; })) {
                throw std::invalid_argument("AdderCode: decoder key is not a sum word of length " +
                                            std::to_string(n_));
            }
            if (m.first >= book1_.size() || m.second >= book2_.size()) {
                throw std::invalid_argument("AdderCode: decoder maps to a message outside the books");
            }
        }
        decoder_ = std::move(*decoder);
    } else {
        decoder_ = maximum_likelihood_decoder(book1_, book2_);
    }
}

std::pair<double, double> AdderCode::rates() const {
    const double n = static_cast<double>(n_);
    return {log2_size(book1_.size()) / n, log2_size(book2_.size()) / n};
}

ZeroErrorReport zero_error_check(const AdderCode &c) {
    if (c.book1().size() * c.book2().size() > kMaxPairs) {
        throw std::invalid_argument("zero_error_check: more than 2^20 message pairs");
    }
    std::map<SumWord, MessagePair> first;
    for (std::size_t i = 0; i < c.book1().size(); ++i) {
        for (std::size_t j = 0; j < c.book2().size(); ++j) {
            const auto [it, fresh] = first.emplace(c.output(i, j), MessagePair{i, j});
            if (!fresh) {
                return {false, std::pair{it->second, MessagePair{i, j}}};
            }
        }
    }
    return {true, std::nullopt};
}

CodePerformance summarize(std::vector<std::vector<double>> per_message_errors) {
    double total = 0;
    double worst = 0;
    std::size_t count = 0;
    for (const auto &row : per_message_errors) {
        for (double e : row) {
            total += e;
            worst = std::max(worst, e);
            ++count;
        }
    }
    if (count == 0) {
        throw std::invalid_argument("summarize: empty error table");
    }
    return {total / static_cast<double>(count), worst, std::move(per_message_errors)};
}

CodePerformance classical_code_performance(const AdderCode &c, const ClassicalDecoder &decoder) {
    std::vector<std::vector<double>> errors(c.book1().size(), std::vector<double>(c.book2().size()));
    for (std::size_t i = 0; i < c.book1().size(); ++i) {
        for (std::size_t j = 0; j < c.book2().size(); ++j) {
            const auto decoded = lookup(decoder, c.output(i, j));
            errors[i][j] = decoded == MessagePair{i, j} ? 0.0 : 1.0;
        }
    }
    return summarize(std::move(errors));
}

CodePerformance classical_code_performance(const AdderCode &c) {
    return classical_code_performance(c, c.decoder());
}

// ---------------------------------------------------------------------------

AssistedCode::AssistedCode(SharedResource resource, std::size_t n, std::vector<std::vector<QuantumChannel>> encoders1,
                           std::vector<std::vector<QuantumChannel>> encoders2, std::vector<DecoderElement> decoder)
    : resource_(std::move(resource)),
      n_(n),
      encoders1_(std::move(encoders1)),
      encoders2_(std::move(encoders2)),
      decoder_(std::move(decoder)) {
    if (n_ == 0) {
        throw std::invalid_argument("AssistedCode: block length must be at least 1");
    }
    if (encoders1_.empty() || encoders2_.empty()) {
        throw std::invalid_argument("AssistedCode: each sender needs at least one message");
    }
    for (const auto *book : {&encoders1_, &encoders2_}) {
        for (const auto &per_symbol : *book) {
            if (per_symbol.size() != n_) {
                throw std::invalid_argument("AssistedCode: need one encoding per block symbol");
            }
            for (const auto &c : per_symbol) {
                if (c.in_dim() != 2 || c.out_dim() != 2) {
                    throw std::invalid_argument("AssistedCode: encodings must be single-qubit channels");
                }
            }
        }
    }
    double dim = 1;
    for (std::size_t t = 0; t < n_; ++t) {
        dim *= static_cast<double>(resource_.dim());
    }
    if (dim > kMaxBlockDim) {
        throw std::invalid_argument("AssistedCode: block dimension exceeds 256");
    }
    const std::size_t d = block_dim();
    ComplexMatrix total(d, d);
    for (const auto &e : decoder_) {
        if (e.effect.rows() != d || e.effect.cols() != d) {
            throw std::invalid_argument("AssistedCode: POVM element has wrong dimension");
        }
        if (e.message && (e.message->first >= messages1() || e.message->second >= messages2())) {
            throw std::invalid_argument("AssistedCode: POVM element labelled with an unknown message");
        }
        total += e.effect;
    }
    const double gap = max_abs_diff(total, ComplexMatrix::identity(d));
    if (gap > 1e-9) {
        throw std::invalid_argument("AssistedCode: POVM elements sum to I only within " + std::to_string(gap));
    }
}

std::size_t AssistedCode::block_dim() const {
    std::size_t d = 1;
    for (std::size_t t = 0; t < n_; ++t) {
        d *= resource_.dim();
    }
    return d;
}

std::pair<double, double> AssistedCode::rates() const {
    const double n = static_cast<double>(n_);
    return {log2_size(messages1()) / n, log2_size(messages2()) / n};
}

DensityMatrix block_output(const AssistedCode &code, const QuantumChannel &channel, std::size_t m1, std::size_t m2) {
    if (channel.in_dim() != 4 || channel.out_dim() != 4) {
        throw std::invalid_argument("block_output: channel must act on the two sender qubits");
    }
    const auto through = with_receiver(channel, code.resource().receiver_dim());
    std::optional<DensityMatrix> w;
    for (std::size_t t = 0; t < code.n(); ++t) {
        auto symbol = apply_channel(
            through, encoded_state(code.encoders1()[m1][t], code.encoders2()[m2][t], code.resource()));
        w = w ? kron(*w, symbol) : std::move(symbol);
    }
    return *w;
}

CodePerformance error_probability(const AssistedCode &code, const QuantumChannel &channel) {
    std::vector<std::vector<double>> errors(code.messages1(), std::vector<double>(code.messages2()));
    for (std::size_t m1 = 0; m1 < code.messages1(); ++m1) {
        for (std::size_t m2 = 0; m2 < code.messages2(); ++m2) {
            const auto w = block_output(code, channel, m1, m2);
            double success = 0;
            for (const auto &e : code.decoder()) {
                if (e.message != MessagePair{m1, m2}) {
                    continue;
                }
                // Tr(W E) = sum_ij W_ij E_ji
                const std::size_t d = w.dim();
                for (std::size_t i = 0; i < d; ++i) {
                    for (std::size_t j = 0; j < d; ++j) {
                        success += (w.matrix()(i, j) * e.effect(j, i)).real();
                    }
                }
            }
            errors[m1][m2] = std::clamp(1.0 - success, 0.0, 1.0);
        }
    }
    return summarize(std::move(errors));
}

AssistedCode dense_coding_code() {
    const auto bell = bell_states();
    const auto paulis = pauli_matrices();
    const SharedResource phi(bell[0], 1);

    std::vector<std::vector<QuantumChannel>> enc1;
    std::vector<DecoderElement> decoder;
    for (std::size_t m = 0; m < 4; ++m) {
        enc1.push_back({QuantumChannel::unitary(paulis[m])});
        const auto sent = apply(kron(paulis[m], ComplexMatrix::identity(2)), bell[0]);
        for (const auto &b : bell) {
            if (std::abs(inner(b, sent)) > 0.5) {
                decoder.push_back({b.projector(), MessagePair{m, 0}});
            }
        }
    }
    return AssistedCode(phi, 1, std::move(enc1), {{QuantumChannel::identity(2)}}, std::move(decoder));
}

AssistedCode classical_as_assisted(const AdderCode &base) {
    const std::size_t n = base.n();
    auto encoders = [&](const std::vector<BitWord> &book) {
        std::vector<std::vector<QuantumChannel>> out;
        for (const auto &w : book) {
            std::vector<QuantumChannel> per_symbol;
            for (std::uint8_t b : w) {
                per_symbol.push_back(QuantumChannel::unitary(bit_flip(b)));
            }
            out.push_back(std::move(per_symbol));
        }
        return out;
    };
    std::vector<std::pair<ComplexMatrix, std::uint8_t>> symbol;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            symbol.emplace_back(PureState::basis(4, 2 * a + b).projector(), static_cast<std::uint8_t>(a + b));
        }
    }
    const std::function<std::optional<MessagePair>(const std::vector<std::uint8_t> &)> decode =
        [&](const std::vector<std::uint8_t> &y) { return lookup(base.decoder(), y); };
    if (n > 4) {
        throw std::invalid_argument("classical_as_assisted: block length is capped at 4");
    }
    return AssistedCode(product_resource(), n, encoders(base.book1()), encoders(base.book2()),
                        block_povm(symbol, n, decode));
}

std::pair<ComplexMatrix, ComplexMatrix> ghz_phase_subspaces() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix p(8, 8);
    ComplexMatrix m(8, 8);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            std::vector<cd> plus(8);
            std::vector<cd> minus(8);
            plus[a * 4 + b * 2] = r;
            plus[(1 - a) * 4 + (1 - b) * 2 + 1] = r;
            minus[a * 4 + b * 2] = r;
            minus[(1 - a) * 4 + (1 - b) * 2 + 1] = -r;
            p += PureState(plus).projector();
            m += PureState(minus).projector();
        }
    }
    return {p, m};
}

AssistedCode ghz_lift(const AdderCode &base) {
    const std::size_t n = base.n();
    if (n > 2) {
        throw std::invalid_argument("ghz_lift: block length is capped at 2 (output dimension 8^n <= 256)");
    }
    const std::size_t phases = std::size_t{1} << n;
    const auto paulis = pauli_matrices();

    std::vector<std::vector<QuantumChannel>> enc1;
    for (const auto &w : base.book1()) {
        for (std::size_t c = 0; c < phases; ++c) {
            std::vector<QuantumChannel> per_symbol;
            for (std::size_t t = 0; t < n; ++t) {
                const bool phase = (c >> (n - 1 - t)) & 1U;
                const ComplexMatrix flip = bit_flip(w[t]);
                per_symbol.push_back(QuantumChannel::unitary(phase ? paulis[3] * flip : flip));
            }
            enc1.push_back(std::move(per_symbol));
        }
    }
    std::vector<std::vector<QuantumChannel>> enc2;
    for (const auto &w : base.book2()) {
        std::vector<QuantumChannel> per_symbol;
        for (std::uint8_t b : w) {
            per_symbol.push_back(QuantumChannel::unitary(bit_flip(b)));
        }
        enc2.push_back(std::move(per_symbol));
    }

    // Receiver per symbol: P/N projection, Z on qubit 1 for N, CNOTs from the
    // receiver qubit onto both channel qubits, computational readout.
    const auto [proj_p, proj_n] = ghz_phase_subspaces();
    const auto z1 = kron(paulis[3], ComplexMatrix::identity(4));
    ComplexMatrix cnots(8, 8);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t r = 0; r < 2; ++r) {
                cnots(((a ^ r) * 4) + ((b ^ r) * 2) + r, a * 4 + b * 2 + r) = 1.0;
            }
        }
    }
    struct Outcome {
        std::uint8_t phase;
        std::uint8_t sum;
    };
    std::vector<std::pair<ComplexMatrix, Outcome>> symbol;
    for (std::uint8_t c = 0; c < 2; ++c) {
        const ComplexMatrix rotate = c ? cnots * z1 * proj_n : cnots * proj_p;
        for (std::uint8_t y = 0; y < 3; ++y) {
            ComplexMatrix readout(8, 8);
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t b = 0; b < 2; ++b) {
                    if (a + b == y) {
                        readout += kron(PureState::basis(4, 2 * a + b).projector(), ComplexMatrix::identity(2));
                    }
                }
            }
            symbol.emplace_back(rotate.adjoint() * readout * rotate, Outcome{c, y});
        }
    }
    const std::function<std::optional<MessagePair>(const std::vector<Outcome> &)> decode =
        [&](const std::vector<Outcome> &o) -> std::optional<MessagePair> {
        SumWord y;
        std::size_t c = 0;
        for (const auto &s : o) {
            y.push_back(s.sum);
            c = 2 * c + s.phase;
        }
        const auto m = lookup(base.decoder(), y);
        if (!m) {
            return std::nullopt;
        }
        return MessagePair{m->first * phases + c, m->second};
    };
    return AssistedCode(ghz_state(), n, std::move(enc1), std::move(enc2), block_povm(symbol, n, decode));
}

AdderCode random_adder_code(std::uint64_t seed, std::size_t max_n, std::size_t max_book, bool scrambled_decoder) {
    if (max_n == 0 || max_n > 16 || max_book == 0) {
        throw std::invalid_argument("random_adder_code: need 1 <= max_n <= 16 and max_book >= 1");
    }
    std::mt19937_64 rng(seed);
    const std::size_t n = 1 + rng() % max_n;
    const std::size_t words = std::size_t{1} << n;
    auto book = [&] {
        std::vector<std::size_t> all(words);
        for (std::size_t w = 0; w < words; ++w) {
            all[w] = w;
        }
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(1 + rng() % std::min(words, max_book));
        std::vector<BitWord> out;
        for (std::size_t w : all) {
            BitWord word;
            for (std::size_t t = 0; t < n; ++t) {
                word.push_back(static_cast<std::uint8_t>((w >> (n - 1 - t)) & 1U));
            }
            out.push_back(std::move(word));
        }
        return out;
    };
    auto b1 = book();
    auto b2 = book();
    if (!scrambled_decoder) {
        return AdderCode(n, std::move(b1), std::move(b2));
    }
    ClassicalDecoder d;
    std::size_t sums = 1;
    for (std::size_t t = 0; t < n; ++t) {
        sums *= 3;
    }
    for (std::size_t w = 0; w < sums; ++w) {
        if (rng() % 5 == 0) {
            continue;
        }
        SumWord y(n);
        std::size_t v = w;
        for (std::size_t t = n; t > 0; --t) {
            y[t - 1] = static_cast<std::uint8_t>(v % 3);
            v /= 3;
        }
        d[y] = {rng() % b1.size(), rng() % b2.size()};
    }
    return AdderCode(n, std::move(b1), std::move(b2), std::move(d));
}

SharedRandomnessCode wrap_shared_randomness(const AdderCode &base) {
    return {base, base.book1().size(), base.book2().size()};
}

CodePerformance shared_randomness_performance(const SharedRandomnessCode &c) {
    const auto base = classical_code_performance(c.base);
    std::vector<std::vector<double>> errors(c.m1, std::vector<double>(c.m2));
    const double weight = 1.0 / static_cast<double>(c.m1 * c.m2);
    for (std::size_t m1 = 0; m1 < c.m1; ++m1) {
        for (std::size_t m2 = 0; m2 < c.m2; ++m2) {
            // The base code sees (m1 + x1, m2 + x2); the receiver's shift back
            // is a bijection, so an error occurs exactly when the base errs.
            double e = 0;
            for (std::size_t x1 = 0; x1 < c.m1; ++x1) {
                for (std::size_t x2 = 0; x2 < c.m2; ++x2) {
                    e += weight * base.per_message_errors[(m1 + x1) % c.m1][(m2 + x2) % c.m2];
                }
            }
            errors[m1][m2] = e;
        }
    }
    return summarize(std::move(errors));
}

}  // namespace qadder
