#include "qadder/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qadder {

namespace {

constexpr double kTraceTolerance = 1e-9;

std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

}  // namespace

double trace_preservation_error(const std::vector<ComplexMatrix> &kraus) {
    if (kraus.empty()) {
        return 1.0;
    }
    ComplexMatrix sum(kraus.front().cols(), kraus.front().cols());
    for (const auto &k : kraus) {
        sum += k.adjoint() * k;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(sum.rows()));
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw std::invalid_argument("QuantumChannel: no Kraus operators");
    }
    out_dim_ = kraus_.front().rows();
    in_dim_ = kraus_.front().cols();
    for (const auto &k : kraus_) {
        if (k.rows() != out_dim_ || k.cols() != in_dim_) {
            throw std::invalid_argument("QuantumChannel: Kraus operators differ in shape");
        }
    }
    const double err = trace_preservation_error(kraus_);
    if (err > kTraceTolerance) {
        throw std::invalid_argument("QuantumChannel: not trace preserving (error " + std::to_string(err) +
                                    ")");
    }
}

QuantumChannel QuantumChannel::unitary(const ComplexMatrix &u) {
    return QuantumChannel({u});
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
    return QuantumChannel({ComplexMatrix::identity(dim)});
}

QuantumChannel tensor(const QuantumChannel &a, const QuantumChannel &b) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(a.kraus().size() * b.kraus().size());
    for (const auto &ka : a.kraus()) {
        for (const auto &kb : b.kraus()) {
            kraus.push_back(kron(ka, kb));
        }
    }
    return QuantumChannel(std::move(kraus));
}

ComplexMatrix apply_channel(const QuantumChannel &c, const ComplexMatrix &op) {
    if (op.rows() != c.in_dim() || op.cols() != c.in_dim()) {
        throw std::invalid_argument("apply_channel: operator dim " + std::to_string(op.rows()) +
                                    " does not match channel input dim " + std::to_string(c.in_dim()));
    }
    ComplexMatrix out(c.out_dim(), c.out_dim());
    for (const auto &k : c.kraus()) {
        out += multiply_adjoint(k * op, k);
    }
    return out;
}

DensityMatrix apply_channel(const QuantumChannel &c, const DensityMatrix &rho) {
    return DensityMatrix::unchecked(apply_channel(c, rho.matrix()));
}

// ---------------------------------------------------------------------------
// Permutations and the adder channel

PermutationOperator permutation_operator(const Permutation &p, std::size_t qubits) {
    if (qubits > 8) {
        throw std::invalid_argument("permutation_operator: at most 8 qubits");
    }
    if (p.size() != qubits) {
        throw std::invalid_argument("permutation_operator: permutation has wrong length");
    }
    std::vector<bool> seen(qubits, false);
    for (std::size_t v : p) {
        if (v >= qubits || seen[v]) {
            throw std::invalid_argument("permutation_operator: not a bijection");
        }
        seen[v] = true;
    }
    const std::size_t dim = std::size_t{1} << qubits;
    ComplexMatrix m(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t y = 0;
        for (std::size_t i = 0; i < qubits; ++i) {
            const std::size_t bit = (x >> (qubits - 1 - p[i])) & 1U;
            y |= bit << (qubits - 1 - i);
        }
        m(y, x) = 1.0;
    }
    return {p, std::move(m)};
}

std::vector<Permutation> all_permutations(std::size_t qubits) {
    Permutation p(qubits);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

QuantumChannel adder_channel(std::size_t senders) {
    if (senders == 0 || senders > 4) {
        throw std::invalid_argument("adder_channel: supports 1 to 4 senders");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(factorial(senders)));
    std::vector<ComplexMatrix> kraus;
    for (const auto &p : all_permutations(senders)) {
        kraus.push_back(permutation_operator(p, senders).matrix * cd{scale, 0});
    }
    return QuantumChannel(std::move(kraus));
}

ComplexMatrix flip_operator() {
    return permutation_operator({1, 0}, 2).matrix;
}

ComplexMatrix symmetric_projector() {
    return ComplexMatrix::identity(4) - antisymmetric_projector();
}

ComplexMatrix antisymmetric_projector() {
    return bell_states()[static_cast<std::size_t>(Bell::psi_minus)].projector();
}

std::array<PureState, 4> bell_states() {
    const double r = 1.0 / std::sqrt(2.0);
    return {
        PureState({r, 0, 0, r}),
        PureState({r, 0, 0, -r}),
        PureState({0, r, r, 0}),
        PureState({0, r, -r, 0}),
    };
}

std::array<ComplexMatrix, 4> pauli_matrices() {
    const cd i{0, 1};
    return {
        ComplexMatrix::identity(2),
        ComplexMatrix(2, 2, {0, 1, 1, 0}),
        ComplexMatrix(2, 2, {0, -i, i, 0}),
        ComplexMatrix(2, 2, {1, 0, 0, -1}),
    };
}

std::array<QuantumChannel, 4> pauli_channels() {
    const auto p = pauli_matrices();
    return {QuantumChannel::unitary(p[0]), QuantumChannel::unitary(p[1]), QuantumChannel::unitary(p[2]),
            QuantumChannel::unitary(p[3])};
}

// ---------------------------------------------------------------------------
// Shared resources

SharedResource::SharedResource(PureState state, std::size_t receiver_dim)
    : state_(std::move(state)), receiver_dim_(receiver_dim) {
    if (receiver_dim_ != 1 && receiver_dim_ != 2 && receiver_dim_ != 4) {
        throw std::invalid_argument("SharedResource: receiver dim must be 1, 2 or 4");
    }
    if (state_.dim() != 4 * receiver_dim_) {
        throw std::invalid_argument("SharedResource: state dim " + std::to_string(state_.dim()) +
                                    " does not match 2 x 2 x " + std::to_string(receiver_dim_));
    }
}

SharedResource product_resource() {
    return SharedResource(PureState::basis(4, 0), 1);
}

SharedResource ghz_state() {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<cd> a(8);
    a[0] = r;
    a[7] = r;
    return SharedResource(PureState(std::move(a)), 2);
}

SharedResource max_entangled_resource() {
    const auto bell = bell_states();
    std::vector<cd> a(16);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t s = 0; s < 4; ++s) {
            a[s * 4 + i] = 0.5 * bell[i][s];
        }
    }
    return SharedResource(PureState(std::move(a)), 4);
}

SharedResource partial_entangled_resource(double alpha) {
    if (!(alpha >= 1.0 / std::sqrt(2.0) - 1e-8 && alpha <= 1.0)) {
        throw std::invalid_argument("partial_entangled_resource: alpha must lie in [1/sqrt2, 1]");
    }
    const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    return SharedResource(PureState::normalized({alpha, 0, 0, beta}), 1);
}

QuantumChannel with_receiver(const QuantumChannel &channel, std::size_t receiver_dim) {
    if (receiver_dim == 1) {
        return channel;
    }
    return tensor(channel, QuantumChannel::identity(receiver_dim));
}

DensityMatrix encoded_state(const QuantumChannel &f, const QuantumChannel &g, const SharedResource &iota) {
    if (f.in_dim() != 2 || f.out_dim() != 2 || g.in_dim() != 2 || g.out_dim() != 2) {
        throw std::invalid_argument("encoded_state: encodings must be single-qubit channels");
    }
    const auto local = with_receiver(tensor(f, g), iota.receiver_dim());
    return apply_channel(local, DensityMatrix::from_pure(iota.state()));
}

DensityMatrix assisted_output(const QuantumChannel &f, const QuantumChannel &g, const SharedResource &iota) {
    const auto encoded = encoded_state(f, g, iota);
    // (1/2)(rho + (S (x) id) rho) with S the flip on the sender pair.
    const auto swap = kron(flip_operator(), ComplexMatrix::identity(iota.receiver_dim()));
    ComplexMatrix out = encoded.matrix() + conjugate(swap, encoded.matrix());
    out *= cd{0.5, 0};
    return DensityMatrix::unchecked(std::move(out));
}

}  // namespace qadder
