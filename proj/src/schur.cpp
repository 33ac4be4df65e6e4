#include "qadder/schur.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qadder/channels.hpp"

namespace qadder {

namespace {

constexpr std::size_t kExactLimit = 64;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
   public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            c_ += (sum_ - t) + x;
        } else {
            c_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

   private:
    double sum_ = 0;
    double c_ = 0;
};

std::vector<std::uint64_t> binomial_row(std::size_t n) {
    std::vector<std::uint64_t> row{1};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next(i + 1, 1);
        for (std::size_t k = 1; k < i; ++k) {
            next[k] = row[k - 1] + row[k];
        }
        row = std::move(next);
    }
    return row;
}

double log2_binomial(std::size_t n, std::size_t k) {
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    return (std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1)) / std::log(2.0);
}

SchurMode resolve(SchurMode mode, std::size_t senders) {
    if (mode == SchurMode::automatic) {
        return senders <= kExactLimit ? SchurMode::exact : SchurMode::log_space;
    }
    if (mode == SchurMode::exact && senders > kExactLimit) {
        throw std::overflow_error("schur: exact mode supports L <= 64 (binomials overflow 64 bits); L = " +
                                  std::to_string(senders) + " needs log_space mode");
    }
    return mode;
}

}  // namespace

SchurSpectrum schur_spectrum(std::size_t senders, SchurMode mode) {
    if (senders == 0) {
        throw std::invalid_argument("schur_spectrum: need at least one sender");
    }
    mode = resolve(mode, senders);
    const std::size_t l = senders;
    SchurSpectrum s{l, mode, {}, {}, {}, {}, {}};
    const std::size_t blocks = l / 2 + 1;

    if (mode == SchurMode::exact) {
        const auto c = binomial_row(l);
        unsigned __int128 dimension = 0;
        for (std::size_t k = 0; k < blocks; ++k) {
            const std::uint64_t dk = c[k] - (k == 0 ? 0 : c[k - 1]);
            const std::uint64_t spin = l - 2 * k + 1;
            s.d.push_back(dk);
            s.spin_dims.push_back(spin);
            s.log2_d.push_back(std::log2(static_cast<double>(dk)));
            s.p.push_back(std::ldexp(static_cast<double>(dk) * static_cast<double>(spin), -static_cast<int>(l)));
            s.log2_p.push_back(std::log2(static_cast<double>(dk)) + std::log2(static_cast<double>(spin)) -
                               static_cast<double>(l));
            dimension += static_cast<unsigned __int128>(dk) * spin;
        }
        if (dimension != (static_cast<unsigned __int128>(1) << l)) {
            throw std::logic_error("schur_spectrum: block dimensions do not add up to 2^L");
        }
        return s;
    }

    // d_k = C(L,k) (L-2k+1) / (L-k+1)
    for (std::size_t k = 0; k < blocks; ++k) {
        const double spin = static_cast<double>(l - 2 * k + 1);
        const double log2_dk = log2_binomial(l, k) + std::log2(spin) - std::log2(static_cast<double>(l - k + 1));
        const double log2_pk = log2_dk + std::log2(spin) - static_cast<double>(l);
        s.spin_dims.push_back(l - 2 * k + 1);
        s.log2_d.push_back(log2_dk);
        s.log2_p.push_back(log2_pk);
        s.p.push_back(std::exp2(log2_pk));
    }
    return s;
}

double quantum_rate_sum(std::size_t senders, SchurMode mode) {
    const auto s = schur_spectrum(senders, mode);
    CompensatedSum acc;
    acc.add(2.0 * static_cast<double>(senders));
    for (std::size_t k = 0; k < s.p.size(); ++k) {
        if (s.p[k] > 0) {
            // -H(p) contributes p log p; the multiplicity term is -p log d^2.
            acc.add(s.p[k] * s.log2_p[k]);
            acc.add(-2.0 * s.p[k] * s.log2_d[k]);
        }
    }
    return acc.value();
}

double classical_rate_sum(std::size_t senders, SchurMode mode) {
    if (senders == 0) {
        throw std::invalid_argument("classical_rate_sum: need at least one sender");
    }
    mode = resolve(mode, senders);
    const double l = static_cast<double>(senders);
    CompensatedSum h;
    if (mode == SchurMode::exact) {
        const auto c = binomial_row(senders);
        for (std::uint64_t ck : c) {
            const double p = std::ldexp(static_cast<double>(ck), -static_cast<int>(senders));
            h.add(-p * (std::log2(static_cast<double>(ck)) - l));
        }
        return h.value();
    }
    for (std::size_t k = 0; k <= senders; ++k) {
        const double log2_p = log2_binomial(senders, k) - l;
        h.add(-std::exp2(log2_p) * log2_p);
    }
    return h.value();
}

DensityMatrix tau_state(std::size_t senders) {
    if (senders == 0 || senders > 4) {
        throw std::invalid_argument("tau_state: supports 1 to 4 senders");
    }
    const std::size_t half = std::size_t{1} << senders;
    std::vector<cd> phi(half * half);
    const double amp = 1.0 / std::sqrt(static_cast<double>(half));
    for (std::size_t x = 0; x < half; ++x) {
        phi[x * half + x] = amp;
    }
    const auto rho = DensityMatrix::from_pure(PureState(std::move(phi)));
    const auto through = tensor(adder_channel(senders), QuantumChannel::identity(half));
    return apply_channel(through, rho);
}

double tau_entropy_oracle(std::size_t senders) {
    return von_neumann_entropy(tau_state(senders));
}

double pauli_average_deviation(std::size_t senders) {
    if (senders == 0 || senders > 3) {
        throw std::invalid_argument("pauli_average_deviation: supports 1 to 3 senders");
    }
    const std::size_t half = std::size_t{1} << senders;
    std::vector<cd> amps(half * half);
    for (std::size_t x = 0; x < half; ++x) {
        amps[x * half + x] = 1.0 / std::sqrt(static_cast<double>(half));
    }
    const PureState phi(std::move(amps));
    const auto paulis = pauli_matrices();
    const auto through = tensor(adder_channel(senders), QuantumChannel::identity(half));

    const std::size_t words = std::size_t{1} << (2 * senders);
    ComplexMatrix average(half * half, half * half);
    for (std::size_t w = 0; w < words; ++w) {
        ComplexMatrix op = paulis[w & 3U];
        for (std::size_t i = 1; i < senders; ++i) {
            op = kron(op, paulis[(w >> (2 * i)) & 3U]);
        }
        const auto signal = DensityMatrix::from_pure(apply(kron(op, ComplexMatrix::identity(half)), phi));
        average += apply_channel(through, signal).matrix();
    }
    average *= cd{1.0 / static_cast<double>(words), 0};
    return max_abs_diff(average, DensityMatrix::maximally_mixed(half * half).matrix());
}

std::vector<RateSumRow> rate_sum_table(const std::vector<std::size_t> &senders) {
    std::vector<RateSumRow> rows;
    for (std::size_t l : senders) {
        RateSumRow row{l, quantum_rate_sum(l), classical_rate_sum(l), 1.5 * std::log2(static_cast<double>(l)),
                       std::nullopt};
        if (l <= 4) {
            row.oracle = 2.0 * static_cast<double>(l) - tau_entropy_oracle(l);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qadder
