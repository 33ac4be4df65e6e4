#include "qadder/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qadder/kernels.hpp"

namespace qadder {

namespace {

constexpr std::size_t kMaxSide = std::size_t{1} << 16;

[[noreturn]] void reject(const std::string &what) {
    throw std::invalid_argument(what);
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

std::vector<cd> ginibre(std::size_t count, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cd> out(count);
    for (auto &z : out) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {re, im};
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        reject("ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
               std::to_string(data_.size()));
    }
    for (const cd &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            reject("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cd> a, std::span<const cd> b) {
    ComplexMatrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

cd ComplexMatrix::trace() const {
    cd t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        reject("ComplexMatrix +=: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        reject("ComplexMatrix -=: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cd scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(ComplexMatrix a, cd scale) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(cd scale, ComplexMatrix a) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        reject("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
               std::to_string(b.rows()) + " differ");
    }
    const auto &k = kernels::active();
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t m = 0; m < a.cols(); ++m) {
            const cd s = a(i, m);
            if (s != cd{0, 0}) {
                k.axpy(s, b.row(m).data(), out.data(), out.size());
            }
        }
    }
    return c;
}

ComplexMatrix multiply_adjoint(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.cols()) {
        reject("multiply_adjoint: column counts differ");
    }
    const auto &k = kernels::active();
    ComplexMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            // sum_m a(i,m) conj(b(j,m)) = conj(sum_m conj(a(i,m)) b(j,m))
            c(i, j) = std::conj(k.dotc(a.row(i).data(), b.row(j).data(), a.cols()));
        }
    }
    return c;
}

ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &m) {
    return multiply_adjoint(u * m, u);
}

std::vector<cd> apply(const ComplexMatrix &m, std::span<const cd> v) {
    if (m.cols() != v.size()) {
        reject("apply: dimension mismatch");
    }
    const auto &k = kernels::active();
    std::vector<cd> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out[i] = k.dotu(m.row(i).data(), v.data(), v.size());
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxSide || cols > kMaxSide) {
        reject("kron: result exceeds 2^16 entries per side");
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cd s = a(i, j);
            if (s == cd{0, 0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
                }
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        reject("max_abs_diff: shape mismatch");
    }
    double worst = 0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

double hermitian_deviation(const ComplexMatrix &m) {
    if (!m.is_square()) {
        reject("hermitian_deviation: matrix is not square");
    }
    double worst = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::vector<cd> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        reject("PureState: empty amplitude vector");
    }
    double norm2 = 0;
    for (const cd &z : amps_) {
        norm2 += std::norm(z);
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > kNormTol) {
        reject("PureState: norm deviates from 1 by " + fmt(std::abs(std::sqrt(norm2) - 1.0)));
    }
}

PureState PureState::normalized(std::vector<cd> amplitudes) {
    double norm2 = 0;
    for (const cd &z : amplitudes) {
        norm2 += std::norm(z);
    }
    if (norm2 == 0) {
        reject("PureState::normalized: zero vector");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cd &z : amplitudes) {
        z *= inv;
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        reject("PureState::basis: index out of range");
    }
    std::vector<cd> a(dim);
    a[index] = 1.0;
    return PureState(std::move(a));
}

ComplexMatrix PureState::projector() const {
    return ComplexMatrix::outer(amps_, amps_);
}

cd inner(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        reject("inner: dimension mismatch");
    }
    return kernels::active().dotc(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

PureState kron(const PureState &a, const PureState &b) {
    std::vector<cd> out;
    out.reserve(a.dim() * b.dim());
    for (const cd &x : a.amplitudes()) {
        for (const cd &y : b.amplitudes()) {
            out.push_back(x * y);
        }
    }
    return PureState::normalized(std::move(out));
}

PureState apply(const ComplexMatrix &u, const PureState &v) {
    return PureState::normalized(apply(u, v.amplitudes()));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) {
        reject("DensityMatrix: matrix must be square and non-empty");
    }
    const double herm = hermitian_deviation(m_);
    if (herm > kHermitianTol) {
        reject("DensityMatrix: not Hermitian (deviation " + fmt(herm) + ")");
    }
    const cd tr = m_.trace();
    if (std::abs(tr - cd{1, 0}) > kTraceTol) {
        reject("DensityMatrix: trace deviates from 1 by " + fmt(std::abs(tr - cd{1, 0})));
    }
    const double lowest = hermitian_eigenvalues(m_).front();
    if (lowest < -kEigenClamp) {
        reject("DensityMatrix: negative eigenvalue " + fmt(lowest));
    }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
    return DensityMatrix(std::move(m), Unchecked{});
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return unchecked(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return unchecked(ComplexMatrix::identity(dim) * cd{1.0 / static_cast<double>(dim), 0});
}

DensityMatrix DensityMatrix::basis(std::size_t dim, std::size_t index) {
    return from_pure(PureState::basis(dim, index));
}

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states) {
    if (weights.size() != states.size() || states.empty()) {
        reject("mixture: need one weight per state and at least one state");
    }
    double total = 0;
    for (double w : weights) {
        if (w < -1e-12) {
            reject("mixture: negative weight");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        reject("mixture: weights sum to " + std::to_string(total));
    }
    ComplexMatrix acc(states.front().dim(), states.front().dim());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != acc.rows()) {
            reject("mixture: states differ in dimension");
        }
        if (weights[i] == 0) {
            continue;
        }
        const auto &src = states[i].matrix().entries();
        const auto &k = kernels::active();
        for (std::size_t r = 0; r < acc.rows(); ++r) {
            k.axpy(weights[i], src.data() + r * acc.cols(), acc.row(r).data(), acc.cols());
        }
    }
    return DensityMatrix::unchecked(std::move(acc));
}

// ---------------------------------------------------------------------------
// Entropies

double entropy_of_spectrum(std::span<const double> eigenvalues) {
    double h = 0;
    for (double lambda : eigenvalues) {
        if (lambda < -1e-8) {
            reject("von_neumann_entropy: eigenvalue " + fmt(lambda) + " is not a state");
        }
        if (lambda > 0) {
            h -= lambda * std::log2(lambda);
        }
    }
    return std::max(h, 0.0);
}

double von_neumann_entropy(const DensityMatrix &rho) {
    const auto values = hermitian_eigenvalues(rho.matrix());
    return entropy_of_spectrum(values);
}

double shannon_entropy(std::span<const double> p) {
    double total = 0;
    for (double x : p) {
        if (x < -1e-12) {
            reject("shannon_entropy: negative probability " + fmt(x));
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        reject("shannon_entropy: probabilities sum to " + std::to_string(total));
    }
    double h = 0;
    for (double x : p) {
        if (x > 0) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

double binary_entropy(double p) {
    const double q = 1.0 - p;
    double h = 0;
    if (p > 0) {
        h -= p * std::log2(p);
    }
    if (q > 0) {
        h -= q * std::log2(q);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Partial trace

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> factor_dims,
                            std::span<const std::size_t> keep) {
    const std::size_t n = factor_dims.size();
    const std::size_t total =
        std::accumulate(factor_dims.begin(), factor_dims.end(), std::size_t{1}, std::multiplies<>());
    if (total != rho.dim()) {
        reject("partial_trace: factor dims multiply to " + std::to_string(total) + ", state has dim " +
               std::to_string(rho.dim()));
    }
    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) {
        if (k >= n) {
            reject("partial_trace: keep index out of range");
        }
        kept[k] = true;
    }

    // Big-endian strides: factor 0 is most significant.
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t f = n; f-- > 1;) {
        stride[f - 1] = stride[f] * factor_dims[f];
    }
    std::vector<std::size_t> keep_dims;
    std::vector<std::size_t> keep_stride;
    std::vector<std::size_t> trace_dims;
    std::vector<std::size_t> trace_stride;
    for (std::size_t f = 0; f < n; ++f) {
        if (kept[f]) {
            keep_dims.push_back(factor_dims[f]);
            keep_stride.push_back(stride[f]);
        } else {
            trace_dims.push_back(factor_dims[f]);
            trace_stride.push_back(stride[f]);
        }
    }

    // Offsets into the full index space for every multi-index of a factor group.
    auto offsets = [](const std::vector<std::size_t> &dims, const std::vector<std::size_t> &strides) {
        std::vector<std::size_t> out{0};
        for (std::size_t g = 0; g < dims.size(); ++g) {
            std::vector<std::size_t> next;
            next.reserve(out.size() * dims[g]);
            for (std::size_t base : out) {
                for (std::size_t v = 0; v < dims[g]; ++v) {
                    next.push_back(base + v * strides[g]);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    const auto kept_off = offsets(keep_dims, keep_stride);
    const auto traced_off = offsets(trace_dims, trace_stride);

    const auto &m = rho.matrix();
    ComplexMatrix out(kept_off.size(), kept_off.size());
    for (std::size_t i = 0; i < kept_off.size(); ++i) {
        for (std::size_t j = 0; j < kept_off.size(); ++j) {
            cd acc = 0;
            for (std::size_t t : traced_off) {
                acc += m(kept_off[i] + t, kept_off[j] + t);
            }
            out(i, j) = acc;
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

// ---------------------------------------------------------------------------
// Functional calculus

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    auto eig = hermitian_eigensystem(m);
    const std::size_t n = m.rows();
    // (V diag(sqrt(l))) V^dagger
    ComplexMatrix scaled = eig.vectors;
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.values[k];
        if (lambda < -kEigenClamp) {
            reject("psd_sqrt: eigenvalue " + fmt(lambda) + " below clamp");
        }
        const double root = std::sqrt(std::max(lambda, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, k) *= root;
        }
    }
    return multiply_adjoint(scaled, eig.vectors);
}

// ---------------------------------------------------------------------------
// Random objects

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        reject("random_unitary: dim must be at least 1");
    }
    std::mt19937_64 rng(seed);
    // Columns of the Ginibre matrix, orthonormalized by modified Gram-Schmidt.
    // The resulting R has a positive diagonal, which makes Q Haar distributed.
    std::vector<std::vector<cd>> cols(dim);
    for (auto &c : cols) {
        c = ginibre(dim, rng);
    }
    const auto &k = kernels::active();
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const cd proj = k.dotc(cols[i].data(), cols[j].data(), dim);
            k.axpy(-proj, cols[i].data(), cols[j].data(), dim);
        }
        const double norm = std::sqrt(std::real(k.dotc(cols[j].data(), cols[j].data(), dim)));
        for (auto &z : cols[j]) {
            z /= norm;
        }
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            u(i, j) = cols[j][i];
        }
    }
    return u;
}

DensityMatrix random_density(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        reject("random_density: dim must be at least 1");
    }
    std::mt19937_64 rng(seed);
    ComplexMatrix g(dim, dim, ginibre(dim * dim, rng));
    ComplexMatrix rho = multiply_adjoint(g, g);
    rho *= cd{1.0 / rho.trace().real(), 0};
    // Exact Hermitian symmetry.
    for (std::size_t i = 0; i < dim; ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t j = i + 1; j < dim; ++j) {
            rho(j, i) = std::conj(rho(i, j));
        }
    }
    return DensityMatrix::unchecked(std::move(rho));
}

PureState random_pure_state(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return PureState::normalized(ginibre(dim, rng));
}

}  // namespace qadder
