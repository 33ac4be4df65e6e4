#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qadder {

using cd = std::complex<double>;

/// Tolerances shared by the state types.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenClamp = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Throws std::invalid_argument on a size mismatch or a non-finite entry.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |a><b|
    static ComplexMatrix outer(std::span<const cd> a, std::span<const cd> b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cd &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    cd operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cd> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cd> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<cd> &entries() const { return data_; }

    ComplexMatrix adjoint() const;
    cd trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cd scale);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, cd scale);
ComplexMatrix operator*(cd scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

/// a * b^dagger without forming the adjoint.
ComplexMatrix multiply_adjoint(const ComplexMatrix &a, const ComplexMatrix &b);
/// u * m * u^dagger
ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &m);
std::vector<cd> apply(const ComplexMatrix &m, std::span<const cd> v);

/// Kronecker product. Rejects results wider than 2^16 on either side.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max |m(i,j) - conj(m(j,i))|
double hermitian_deviation(const ComplexMatrix &m);

/// Unit vector in C^dim.
class PureState {
   public:
    /// Throws std::invalid_argument unless the norm is 1 within kNormTol.
    explicit PureState(std::vector<cd> amplitudes);
    /// Rescales to unit norm; rejects the zero vector.
    static PureState normalized(std::vector<cd> amplitudes);
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    std::span<const cd> amplitudes() const { return amps_; }
    cd operator[](std::size_t i) const { return amps_[i]; }

    ComplexMatrix projector() const;

   private:
    std::vector<cd> amps_;
};

/// <a|b>
cd inner(const PureState &a, const PureState &b);
PureState kron(const PureState &a, const PureState &b);
PureState apply(const ComplexMatrix &u, const PureState &v);

/// Positive semidefinite, unit-trace, Hermitian matrix.
class DensityMatrix {
   public:
    /// Checks Hermiticity, trace and the smallest eigenvalue; throws
    /// std::invalid_argument with the offending deviation.
    explicit DensityMatrix(ComplexMatrix m);
    /// Skips validation. For results that are states by construction
    /// (channel outputs, convex mixtures of states).
    static DensityMatrix unchecked(ComplexMatrix m);
    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }

   private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b);
/// sum_i w_i rho_i. Weights must be a probability vector.
DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states);

struct Eigensystem {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column k belongs to values[k]
};

/// Rejects inputs more than kHermitianTol away from Hermitian.
Eigensystem hermitian_eigensystem(const ComplexMatrix &h);
/// Eigenvalues only, ascending. Cheaper: no eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h);

/// Bits. Eigenvalues in [-1e-8, 0] count as zero; anything lower is rejected.
double von_neumann_entropy(const DensityMatrix &rho);
double entropy_of_spectrum(std::span<const double> eigenvalues);
/// Bits. Entries may dip to -1e-12; the sum must be 1 within 1e-9.
double shannon_entropy(std::span<const double> p);
/// H(p, 1-p) in bits.
double binary_entropy(double p);

/// Traces out every factor not listed in `keep` (0-based, any order; kept
/// factors stay in ascending order). Keeping nothing yields the 1x1 matrix [1].
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> factor_dims,
                            std::span<const std::size_t> keep);

/// Square root of a PSD matrix; eigenvalues down to -1e-10 are clamped.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

/// Haar-random unitary: QR (Gram-Schmidt) of a complex Ginibre matrix.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);
/// G G^dagger / tr, G complex Ginibre. Full rank almost surely.
DensityMatrix random_density(std::size_t dim, std::uint64_t seed);
PureState random_pure_state(std::size_t dim, std::uint64_t seed);

/// Mixes a base seed with a stream index (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qadder
