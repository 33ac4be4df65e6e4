#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qadder::kernels {

using cd = std::complex<double>;

/// Inner-loop primitives over interleaved complex<double> arrays.
///
/// Every table computes the same functions; only the instruction set differs.
/// The scalar table is the reference that SIMD tables are tested against.
struct KernelTable {
    std::string_view name;
    /// y[i] += a * x[i]
    void (*axpy)(cd a, const cd *x, cd *y, std::size_t n);
    /// sum conj(x[i]) * y[i]
    cd (*dotc)(const cd *x, const cd *y, std::size_t n);
    /// sum x[i] * y[i]
    cd (*dotu)(const cd *x, const cd *y, std::size_t n);
    /// Plane rotation with real coefficients: (x, y) <- (c x - s y, s x + c y).
    void (*rotate)(double c, double s, cd *x, cd *y, std::size_t n);
};

const KernelTable &scalar();

/// Returns the AVX2+FMA table, or nullptr when the build or the CPU lacks it.
const KernelTable *avx2();

/// The table used by the library. Chosen once on first use: the best table the
/// CPU supports, unless QADDER_KERNELS=scalar|avx2 asks for a specific one.
const KernelTable &active();

}  // namespace qadder::kernels
