#include "qadder/kernels.hpp"

namespace qadder::kernels {
namespace {

void axpy_scalar(cd a, const cd *x, cd *y, std::size_t n) {
    const double ar = a.real();
    const double ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

cd dotc_scalar(const cd *x, const cd *y, std::size_t n) {
    double re = 0;
    double im = 0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

cd dotu_scalar(const cd *x, const cd *y, std::size_t n) {
    double re = 0;
    double im = 0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

void rotate_scalar(double c, double s, cd *x, cd *y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cd a = x[i];
        const cd b = y[i];
        x[i] = c * a - s * b;
        y[i] = s * a + c * b;
    }
}

}  // namespace

const KernelTable &scalar() {
    static const KernelTable table{"scalar", axpy_scalar, dotc_scalar, dotu_scalar, rotate_scalar};
    return table;
}

}  // namespace qadder::kernels
