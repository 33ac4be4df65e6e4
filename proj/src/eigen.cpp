// Hermitian eigensolver: Householder reduction to a real symmetric tridiagonal
// matrix, then implicit QL with Wilkinson-style shifts.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qadder/kernels.hpp"
#include "qadder/linalg.hpp"

namespace qadder {

namespace {

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i+1; off[n-1] = 0
    ComplexMatrix basis_t;     // rows are the columns of Q D (empty if not requested)
};

ComplexMatrix symmetrized(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw std::invalid_argument("hermitian_eigensystem: matrix is not square");
    }
    const double dev = hermitian_deviation(h);
    if (dev > kHermitianTol) {
        std::ostringstream msg;
        msg << "hermitian_eigensystem: input is not Hermitian (max deviation " << dev << ")";
        throw std::invalid_argument(msg.str());
    }
    ComplexMatrix a = h;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const cd avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    return a;
}

Tridiagonal reduce(ComplexMatrix a, bool want_vectors) {
    const auto &k = kernels::active();
    const std::size_t n = a.rows();
    ComplexMatrix q;
    if (want_vectors) {
        q = ComplexMatrix::identity(n);
    }
    std::vector<cd> v(n);
    std::vector<cd> vc(n);
    std::vector<cd> w(n);
    std::vector<cd> wc(n);

    for (std::size_t col = 0; col + 2 < n; ++col) {
        const std::size_t lo = col + 1;
        const std::size_t m = n - lo;
        double tail2 = 0;
        for (std::size_t i = lo + 1; i < n; ++i) {
            tail2 += std::norm(a(i, col));
        }
        if (tail2 == 0) {
            continue;
        }
        const cd x0 = a(lo, col);
        const double xnorm = std::sqrt(tail2 + std::norm(x0));
        const double ax0 = std::abs(x0);
        const cd phase = ax0 > 0 ? x0 / ax0 : cd{1, 0};
        const cd alpha = -phase * xnorm;

        std::fill(v.begin(), v.end(), cd{0, 0});
        v[lo] = x0 - alpha;
        for (std::size_t i = lo + 1; i < n; ++i) {
            v[i] = a(i, col);
        }
        double vnorm2 = 0;
        for (std::size_t i = lo; i < n; ++i) {
            vnorm2 += std::norm(v[i]);
        }
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (std::size_t i = lo; i < n; ++i) {
            v[i] *= inv;
            vc[i] = std::conj(v[i]);
        }

        // Trailing block: A <- A - 2 (v w^H + w v^H), w = Av - (v^H A v) v.
        for (std::size_t i = lo; i < n; ++i) {
            w[i] = k.dotu(&a(i, lo), &v[lo], m);
        }
        const double kappa = std::real(k.dotc(&v[lo], &w[lo], m));
        for (std::size_t i = lo; i < n; ++i) {
            w[i] -= kappa * v[i];
            wc[i] = std::conj(w[i]);
        }
        for (std::size_t i = lo; i < n; ++i) {
            k.axpy(-2.0 * v[i], &wc[lo], &a(i, lo), m);
            k.axpy(-2.0 * w[i], &vc[lo], &a(i, lo), m);
        }
        a(lo, col) = alpha;
        a(col, lo) = std::conj(alpha);
        for (std::size_t i = lo + 1; i < n; ++i) {
            a(i, col) = 0;
            a(col, i) = 0;
        }

        if (want_vectors) {
            // Q <- Q (I - 2 v v^H)
            for (std::size_t i = 0; i < n; ++i) {
                const cd qv = k.dotu(&q(i, lo), &v[lo], m);
                k.axpy(-2.0 * qv, &vc[lo], &q(i, lo), m);
            }
        }
    }

    Tridiagonal t;
    t.diag.resize(n);
    t.off.assign(n, 0.0);
    std::vector<cd> delta(n, cd{1, 0});
    for (std::size_t i = 0; i < n; ++i) {
        t.diag[i] = a(i, i).real();
    }
    // Unit phases D make the off-diagonal real and nonnegative: D^H T D.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const cd e = a(i + 1, i);
        const double mag = std::abs(e);
        t.off[i] = mag;
        delta[i + 1] = mag > 0 ? delta[i] * (e / mag) : delta[i];
    }
    if (want_vectors) {
        t.basis_t = ComplexMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                t.basis_t(j, i) = q(i, j) * delta[j];
            }
        }
    }
    return t;
}

void implicit_ql(Tridiagonal &t, bool want_vectors) {
    const auto &k = kernels::active();
    const std::size_t n = t.diag.size();
    auto &d = t.diag;
    auto &e = t.off;
    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) {
                    break;
                }
            }
            if (m != l) {
                if (++iterations > 60) {
                    throw std::runtime_error("hermitian_eigensystem: QL iteration did not converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (want_vectors) {
                        // columns i, i+1 of Z: (z_i, z_{i+1}) <- (c z_i - s z_{i+1}, s z_i + c z_{i+1})
                        k.rotate(c, s, t.basis_t.row(i).data(), t.basis_t.row(i + 1).data(), n);
                    }
                }
                if (underflow) {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix &h) {
    const std::size_t n = h.rows();
    Eigensystem out;
    if (n == 0) {
        return out;
    }
    auto t = reduce(symmetrized(h), true);
    implicit_ql(t, true);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return t.diag[x] < t.diag[y]; });
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = t.diag[order[c]];
        const auto src = t.basis_t.row(order[c]);
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, c) = src[i];
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
    if (h.rows() == 0) {
        return {};
    }
    auto t = reduce(symmetrized(h), false);
    implicit_ql(t, false);
    std::sort(t.diag.begin(), t.diag.end());
    return t.diag;
}

}  // namespace qadder
