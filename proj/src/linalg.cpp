#include "svcmig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "svcmig/error.hpp"

namespace svcmig {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseVector multiply(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) {
        throw Error(Errc::OutOfRange, "multiply: vector length does not match matrix columns");
    }
    DenseVector y(a.rows(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            acc += row[c] * x[c];
        }
        y[r] = acc;
    }
    return y;
}

DenseVector solve_dense(const DenseMatrix& a, std::span<const double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw Error(Errc::OutOfRange, "solve_dense: matrix is " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + ", expected square");
    }
    if (b.size() != n) {
        throw Error(Errc::OutOfRange, "solve_dense: right-hand side length mismatch");
    }

    // Augmented working copy [A | b]; the inputs stay untouched.
    const std::size_t width = n + 1;
    std::vector<double> work(n * width);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy_n(a.row(r).begin(), n, work.begin() + static_cast<std::ptrdiff_t>(r * width));
        work[r * width + n] = b[r];
    }
    auto at = [&](std::size_t r, std::size_t c) -> double& { return work[r * width + c]; };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(at(r, k)) > std::abs(at(pivot, k))) {
                pivot = r;
            }
        }
        double row_max = 0.0;
        for (std::size_t c = k; c < n; ++c) {
            row_max = std::max(row_max, std::abs(at(pivot, c)));
        }
        if (row_max == 0.0 || std::abs(at(pivot, k)) < 1e-12 * row_max) {
            throw Error(Errc::SingularMatrix, "pivot vanished at column " + std::to_string(k));
        }
        if (pivot != k) {
            for (std::size_t c = k; c < width; ++c) {
                std::swap(at(k, c), at(pivot, c));
            }
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = at(r, k) / at(k, k);
            if (factor == 0.0) {
                continue;
            }
            at(r, k) = 0.0;
            for (std::size_t c = k + 1; c < width; ++c) {
                at(r, c) -= factor * at(k, c);
            }
        }
    }

    DenseVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = at(i, n);
        for (std::size_t c = i + 1; c < n; ++c) {
            acc -= at(i, c) * x[c];
        }
        x[i] = acc / at(i, i);
    }
    return x;
}

}  // namespace svcmig
