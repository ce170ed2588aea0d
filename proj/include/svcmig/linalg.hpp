#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace svcmig {

using DenseVector = std::vector<double>;

// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(entries_).subspan(r * cols_, cols_);
    }
    std::span<const double> entries() const noexcept { return entries_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

DenseVector multiply(const DenseMatrix& a, std::span<const double> x);

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws Error(SingularMatrix) when a pivot is below 1e-12 of its row's largest
// remaining entry, and Error(OutOfRange) on shape mismatch.
DenseVector solve_dense(const DenseMatrix& a, std::span<const double> b);

}  // namespace svcmig
