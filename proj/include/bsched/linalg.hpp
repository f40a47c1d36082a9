#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bsched {

/// Dense square matrix, row-major.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// y = A x. Rows are independent, so the parallel version is bit-identical to
/// the serial one; each row's dot product is accumulated left to right.
void matvec(const Matrix& A, std::span<const double> x, std::span<double> y);
void matvec_serial(const Matrix& A, std::span<const double> x, std::span<double> y);

/// y = A' x.
void matvec_transpose(const Matrix& A, std::span<const double> x, std::span<double> y);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

} // namespace bsched
