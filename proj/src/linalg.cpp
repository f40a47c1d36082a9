#include "bsched/linalg.hpp"

#include <cmath>

namespace bsched {

void matvec_serial(const Matrix& A, std::span<const double> x, std::span<double> y) {
    for (int i = 0; i < A.n; ++i) {
        double acc = 0.0;
        const double* row = &A.a[static_cast<std::size_t>(i) * A.n];
        for (int j = 0; j < A.n; ++j) {
            acc += row[j] * x[static_cast<std::size_t>(j)];
        }
        y[static_cast<std::size_t>(i)] = acc;
    }
}

void matvec(const Matrix& A, std::span<const double> x, std::span<double> y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (A.n >= 128)
#endif
    for (int i = 0; i < A.n; ++i) {
        double acc = 0.0;
        const double* row = &A.a[static_cast<std::size_t>(i) * A.n];
        for (int j = 0; j < A.n; ++j) {
            acc += row[j] * x[static_cast<std::size_t>(j)];
        }
        y[static_cast<std::size_t>(i)] = acc;
    }
}

void matvec_transpose(const Matrix& A, std::span<const double> x, std::span<double> y) {
    for (int j = 0; j < A.n; ++j) {
        y[static_cast<std::size_t>(j)] = 0.0;
    }
    for (int i = 0; i < A.n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        const double* row = &A.a[static_cast<std::size_t>(i) * A.n];
        for (int j = 0; j < A.n; ++j) {
            y[static_cast<std::size_t>(j)] += row[j] * xi;
        }
    }
}

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * y[i];
    }
    return acc;
}

double norm2(std::span<const double> x) {
    return std::sqrt(dot(x, x));
}

} // namespace bsched
