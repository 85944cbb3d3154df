#ifndef GREYCAST_LINALG_HPP
#define GREYCAST_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "greycast/errors.hpp"

namespace greycast {

/// Row-major dense matrix. Sized for the saddle systems solved here
/// (a few hundred rows at most), so no blocking or pivot heuristics.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<double> multiply(const std::vector<double>& x) const {
        std::vector<double> y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
            y[i] = s;
        }
        return y;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

struct SolveResult {
    std::vector<double> x;
    double condition_estimate = 0.0; // max|pivot| / min|pivot|, coarse
};

/// Solves A x = b by LU factorization with partial pivoting. Throws
/// NumericError on (near-)singular systems, reporting the pivot-ratio
/// condition estimate.
inline SolveResult solve_partial_pivot(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw NumericError("solve: dimension mismatch");

    double max_pivot = 0.0, min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::fabs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a(r, col)) > best) {
                best = std::fabs(a(r, col));
                piv = r;
            }
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        double p = a(col, col);
        max_pivot = std::max(max_pivot, std::fabs(p));
        min_pivot = std::min(min_pivot, std::fabs(p));
        if (std::fabs(p) < 1e-300 || min_pivot == 0.0 || max_pivot / min_pivot > 1e15) {
            throw NumericError("solve: singular or near-singular system, pivot ratio estimate " +
                               std::to_string(min_pivot == 0.0 ? std::numeric_limits<double>::infinity()
                                                               : max_pivot / min_pivot));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a(r, col) / p;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return SolveResult{std::move(x), max_pivot / min_pivot};
}

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace greycast

#endif
