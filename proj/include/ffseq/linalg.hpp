#pragma once

#include <cstddef>
#include <vector>

#include "ffseq/gf.hpp"

namespace ffseq {

/// Dense row-major matrix over F_q, used by the rank checks and the
/// Riemann-Roch solver.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Rank by Gaussian elimination (the argument is consumed).
std::size_t rank(const Field& F, DenseMatrix m);

/// Reduced row echelon form in place; pivots are searched in the column order
/// given (all columns, left to right, when empty). Returns the pivot columns
/// of the nonzero rows, which are moved to the top.
std::vector<std::size_t> rref(const Field& F, DenseMatrix& m, const std::vector<std::size_t>& column_order = {});

/// Basis of the left kernel {v : v^T m = 0}, one vector per row of the result.
DenseMatrix left_kernel(const Field& F, const DenseMatrix& m);

/// Inverse of a square matrix; throws std::domain_error if singular.
DenseMatrix inverse(const Field& F, const DenseMatrix& m);

}  // namespace ffseq
