#pragma once

#include <vector>

#include "ffsl3/scalar.hpp"

namespace ffsl3 {

// Dense matrices over Q(params), row-major. Zero tests are exact, so ranks
// are generic ranks when parameters are symbolic.
using Matrix = std::vector<std::vector<Scalar>>;

Matrix zero_matrix(size_t rows, size_t cols);
Matrix identity_matrix(size_t n);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

// In-place reduced row echelon form; returns the pivot columns.
std::vector<size_t> row_reduce(Matrix& m);
size_t rank(Matrix m);
// Basis of {v : m v = 0}.
std::vector<std::vector<Scalar>> nullspace(Matrix m, size_t cols);

}  // namespace ffsl3
