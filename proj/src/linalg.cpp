#include "ffsl3/linalg.hpp"

namespace ffsl3 {

Matrix zero_matrix(size_t rows, size_t cols) { return Matrix(rows, std::vector<Scalar>(cols)); }

Matrix identity_matrix(size_t n) {
    Matrix m = zero_matrix(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    size_t n = a.size(), p = b.size(), q = p ? b[0].size() : 0;
    Matrix r = zero_matrix(n, q);
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < p; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < q; ++j)
                if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}

std::vector<size_t> row_reduce(Matrix& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t cols = m[0].size(), row = 0;
    for (size_t c = 0; c < cols && row < m.size(); ++c) {
        size_t p = row;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Scalar inv = 1 / m[row][c];
        for (size_t j = c; j < cols; ++j)
            if (!m[row][j].is_zero()) m[row][j] *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c].is_zero()) continue;
            Scalar f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                if (!m[row][j].is_zero()) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

size_t rank(Matrix m) { return row_reduce(m).size(); }

std::vector<std::vector<Scalar>> nullspace(Matrix m, size_t cols) {
    auto piv = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols);
        v[f] = Scalar(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace ffsl3
