#include "linalg.hpp"

namespace lieforge::linalg {

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> echelon(Matrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!is_zero(m.a[i][c])) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m.a[p], m.a[r]);
        Rat inv = 1 / m.a[r][c];
        for (int j = c; j < m.cols; ++j) m.a[r][j] *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m.a[i][c])) continue;
            Rat f = m.a[i][c];
            for (int j = c; j < m.cols; ++j) m.a[i][j] -= f * m.a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(Matrix m) { return static_cast<int>(echelon(m).size()); }

std::vector<std::vector<Rat>> kernel_basis(const Matrix& m) {
    Matrix e = m;
    std::vector<int> pivots = echelon(e);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(m.cols, Rat(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e.a[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(Matrix m, std::vector<Rat> b, std::vector<Rat>& x) {
    int rows = m.rows, cols = m.cols;
    Matrix aug(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.a[i][j] = m.a[i][j];
        aug.a[i][cols] = b[i];
    }
    std::vector<int> pivots = echelon(aug);
    x.assign(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return false;  // inconsistent
        x[pivots[r]] = aug.a[r][cols];
    }
    return true;
}

bool in_column_span(const Matrix& m, const std::vector<Rat>& v) {
    std::vector<Rat> x;
    return solve(m, v, x);
}

}  // namespace lieforge::linalg
