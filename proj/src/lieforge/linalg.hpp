#pragma once

#include <vector>

#include "rational.hpp"

namespace lieforge::linalg {

// Dense exact-rational matrix, row major.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Rat>> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(r, std::vector<Rat>(c, Rat(0))) {}
    Rat& at(int r, int c) { return a[r][c]; }
    const Rat& at(int r, int c) const { return a[r][c]; }
};

int rank(Matrix m);

// Basis of the (right) null space: vectors x with M x = 0.
std::vector<std::vector<Rat>> kernel_basis(const Matrix& m);

// One solution of M x = b; returns false when inconsistent.
bool solve(Matrix m, std::vector<Rat> b, std::vector<Rat>& x);

// Is v in the column span of M?
bool in_column_span(const Matrix& m, const std::vector<Rat>& v);

}  // namespace lieforge::linalg
