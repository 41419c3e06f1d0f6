#pragma once

#include "cousinlab/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cousinlab {

template <class F>
using Mat = std::vector<std::vector<F>>;

inline bool lin_is_zero(const Rational& q) { return q == 0; }
inline bool lin_is_zero(const Integer& z) { return z == 0; }
template <class F>
bool lin_is_zero(const F& x) {
    return x.is_zero();
}

template <class F>
Mat<F> zeros(std::size_t r, std::size_t c) {
    return Mat<F>(r, std::vector<F>(c, F(0)));
}

template <class F>
Mat<F> identity(std::size_t n) {
    Mat<F> m = zeros<F>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = F(1);
    return m;
}

template <class F>
Mat<F> matmul(const Mat<F>& a, const Mat<F>& b) {
    std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Mat<F> out = zeros<F>(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (lin_is_zero(a[i][l]))
                continue;
            for (std::size_t j = 0; j < c; ++j)
                out[i][j] = out[i][j] + a[i][l] * b[l][j];
        }
    return out;
}

template <class F>
Mat<F> transpose(const Mat<F>& a) {
    if (a.empty())
        return {};
    Mat<F> t = zeros<F>(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

// Row echelon form in place by exact Gaussian elimination; returns pivot
// columns. Zero tests are exact for every field type used here.
template <class F>
std::vector<std::size_t> echelon(Mat<F>& a) {
    std::vector<std::size_t> pivots;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && lin_is_zero(a[p][c]))
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        F inv = F(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j)
            a[r][j] = a[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || lin_is_zero(a[i][c]))
                continue;
            F f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
std::size_t rank_of(Mat<F> a) {
    return echelon(a).size();
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& a) {
    std::size_t n = a.size();
    Mat<F> aug = zeros<F>(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = a[i][j];
        aug[i][n + i] = F(1);
    }
    auto piv = echelon(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    Mat<F> inv = zeros<F>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = aug[i][n + j];
    return inv;
}

// Rational kernel basis (columns x with a x = 0), one vector per free column.
template <class F>
std::vector<std::vector<F>> kernel(Mat<F> a, std::size_t cols) {
    auto piv = echelon(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : piv)
        is_pivot[p] = true;
    std::vector<std::vector<F>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<F> v(cols, F(0));
        v[f] = F(1);
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -a[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

// ---- integer matrices ----

using IntMat = Mat<Integer>;

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
    IntMat U, D, V;
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMat& a);

// Basis of {x in Z^n : a x = 0} (columns of V beyond the rank).
std::vector<std::vector<Integer>> integer_kernel(const IntMat& a, std::size_t cols);

// Row-style Hermite normal form of an integer matrix.
IntMat hermite_normal_form(IntMat a);

} // namespace cousinlab
